#pragma once

#include <span>
#include <string>
#include <vector>

#include "aidlab/number_field.hpp"
#include "aidlab/rational.hpp"

namespace aidlab {

/// A computation refused to grow beyond a configured cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Either the rationals or a simple extension Q[s]/(p).
struct FieldSpec {
    FieldPtr ext;  // null for Q

    static FieldSpec rationals() { return {}; }
    static FieldSpec extension(std::vector<Rational> minpoly) { return {NumberField::create(std::move(minpoly))}; }

    bool is_rationals() const { return !ext; }
    int degree() const { return ext ? ext->degree() : 1; }
    std::string describe() const { return ext ? "Q[s]/(" + ext->describe() + ")" : "Q"; }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b)
    {
        if (!a.ext || !b.ext) return !a.ext && !b.ext;
        return a.ext->same_as(*b.ext);
    }
};

/// Per-scalar-type glue so templated code can move between a field element
/// and its coordinates over 1, s, ..., s^{d-1}.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static Rational from_rational(const Rational& q, const FieldSpec&) { return q; }
    static std::vector<Rational> components(const Rational& a, int d)
    {
        std::vector<Rational> out(d, Rational(0));
        out[0] = a;
        return out;
    }
    static Rational from_components(std::span<const Rational> c, const FieldSpec& f)
    {
        for (std::size_t i = 1; i < c.size(); ++i)
            if (c[i] != 0) throw std::invalid_argument("irrational coordinates for a rational scalar over " + f.describe());
        return c.empty() ? Rational(0) : c[0];
    }
    static bool is_rational(const Rational&) { return true; }
    static Rational rational_part(const Rational& a) { return a; }
    static bool belongs_to(const Rational&, const FieldSpec& f) { return f.is_rationals(); }
};

template <>
struct ScalarOps<FieldElement> {
    static FieldElement from_rational(const Rational& q, const FieldSpec& f)
    {
        return f.ext ? FieldElement::embed(f.ext, q) : FieldElement(q);
    }
    static std::vector<Rational> components(const FieldElement& a, int d) { return a.components(d); }
    static FieldElement from_components(std::span<const Rational> c, const FieldSpec& f)
    {
        if (!f.ext) return ScalarOps<Rational>::from_components(c, f);
        return FieldElement(f.ext, std::vector<Rational>(c.begin(), c.end()));
    }
    static bool is_rational(const FieldElement& a) { return a.is_rational(); }
    static Rational rational_part(const FieldElement& a) { return a.coeff(0); }
    static bool belongs_to(const FieldElement& a, const FieldSpec& f)
    {
        if (!a.field()) return true;
        return f.ext && a.field()->same_as(*f.ext);
    }
};

/// Product in the field `f`; throws when an operand lives elsewhere.
template <class S>
S field_mul(const S& a, const S& b, const FieldSpec& f)
{
    if (!ScalarOps<S>::belongs_to(a, f) || !ScalarOps<S>::belongs_to(b, f))
        throw std::invalid_argument("mismatched field specs");
    return a * b;
}

}  // namespace aidlab
