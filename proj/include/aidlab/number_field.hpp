#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "aidlab/rational.hpp"

namespace aidlab {

/// Simple extension Q[s]/(p(s)) with p monic of degree >= 2.
class NumberField {
public:
    /// `minpoly` lists coefficients lowest power first and must be monic.
    /// Throws if p has a rational root, or (degree 4) splits into two
    /// rational quadratics.  Higher degrees are trusted beyond the root test.
    static std::shared_ptr<const NumberField> create(std::vector<Rational> minpoly);

    int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
    const std::vector<Rational>& minpoly() const { return minpoly_; }

    bool same_as(const NumberField& other) const
    {
        return this == &other || minpoly_ == other.minpoly_;
    }

    /// Product of two coefficient vectors (each of length degree()).
    std::vector<Rational> multiply(std::span<const Rational> a, std::span<const Rational> b) const;
    std::vector<Rational> inverse(std::span<const Rational> a) const;

    /// Matrix of multiplication by `a` in the basis 1, s, ..., s^{n-1}.
    Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> multiplication_matrix(
        std::span<const Rational> a) const;

    /// Minimal polynomial rendered as "s^2+1".
    std::string describe() const;

private:
    explicit NumberField(std::vector<Rational> minpoly);

    std::vector<Rational> minpoly_;
    // reduction_[k] = coordinates of s^(n+k), k = 0..n-2
    std::vector<std::vector<Rational>> reduction_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Rational roots of a polynomial with rational coefficients (lowest first).
std::vector<Rational> rational_roots(const std::vector<Rational>& poly);

/// Element of a NumberField.  A default or integer-constructed element carries
/// no field and acts as a rational constant that adapts to any field it meets.
class FieldElement {
public:
    FieldElement() : coeffs_{Rational(0)} {}
    FieldElement(int v) : coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
    FieldElement(const Rational& q) : coeffs_{q} {}  // NOLINT(google-explicit-constructor)
    FieldElement(FieldPtr field, std::vector<Rational> coeffs);

    static FieldElement embed(const FieldPtr& field, const Rational& q);
    static FieldElement generator_power(const FieldPtr& field, int m);

    const FieldPtr& field() const { return field_; }
    Rational coeff(int m) const
    {
        return m < static_cast<int>(coeffs_.size()) ? coeffs_[m] : Rational(0);
    }
    /// Coordinates over 1, s, ..., s^{d-1}, padded to length d.
    std::vector<Rational> components(int d) const;
    bool is_zero() const;
    bool is_rational() const;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);
    FieldElement operator-() const;

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    /// "3/2" for rational values, otherwise "(1+2*s)".
    std::string str() const;

private:
    static FieldPtr common_field(const FieldElement& a, const FieldElement& b);
    void normalize();

    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

inline bool is_zero(const FieldElement& x) { return x.is_zero(); }
inline std::string to_string(const FieldElement& x) { return x.str(); }
inline FieldElement abs(const FieldElement& x) { return x; }

}  // namespace aidlab

namespace Eigen {

template <>
struct NumTraits<aidlab::FieldElement> : GenericNumTraits<aidlab::FieldElement> {
    typedef aidlab::FieldElement Real;
    typedef aidlab::FieldElement NonInteger;
    typedef aidlab::FieldElement Nested;
    typedef aidlab::FieldElement Literal;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 10,
        AddCost = 40,
        MulCost = 80
    };

    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen
