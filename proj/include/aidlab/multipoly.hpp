#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aidlab/scalar.hpp"

namespace aidlab {

using Monomial = std::vector<std::uint16_t>;

inline int total_degree(const Monomial& m)
{
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

/// Graded lexicographic order with x1 > x2 > ... .
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

template <class S>
class MultiPoly {
public:
    static constexpr std::size_t max_terms = 1000000;
    using Terms = std::map<Monomial, S, GrlexLess>;

    MultiPoly() = default;
    explicit MultiPoly(int nvars) : nvars_(nvars) {}

    static MultiPoly constant(int nvars, const S& c)
    {
        MultiPoly p(nvars);
        if (!is_zero_scalar(c)) p.terms_.emplace(Monomial(nvars, 0), c);
        return p;
    }
    /// The coordinate x_{i+1} (0-based index i).
    static MultiPoly variable(int nvars, int i, const S& c = S(1))
    {
        MultiPoly p(nvars);
        Monomial m(nvars, 0);
        m[i] = 1;
        if (!is_zero_scalar(c)) p.terms_.emplace(std::move(m), c);
        return p;
    }
    static MultiPoly monomial(const Monomial& m, const S& c)
    {
        MultiPoly p(static_cast<int>(m.size()));
        if (!is_zero_scalar(c)) p.terms_.emplace(m, c);
        return p;
    }

    int nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0); }
    S constant_term() const
    {
        auto it = terms_.find(Monomial(nvars_, 0));
        return it == terms_.end() ? S(0) : it->second;
    }
    /// Leading (greatest) term; requires a nonzero polynomial.
    const std::pair<const Monomial, S>& leading() const { return *terms_.rbegin(); }
    int degree() const { return terms_.empty() ? -1 : total_degree(terms_.rbegin()->first); }
    int degree_in(int var) const
    {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [m, c] : terms_) d = std::max<int>(d, m[var]);
        return d;
    }
    bool is_monomial() const { return terms_.size() == 1; }

    void add_term(const Monomial& m, const S& c)
    {
        if (is_zero_scalar(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero_scalar(it->second)) terms_.erase(it);
        }
        guard();
    }

    MultiPoly& operator+=(const MultiPoly& o)
    {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o)
    {
        adopt(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MultiPoly& operator*=(const S& c)
    {
        if (is_zero_scalar(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator-(MultiPoly a)
    {
        for (auto& [m, v] : a.terms_) v = -v;
        return a;
    }
    friend MultiPoly operator*(MultiPoly a, const S& c) { return a *= c; }
    friend MultiPoly operator*(const S& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        MultiPoly out(std::max(a.nvars_, b.nvars_));
        if (a.terms_.size() * b.terms_.size() > 50 * max_terms)
            throw ResourceError("polynomial product exceeds term cap");
        Monomial m(out.nvars_, 0);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                for (int i = 0; i < out.nvars_; ++i) m[i] = static_cast<std::uint16_t>(ma[i] + mb[i]);
                out.add_term(m, ca * cb);
            }
        }
        return out;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly pow(int e) const
    {
        MultiPoly out = constant(nvars_, S(1));
        for (int i = 0; i < e; ++i) out *= *this;
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto it = b.terms_.begin();
        for (const auto& [m, c] : a.terms_) {
            if (it->first != m || it->second != c) return false;
            ++it;
        }
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    S eval(const std::vector<S>& point) const
    {
        if (static_cast<int>(point.size()) != nvars_) throw std::invalid_argument("poly_eval: point length mismatch");
        S acc(0);
        for (const auto& [m, c] : terms_) {
            S t = c;
            for (int i = 0; i < nvars_; ++i)
                for (int e = 0; e < m[i]; ++e) t *= point[i];
            acc += t;
        }
        return acc;
    }

    /// Drops all terms containing any of `vars` (0-based indices).
    MultiPoly substitute_zero(const std::vector<int>& vars) const
    {
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) {
            bool keep = true;
            for (int v : vars)
                if (m[v] != 0) keep = false;
            if (keep) out.terms_.emplace_hint(out.terms_.end(), m, c);
        }
        return out;
    }

    /// Replaces variable `var` by value (a polynomial in the same variables).
    MultiPoly substitute(int var, const MultiPoly& value) const
    {
        std::vector<MultiPoly> powers{constant(nvars_, S(1))};
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) {
            while (static_cast<int>(powers.size()) <= m[var]) powers.push_back(powers.back() * value);
            Monomial rest = m;
            rest[var] = 0;
            out += monomial(rest, c) * powers[m[var]];
        }
        return out;
    }

    /// Homogenized substitution x_var -> num/den, multiplied by den^d with d = deg_var.
    MultiPoly substitute_fraction(int var, const MultiPoly& num, const MultiPoly& den, int d) const
    {
        std::vector<MultiPoly> np{constant(nvars_, S(1))}, dp{constant(nvars_, S(1))};
        for (int i = 1; i <= d; ++i) {
            np.push_back(np.back() * num);
            dp.push_back(dp.back() * den);
        }
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial rest = m;
            const int e = m[var];
            rest[var] = 0;
            out += monomial(rest, c) * np[e] * dp[d - e];
        }
        return out;
    }

    /// p = q * x_var + r where neither q nor r contains x_var; requires degree_in(var) <= 1.
    std::pair<MultiPoly, MultiPoly> split_linear(int var) const
    {
        MultiPoly q(nvars_), r(nvars_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) {
                r.terms_.emplace(m, c);
            } else {
                Monomial rest = m;
                rest[var] = 0;
                q.terms_.emplace(rest, c);
            }
        }
        return {q, r};
    }

    /// Greatest monomial dividing every term.
    Monomial monomial_content() const
    {
        Monomial g(nvars_, 0);
        if (terms_.empty()) return g;
        g = terms_.begin()->first;
        for (const auto& [m, c] : terms_)
            for (int i = 0; i < nvars_; ++i) g[i] = std::min(g[i], m[i]);
        return g;
    }
    MultiPoly divide_monomial(const Monomial& d) const
    {
        MultiPoly out(nvars_);
        for (const auto& [m, c] : terms_) {
            Monomial q = m;
            for (int i = 0; i < nvars_; ++i) {
                if (q[i] < d[i]) throw std::invalid_argument("monomial does not divide polynomial");
                q[i] = static_cast<std::uint16_t>(q[i] - d[i]);
            }
            out.terms_.emplace(std::move(q), c);
        }
        return out;
    }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    std::optional<MultiPoly> divide_exact(const MultiPoly& b) const
    {
        if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
        MultiPoly rem = *this, quot(nvars_);
        const auto& [lb, cb] = b.leading();
        while (!rem.is_zero()) {
            const auto& [lr, cr] = rem.leading();
            Monomial q = lr;
            for (int i = 0; i < nvars_; ++i) {
                if (q[i] < lb[i]) return std::nullopt;
                q[i] = static_cast<std::uint16_t>(q[i] - lb[i]);
            }
            const S c = cr / cb;
            MultiPoly t = monomial(q, c);
            quot += t;
            rem -= t * b;
        }
        return quot;
    }

    /// Variables occurring in some term.
    std::vector<int> support() const
    {
        std::vector<bool> used(nvars_, false);
        for (const auto& [m, c] : terms_)
            for (int i = 0; i < nvars_; ++i)
                if (m[i]) used[i] = true;
        std::vector<int> out;
        for (int i = 0; i < nvars_; ++i)
            if (used[i]) out.push_back(i);
        return out;
    }

    /// Canonical text, greatest term first: "3/2*x1^2*x3 - x2 + 1".
    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string cs = to_string(c);
            bool negative = !cs.empty() && cs[0] == '-';
            if (negative) cs.erase(0, 1);
            if (first) {
                if (negative) os << '-';
            } else {
                os << (negative ? " - " : " + ");
            }
            first = false;
            const bool constant_term = total_degree(m) == 0;
            bool wrote = false;
            if (cs != "1" || constant_term) {
                os << cs;
                wrote = true;
            }
            for (int i = 0; i < nvars_; ++i) {
                if (m[i] == 0) continue;
                if (wrote) os << '*';
                os << 'x' << (i + 1);
                if (m[i] > 1) os << '^' << m[i];
                wrote = true;
            }
        }
        return os.str();
    }

private:
    static bool is_zero_scalar(const S& c) { return aidlab::is_zero(c); }
    void adopt(const MultiPoly& o)
    {
        if (nvars_ == 0 && terms_.empty()) nvars_ = o.nvars_;
        if (o.nvars_ != nvars_ && !o.terms_.empty()) throw std::invalid_argument("polynomial variable count mismatch");
    }
    void guard() const
    {
        if (terms_.size() > max_terms) throw ResourceError("polynomial exceeds 10^6 terms");
    }

    int nvars_ = 0;
    Terms terms_;
};

template <class S>
bool poly_is_zero(const MultiPoly<S>& p)
{
    return p.is_zero();
}

template <class S>
S poly_eval(const MultiPoly<S>& p, const std::vector<S>& point)
{
    return p.eval(point);
}

template <class S>
MultiPoly<S> poly_substitute_zero(const MultiPoly<S>& p, const std::vector<int>& vars)
{
    return p.substitute_zero(vars);
}

/// num/den; never reduced, compared by cross-multiplication.
template <class S>
struct RationalFn {
    MultiPoly<S> num;
    MultiPoly<S> den;

    RationalFn() = default;
    RationalFn(MultiPoly<S> n, MultiPoly<S> d) : num(std::move(n)), den(std::move(d))
    {
        if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    }
    static RationalFn polynomial(MultiPoly<S> p)
    {
        const int n = p.nvars();
        return RationalFn(std::move(p), MultiPoly<S>::constant(n, S(1)));
    }

    friend bool operator==(const RationalFn& a, const RationalFn& b)
    {
        return poly_is_zero(a.num * b.den - b.num * a.den);
    }
    RationalFn operator+(const RationalFn& o) const
    {
        if (den == o.den) return RationalFn(num + o.num, den);
        return RationalFn(num * o.den + o.num * den, den * o.den);
    }
    RationalFn operator*(const RationalFn& o) const { return RationalFn(num * o.num, den * o.den); }
    S eval(const std::vector<S>& point) const { return num.eval(point) / den.eval(point); }
    std::string str() const
    {
        if (den.is_constant() && den.constant_term() == S(1)) return num.str();
        return "(" + num.str() + ")/(" + den.str() + ")";
    }
};

}  // namespace aidlab
