#include "aidlab/number_field.hpp"

#include <algorithm>
#include <sstream>

namespace aidlab {

namespace {

Integer lcm_int(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0) return Integer(0);
    return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

/// Scale to a primitive integer polynomial with the same roots.
std::vector<Integer> primitive_integer_poly(const std::vector<Rational>& poly)
{
    Integer den = 1;
    for (const auto& c : poly) den = lcm_int(den, boost::multiprecision::denominator(c));
    std::vector<Integer> out;
    out.reserve(poly.size());
    Integer g = 0;
    for (const auto& c : poly) {
        Rational scaled = c * Rational(den);
        out.push_back(boost::multiprecision::numerator(scaled));
        g = boost::multiprecision::gcd(g, out.back());
    }
    if (g > 1)
        for (auto& c : out) c /= g;
    return out;
}

std::vector<Integer> positive_divisors(Integer n)
{
    n = boost::multiprecision::abs(n);
    if (n == 0) throw std::invalid_argument("divisors of zero requested");
    if (n > Integer("1000000000000")) {
        throw std::invalid_argument("minimal polynomial coefficients too large for root test");
    }
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    std::reverse(large.begin(), large.end());
    small.insert(small.end(), large.begin(), large.end());
    return small;
}

Rational eval_poly(const std::vector<Rational>& poly, const Rational& x)
{
    Rational acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
    return acc;
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

bool is_perfect_square(const Rational& q, Rational& root)
{
    if (q < 0) return false;
    Integer n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
    if (rn * rn != n || rd * rd != d) return false;
    root = Rational(rn, rd);
    return true;
}

/// Does the primitive quartic a4 x^4 + ... + a0 (no rational roots) split
/// into two integer quadratics?
bool splits_into_quadratics(const std::vector<Integer>& a)
{
    const Integer &a0 = a[0], &a1 = a[1], &a2 = a[2], &a3 = a[3], &a4 = a[4];
    for (const Integer& b2 : positive_divisors(a4)) {
        Integer c2 = a4 / b2;
        for (const Integer& d : positive_divisors(a0)) {
            for (int sign : {1, -1}) {
                Integer b0 = d * sign;
                Integer c0 = a0 / b0;
                // x^3: b2 c1 + c2 b1 = a3 ; x^1: c0 b1 + b0 c1 = a1
                Integer det = c2 * b0 - b2 * c0;
                std::vector<std::pair<Rational, Rational>> candidates;
                if (det != 0) {
                    Rational b1 = Rational(a3 * b0 - b2 * a1, det);
                    Rational c1 = Rational(c2 * a1 - c0 * a3, det);
                    candidates.emplace_back(b1, c1);
                } else {
                    // c2 b1^2 - a3 b1 + P b2 = 0 with P = a2 - b2 c0 - b0 c2
                    Rational P = Rational(a2 - b2 * c0 - b0 * c2);
                    Rational A = Rational(c2), B = Rational(-a3), C = P * Rational(b2);
                    Rational disc = B * B - 4 * A * C, r;
                    if (is_perfect_square(disc, r)) {
                        for (Rational b1 : {(-B + r) / (2 * A), (-B - r) / (2 * A)}) {
                            Rational c1 = (Rational(a3) - b1 * Rational(c2)) / Rational(b2);
                            candidates.emplace_back(b1, c1);
                        }
                    }
                }
                for (const auto& [b1, c1] : candidates) {
                    if (!is_integer(b1) || !is_integer(c1)) continue;
                    if (Rational(b2) * c1 + b1 * Rational(c2) != Rational(a3)) continue;
                    if (b1 * Rational(c0) + Rational(b0) * c1 != Rational(a1)) continue;
                    if (Rational(b2 * c0) + b1 * c1 + Rational(b0 * c2) != Rational(a2)) continue;
                    return true;
                }
            }
        }
    }
    return false;
}

std::string poly_string(const std::vector<Rational>& coeffs, const std::string& var)
{
    std::ostringstream os;
    bool first = true;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        const Rational& c = coeffs[k];
        if (c == 0) continue;
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? '-' : '+');
        }
        first = false;
        bool unit = mag == 1;
        if (!unit || k == 0) os << mag.str();
        if (k > 0) {
            if (!unit) os << '*';
            os << var;
            if (k > 1) os << '^' << k;
        }
    }
    if (first) os << '0';
    return os.str();
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& poly)
{
    std::vector<Rational> roots;
    std::vector<Rational> p = poly;
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.size() <= 1) return roots;
    std::size_t shift = 0;
    while (p[shift] == 0) ++shift;
    if (shift > 0) {
        roots.emplace_back(0);
        p.erase(p.begin(), p.begin() + static_cast<long>(shift));
        if (p.size() <= 1) return roots;
    }
    auto ip = primitive_integer_poly(p);
    for (const Integer& num : positive_divisors(ip.front())) {
        for (const Integer& den : positive_divisors(ip.back())) {
            for (int sign : {1, -1}) {
                Rational cand(num * sign, den);
                if (eval_poly(p, cand) == 0 &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

NumberField::NumberField(std::vector<Rational> minpoly) : minpoly_(std::move(minpoly))
{
    const int n = degree();
    std::vector<Rational> power(n);
    for (int i = 0; i < n; ++i) power[i] = -minpoly_[i];
    reduction_.push_back(power);
    for (int k = 1; k <= n - 2; ++k) {
        std::vector<Rational> next(n, Rational(0));
        for (int i = 0; i + 1 < n; ++i) next[i + 1] = power[i];
        const Rational top = power[n - 1];
        for (int i = 0; i < n; ++i) next[i] -= top * minpoly_[i];
        power = next;
        reduction_.push_back(power);
    }
}

std::shared_ptr<const NumberField> NumberField::create(std::vector<Rational> minpoly)
{
    while (!minpoly.empty() && minpoly.back() == 0) minpoly.pop_back();
    if (minpoly.size() < 3) throw std::invalid_argument("extension minimal polynomial must have degree >= 2");
    if (minpoly.back() != 1) throw std::invalid_argument("minimal polynomial must be monic");
    auto roots = rational_roots(minpoly);
    if (!roots.empty()) {
        throw std::invalid_argument("minimal polynomial " + poly_string(minpoly, "s") +
                                    " has rational root " + roots.front().str());
    }
    if (minpoly.size() == 5 && splits_into_quadratics(primitive_integer_poly(minpoly))) {
        throw std::invalid_argument("minimal polynomial " + poly_string(minpoly, "s") +
                                    " factors into rational quadratics");
    }
    return std::shared_ptr<const NumberField>(new NumberField(std::move(minpoly)));
}

std::vector<Rational> NumberField::multiply(std::span<const Rational> a, std::span<const Rational> b) const
{
    const int n = degree();
    std::vector<Rational> wide(2 * n - 1, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j)
            if (b[j] != 0) wide[i + j] += a[i] * b[j];
    }
    std::vector<Rational> out(wide.begin(), wide.begin() + n);
    for (int k = 0; k + n < 2 * n - 1; ++k) {
        const Rational& c = wide[n + k];
        if (c == 0) continue;
        for (int i = 0; i < n; ++i) out[i] += c * reduction_[k][i];
    }
    return out;
}

Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> NumberField::multiplication_matrix(
    std::span<const Rational> a) const
{
    const int n = degree();
    Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> m(n, n);
    std::vector<Rational> basis(n, Rational(0));
    for (int j = 0; j < n; ++j) {
        std::fill(basis.begin(), basis.end(), Rational(0));
        basis[j] = 1;
        auto col = multiply(a, basis);
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

std::vector<Rational> NumberField::inverse(std::span<const Rational> a) const
{
    const int n = degree();
    auto m = multiplication_matrix(a);
    // Gauss-Jordan on [m | e_0]
    Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic> aug(n, n + 1);
    aug.leftCols(n) = m;
    for (int i = 0; i < n; ++i) aug(i, n) = i == 0 ? 1 : 0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && aug(p, c) == 0) ++p;
        if (p == n) throw std::domain_error("division by zero in number field");
        if (p != c) aug.row(p).swap(aug.row(c));
        Rational inv = 1 / aug(c, c);
        for (int k = c; k <= n; ++k) aug(c, k) *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == c || aug(r, c) == 0) continue;
            Rational f = aug(r, c);
            for (int k = c; k <= n; ++k) aug(r, k) -= f * aug(c, k);
        }
    }
    std::vector<Rational> out(n);
    for (int i = 0; i < n; ++i) out[i] = aug(i, n);
    return out;
}

std::string NumberField::describe() const { return poly_string(minpoly_, "s"); }

// ---------------------------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs))
{
    normalize();
}

FieldElement FieldElement::embed(const FieldPtr& field, const Rational& q)
{
    return FieldElement(field, std::vector<Rational>{q});
}

FieldElement FieldElement::generator_power(const FieldPtr& field, int m)
{
    if (!field) {
        if (m == 0) return FieldElement(1);
        throw std::invalid_argument("generator power requested without an extension field");
    }
    FieldElement s(field, {Rational(0), Rational(1)});
    FieldElement out = embed(field, Rational(1));
    for (int i = 0; i < m; ++i) out *= s;
    return out;
}

void FieldElement::normalize()
{
    if (field_) {
        const int n = field_->degree();
        if (static_cast<int>(coeffs_.size()) > n) {
            // reduce a longer polynomial in s
            std::vector<Rational> acc(n, Rational(0));
            std::vector<Rational> power(n, Rational(0));
            power[0] = 1;
            std::vector<Rational> s(n, Rational(0));
            s[1] = 1;
            for (const auto& c : coeffs_) {
                if (c != 0)
                    for (int i = 0; i < n; ++i) acc[i] += c * power[i];
                power = field_->multiply(power, s);
            }
            coeffs_ = std::move(acc);
        }
        coeffs_.resize(n, Rational(0));
    } else if (coeffs_.empty()) {
        coeffs_.push_back(Rational(0));
    }
}

std::vector<Rational> FieldElement::components(int d) const
{
    if (static_cast<int>(coeffs_.size()) > d && !is_rational()) {
        throw std::invalid_argument("field element has more components than requested degree");
    }
    std::vector<Rational> out(d, Rational(0));
    for (int i = 0; i < d && i < static_cast<int>(coeffs_.size()); ++i) out[i] = coeffs_[i];
    return out;
}

bool FieldElement::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool FieldElement::is_rational() const
{
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

FieldPtr FieldElement::common_field(const FieldElement& a, const FieldElement& b)
{
    if (a.field_ && b.field_) {
        if (!a.field_->same_as(*b.field_)) throw std::invalid_argument("mismatched field specs");
        return a.field_;
    }
    return a.field_ ? a.field_ : b.field_;
}

FieldElement& FieldElement::operator+=(const FieldElement& o)
{
    FieldPtr f = common_field(*this, o);
    if (f && !field_) {
        field_ = f;
        normalize();
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o)
{
    FieldPtr f = common_field(*this, o);
    if (f && !field_) {
        field_ = f;
        normalize();
    }
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o)
{
    FieldPtr f = common_field(*this, o);
    if (!o.field_ || o.is_rational()) {
        const Rational c = o.coeffs_[0];
        for (auto& x : coeffs_) x *= c;
        if (f && !field_) {
            field_ = f;
            normalize();
        }
        return *this;
    }
    if (!field_ || is_rational()) {
        const Rational c = coeffs_[0];
        field_ = f;
        coeffs_ = o.coeffs_;
        for (auto& x : coeffs_) x *= c;
        return *this;
    }
    coeffs_ = f->multiply(coeffs_, o.coeffs_);
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o)
{
    FieldPtr f = common_field(*this, o);
    if (o.is_zero()) throw std::domain_error("division by zero in number field");
    if (!o.field_ || o.is_rational()) {
        const Rational c = o.coeffs_[0];
        for (auto& x : coeffs_) x /= c;
        if (f && !field_) {
            field_ = f;
            normalize();
        }
        return *this;
    }
    FieldElement inv(f, f->inverse(o.coeffs_));
    return *this *= inv;
}

FieldElement FieldElement::operator-() const
{
    FieldElement out = *this;
    for (auto& x : out.coeffs_) x = -x;
    return out;
}

bool operator==(const FieldElement& a, const FieldElement& b)
{
    if (a.field_ && b.field_ && !a.field_->same_as(*b.field_)) return false;
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.coeff(static_cast<int>(i)) != b.coeff(static_cast<int>(i))) return false;
    return true;
}

std::string FieldElement::str() const
{
    if (is_rational()) return coeffs_[0].str();
    return "(" + poly_string(coeffs_, "s") + ")";
}

}  // namespace aidlab
