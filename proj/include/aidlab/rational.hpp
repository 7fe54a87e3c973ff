#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace aidlab {

// Expression templates are disabled so that Eigen sees plain value types.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline bool is_zero(const Rational& q) { return q.is_zero(); }

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q) { return q.str(); }

inline Integer parse_integer(std::string_view text)
{
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad integer literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
}

inline Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

inline Rational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return Rational(0);
    Integer r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return Rational(r);
}

}  // namespace aidlab
