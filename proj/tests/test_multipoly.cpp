#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aidlab/multipoly.hpp"
#include "aidlab/serialize.hpp"

using namespace aidlab;

using P = MultiPoly<Rational>;

namespace {

P x(int n, int i) { return P::variable(n, i); }
P k(int n, long c) { return P::constant(n, Rational(c)); }

}  // namespace

TEST_CASE("poly_eval")
{
    CHECK(poly_eval(k(2, 5), {Rational(9), Rational(-4)}) == 5);
    const P comm = x(2, 0) * x(2, 1) - x(2, 1) * x(2, 0);
    CHECK(poly_is_zero(comm));
    CHECK(poly_eval(comm, {Rational(3), Rational(7)}) == 0);
    CHECK(poly_eval(x(2, 0) * x(2, 0) + x(2, 1), {Rational(2), Rational(3)}) == 7);
    CHECK_THROWS_AS(poly_eval(x(2, 0), {Rational(1)}), std::invalid_argument);
}

TEST_CASE("poly_substitute_zero")
{
    CHECK(poly_substitute_zero(x(3, 0) * x(3, 1) + x(3, 2), {0}) == x(3, 2));
    CHECK(poly_substitute_zero(x(3, 2) * x(3, 2), {0, 1}) == x(3, 2) * x(3, 2));
    CHECK(poly_substitute_zero(x(3, 0) + x(3, 0) * x(3, 1) + k(3, 1), {0}) == k(3, 1));
}

TEST_CASE("poly_is_zero after normalization")
{
    CHECK(poly_is_zero(P(2)));
    CHECK(poly_is_zero(x(2, 0) - x(2, 0)));
    const P a = x(2, 0), b = x(2, 1);
    CHECK(poly_is_zero((a + b).pow(2) - a * a - k(2, 2) * a * b - b * b));
    CHECK_FALSE(poly_is_zero((a + b).pow(2) - a * a - b * b));
}

TEST_CASE("products agree with pointwise evaluation")
{
    std::mt19937_64 rng(11);
    auto rnd = [&] { return Rational(static_cast<long>(rng() % 9) - 4); };
    const int n = 3;
    for (int trial = 0; trial < 20; ++trial) {
        P p(n), q(n);
        for (int t = 0; t < 4; ++t) {
            p += P::variable(n, static_cast<int>(rng() % n), rnd()) * P::variable(n, static_cast<int>(rng() % n));
            q += P::variable(n, static_cast<int>(rng() % n), rnd()) + P::constant(n, rnd());
        }
        const std::vector<Rational> pt{rnd(), rnd(), rnd()};
        CHECK((p * q).eval(pt) == p.eval(pt) * q.eval(pt));
        CHECK((p + q).eval(pt) == p.eval(pt) + q.eval(pt));
        CHECK(p.pow(3).eval(pt) == p.eval(pt) * p.eval(pt) * p.eval(pt));
    }
}

TEST_CASE("substitution of a variable by a polynomial")
{
    const int n = 2;
    // x1^2 + x2 with x1 -> x2 + 1 gives x2^2 + 3 x2 + 1
    const P p = x(n, 0) * x(n, 0) + x(n, 1);
    const P s = p.substitute(0, x(n, 1) + k(n, 1));
    CHECK(s == x(n, 1) * x(n, 1) + k(n, 3) * x(n, 1) + k(n, 1));
}

TEST_CASE("rational functions compare by cross-multiplication")
{
    const int n = 2;
    const RationalFn<Rational> a(x(n, 0) * x(n, 1), x(n, 0) * x(n, 0));
    const RationalFn<Rational> b(x(n, 1), x(n, 0));
    CHECK(a == b);
    CHECK(a.eval({Rational(2), Rational(6)}) == 3);
    CHECK_THROWS_AS(RationalFn<Rational>(x(n, 0), P(n)), std::domain_error);
}

TEST_CASE("polynomial text parser")
{
    const int n = 3;
    CHECK(parse_poly<Rational>("x1*x2 - 3/2*x3^2", n) == x(n, 0) * x(n, 1) - P::constant(n, Rational(3, 2)) * x(n, 2) * x(n, 2));
    CHECK(parse_poly<Rational>("(x1+x2)^2", n) == (x(n, 0) + x(n, 1)).pow(2));
    CHECK(parse_poly<Rational>("-x1/4", n) == P::variable(n, 0, Rational(-1, 4)));
    CHECK_THROWS_AS(parse_poly<Rational>("x4", n), ParseError);
    CHECK_THROWS_AS(parse_poly<Rational>("x1/x2", n), ParseError);
    CHECK_THROWS_AS(parse_poly<Rational>("x1 +", n), ParseError);
    CHECK(parse_univariate("x^3 - 2*x + 5") == std::vector<Rational>{Rational(5), Rational(-2), Rational(0), Rational(1)});
}

TEST_CASE("printed polynomials parse back to themselves")
{
    const int n = 3;
    const P p = P::constant(n, Rational(-7, 3)) * x(n, 0) * x(n, 2) * x(n, 2) + x(n, 1) - k(n, 4);
    CHECK(parse_poly<Rational>(p.str(), n) == p);
}

TEST_CASE("the parser accepts the field generator over an extension")
{
    const FieldSpec f = FieldSpec::extension({Rational(1), Rational(0), Rational(1)});
    const FieldElement s = FieldElement::generator_power(f.ext, 1);
    const auto p = parse_poly<FieldElement>("s*x1 + s^2", 1, s);
    CHECK(p == MultiPoly<FieldElement>::variable(1, 0, s) + MultiPoly<FieldElement>::constant(1, FieldElement(-1)));
}
