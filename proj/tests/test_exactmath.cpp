#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aidlab/families.hpp"
#include "aidlab/linalg.hpp"
#include "aidlab/scalar.hpp"

using namespace aidlab;

namespace {

FieldSpec qi() { return FieldSpec::extension({Rational(1), Rational(0), Rational(1)}); }
FieldSpec qsqrt2() { return FieldSpec::extension({Rational(-2), Rational(0), Rational(1)}); }

Matrix<Rational> mat(std::initializer_list<std::initializer_list<long>> rows)
{
    Matrix<Rational> m(rows.size(), rows.begin()->size());
    int r = 0;
    for (const auto& row : rows) {
        int c = 0;
        for (long v : row) m(r, c++) = Rational(v);
        ++r;
    }
    return m;
}

Vector<Rational> vec(std::initializer_list<long> xs)
{
    Vector<Rational> v(xs.size());
    int i = 0;
    for (long x : xs) v(i++) = Rational(x);
    return v;
}

}  // namespace

TEST_CASE("rational parsing and printing round-trip")
{
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(Rational(-4, 6)) == "-2/3");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK(binomial(7, 3) == Rational(35));
}

TEST_CASE("field_mul")
{
    const FieldSpec f = qi();
    const FieldElement s = FieldElement::generator_power(f.ext, 1);
    CHECK(field_mul(s, s, f) == FieldElement(-1));
    CHECK(field_mul(Rational(2, 3), Rational(9, 4), FieldSpec::rationals()) == Rational(3, 2));
    const FieldSpec g = qsqrt2();
    const FieldElement t = FieldElement::generator_power(g.ext, 1);
    const FieldElement one_plus = FieldElement(1) + t;
    const FieldElement sq = field_mul(one_plus, one_plus, g);
    CHECK(sq.coeff(0) == 3);
    CHECK(sq.coeff(1) == 2);
    CHECK_THROWS_AS(field_mul(s, t, f), std::invalid_argument);
}

TEST_CASE("field inverses agree with the norm formula")
{
    // (a + b s)^{-1} = (a - b s) / (a^2 - d b^2) for s^2 = d
    const FieldSpec f = qsqrt2();
    const FieldElement s = FieldElement::generator_power(f.ext, 1);
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            if (a == 0 && b == 0) continue;
            const FieldElement x = FieldElement(Rational(a)) + FieldElement(Rational(b)) * s;
            const Rational norm = Rational(a * a - 2 * b * b);
            const FieldElement expected = (FieldElement(Rational(a)) - FieldElement(Rational(b)) * s) / FieldElement(norm);
            CHECK(FieldElement(1) / x == expected);
            CHECK(x * (FieldElement(1) / x) == FieldElement(1));
        }
    CHECK_THROWS_AS(FieldElement(1) / FieldElement(f.ext, {Rational(0), Rational(0)}), std::domain_error);
}

TEST_CASE("cubic field arithmetic reduces by the minimal polynomial")
{
    // s^3 = 2
    const FieldSpec f = FieldSpec::extension({Rational(-2), Rational(0), Rational(0), Rational(1)});
    const FieldElement s = FieldElement::generator_power(f.ext, 1);
    CHECK(s * s * s == FieldElement(2));
    CHECK(FieldElement::generator_power(f.ext, 4) == FieldElement(2) * s);
}

TEST_CASE("reducible or non-monic minimal polynomials are rejected")
{
    CHECK_THROWS_AS(FieldSpec::extension({Rational(-1), Rational(0), Rational(1)}), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::extension({Rational(1), Rational(0), Rational(2)}), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec::extension({Rational(4), Rational(0), Rational(5), Rational(0), Rational(1)}), std::invalid_argument);
    CHECK_NOTHROW(FieldSpec::extension({Rational(-2), Rational(0), Rational(0), Rational(0), Rational(1)}));
}

TEST_CASE("rref")
{
    auto [r1, k1] = rref<Rational>(Matrix<Rational>::Identity(3, 3));
    CHECK(k1 == 3);
    CHECK(r1 == Matrix<Rational>::Identity(3, 3));
    auto [r2, k2] = rref<Rational>(mat({{1, 2}, {2, 4}}));
    CHECK(k2 == 1);
    CHECK(r2 == mat({{1, 2}, {0, 0}}));
    CHECK(rank<Rational>(heisenberg().ad_basis(0)) == 1);
}

TEST_CASE("solve")
{
    const Vector<Rational> b = vec({1, -2, 5});
    CHECK(*solve<Rational>(Matrix<Rational>::Identity(3, 3), b) == b);
    CHECK_FALSE(solve<Rational>(zero_matrix<Rational>(3, 3), b).has_value());
    const auto g = heisenberg();
    const auto y = solve<Rational>(g.ad_basis(0), vec({0, 0, 1}));
    REQUIRE(y.has_value());
    CHECK(g.bracket(vec({1, 0, 0}), *y) == vec({0, 0, 1}));
    CHECK((*y)(1) == 1);
}

TEST_CASE("solve agrees with a brute-force search on small systems")
{
    const Matrix<Rational> m = mat({{1, 1, 0}, {0, 1, 1}, {1, 2, 1}});
    for (long a = -2; a <= 2; ++a)
        for (long b = -2; b <= 2; ++b)
            for (long c = -2; c <= 2; ++c) {
                const Vector<Rational> rhs = vec({a, b, c});
                // row 3 = row 1 + row 2, so solvable iff c = a + b
                CHECK(solve<Rational>(m, rhs).has_value() == (c == a + b));
                if (auto x = solve<Rational>(m, rhs)) CHECK(m * *x == rhs);
            }
}

TEST_CASE("subspace intersection and containment")
{
    const auto u = Subspace<Rational>::span(mat({{1, 1, 0}, {0, 1, 0}}));
    CHECK(u.intersect(u).dim() == u.dim());
    CHECK(u.intersect(u).contains(u));
    const auto e1 = Subspace<Rational>::span(mat({{1, 0}}));
    const auto e2 = Subspace<Rational>::span(mat({{0, 1}}));
    CHECK(e1.intersect(e2).dim() == 0);
    const auto v = Subspace<Rational>::span(mat({{1, 0, 0}, {0, 1, 0}}));
    CHECK(u.intersect(v).dim() == 2);
    CHECK(u.contains(zero_vector<Rational>(3)));
    CHECK_FALSE(e1.contains(vec({0, 1})));
    CHECK(Subspace<Rational>::span(mat({{1, 1}})).contains(vec({3, 3})));
    CHECK_THROWS_AS(e1.intersect(u), std::invalid_argument);
}

TEST_CASE("dim(U + V) + dim(U ∩ V) = dim U + dim V on seeded subspaces")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 5;
        Matrix<Rational> a(2 + trial % 3, n), b(1 + trial % 4, n);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = Rational(static_cast<long>(rng() % 3) - 1);
        for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = Rational(static_cast<long>(rng() % 3) - 1);
        const auto u = Subspace<Rational>::span(a), v = Subspace<Rational>::span(b);
        CHECK(u.sum(v).dim() + u.intersect(v).dim() == u.dim() + v.dim());
        CHECK(u.sum(v).contains(u));
        CHECK(u.contains(u.intersect(v)));
        CHECK(v.contains(u.intersect(v)));
    }
}

TEST_CASE("kernel basis vectors are annihilated and complete")
{
    const Matrix<Rational> m = mat({{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 0, 1}});
    const Matrix<Rational> k = kernel_basis<Rational>(m);
    CHECK(k.cols() == 4 - rank<Rational>(m));
    CHECK((m * k).isZero());
}
