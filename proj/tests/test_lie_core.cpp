#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "aidlab/families.hpp"
#include "aidlab/free_nilpotent.hpp"
#include "aidlab/scalar_change.hpp"

using namespace aidlab;

namespace {

using Table = LieAlgebra<Rational>::Table;

Vector<Rational> e(int n, int i) { return unit_vector<Rational>(n, i - 1); }

std::vector<int> lcs_dims(const LieAlgebra<Rational>& g)
{
    std::vector<int> d;
    for (const auto& s : lower_central_series(g)) d.push_back(s.dim());
    return d;
}

FamilySpec spec(Family f, int n)
{
    FamilySpec s;
    s.family = f;
    s.n = n;
    return s;
}

Vector<Rational> random_element(std::mt19937_64& rng, int n)
{
    Vector<Rational> v(n);
    for (int i = 0; i < n; ++i) v(i) = Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 3));
    return v;
}

}  // namespace

TEST_CASE("bracket")
{
    const auto h = heisenberg();
    CHECK(h.bracket(e(3, 1), e(3, 2)) == e(3, 3));
    CHECK(h.bracket(e(3, 2), e(3, 1)) == -e(3, 3));
    std::mt19937_64 rng(3);
    const auto w9 = build_family(spec(Family::W, 9));
    for (int t = 0; t < 5; ++t) {
        const auto x = random_element(rng, 9);
        CHECK(is_zero_vector<Rational>(w9.bracket(x, x)));
    }
    CHECK(w9.bracket(e(9, 2), e(9, 5)) == Rational(9, 10) * e(9, 7));
    CHECK_THROWS_AS(h.bracket(e(3, 1), e(4, 1)), std::invalid_argument);
}

TEST_CASE("bracket is bilinear on random elements")
{
    std::mt19937_64 rng(5);
    const auto g = build_family(spec(Family::F, 13));
    for (int t = 0; t < 5; ++t) {
        const auto x = random_element(rng, 13), y = random_element(rng, 13), z = random_element(rng, 13);
        const Rational a(static_cast<long>(rng() % 7) - 3), b(static_cast<long>(rng() % 7) - 3);
        CHECK(g.bracket(a * x + b * y, z) == a * g.bracket(x, z) + b * g.bracket(y, z));
    }
}

TEST_CASE("jacobi_check")
{
    CHECK_FALSE(jacobi_check(abelian<Rational>(4)).has_value());
    CHECK_FALSE(jacobi_check(heisenberg()).has_value());

    // [e1,e2] = e3, [e1,e3] = 0, [e2,e3] = e3: the single Jacobi sum is
    // [e3,e3] + [e3,e1] + [0,e2] = 0, so no violation
    Table t(3);
    t.add(0, 1, 2, Rational(1));
    t.add(1, 2, 2, Rational(1));
    CHECK_FALSE(jacobi_check_table<Rational>(t).has_value());

    // [e1,e2] = e3, [e1,e3] = e1: the sum is [[e3,e1],e2] = -[e1,e2] = -e3
    Table bad(3);
    bad.add(0, 1, 2, Rational(1));
    bad.add(0, 2, 0, Rational(1));
    const auto v = jacobi_check_table<Rational>(bad);
    REQUIRE(v.has_value());
    CHECK(v->i == 0);
    CHECK(v->j == 1);
    CHECK(v->k == 2);
    CHECK(v->residual == std::vector<std::string>{"0", "0", "-1"});
    CHECK_THROWS_AS(LieAlgebra<Rational>("bad", FieldSpec::rationals(), bad), JacobiError);
    CHECK_NOTHROW(LieAlgebra<Rational>("bad", FieldSpec::rationals(), bad, false));
}

TEST_CASE("center")
{
    CHECK(abelian<Rational>(3).center().dim() == 3);
    const auto h = heisenberg();
    CHECK(h.center().dim() == 1);
    CHECK(h.center().contains(e(3, 3)));
    const auto w9 = build_family(spec(Family::W, 9));
    CHECK(w9.center().dim() == 1);
    CHECK(w9.center().contains(e(9, 9)));
}

TEST_CASE("lower central series")
{
    CHECK(lcs_dims(abelian<Rational>(3)) == std::vector<int>{3, 0});
    CHECK(lcs_dims(heisenberg()) == std::vector<int>{3, 1, 0});
    CHECK(lcs_dims(build_family(spec(Family::L, 5))) == std::vector<int>{5, 3, 2, 1, 0});
    const auto w = build_family(spec(Family::W, 8));
    const auto series = lower_central_series(w);
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        CHECK(series[i].contains(series[i + 1]));
        CHECK(is_ideal(w, series[i]));
    }
}

TEST_CASE("center is an ideal in every family")
{
    for (const auto& g : {build_family(spec(Family::Q, 8)), build_family(spec(Family::R, 7)), heisenberg()}) CHECK(is_ideal(g, g.center()));
}

TEST_CASE("quotient")
{
    const auto h = heisenberg();
    const auto copy = quotient(h, Subspace<Rational>(3));
    CHECK(copy.algebra.dim() == 3);
    CHECK(copy.algebra.bracket(e(3, 1), e(3, 2)) == e(3, 3));

    const auto ab = quotient(h, h.center());
    CHECK(ab.algebra.dim() == 2);
    CHECK(ab.algebra.center().dim() == 2);

    const auto l5 = build_family(spec(Family::L, 5));
    const auto l4 = build_family(spec(Family::L, 4));
    const auto q = quotient(l5, l5.center());
    CHECK(q.complement == std::vector<int>{0, 1, 2, 3});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(q.algebra.bracket(e(4, i + 1), e(4, j + 1)) == l4.bracket(e(4, i + 1), e(4, j + 1)));

    // span(e2) is not an ideal of the Heisenberg algebra
    CHECK_THROWS_AS(quotient(h, Subspace<Rational>::span({e(3, 2)}, 3)), std::invalid_argument);
}

TEST_CASE("quotient of f_{2,3} by its top degree is f_{2,2}")
{
    const auto f3 = build_free_nilpotent(2, 3);
    const auto top = lower_central_series(f3.algebra)[2];
    const auto q = quotient(f3.algebra, top);
    CHECK(q.algebra.dim() == 3);
    CHECK(lcs_dims(q.algebra) == std::vector<int>{3, 1, 0});
}

TEST_CASE("direct sum")
{
    const auto ab = direct_sum(abelian<Rational>(2), abelian<Rational>(3));
    CHECK(ab.dim() == 5);
    CHECK(ab.center().dim() == 5);
    const auto hh = direct_sum(heisenberg(), heisenberg());
    CHECK(hh.dim() == 6);
    CHECK(hh.center().dim() == 2);
    CHECK(hh.center().contains(e(6, 3)));
    CHECK(hh.center().contains(e(6, 6)));
    CHECK(is_zero_vector<Rational>(hh.bracket(e(6, 1), e(6, 5))));
    const auto hi = extend_scalars(heisenberg(), FieldSpec::extension({Rational(1), Rational(0), Rational(1)}));
    const auto h2 = extend_scalars(heisenberg(), FieldSpec::extension({Rational(-2), Rational(0), Rational(1)}));
    CHECK_THROWS_AS(direct_sum(hi, h2), std::invalid_argument);
}

TEST_CASE("center of a direct sum is the sum of the centers")
{
    const auto g = build_family(spec(Family::W, 6));
    const auto s = direct_sum(g, heisenberg());
    CHECK(s.center().dim() == g.center().dim() + 1);
    CHECK(s.center().contains(e(9, 6)));
    CHECK(s.center().contains(e(9, 9)));
}

TEST_CASE("abelian Q^3 by a shift matrix is L_4")
{
    Matrix<Rational> shift = zero_matrix<Rational>(3, 3);
    shift(1, 0) = 1;
    shift(2, 1) = 1;
    const auto g = semidirect_abelian(abelian<Rational>(3), {shift}, "shift");
    const auto l4 = build_family(spec(Family::L, 4));
    // t -> e1, a_i -> e_{i+1}; g lists a_1..a_3 before t
    Matrix<Rational> phi = zero_matrix<Rational>(4, 4);
    phi(0, 3) = 1;
    phi(1, 0) = 1;
    phi(2, 1) = 1;
    phi(3, 2) = 1;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) CHECK(phi * g.bracket(e(4, i), e(4, j)) == l4.bracket(phi * e(4, i), phi * e(4, j)));
}

TEST_CASE("semidirect products")
{
    // Q^3 by two commuting nilpotent shifts
    Matrix<Rational> n1 = zero_matrix<Rational>(3, 3), n2 = zero_matrix<Rational>(3, 3);
    n1(1, 0) = 1;
    n1(2, 1) = 1;
    n2(2, 0) = 1;
    const auto g = semidirect_abelian(abelian<Rational>(3), {n1, n2}, "ex");
    CHECK(g.dim() == 5);
    CHECK_FALSE(jacobi_check(g).has_value());

    // non-commuting actions over an abelian acting space are rejected
    Matrix<Rational> a = zero_matrix<Rational>(2, 2), b = zero_matrix<Rational>(2, 2);
    a(0, 1) = 1;
    b(1, 0) = 1;
    CHECK_THROWS_AS(semidirect_abelian(abelian<Rational>(2), {a, b}, "bad"), std::invalid_argument);

    // an action that is not a derivation is rejected
    CHECK_THROWS_AS(semidirect_abelian(heisenberg(), {Matrix<Rational>::Identity(3, 3)}, "bad"), std::invalid_argument);

    const auto sl = sl2_natural_data();
    const auto p = semidirect(abelian<Rational>(2), sl.s, sl.actions, "sl2nat");
    CHECK(p.dim() == 5);
    CHECK_FALSE(jacobi_check(p).has_value());
}
