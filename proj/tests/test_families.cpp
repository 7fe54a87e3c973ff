#include <catch2/catch_amalgamated.hpp>

#include "aidlab/families.hpp"
#include "aidlab/family_grammar.hpp"
#include "aidlab/multipoly.hpp"

using namespace aidlab;

namespace {

Vector<Rational> e(int n, int i) { return unit_vector<Rational>(n, i - 1); }

FamilySpec spec(Family f, int n)
{
    FamilySpec s;
    s.family = f;
    s.n = n;
    return s;
}

Rational coeff(const LieAlgebra<Rational>& g, int i, int j, int k) { return g.bracket(e(g.dim(), i), e(g.dim(), j))(k - 1); }

// 6(j-i) / (j(j-1) C(j+i-2, i-2)) from factorials
Rational witt_oracle(int i, int j)
{
    auto fact = [](int m) {
        Rational f(1);
        for (int k = 2; k <= m; ++k) f *= k;
        return f;
    };
    const Rational binom = fact(j + i - 2) / (fact(i - 2) * fact(j));
    return Rational(6 * (j - i)) / (Rational(j * (j - 1)) * binom);
}

}  // namespace

TEST_CASE("W_9 structure constant")
{
    const auto w = build_family(spec(Family::W, 9));
    CHECK(coeff(w, 2, 5, 7) == Rational(9, 10));
    CHECK(witt_coefficient(2, 5) == Rational(9, 10));
    for (int i = 2; i <= 4; ++i)
        for (int j = i + 1; i + j <= 9; ++j) {
            CHECK(witt_coefficient(i, j) == witt_oracle(i, j));
            CHECK(coeff(w, i, j, i + j) == witt_oracle(i, j));
        }
    // [e1, e_i] = e_{i+1}
    for (int i = 2; i < 9; ++i) CHECK(w.bracket(e(9, 1), e(9, i)) == e(9, i + 1));
}

TEST_CASE("F_n alpha table and structure constants")
{
    CHECK(f_alpha_table(13).at({4, 13}) == Rational(22105, 15246));
    for (int n = 14; n <= 16; ++n) {
        const auto f = build_family(spec(Family::F, n));
        CHECK(coeff(f, 2, 5, n - 4) == -1);
    }
    const auto f13 = build_family(spec(Family::F, 13));
    CHECK(coeff(f13, 2, 5, 9) == -1);
}

TEST_CASE("F_n shares the W_n coefficients on low degrees")
{
    for (int n = 14; n <= 16; ++n) {
        const auto f = build_family(spec(Family::F, n));
        for (int i = 2; i <= 5; ++i)
            for (int j = i + 1; i + j <= 11; ++j) CHECK(graded_coefficient(f, i, j) == witt_oracle(i, j));
    }
}

TEST_CASE("every family passes Jacobi and F_n is filiform")
{
    for (int n = 13; n <= 16; ++n) {
        const auto f = build_family(spec(Family::F, n));
        CHECK_FALSE(jacobi_check(f).has_value());
        const auto series = lower_central_series(f);
        CHECK(series[1].dim() == n - 2);
        for (std::size_t k = 2; k < series.size(); ++k) CHECK(series[k].dim() == series[k - 1].dim() - 1);
    }
    for (int n = 5; n <= 12; ++n) {
        CHECK_FALSE(jacobi_check(build_family(spec(Family::W, n))).has_value());
        CHECK_FALSE(jacobi_check(build_family(spec(Family::R, n))).has_value());
        CHECK_FALSE(jacobi_check(build_family(spec(Family::L, n))).has_value());
    }
    for (int n = 6; n <= 12; n += 2) CHECK_FALSE(jacobi_check(build_family(spec(Family::Q, n))).has_value());
}

TEST_CASE("Q_n pairing bracket")
{
    const auto q = build_family(spec(Family::Q, 6));
    CHECK(q.bracket(e(6, 2), e(6, 5)) == -e(6, 6));
    CHECK(q.center().dim() == 1);
    CHECK(q.center().contains(e(6, 6)));
    const auto q8 = build_family(spec(Family::Q, 8));
    for (int i = 2; i <= 4; ++i) CHECK(coeff(q8, i, 9 - i, 8) == (i % 2 ? 1 : -1));
}

TEST_CASE("parameter ranges are enforced")
{
    CHECK_THROWS(build_family(spec(Family::L, 2)));
    CHECK_THROWS(build_family(spec(Family::Q, 7)));
    CHECK_THROWS(build_family(spec(Family::Q, 4)));
    CHECK_THROWS(build_family(spec(Family::R, 4)));
    CHECK_THROWS(build_family(spec(Family::W, 4)));
    CHECK_THROWS(build_family(spec(Family::F, 12)));
}

TEST_CASE("almost abelian companion block")
{
    // companion matrix of x^2 is the shift e1 -> e2
    const auto c = companion_matrix({Rational(0), Rational(0), Rational(1)});
    const auto g = almost_abelian(c);
    REQUIRE(g.dim() == 3);
    // basis e1, e2, then t
    CHECK(g.bracket(e(3, 3), e(3, 1)) == e(3, 2));
    CHECK(is_zero_vector<Rational>(g.bracket(e(3, 3), e(3, 2))));
    CHECK(parse_family("aa:x^2").action == c);
}

TEST_CASE("named derivations")
{
    const auto ws = spec(Family::W, 9);
    const auto w = build_family(ws);
    Matrix<Rational> diag = zero_matrix<Rational>(9, 9);
    for (int i = 0; i < 9; ++i) diag(i, i) = i + 1;
    CHECK(named_derivation(ws, w, "h") == diag);
    for (const auto& name : derivation_names(ws)) CHECK(is_derivation(w, named_derivation(ws, w, name)));

    const auto fs = spec(Family::F, 13);
    const auto f = build_family(fs);
    CHECK_THROWS(named_derivation(fs, f, "h"));
    Matrix<Rational> diag13 = zero_matrix<Rational>(13, 13);
    for (int i = 0; i < 13; ++i) diag13(i, i) = i + 1;
    CHECK_FALSE(is_derivation(f, diag13));

    const auto qs = spec(Family::Q, 6);
    const auto q = build_family(qs);
    const auto h2 = named_derivation(qs, q, "h_2");
    Matrix<Rational> expected = zero_matrix<Rational>(6, 6);
    expected(4, 1) = 1;
    expected(5, 2) = 1;
    CHECK(h2 == expected);
    for (const auto& name : derivation_names(qs)) CHECK(is_derivation(q, named_derivation(qs, q, name)));
    CHECK_THROWS(named_derivation(qs, q, "bogus"));

    const auto rs = spec(Family::R, 7);
    const auto r = build_family(rs);
    const auto en2 = named_derivation(rs, r, "E_n2");
    CHECK(en2 * e(7, 2) == e(7, 7));
    CHECK(is_derivation(r, en2));
}

TEST_CASE("built-in witness shapes")
{
    const auto ws = spec(Family::W, 9);
    const auto w = build_family(ws);
    const auto t1 = builtin_witness(ws, w, "t1");
    REQUIRE(t1.pieces.size() == 2);
    CHECK(t1.pieces[0].nonzero == std::vector<int>{0});
    CHECK(t1.pieces[1].zero == std::vector<int>{0});
    // piece 1: (x2/x1) e_8
    CHECK(t1.pieces[0].map[7] == RationalFn<Rational>(MultiPoly<Rational>::variable(9, 1), MultiPoly<Rational>::variable(9, 0)));
    // piece 2: (1/c_{2,7}) e_7
    CHECK(t1.pieces[1].map[6].eval(std::vector<Rational>(9, Rational(1))) == 1 / witt_coefficient(2, 7));
    CHECK(builtin_witness(ws, w, "t3").pieces.size() == 4);
    CHECK_THROWS(builtin_witness(spec(Family::W, 8), build_family(spec(Family::W, 8)), "t3"));

    const auto es = parse_family("ex32:4");
    const auto ex = build_family(es);
    CHECK(builtin_witness(es, ex, "D").pieces.size() == 2);
    CHECK(witness_names(parse_family("ex33")) == std::vector<std::string>{"D"});
}

TEST_CASE("family grammar")
{
    CHECK(parse_family("W:9").family == Family::W);
    CHECK(parse_family("W:9").n == 9);
    const auto f = parse_family("free:2,3");
    CHECK(f.family == Family::free_nilpotent);
    CHECK(f.r == 2);
    CHECK(f.c == 3);
    CHECK(parse_family("heis").family == Family::heisenberg);
    CHECK(parse_family("sl2nat").family == Family::sl2_natural);
    CHECK(parse_family("ex33").family == Family::example_3_3);
    CHECK(parse_family("aa:x^2;x^2").action.rows() == 4);
    CHECK(family_label(parse_family("Q:8")) == "Q:8");
    for (const char* bad : {"", "W", "W:", "W:x", "Z:5", "free:2", "aa:", "aa:2*x^2", "W:9:1"}) CHECK_THROWS(parse_family(bad));
}
