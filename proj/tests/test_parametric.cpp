#include <catch2/catch_amalgamated.hpp>

#include "aidlab/aid_engine.hpp"
#include "aidlab/families.hpp"
#include "aidlab/family_grammar.hpp"
#include "aidlab/paper_suite.hpp"

using namespace aidlab;

namespace {

FamilySpec spec(Family f, int n)
{
    FamilySpec s;
    s.family = f;
    s.n = n;
    s.label = family_label(s);
    return s;
}

}  // namespace

TEST_CASE("inner derivations are almost inner")
{
    const auto h = heisenberg();
    const auto v = aid_exact_parametric(h, h.ad_basis(0));
    REQUIRE(v.has_value());
    CHECK(v->kind == ParametricKind::almost_inner);
    const auto w = build_family(spec(Family::W, 7));
    const auto vw = aid_exact_parametric(w, Matrix<Rational>(w.ad_basis(0) + w.ad_basis(2)));
    REQUIRE(vw.has_value());
    CHECK(vw->kind == ParametricKind::almost_inner);
}

TEST_CASE("h is not almost inner on W_5")
{
    const auto s = spec(Family::W, 5);
    const auto g = build_family(s);
    const auto v = aid_exact_parametric(g, named_derivation(s, g, "h"));
    REQUIRE(v.has_value());
    CHECK(v->kind == ParametricKind::not_almost_inner);
    CHECK(v->stratum.find("x1 != 0") != std::string::npos);
    REQUIRE(v->point.has_value());
    CHECK((*v->point)(0) != 0);
    CHECK_FALSE(in_bracket_image(g, named_derivation(s, g, "h"), *v->point));
}

TEST_CASE("t1 on F_13 is almost inner")
{
    const auto s = spec(Family::F, 13);
    const auto g = build_family(s);
    const auto v = aid_exact_parametric(g, named_derivation(s, g, "t1"));
    REQUIRE(v.has_value());
    CHECK(v->kind == ParametricKind::almost_inner);
}

TEST_CASE("outer derivations of the free and Heisenberg-type algebras are refuted")
{
    const auto s = spec(Family::Q, 6);
    const auto g = build_family(s);
    const auto v = aid_exact_parametric(g, named_derivation(s, g, "t0"));
    REQUIRE(v.has_value());
    CHECK(v->kind == ParametricKind::not_almost_inner);
    REQUIRE(v->point.has_value());
    CHECK_FALSE(in_bracket_image(g, named_derivation(s, g, "t0"), *v->point));
}

TEST_CASE("parametric verdicts agree with the sandwich on small algebras")
{
    // every Der basis element is either in the exact AID or refutable
    RunConfig rc;
    rc.parametric_fallback = false;
    for (const char* text : {"L:5", "R:5", "R:6", "W:5", "W:6", "Q:6", "heis", "ex32:3", "free:2,3"}) {
        const auto s = parse_family(text);
        const auto g = build_family(s);
        const auto rep = analyze_family(s, g, rc);
        INFO(text);
        REQUIRE(rep.status == AidStatus::exact);
        for (const auto& d : derivation_space(g).der_basis) {
            const auto v = aid_exact_parametric(g, d, 16);
            REQUIRE(v.has_value());
            CHECK((v->kind == ParametricKind::almost_inner) == rep.lower.contains(flatten<Rational>(d)));
        }
    }
}
