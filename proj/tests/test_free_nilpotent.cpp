#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "aidlab/families.hpp"
#include "aidlab/free_nilpotent.hpp"

using namespace aidlab;

namespace {

// Lyndon words of length d over r letters, by enumeration
long count_lyndon(int r, int d)
{
    long count = 0;
    std::vector<int> w(d, 0);
    while (true) {
        bool lyndon = true;
        for (int s = 1; s < d && lyndon; ++s) {
            // every proper rotation must be strictly greater
            for (int i = 0; i < d; ++i) {
                const int a = w[(i + s) % d], b = w[i];
                if (a != b) {
                    if (a < b) lyndon = false;
                    break;
                }
                if (i == d - 1) lyndon = false;  // periodic
            }
        }
        if (lyndon) ++count;
        int k = d - 1;
        while (k >= 0 && w[k] == r - 1) w[k--] = 0;
        if (k < 0) break;
        ++w[k];
    }
    return count;
}

Vector<Rational> e(int n, int i) { return unit_vector<Rational>(n, i); }

}  // namespace

TEST_CASE("Witt numbers match brute-force Lyndon enumeration")
{
    for (int r = 2; r <= 3; ++r)
        for (int d = 1; d <= 6; ++d) CHECK(witt_dimension(r, d) == count_lyndon(r, d));
}

TEST_CASE("free nilpotent dimensions")
{
    for (auto [r, c] : {std::pair{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2}, {3, 3}}) {
        const auto f = build_free_nilpotent(r, c);
        long expected = 0;
        for (int d = 1; d <= c; ++d) expected += count_lyndon(r, d);
        CHECK(f.algebra.dim() == expected);
        CHECK(f.hall_basis.size() == static_cast<std::size_t>(expected));
        CHECK_FALSE(jacobi_check(f.algebra).has_value());
    }
    CHECK(build_free_nilpotent(2, 3).algebra.dim() == 5);
    CHECK_THROWS(build_free_nilpotent(3, 5));  // dim 80 exceeds the cap
    CHECK_THROWS(build_free_nilpotent(1, 3));
}

TEST_CASE("f_{2,2} is the Heisenberg algebra")
{
    const auto f = build_free_nilpotent(2, 2);
    CHECK(f.algebra.dim() == 3);
    CHECK(f.algebra.center().dim() == 1);
    const auto& br = f.algebra.bracket_basis(0, 1);
    REQUIRE(br.size() == 1);
    CHECK(br[0].first == 2);
    CHECK(f.word_string(2) == "[x1,x2]");
}

TEST_CASE("f_{3,2} has brackets x_i, x_j -> y")
{
    const auto f = build_free_nilpotent(3, 2);
    CHECK(f.algebra.dim() == 6);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            const auto v = f.algebra.bracket_basis(i, j);
            REQUIRE(v.size() == 1);
            CHECK(v[0].first >= 3);
            CHECK((v[0].second == 1 || v[0].second == -1));
        }
    // the three images are distinct
    CHECK(f.algebra.bracket_basis(0, 1)[0].first != f.algebra.bracket_basis(0, 2)[0].first);
    CHECK(f.algebra.bracket_basis(0, 2)[0].first != f.algebra.bracket_basis(1, 2)[0].first);
}

TEST_CASE("multidegree components")
{
    const auto f = build_free_nilpotent(2, 3);
    CHECK(multidegree_component(f, {1, 1}).dim() == 1);
    CHECK(multidegree_component(f, {2, 1}).dim() == 1);
    CHECK(multidegree_component(f, {1, 2}).dim() == 1);
    CHECK(multidegree_component(f, {3, 0}).dim() == 0);
    const auto f5 = build_free_nilpotent(2, 5);
    for (int d = 1; d <= 5; ++d) {
        int total = 0;
        for (int i = 0; i <= d; ++i) total += multidegree_component(f5, {i, d - i}).dim();
        CHECK(total == witt_dimension(2, d));
    }
}

TEST_CASE("brackets respect the multidegree grading")
{
    for (int c = 2; c <= 5; ++c) {
        const auto f = build_free_nilpotent(2, c);
        const int n = f.algebra.dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const auto& da = f.hall_basis[a].multidegree;
                const auto& db = f.hall_basis[b].multidegree;
                const std::vector<int> sum{da[0] + db[0], da[1] + db[1]};
                const Vector<Rational> v = f.algebra.bracket(e(n, a), e(n, b));
                if (sum[0] + sum[1] > c) {
                    CHECK(is_zero_vector<Rational>(v));
                } else {
                    CHECK(multidegree_component(f, sum).contains(v));
                }
            }
    }
}

TEST_CASE("Hall words are listed by length and basic")
{
    const auto f = build_free_nilpotent(2, 5);
    int prev = 0;
    for (int w = 0; w < static_cast<int>(f.hall_basis.size()); ++w) {
        const auto& h = f.hall_basis[w];
        CHECK(h.length >= prev);
        prev = h.length;
        CHECK(h.length == std::accumulate(h.multidegree.begin(), h.multidegree.end(), 0));
        // a basic word is literally the bracket of its factors
        if (h.length > 1) CHECK(f.algebra.bracket(e(f.algebra.dim(), h.left), e(f.algebra.dim(), h.right)) == e(f.algebra.dim(), w));
    }
    CHECK(f.word_string(3) == "[[x1,x2],x1]");
}

TEST_CASE("f_{r,c+1} modulo its top degree has the table of f_{r,c}")
{
    for (auto [r, c] : {std::pair{2, 3}, {2, 4}, {3, 2}}) {
        const auto big = build_free_nilpotent(r, c + 1);
        const auto small = build_free_nilpotent(r, c);
        const auto q = quotient(big.algebra, lower_central_series(big.algebra)[c]);
        const int n = small.algebra.dim();
        REQUIRE(q.algebra.dim() == n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) CHECK(q.algebra.bracket(e(n, a), e(n, b)) == small.algebra.bracket(e(n, a), e(n, b)));
    }
}
