#include "aidlab/free_nilpotent.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace aidlab {

namespace {

int moebius(int n)
{
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

using Combination = std::map<int, Rational>;

class HallRewriter {
public:
    HallRewriter(const std::vector<HallWord>& words, const std::vector<int>& rank, int c,
                 const std::map<std::pair<int, int>, int>& index)
        : words_(words), rank_(rank), c_(c), index_(index)
    {
    }

    // [a, b] for basis words a, b, as a Hall-basis combination.
    const Combination& bracket(int a, int b)
    {
        auto key = std::make_pair(a, b);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Combination out;
        if (a != b && words_[a].length + words_[b].length <= c_) {
            if (rank_[a] < rank_[b]) {
                for (const auto& [w, coef] : bracket(b, a)) out[w] -= coef;
            } else if (words_[a].left < 0 || rank_[words_[a].right] <= rank_[b]) {
                out[index_.at({a, b})] = 1;
            } else {
                // [[a',a''],b] = [[a',b],a''] + [a',[a'',b]]
                const int a1 = words_[a].left, a2 = words_[a].right;
                Combination first = bracket(a1, b);
                for (const auto& [w, coef] : first)
                    for (const auto& [v, c2] : bracket(w, a2)) out[v] += coef * c2;
                Combination second = bracket(a2, b);
                for (const auto& [w, coef] : second)
                    for (const auto& [v, c2] : bracket(a1, w)) out[v] += coef * c2;
            }
        }
        for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    const std::vector<HallWord>& words_;
    const std::vector<int>& rank_;
    int c_;
    const std::map<std::pair<int, int>, int>& index_;
    std::map<std::pair<int, int>, Combination> memo_;
};

}  // namespace

long witt_dimension(int r, int d)
{
    long total = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        long pw = 1;
        for (int k = 0; k < d / e; ++k) pw *= r;
        total += moebius(e) * pw;
    }
    return total / d;
}

const char* FreeNilpotent::order_description()
{
    return "Hall basis; x1 > x2 > ... > xr; longer words greater; equal lengths compare left factor then right "
           "factor; [u,v] basic iff u > v and u = [u',u''] implies u'' <= v";
}

std::string FreeNilpotent::word_string(int w) const
{
    const HallWord& h = hall_basis[w];
    if (h.left < 0) return "x" + std::to_string(h.generator + 1);
    return "[" + word_string(h.left) + "," + word_string(h.right) + "]";
}

FreeNilpotent build_free_nilpotent(int r, int c, int dim_cap)
{
    if (r < 2) throw std::invalid_argument("free nilpotent algebra needs r >= 2 generators");
    if (c < 1) throw std::invalid_argument("free nilpotent algebra needs class c >= 1");
    long expected = 0;
    for (int d = 1; d <= c; ++d) {
        expected += witt_dimension(r, d);
        if (expected > dim_cap)
            throw ResourceError("free:" + std::to_string(r) + "," + std::to_string(c) + " exceeds dimension cap " +
                                std::to_string(dim_cap));
    }

    std::vector<HallWord> words;
    std::vector<int> rank;  // position in the Hall order, larger = greater
    for (int i = 0; i < r; ++i) {
        HallWord h;
        h.generator = i;
        h.multidegree.assign(r, 0);
        h.multidegree[i] = 1;
        words.push_back(h);
        rank.push_back(r - 1 - i);
    }
    std::map<std::pair<int, int>, int> index;
    for (int len = 2; len <= c; ++len) {
        std::vector<int> fresh;
        const int existing = static_cast<int>(words.size());
        for (int u = 0; u < existing; ++u) {
            for (int v = 0; v < existing; ++v) {
                if (words[u].length + words[v].length != len) continue;
                if (rank[u] <= rank[v]) continue;
                if (words[u].left >= 0 && rank[words[u].right] > rank[v]) continue;
                HallWord h;
                h.left = u;
                h.right = v;
                h.length = len;
                h.multidegree.resize(r);
                for (int k = 0; k < r; ++k) h.multidegree[k] = words[u].multidegree[k] + words[v].multidegree[k];
                index[{u, v}] = static_cast<int>(words.size());
                fresh.push_back(static_cast<int>(words.size()));
                words.push_back(h);
            }
        }
        // ranks within this length: compare left factor, then right factor
        std::vector<int> order = fresh;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (words[a].left != words[b].left) return rank[words[a].left] < rank[words[b].left];
            return rank[words[a].right] < rank[words[b].right];
        });
        const int base = static_cast<int>(rank.size());
        rank.resize(words.size());
        for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = base + static_cast<int>(k);
    }
    const int n = static_cast<int>(words.size());
    if (n != expected) throw std::logic_error("Hall enumeration disagrees with the Witt dimension");

    HallRewriter rw(words, rank, c, index);
    LieAlgebra<Rational>::Table table(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            SparseVec<Rational> v;
            for (const auto& [w, coef] : rw.bracket(a, b)) v.emplace_back(w, coef);
            table.set(a, b, v);
        }
    std::string name = "free:" + std::to_string(r) + "," + std::to_string(c);
    LieAlgebra<Rational> g(name, FieldSpec::rationals(), std::move(table));
    return FreeNilpotent{r, c, std::move(words), std::move(g)};
}

Subspace<Rational> multidegree_component(const FreeNilpotent& f, const std::vector<int>& degvec)
{
    if (static_cast<int>(degvec.size()) != f.generators) throw std::invalid_argument("multidegree length must equal r");
    const int n = f.algebra.dim();
    std::vector<Vector<Rational>> vecs;
    for (int w = 0; w < n; ++w)
        if (f.hall_basis[w].multidegree == degvec) vecs.push_back(unit_vector<Rational>(n, w));
    return Subspace<Rational>::span(vecs, n);
}

}  // namespace aidlab
