#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "aidlab/linalg.hpp"

namespace aidlab {

/// Sparse coefficient vector: (basis index, coefficient), sorted by index.
template <class S>
using SparseVec = std::vector<std::pair<int, S>>;

template <class S>
SparseVec<S> to_sparse(const Vector<S>& v)
{
    SparseVec<S> out;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) out.emplace_back(static_cast<int>(i), v(i));
    return out;
}

template <class S>
Vector<S> to_dense(const SparseVec<S>& v, int n)
{
    Vector<S> out = zero_vector<S>(n);
    for (const auto& [i, c] : v) out(i) += c;
    return out;
}

struct JacobiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite-dimensional Lie algebra given by structure constants on e_1..e_n.
/// Only brackets [e_i, e_j] with i < j are stored; the remaining ones follow by
/// antisymmetry.  Indices are 0-based in code and 1-based in all text output.
template <class S>
class LieAlgebra {
public:
    /// Collects brackets before construction.
    class Table {
    public:
        explicit Table(int dim) : dim_(dim), entries_(static_cast<std::size_t>(dim) * dim) {}
        int dim() const { return dim_; }
        /// Sets [e_i, e_j] = v, storing the antisymmetric partner implicitly.
        void set(int i, int j, const SparseVec<S>& v)
        {
            check(i, j);
            if (i == j) {
                if (!v.empty()) throw std::invalid_argument("[e_i, e_i] must vanish");
                return;
            }
            SparseVec<S> w;
            for (const auto& [k, c] : v) {
                if (k < 0 || k >= dim_) throw std::invalid_argument("bracket coefficient index out of range");
                if (!is_zero(c)) w.emplace_back(k, c);
            }
            std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            if (i > j) {
                std::swap(i, j);
                for (auto& [k, c] : w) c = -c;
            }
            entries_[static_cast<std::size_t>(i) * dim_ + j] = merge(w);
        }
        void set(int i, int j, const Vector<S>& v) { set(i, j, to_sparse(v)); }
        /// Adds c * e_k to [e_i, e_j].
        void add(int i, int j, int k, const S& c)
        {
            check(i, j);
            if (is_zero(c)) return;
            if (i == j) throw std::invalid_argument("[e_i, e_i] must vanish");
            S v = c;
            if (i > j) {
                std::swap(i, j);
                v = -v;
            }
            auto& e = entries_[static_cast<std::size_t>(i) * dim_ + j];
            e.emplace_back(k, v);
            std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            e = merge(e);
        }
        const SparseVec<S>& get(int i, int j) const { return entries_[static_cast<std::size_t>(i) * dim_ + j]; }

    private:
        void check(int i, int j) const
        {
            if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw std::invalid_argument("bracket index out of range");
        }
        static SparseVec<S> merge(const SparseVec<S>& v)
        {
            SparseVec<S> out;
            for (const auto& [k, c] : v) {
                if (!out.empty() && out.back().first == k)
                    out.back().second += c;
                else
                    out.emplace_back(k, c);
                if (is_zero(out.back().second)) out.pop_back();
            }
            return out;
        }

        int dim_;
        std::vector<SparseVec<S>> entries_;
    };

    LieAlgebra(std::string name, FieldSpec field, Table table, bool check_jacobi = true);

    const std::string& name() const { return name_; }
    const FieldSpec& field() const { return field_; }
    int dim() const { return table_.dim(); }
    const Table& table() const { return table_; }

    /// [e_i, e_j] for any i, j.
    SparseVec<S> bracket_basis(int i, int j) const
    {
        if (i == j) return {};
        if (i < j) return table_.get(i, j);
        SparseVec<S> out = table_.get(j, i);
        for (auto& [k, c] : out) c = -c;
        return out;
    }

    Vector<S> bracket(const Vector<S>& x, const Vector<S>& y) const
    {
        const int n = dim();
        if (x.size() != n || y.size() != n) throw std::invalid_argument("bracket: element from another algebra");
        Vector<S> out = zero_vector<S>(n);
        for (int i = 0; i < n; ++i) {
            if (is_zero(x(i)) && is_zero(y(i))) continue;
            for (int j = i + 1; j < n; ++j) {
                const auto& v = table_.get(i, j);
                if (v.empty()) continue;
                S f = x(i) * y(j) - x(j) * y(i);
                if (is_zero(f)) continue;
                for (const auto& [k, c] : v) out(k) += f * c;
            }
        }
        return out;
    }

    /// Matrix of y -> [e_i, y].
    const Matrix<S>& ad_basis(int i) const
    {
        ensure_ad();
        return cache_->ad[i];
    }

    /// Matrix of y -> [x, y].
    Matrix<S> ad(const Vector<S>& x) const
    {
        const int n = dim();
        Matrix<S> out = zero_matrix<S>(n, n);
        for (int i = 0; i < n; ++i) {
            if (is_zero(x(i))) continue;
            for (int j = 0; j < n; ++j) {
                for (const auto& [k, c] : bracket_basis(i, j)) out(k, j) += x(i) * c;
            }
        }
        return out;
    }

    /// Z(g), computed once.
    const Subspace<S>& center() const
    {
        std::call_once(cache_->center_once, [this] {
            const int n = dim();
            // x in Z iff ad(e_j) x = 0 for every j
            Matrix<S> stacked(static_cast<Eigen::Index>(n) * n, n);
            for (int j = 0; j < n; ++j) stacked.block(static_cast<Eigen::Index>(j) * n, 0, n, n) = ad_basis(j);
            cache_->center = Subspace<S>::kernel_of(stacked);
        });
        return cache_->center;
    }

    /// Computes a derived object once per algebra (used for the derivation space).
    template <class T, class F>
    const T& memo_derived(F&& compute) const
    {
        std::call_once(cache_->derived_once, [&] { cache_->derived = std::make_shared<const T>(compute()); });
        return *static_cast<const T*>(cache_->derived.get());
    }

private:
    struct Cache {
        std::once_flag ad_once, center_once, derived_once;
        std::vector<Matrix<S>> ad;
        Subspace<S> center;
        std::shared_ptr<const void> derived;
    };

    void ensure_ad() const
    {
        std::call_once(cache_->ad_once, [this] {
            const int n = dim();
            cache_->ad.resize(n);
            for (int i = 0; i < n; ++i) cache_->ad[i] = ad(unit_vector<S>(n, i));
        });
    }

    std::string name_;
    FieldSpec field_;
    Table table_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

template <class S>
using Element = Vector<S>;

struct JacobiViolation {
    int i, j, k;  // 0-based
    std::vector<std::string> residual;
};

template <class S>
std::optional<JacobiViolation> jacobi_check_table(const typename LieAlgebra<S>::Table& t)
{
    const int n = t.dim();
    auto br = [&](int a, int b) -> SparseVec<S> {
        if (a == b) return {};
        if (a < b) return t.get(a, b);
        SparseVec<S> out = t.get(b, a);
        for (auto& [k, c] : out) c = -c;
        return out;
    };
    std::vector<S> acc(n, S(0));
    std::vector<int> touched;
    auto add_nested = [&](int a, int b, int c) {
        // [[e_a, e_b], e_c]
        for (const auto& [p, cp] : br(a, b))
            for (const auto& [q, cq] : br(p, c)) {
                acc[q] += cp * cq;
                touched.push_back(q);
            }
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                touched.clear();
                add_nested(i, j, k);
                add_nested(j, k, i);
                add_nested(k, i, j);
                bool bad = false;
                for (int q : touched)
                    if (!is_zero(acc[q])) bad = true;
                if (bad) {
                    JacobiViolation v{i, j, k, {}};
                    for (int q = 0; q < n; ++q) v.residual.push_back(to_string(acc[q]));
                    return v;
                }
                for (int q : touched) acc[q] = S(0);
            }
    return std::nullopt;
}

/// First basis triple i<j<k violating Jacobi, with its residual.
template <class S>
std::optional<JacobiViolation> jacobi_check(const LieAlgebra<S>& g)
{
    return jacobi_check_table<S>(g.table());
}

template <class S>
LieAlgebra<S>::LieAlgebra(std::string name, FieldSpec field, Table table, bool check_jacobi)
    : name_(std::move(name)), field_(std::move(field)), table_(std::move(table))
{
    const int n = table_.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (const auto& [k, c] : table_.get(i, j))
                if (!ScalarOps<S>::belongs_to(c, field_))
                    throw std::invalid_argument("structure constant outside the algebra's field");
    if (check_jacobi) {
        if (auto v = jacobi_check_table<S>(table_)) {
            throw JacobiError("Jacobi identity fails for " + name_ + " on (e" + std::to_string(v->i + 1) + ",e" +
                              std::to_string(v->j + 1) + ",e" + std::to_string(v->k + 1) + ")");
        }
    }
}

template <class S>
const Subspace<S>& center(const LieAlgebra<S>& g)
{
    return g.center();
}

/// Span of [x, y] for x in g and y in u.
template <class S>
Subspace<S> bracket_with(const LieAlgebra<S>& g, const Subspace<S>& u)
{
    const int n = g.dim();
    std::vector<Vector<S>> vecs;
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < u.dim(); ++r) vecs.push_back(g.ad_basis(i) * u.vector(r));
    return Subspace<S>::span(vecs, n);
}

template <class S>
bool is_ideal(const LieAlgebra<S>& g, const Subspace<S>& u)
{
    return u.contains(bracket_with(g, u));
}

/// g^1 = g, g^{i+1} = [g, g^i], until the terms stop shrinking.
template <class S>
std::vector<Subspace<S>> lower_central_series(const LieAlgebra<S>& g)
{
    std::vector<Subspace<S>> out{Subspace<S>::whole(g.dim())};
    while (true) {
        Subspace<S> next = bracket_with(g, out.back());
        if (next.dim() == out.back().dim()) break;
        out.push_back(std::move(next));
        if (out.back().dim() == 0) break;
    }
    return out;
}

template <class S>
struct Quotient {
    LieAlgebra<S> algebra;
    Matrix<S> projection;          // dim(g/I) x dim(g)
    std::vector<int> complement;  // basis indices of g spanning the complement
};

template <class S>
Quotient<S> quotient(const LieAlgebra<S>& g, const Subspace<S>& ideal, std::string name = {})
{
    const int n = g.dim();
    if (ideal.ambient_dim() != n) throw std::invalid_argument("quotient: ambient mismatch");
    if (!is_ideal(g, ideal)) throw std::invalid_argument("quotient: subspace is not an ideal");
    std::vector<bool> pivot(n, false);
    for (auto p : ideal.pivots()) pivot[p] = true;
    std::vector<int> comp;
    for (int i = 0; i < n; ++i)
        if (!pivot[i]) comp.push_back(i);
    const int m = static_cast<int>(comp.size());
    auto project = [&](Vector<S> x) {
        for (int r = 0; r < ideal.dim(); ++r) {
            const S c = x(ideal.pivots()[r]);
            if (!is_zero(c)) x -= c * ideal.vector(r);
        }
        Vector<S> out(m);
        for (int a = 0; a < m; ++a) out(a) = x(comp[a]);
        return out;
    };
    Matrix<S> proj(m, n);
    for (int i = 0; i < n; ++i) proj.col(i) = project(unit_vector<S>(n, i));
    typename LieAlgebra<S>::Table t(m);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) t.set(a, b, project(to_dense(g.bracket_basis(comp[a], comp[b]), n)));
    LieAlgebra<S> q(name.empty() ? g.name() + "/I" : name, g.field(), std::move(t));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vector<S> lhs = proj * to_dense(g.bracket_basis(i, j), n);
            Vector<S> rhs = q.bracket(proj.col(i), proj.col(j));
            if (lhs != rhs) throw std::logic_error("quotient projection is not a morphism");
        }
    return {std::move(q), std::move(proj), std::move(comp)};
}

template <class S>
LieAlgebra<S> direct_sum(const LieAlgebra<S>& g, const LieAlgebra<S>& h, std::string name = {})
{
    if (!(g.field() == h.field())) throw std::invalid_argument("direct_sum: field mismatch");
    const int n = g.dim(), m = h.dim();
    typename LieAlgebra<S>::Table t(n + m);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.set(i, j, g.table().get(i, j));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            SparseVec<S> v = h.table().get(i, j);
            for (auto& [k, c] : v) k += n;
            t.set(n + i, n + j, v);
        }
    return LieAlgebra<S>(name.empty() ? g.name() + "+" + h.name() : name, g.field(), std::move(t));
}

/// Leibniz check of m on all basis pairs.
template <class S>
bool is_derivation(const LieAlgebra<S>& g, const Matrix<S>& m)
{
    const int n = g.dim();
    if (m.rows() != n || m.cols() != n) return false;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vector<S> lhs = m * to_dense(g.bracket_basis(i, j), n);
            Vector<S> rhs = g.bracket(m.col(i), unit_vector<S>(n, j)) + g.bracket(unit_vector<S>(n, i), m.col(j));
            if (lhs != rhs) return false;
        }
    return true;
}

/// a ⋊ s with basis (a_1..a_n, s_1..s_m) and [s_k, a_i] = actions[k] a_i.
/// The actions must be derivations of a and satisfy
/// [rho(s_k), rho(s_l)] = rho([s_k, s_l]) exactly.
template <class S>
LieAlgebra<S> semidirect(const LieAlgebra<S>& a, const LieAlgebra<S>& s, const std::vector<Matrix<S>>& actions,
                         std::string name)
{
    const int n = a.dim(), m = s.dim();
    if (static_cast<int>(actions.size()) != m) throw std::invalid_argument("semidirect: one action per acting basis vector");
    if (!(a.field() == s.field())) throw std::invalid_argument("semidirect: field mismatch");
    for (int k = 0; k < m; ++k) {
        if (!is_derivation(a, actions[k]))
            throw std::invalid_argument("semidirect: action " + std::to_string(k + 1) + " is not a derivation");
    }
    for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) {
            Matrix<S> comm = actions[k] * actions[l] - actions[l] * actions[k];
            Matrix<S> expect = zero_matrix<S>(n, n);
            for (const auto& [p, c] : s.bracket_basis(k, l)) expect += c * actions[p];
            if (comm != expect)
                throw std::invalid_argument("semidirect: actions " + std::to_string(k + 1) + "," + std::to_string(l + 1) +
                                            " do not represent the acting bracket");
        }
    typename LieAlgebra<S>::Table t(n + m);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) t.set(i, j, a.table().get(i, j));
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < n; ++i) {
            // [a_i, s_k] = -rho(s_k) a_i
            Vector<S> v = -actions[k].col(i);
            t.set(i, n + k, v);
        }
        for (int l = k + 1; l < m; ++l) {
            SparseVec<S> v = s.table().get(k, l);
            for (auto& [p, c] : v) p += n;
            t.set(n + k, n + l, v);
        }
    }
    return LieAlgebra<S>(std::move(name), a.field(), std::move(t));
}

template <class S>
LieAlgebra<S> abelian(int n, const FieldSpec& f = {}, std::string name = {})
{
    return LieAlgebra<S>(name.empty() ? "ab" + std::to_string(n) : name, f, typename LieAlgebra<S>::Table(n));
}

/// Semidirect product with an abelian acting space (pairwise commuting actions).
template <class S>
LieAlgebra<S> semidirect_abelian(const LieAlgebra<S>& a, const std::vector<Matrix<S>>& actions, std::string name)
{
    return semidirect(a, abelian<S>(static_cast<int>(actions.size()), a.field()), actions, std::move(name));
}

}  // namespace aidlab
