#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aidlab/scalar.hpp"

namespace aidlab {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
bool is_zero_vector(const Vector<S>& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) return false;
    return true;
}

template <class S>
Matrix<S> zero_matrix(Eigen::Index rows, Eigen::Index cols)
{
    Matrix<S> m(rows, cols);
    m.setConstant(S(0));
    return m;
}

template <class S>
Vector<S> zero_vector(Eigen::Index n)
{
    Vector<S> v(n);
    v.setConstant(S(0));
    return v;
}

template <class S>
Vector<S> unit_vector(Eigen::Index n, Eigen::Index i)
{
    Vector<S> v = zero_vector<S>(n);
    v(i) = S(1);
    return v;
}

/// Reduce `m` to RREF in place; returns the pivot columns.
template <class S>
std::vector<Eigen::Index> rref_in_place(Matrix<S>& m)
{
    std::vector<Eigen::Index> pivots;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = r;
        while (p < rows && is_zero(m(p, c))) ++p;
        if (p == rows) continue;
        if (p != r) m.row(p).swap(m.row(r));
        const S inv = S(1) / m(r, c);
        for (Eigen::Index k = c; k < cols; ++k)
            if (!is_zero(m(r, k))) m(r, k) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || is_zero(m(i, c))) continue;
            const S f = m(i, c);
            for (Eigen::Index k = c; k < cols; ++k)
                if (!is_zero(m(r, k))) m(i, k) -= f * m(r, k);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class S>
std::pair<Matrix<S>, int> rref(Matrix<S> m)
{
    auto pivots = rref_in_place(m);
    return {std::move(m), static_cast<int>(pivots.size())};
}

template <class S>
int rank(Matrix<S> m)
{
    return static_cast<int>(rref_in_place(m).size());
}

/// One solution of m y = b, or nullopt.
template <class S>
std::optional<Vector<S>> solve(const Matrix<S>& m, const Vector<S>& b)
{
    if (b.size() != m.rows()) throw std::invalid_argument("solve: length mismatch");
    Matrix<S> aug(m.rows(), m.cols() + 1);
    aug.leftCols(m.cols()) = m;
    aug.col(m.cols()) = b;
    auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vector<S> y = zero_vector<S>(m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) y(pivots[r]) = aug(static_cast<Eigen::Index>(r), m.cols());
    return y;
}

/// Columns form a basis of {y : m y = 0}.
template <class S>
Matrix<S> kernel_basis(Matrix<S> m)
{
    const Eigen::Index cols = m.cols();
    auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix<S> out = zero_matrix<S>(cols, cols - static_cast<Eigen::Index>(pivots.size()));
    Eigen::Index k = 0;
    for (Eigen::Index f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        out(f, k) = S(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) out(pivots[r], k) = -m(static_cast<Eigen::Index>(r), f);
        ++k;
    }
    return out;
}

/// Rows form a basis of {u : u^T m = 0}.
template <class S>
Matrix<S> left_kernel_basis(const Matrix<S>& m)
{
    return kernel_basis<S>(m.transpose()).transpose();
}

/// Subspace of S^n stored as an RREF row basis.
template <class S>
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(Eigen::Index ambient) : ambient_(ambient), basis_(0, ambient) {}

    /// Span of the rows of `rows`.
    static Subspace span(const Matrix<S>& rows)
    {
        Subspace out(rows.cols());
        Matrix<S> m = rows;
        auto pivots = rref_in_place(m);
        out.basis_ = m.topRows(static_cast<Eigen::Index>(pivots.size()));
        out.pivots_ = std::move(pivots);
        return out;
    }
    static Subspace span(const std::vector<Vector<S>>& vecs, Eigen::Index ambient)
    {
        Matrix<S> rows(static_cast<Eigen::Index>(vecs.size()), ambient);
        for (std::size_t i = 0; i < vecs.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vecs[i].transpose();
        return span(rows);
    }
    static Subspace whole(Eigen::Index n)
    {
        Matrix<S> id = zero_matrix<S>(n, n);
        for (Eigen::Index i = 0; i < n; ++i) id(i, i) = S(1);
        return span(id);
    }
    /// Null space of the linear functionals given as rows.
    static Subspace kernel_of(const Matrix<S>& functionals)
    {
        return span(Matrix<S>(kernel_basis<S>(functionals).transpose()));
    }

    Eigen::Index ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.rows()); }
    const Matrix<S>& basis() const { return basis_; }
    Vector<S> vector(int i) const { return basis_.row(i).transpose(); }
    const std::vector<Eigen::Index>& pivots() const { return pivots_; }

    bool contains(const Vector<S>& w) const
    {
        if (w.size() != ambient_) throw std::invalid_argument("subspace_contains: length mismatch");
        Vector<S> r = w;
        for (Eigen::Index i = 0; i < basis_.rows(); ++i) {
            const S c = r(pivots_[i]);
            if (is_zero(c)) continue;
            for (Eigen::Index k = 0; k < ambient_; ++k)
                if (!is_zero(basis_(i, k))) r(k) -= c * basis_(i, k);
        }
        return is_zero_vector(r);
    }
    bool contains(const Subspace& other) const
    {
        check_ambient(other);
        for (int i = 0; i < other.dim(); ++i)
            if (!contains(other.vector(i))) return false;
        return true;
    }
    /// Coordinates of w on the stored basis (w must lie in the space).
    Vector<S> coordinates(const Vector<S>& w) const
    {
        Vector<S> c(basis_.rows());
        for (Eigen::Index i = 0; i < basis_.rows(); ++i) c(i) = w(pivots_[i]);
        return c;
    }

    Subspace sum(const Subspace& other) const
    {
        check_ambient(other);
        Matrix<S> rows(basis_.rows() + other.basis_.rows(), ambient_);
        rows << basis_, other.basis_;
        return span(rows);
    }
    Subspace sum(const Vector<S>& w) const
    {
        Matrix<S> rows(basis_.rows() + 1, ambient_);
        rows << basis_, w.transpose();
        return span(rows);
    }
    Subspace intersect(const Subspace& other) const
    {
        check_ambient(other);
        if (dim() == 0 || other.dim() == 0) return Subspace(ambient_);
        // alpha U = beta V  <=>  [U^T | -V^T] (alpha; beta) = 0
        const Eigen::Index a = basis_.rows(), b = other.basis_.rows();
        Matrix<S> sys(ambient_, a + b);
        sys.leftCols(a) = basis_.transpose();
        sys.rightCols(b) = -other.basis_.transpose();
        Matrix<S> ker = kernel_basis<S>(sys);
        Matrix<S> rows = ker.topRows(a).transpose() * basis_;
        return span(rows);
    }

    friend bool operator==(const Subspace& u, const Subspace& v)
    {
        return u.ambient_ == v.ambient_ && u.basis_ == v.basis_;
    }

private:
    void check_ambient(const Subspace& other) const
    {
        if (other.ambient_ != ambient_) throw std::invalid_argument("subspace ambient dimension mismatch");
    }

    Eigen::Index ambient_ = 0;
    Matrix<S> basis_;
    std::vector<Eigen::Index> pivots_;
};

/// Incremental row echelon form for large sparse homogeneous systems.
/// Rows are kept sparse; the pivot row for column c has leading entry 1 at c.
template <class S>
class SparseEchelon {
public:
    using Row = std::vector<std::pair<Eigen::Index, S>>;  // sorted by column

    explicit SparseEchelon(Eigen::Index cols) : cols_(cols) {}

    /// Adds a row; returns true when it increased the rank.
    bool add(std::map<Eigen::Index, S> row)
    {
        for (auto it = row.begin(); it != row.end();) {
            if (is_zero(it->second)) {
                it = row.erase(it);
                continue;
            }
            auto piv = pivot_rows_.find(it->first);
            if (piv == pivot_rows_.end()) {
                ++it;
                continue;
            }
            const S f = it->second;
            const Eigen::Index col = it->first;
            for (const auto& [k, v] : piv->second) {
                auto [pos, inserted] = row.try_emplace(k, S(0));
                pos->second -= f * v;
                (void)inserted;
            }
            it = row.upper_bound(col);
            row.erase(col);
        }
        if (row.empty()) return false;
        const Eigen::Index lead = row.begin()->first;
        const S inv = S(1) / row.begin()->second;
        Row stored;
        stored.reserve(row.size());
        for (const auto& [k, v] : row) stored.emplace_back(k, v * inv);
        pivot_rows_.emplace(lead, std::move(stored));
        return true;
    }

    int rank() const { return static_cast<int>(pivot_rows_.size()); }

    /// Kernel basis vectors, one per free column, in increasing free-column order.
    std::vector<Vector<S>> kernel() const
    {
        std::vector<Vector<S>> out;
        for (Eigen::Index f = 0; f < cols_; ++f) {
            if (pivot_rows_.count(f)) continue;
            Vector<S> x = zero_vector<S>(cols_);
            x(f) = S(1);
            for (auto it = pivot_rows_.rbegin(); it != pivot_rows_.rend(); ++it) {
                if (it->first > f) continue;
                S acc(0);
                for (const auto& [k, v] : it->second)
                    if (k != it->first && !is_zero(x(k))) acc += v * x(k);
                x(it->first) = -acc;
            }
            out.push_back(std::move(x));
        }
        return out;
    }

private:
    Eigen::Index cols_;
    std::map<Eigen::Index, Row> pivot_rows_;
};

}  // namespace aidlab
