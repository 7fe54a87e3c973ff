#pragma once

#include <map>
#include <vector>

#include "aidlab/lie_algebra.hpp"

namespace aidlab {

// Derivations are flattened column-major: D(p, j) sits at index p + n*j,
// which matches Eigen's default storage order.
template <class S>
Vector<S> flatten(const Matrix<S>& d)
{
    const Eigen::Index n = d.rows();
    Vector<S> v(n * d.cols());
    for (Eigen::Index j = 0; j < d.cols(); ++j)
        for (Eigen::Index p = 0; p < n; ++p) v(p + n * j) = d(p, j);
    return v;
}

template <class S>
Matrix<S> unflatten(const Vector<S>& v, int n)
{
    Matrix<S> d(n, n);
    for (int j = 0; j < n; ++j)
        for (int p = 0; p < n; ++p) d(p, j) = v(p + static_cast<Eigen::Index>(n) * j);
    return d;
}

template <class S>
Matrix<S> ad(const LieAlgebra<S>& g, const Element<S>& x)
{
    return g.ad(x);
}

template <class S>
struct DerSpace {
    int n = 0;
    Subspace<S> der;             // ambient n^2
    Subspace<S> inn;
    Subspace<S> caid_condition;  // Der ∩ (Inn + Hom(g, Z(g)))
    std::vector<Matrix<S>> der_basis;

    int dim_der() const { return der.dim(); }
    int dim_inn() const { return inn.dim(); }
};

/// Solves the Leibniz system exactly.
template <class S>
DerSpace<S> compute_derivation_space(const LieAlgebra<S>& g)
{
    const int n = g.dim();
    const Eigen::Index N = static_cast<Eigen::Index>(n) * n;
    SparseEchelon<S> ech(N);
    auto idx = [n](int p, int j) { return static_cast<Eigen::Index>(p) + static_cast<Eigen::Index>(n) * j; };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] = 0, one row per component p
            std::map<int, std::map<Eigen::Index, S>> rows;
            for (const auto& [k, c] : g.table().get(i, j))
                for (int p = 0; p < n; ++p) rows[p][idx(p, k)] += c;
            for (int q = 0; q < n; ++q) {
                for (const auto& [p, c] : g.bracket_basis(q, j)) rows[p][idx(q, i)] -= c;
                for (const auto& [p, c] : g.bracket_basis(i, q)) rows[p][idx(q, j)] -= c;
            }
            for (auto& [p, row] : rows) ech.add(std::move(row));
        }
    DerSpace<S> out;
    out.n = n;
    out.der = Subspace<S>::span(ech.kernel(), N);
    for (int r = 0; r < out.der.dim(); ++r) out.der_basis.push_back(unflatten<S>(out.der.vector(r), n));
    std::vector<Vector<S>> inn;
    for (int i = 0; i < n; ++i) inn.push_back(flatten<S>(g.ad_basis(i)));
    out.inn = Subspace<S>::span(inn, N);
    // Hom(g, Z): column j equal to a central vector
    const Subspace<S>& z = g.center();
    std::vector<Vector<S>> hom;
    for (int r = 0; r < z.dim(); ++r)
        for (int j = 0; j < n; ++j) {
            Matrix<S> m = zero_matrix<S>(n, n);
            m.col(j) = z.vector(r);
            hom.push_back(flatten<S>(m));
        }
    out.caid_condition = out.inn.sum(Subspace<S>::span(hom, N)).intersect(out.der);
    return out;
}

/// Der(g), Inn(g) and the central condition, computed once per algebra.
template <class S>
const DerSpace<S>& derivation_space(const LieAlgebra<S>& g)
{
    return g.template memo_derived<DerSpace<S>>([&] { return compute_derivation_space(g); });
}

/// Killing form Gram matrix determinant; nonzero iff the algebra is semisimple.
template <class S>
S killing_determinant(const LieAlgebra<S>& s)
{
    const int m = s.dim();
    Matrix<S> gram(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) gram(i, j) = (s.ad_basis(i) * s.ad_basis(j)).trace();
    // exact determinant via elimination
    S det(1);
    for (int c = 0; c < m; ++c) {
        int p = c;
        while (p < m && is_zero(gram(p, c))) ++p;
        if (p == m) return S(0);
        if (p != c) {
            gram.row(p).swap(gram.row(c));
            det = -det;
        }
        det *= gram(c, c);
        for (int r = c + 1; r < m; ++r) {
            if (is_zero(gram(r, c))) continue;
            const S f = gram(r, c) / gram(c, c);
            gram.row(r) -= f * gram.row(c);
        }
    }
    return det;
}

template <class S>
struct DsDecomposition {
    LieAlgebra<S> product;
    const DerSpace<S>* der = nullptr;  // owned by product's cache
    std::vector<Matrix<S>> endomorphisms{};  // basis of End_s(a)
    std::vector<Matrix<S>> d_phi{};          // D_phi on a ⋊ s
    Subspace<S> dspace{};
    bool all_derivations = false;
    bool direct_sum = false;
    S killing_det{0};
};

/// Der(a ⋊ s) against Inn ⊕ {D_phi : phi ∈ End_s(a)} for abelian a.
template <class S>
DsDecomposition<S> ds_decomposition(const LieAlgebra<S>& a, const LieAlgebra<S>& s, const std::vector<Matrix<S>>& actions,
                                    std::string name)
{
    const int n = a.dim(), m = s.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!a.table().get(i, j).empty()) throw std::invalid_argument("ds_decomposition needs an abelian radical");
    DsDecomposition<S> out{semidirect(a, s, actions, std::move(name))};
    // phi rho_k - rho_k phi = 0, phi flattened column-major
    const Eigen::Index N = static_cast<Eigen::Index>(n) * n;
    Matrix<S> sys = zero_matrix<S>(static_cast<Eigen::Index>(m) * N, N);
    for (int k = 0; k < m; ++k)
        for (int p = 0; p < n; ++p)
            for (int j = 0; j < n; ++j) {
                const Eigen::Index row = k * N + p + static_cast<Eigen::Index>(n) * j;
                for (int q = 0; q < n; ++q) {
                    sys(row, p + static_cast<Eigen::Index>(n) * q) += actions[k](q, j);  // (phi rho)(p,j)
                    sys(row, q + static_cast<Eigen::Index>(n) * j) -= actions[k](p, q);  // (rho phi)(p,j)
                }
            }
    Matrix<S> ker = kernel_basis<S>(sys);
    const int total = n + m;
    std::vector<Vector<S>> dvecs;
    out.all_derivations = true;
    for (Eigen::Index c = 0; c < ker.cols(); ++c) {
        Matrix<S> phi = unflatten<S>(Vector<S>(ker.col(c)), n);
        out.endomorphisms.push_back(phi);
        Matrix<S> d = zero_matrix<S>(total, total);
        d.topLeftCorner(n, n) = phi;
        if (!is_derivation(out.product, d)) out.all_derivations = false;
        out.d_phi.push_back(d);
        dvecs.push_back(flatten<S>(d));
    }
    out.dspace = Subspace<S>::span(dvecs, static_cast<Eigen::Index>(total) * total);
    out.der = &derivation_space(out.product);
    out.direct_sum = out.all_derivations && out.der->der.contains(out.dspace) &&
                     out.der->inn.intersect(out.dspace).dim() == 0 &&
                     out.der->inn.dim() + out.dspace.dim() == out.der->der.dim();
    out.killing_det = killing_determinant(s);
    return out;
}

}  // namespace aidlab
