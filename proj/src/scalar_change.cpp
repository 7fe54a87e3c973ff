#include "aidlab/scalar_change.hpp"

#include <functional>

namespace aidlab {

namespace {

using FE = FieldElement;
using PolyQ = MultiPoly<Rational>;
using PolyK = MultiPoly<FE>;

void require_extension(const FieldSpec& f, const char* what)
{
    if (f.is_rationals()) throw std::invalid_argument(std::string(what) + ": needs a proper extension field");
}

FE embed(const FieldSpec& f, const Rational& q) { return FE::embed(f.ext, q); }

FE s_power(const FieldSpec& f, int m) { return FE::generator_power(f.ext, m); }

PolyK extend_poly(const PolyQ& p, const FieldSpec& f)
{
    PolyK out(p.nvars());
    for (const auto& [m, c] : p.terms()) out += PolyK::monomial(m, embed(f, c));
    return out;
}

/// Coordinate m of p over 1, s, ..., s^{n-1}.
PolyQ component(const PolyK& p, int m, int degree)
{
    PolyQ out(p.nvars());
    for (const auto& [mono, c] : p.terms()) {
        const Rational q = c.components(degree)[m];
        if (q != 0) out += PolyQ::monomial(mono, q);
    }
    return out;
}

/// Determinant by cofactor expansion (small matrices only).
PolyQ poly_det(const std::vector<std::vector<PolyQ>>& a, int nvars)
{
    const int n = static_cast<int>(a.size());
    if (n == 0) return PolyQ::constant(nvars, Rational(1));
    if (n == 1) return a[0][0];
    PolyQ acc(nvars);
    for (int c = 0; c < n; ++c) {
        if (a[0][c].is_zero()) continue;
        std::vector<std::vector<PolyQ>> minor;
        for (int r = 1; r < n; ++r) {
            std::vector<PolyQ> row;
            for (int k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(std::move(row));
        }
        PolyQ term = a[0][c] * poly_det(minor, nvars);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

/// For a = sum_m A_m s^m with polynomial A_m: the norm N(a) and adj(a) with a·adj(a) = N(a).
struct NormData {
    PolyQ norm;
    PolyK adjoint;
};

NormData norm_data(const std::vector<PolyQ>& a, const FieldSpec& f)
{
    const int n = f.degree();
    const int nv = a[0].nvars();
    // multiplication matrix: column c holds the coordinates of a · s^c
    std::vector<std::vector<PolyQ>> mat(n, std::vector<PolyQ>(n, PolyQ(nv)));
    for (int m = 0; m < n; ++m) {
        if (a[m].is_zero()) continue;
        for (int c = 0; c < n; ++c) {
            const auto coords = s_power(f, m + c).components(n);
            for (int r = 0; r < n; ++r)
                if (coords[r] != 0) mat[r][c] += a[m] * coords[r];
        }
    }
    NormData out{poly_det(mat, nv), PolyK(nv)};
    // adj(M) e_0: entry r is the (0, r) cofactor
    for (int r = 0; r < n; ++r) {
        std::vector<std::vector<PolyQ>> minor;
        for (int i = 1; i < n; ++i) {
            std::vector<PolyQ> row;
            for (int k = 0; k < n; ++k)
                if (k != r) row.push_back(mat[i][k]);
            minor.push_back(std::move(row));
        }
        PolyQ cof = poly_det(minor, nv);
        if (r % 2 != 0) cof = -cof;
        out.adjoint += extend_poly(cof, f) * s_power(f, r);
    }
    return out;
}

int k_rank(const Matrix<FE>& m) { return rank<FE>(m); }

}  // namespace

Matrix<FE> extend_matrix(const Matrix<Rational>& m, const FieldSpec& f)
{
    require_extension(f, "extend_matrix");
    Matrix<FE> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = embed(f, m(i, j));
    return out;
}

PiecewiseWitness<FE> extend_witness(const PiecewiseWitness<Rational>& w, const FieldSpec& f)
{
    require_extension(f, "extend_witness");
    PiecewiseWitness<FE> out{w.name, w.nvars, {}};
    for (const auto& p : w.pieces) {
        WitnessPiece<FE> q{p.zero, p.nonzero, {}, {}, p.label};
        for (const auto& e : p.map) q.map.emplace_back(extend_poly(e.num, f), extend_poly(e.den, f));
        if (!p.norm_factors.empty()) throw std::invalid_argument("extend_witness: norm factors are not extended");
        out.pieces.push_back(std::move(q));
    }
    return out;
}

AlgebraK extend_scalars(const AlgebraQ& g, const FieldSpec& f)
{
    require_extension(f, "extend_scalars");
    if (!g.field().is_rationals()) throw std::invalid_argument("extend_scalars: base algebra must be defined over Q");
    const int n = g.dim();
    AlgebraK::Table t(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (const auto& [k, c] : g.table().get(i, j)) t.add(i, j, k, embed(f, c));
    return AlgebraK(g.name() + "@" + f.describe(), f, std::move(t));
}

AlgebraQ restrict_scalars(const AlgebraK& g)
{
    const FieldSpec& f = g.field();
    require_extension(f, "restrict_scalars");
    const int r = g.dim(), n = f.degree();
    AlgebraQ::Table t(n * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            const auto v = g.bracket_basis(i, j);
            if (v.empty()) continue;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const int u = a * r + i, w = b * r + j;
                    if (u >= w) continue;
                    const FE sp = s_power(f, a + b);
                    for (const auto& [k, c] : v) {
                        const auto coords = (sp * c).components(n);
                        for (int q = 0; q < n; ++q)
                            if (coords[q] != 0) t.add(u, w, q * r + k, coords[q]);
                    }
                }
        }
    return AlgebraQ(g.name() + "|Q", FieldSpec::rationals(), std::move(t));
}

Matrix<Rational> restrict_matrix(const Matrix<FE>& d, const FieldSpec& f)
{
    require_extension(f, "restrict_matrix");
    const int r = static_cast<int>(d.rows()), n = f.degree();
    Matrix<Rational> out = zero_matrix<Rational>(n * r, n * r);
    for (int m = 0; m < n; ++m) {
        const FE sp = s_power(f, m);
        for (int j = 0; j < r; ++j)
            for (int p = 0; p < r; ++p) {
                if (is_zero(d(p, j))) continue;
                const auto coords = (sp * d(p, j)).components(n);
                for (int q = 0; q < n; ++q) out(q * r + p, m * r + j) = coords[q];
            }
    }
    return out;
}

Vector<Rational> restrict_vector(const Vector<FE>& v, const FieldSpec& f)
{
    require_extension(f, "restrict_vector");
    const int r = static_cast<int>(v.size()), n = f.degree();
    Vector<Rational> out(n * r);
    for (int p = 0; p < r; ++p) {
        const auto coords = v(p).components(n);
        for (int q = 0; q < n; ++q) out(q * r + p) = coords[q];
    }
    return out;
}

Matrix<Rational> multiplication_by_generator(int dim, const FieldSpec& f)
{
    Matrix<FE> s = Matrix<FE>::Identity(dim, dim);
    for (int i = 0; i < dim; ++i) s(i, i) = s_power(f, 1);
    return restrict_matrix(s, f);
}

QuadraticSplit quadratic_split(const AlgebraQ& g, const FieldSpec& f)
{
    require_extension(f, "quadratic_split");
    if (f.degree() != 2) throw std::invalid_argument("quadratic_split: extension must have degree 2");
    const int r = g.dim();
    const AlgebraK gk = extend_scalars(g, f);
    AlgebraK source = extend_scalars(restrict_scalars(gk), f);
    AlgebraK target = direct_sum(gk, gk, gk.name() + "+" + gk.name());
    // s^2 + b s + c = 0 has the second root -b - s
    const Rational b = f.ext->minpoly()[1];
    const FE s = s_power(f, 1);
    const FE conj = embed(f, -b) - s;
    Matrix<FE> iso = zero_matrix<FE>(2 * r, 2 * r);
    for (int i = 0; i < r; ++i) {
        iso(i, i) = embed(f, 1);
        iso(r + i, i) = embed(f, 1);
        iso(i, r + i) = s;
        iso(r + i, r + i) = conj;
    }
    bool ok = k_rank(iso) == 2 * r;
    for (int u = 0; u < 2 * r && ok; ++u)
        for (int w = u + 1; w < 2 * r && ok; ++w) {
            Vector<FE> lhs = iso * to_dense(source.bracket_basis(u, w), 2 * r);
            Vector<FE> rhs = target.bracket(Vector<FE>(iso.col(u)), Vector<FE>(iso.col(w)));
            ok = lhs == rhs;
        }
    if (!ok) throw std::logic_error("quadratic_split: basis map is not an isomorphism");
    Matrix<FE> inv(2 * r, 2 * r);
    for (int c = 0; c < 2 * r; ++c) inv.col(c) = *solve<FE>(iso, unit_vector<FE>(2 * r, c));
    return {std::move(source), std::move(target), std::move(iso), std::move(inv), conj, true};
}

std::vector<Matrix<Rational>> descend_derivation(const AlgebraQ& g, const Matrix<FE>& d, const FieldSpec& f)
{
    require_extension(f, "descend_derivation");
    const int r = g.dim(), n = f.degree();
    if (d.rows() != r || d.cols() != r) throw std::invalid_argument("descend_derivation: size mismatch");
    std::vector<Matrix<Rational>> out(n, zero_matrix<Rational>(r, r));
    for (int p = 0; p < r; ++p)
        for (int j = 0; j < r; ++j) {
            const auto coords = d(p, j).components(n);
            for (int m = 0; m < n; ++m) out[m](p, j) = coords[m];
        }
    for (int m = 0; m < n; ++m)
        if (!is_derivation(g, out[m]))
            throw std::logic_error("descend_derivation: component " + std::to_string(m + 1) + " is not a derivation");
    return out;
}

DerCorrespondence der_correspondence(const AlgebraQ& g, const FieldSpec& f)
{
    require_extension(f, "der_correspondence");
    DerCorrespondence out;
    out.degree = f.degree();
    out.dim_der_base = derivation_space(g).dim_der();
    const AlgebraK gk = extend_scalars(g, f);
    out.dim_der_extended = derivation_space(gk).dim_der();
    // derivations of the restriction commuting with multiplication by s
    const AlgebraQ gr = restrict_scalars(gk);
    const auto& ds = derivation_space(gr);
    const Matrix<Rational> j = multiplication_by_generator(g.dim(), f);
    const int m = ds.dim_der(), big = gr.dim();
    Matrix<Rational> sys(static_cast<Eigen::Index>(big) * big, m);
    for (int k = 0; k < m; ++k) {
        Matrix<Rational> c = ds.der_basis[k] * j - j * ds.der_basis[k];
        sys.col(k) = flatten<Rational>(c);
    }
    out.dim_k_linear_restricted = static_cast<int>(kernel_basis<Rational>(sys).cols());
    return out;
}

PiecewiseWitness<Rational> descend_witness(const PiecewiseWitness<FE>& w)
{
    PiecewiseWitness<Rational> out{w.name, w.nvars, {}};
    for (const auto& p : w.pieces) {
        if (!p.norm_factors.empty()) throw std::invalid_argument("descend_witness: norm factors are not supported");
        WitnessPiece<Rational> q{p.zero, p.nonzero, {}, {}, p.label};
        for (const auto& e : p.map) {
            if (e.num.is_zero()) {
                q.map.push_back(rf_const<Rational>(w.nvars, Rational(0)));
                continue;
            }
            const FE kappa = e.den.leading().second;
            const FE inv = FE(1) / kappa;
            PolyQ den(w.nvars), num(w.nvars);
            for (const auto& [m, c] : e.den.terms()) {
                const FE v = c * inv;
                if (!v.is_rational()) throw IllFormedWitness("descend_witness: denominator is not a K-multiple of a rational polynomial");
                den += PolyQ::monomial(m, v.coeff(0));
            }
            for (const auto& [m, c] : e.num.terms()) {
                const Rational v = (c * inv).coeff(0);
                if (v != 0) num += PolyQ::monomial(m, v);
            }
            q.map.emplace_back(std::move(num), std::move(den));
        }
        out.pieces.push_back(std::move(q));
    }
    return out;
}

bool central_rank_one(const AlgebraK& g, const Matrix<FE>& d)
{
    if (k_rank(d) != 1) return false;
    const auto& z = g.center();
    for (Eigen::Index c = 0; c < d.cols(); ++c)
        if (!is_zero_vector<FE>(Vector<FE>(d.col(c)))) return z.contains(Vector<FE>(d.col(c)));
    return false;
}

ScaledFamily build_scaled_family(const AlgebraK& g, const Matrix<FE>& d, const PiecewiseWitness<FE>& phi, std::optional<int> y)
{
    const FieldSpec& f = g.field();
    require_extension(f, "build_scaled_family");
    const int r = g.dim(), n = f.degree(), big = n * r;
    if (d.rows() != r || d.cols() != r) throw std::invalid_argument("build_scaled_family: size mismatch");
    if (!is_derivation(g, d)) throw std::invalid_argument("build_scaled_family: D is not a derivation");
    if (!central_rank_one(g, d)) throw std::invalid_argument("build_scaled_family: D must have one-dimensional central image");
    WitnessVerdict pv = verify_witness(g, d, phi);
    if (!pv.verified) throw std::invalid_argument("build_scaled_family: witness for D does not verify: " + pv.message);
    int yi = -1;
    if (y) {
        yi = *y;
        if (yi < 0 || yi >= r) throw std::invalid_argument("build_scaled_family: y out of range");
        if (is_zero_vector<FE>(Vector<FE>(d.col(yi)))) throw std::invalid_argument("build_scaled_family: y lies in ker D");
    } else {
        for (int i = 0; i < r && yi < 0; ++i)
            if (!is_zero_vector<FE>(Vector<FE>(d.col(i)))) yi = i;
    }
    for (int i = 0; i < r; ++i)
        if (i != yi && !is_zero_vector<FE>(Vector<FE>(d.col(i))))
            throw std::invalid_argument("build_scaled_family: D must vanish on every basis vector except e_y");

    ScaledFamily out{g, restrict_scalars(g), d, yi, Vector<FE>(d.col(yi)), {}, Subspace<Rational>(big * big),
                     Subspace<Rational>(big * big)};
    const AlgebraQ& gr = out.g_restricted;

    // K-coordinates x_q = sum_m X_{m r + q} s^m over the restricted variables
    std::vector<PolyK> xk(r, PolyK(big));
    std::vector<std::vector<PolyQ>> xcomp(r, std::vector<PolyQ>(n, PolyQ(big)));
    for (int q = 0; q < r; ++q)
        for (int m = 0; m < n; ++m) {
            xcomp[q][m] = PolyQ::variable(big, m * r + q);
            xk[q] += PolyK::variable(big, m * r + q, s_power(f, m));
        }
    std::vector<NormData> norms;
    for (int q = 0; q < r; ++q) norms.push_back(norm_data(xcomp[q], f));

    auto compose = [&](const PolyK& p) {
        PolyK acc(big);
        for (const auto& [mono, c] : p.terms()) {
            PolyK t = PolyK::constant(big, c);
            for (int q = 0; q < r; ++q)
                if (mono[q]) t *= xk[q].pow(mono[q]);
            acc += t;
        }
        return acc;
    };

    Subspace<FE> inn_k(static_cast<Eigen::Index>(r) * r);
    for (int i = 0; i < r; ++i) inn_k = inn_k.sum(flatten<FE>(g.ad_basis(i)));
    out.source_inner = inn_k.contains(flatten<FE>(d));
    Subspace<Rational> inn_r(static_cast<Eigen::Index>(big) * big);
    for (int i = 0; i < big; ++i) inn_r = inn_r.sum(flatten<Rational>(gr.ad_basis(i)));

    Matrix<Rational> sum_di = zero_matrix<Rational>(big, big);
    std::vector<Vector<Rational>> vecs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            ScaledMember mem;
            mem.i = i;
            mem.j = j;
            // s^{j-1} D_i sends s^{i-1} e_y to s^{i+j-2} z and kills the other basis vectors
            mem.derivation = zero_matrix<Rational>(big, big);
            Vector<FE> img = out.z;
            for (int p = 0; p < r; ++p) img(p) = img(p) * s_power(f, i + j - 2);
            mem.derivation.col((i - 1) * r + yi) = restrict_vector(img, f);
            if (j == 1) sum_di += mem.derivation;
            mem.is_derivation = is_derivation(gr, mem.derivation);

            PiecewiseWitness<Rational> w{"s^" + std::to_string(j - 1) + "*D" + std::to_string(i), big, {}};
            // a = x_y = 0 on this piece: the map vanishes
            WitnessPiece<Rational> zero_piece;
            for (int m = 0; m < n; ++m) zero_piece.zero.push_back(m * r + yi);
            zero_piece.map = zero_map<Rational>(big);
            zero_piece.label = "a=0";
            // c_i(a) s^{i+j-2} / a · phi_D(x), with 1/a = adj(a)/N(a)
            const PolyK scale =
                extend_poly(xcomp[yi][i - 1], f) * s_power(f, i + j - 2) * norms[yi].adjoint;
            for (const auto& piece : phi.pieces) {
                if (std::find(piece.zero.begin(), piece.zero.end(), yi) != piece.zero.end()) continue;
                std::vector<int> nz = piece.nonzero;
                if (std::find(nz.begin(), nz.end(), yi) == nz.end()) nz.push_back(yi);
                std::sort(nz.begin(), nz.end());
                // K-level map over the restricted variables, common denominator per entry
                std::vector<PolyQ> den_q(r, PolyQ::constant(big, Rational(1)));
                std::vector<PolyK> num_k(r, PolyK(big));
                for (int p = 0; p < r; ++p) {
                    const auto& e = piece.map[p];
                    PolyK num = e.num.substitute_zero(piece.zero);
                    if (num.is_zero()) continue;
                    PolyK den = e.den.substitute_zero(piece.zero);
                    if (!den.is_monomial()) throw IllFormedWitness("build_scaled_family: witness denominators must be monomials");
                    const auto& [dm, kappa] = den.leading();
                    PolyK inv = PolyK::constant(big, FE(1) / kappa);
                    PolyQ dq = norms[yi].norm;
                    for (int q = 0; q < r; ++q)
                        if (dm[q]) {
                            if (std::find(nz.begin(), nz.end(), q) == nz.end())
                                throw IllFormedWitness("build_scaled_family: witness divides by an unguarded coordinate");
                            inv *= norms[q].adjoint.pow(dm[q]);
                            dq *= norms[q].norm.pow(dm[q]);
                        }
                    num_k[p] = scale * compose(num) * inv;
                    den_q[p] = dq;
                }
                // split "x_q != 0" by the first nonzero coordinate of x_q
                std::vector<int> first(nz.size(), 0);
                std::function<void(std::size_t)> expand = [&](std::size_t k) {
                    if (k < nz.size()) {
                        for (int m = 0; m < n; ++m) {
                            first[k] = m;
                            expand(k + 1);
                        }
                        return;
                    }
                    WitnessPiece<Rational> wp;
                    for (int q : piece.zero)
                        for (int m = 0; m < n; ++m) wp.zero.push_back(m * r + q);
                    for (std::size_t t = 0; t < nz.size(); ++t) {
                        for (int m = 0; m < first[t]; ++m) wp.zero.push_back(m * r + nz[t]);
                        wp.nonzero.push_back(first[t] * r + nz[t]);
                        wp.norm_factors.push_back({xcomp[nz[t]], norms[nz[t]].norm});
                    }
                    wp.map.assign(big, rf_const<Rational>(big, Rational(0)));
                    for (int p = 0; p < r; ++p) {
                        if (num_k[p].is_zero()) continue;
                        for (int m = 0; m < n; ++m) {
                            PolyQ c = component(num_k[p], m, n);
                            if (!c.is_zero()) wp.map[m * r + p] = RationalFn<Rational>(std::move(c), den_q[p]);
                        }
                    }
                    wp.label = piece.label.empty() ? "a!=0" : piece.label + ", a!=0";
                    w.pieces.push_back(std::move(wp));
                };
                expand(0);
            }
            w.pieces.push_back(std::move(zero_piece));
            mem.witness = std::move(w);
            mem.verdict = verify_witness(gr, mem.derivation, mem.witness);
            Vector<Rational> v = flatten<Rational>(mem.derivation);
            mem.inner = inn_r.contains(v);
            vecs.push_back(std::move(v));
            out.members.push_back(std::move(mem));
        }
    out.sum_identity = sum_di == restrict_matrix(d, f);
    out.span_a = Subspace<Rational>::span(vecs, static_cast<Eigen::Index>(big) * big);
    out.independent = out.span_a.dim() == n * n;
    out.a_cap_inn = out.span_a.intersect(inn_r);
    if (out.source_inner) {
        std::vector<Vector<Rational>> sd;
        for (int j = 0; j < n; ++j) {
            Matrix<FE> m = d;
            for (Eigen::Index a = 0; a < m.rows(); ++a)
                for (Eigen::Index b = 0; b < m.cols(); ++b) m(a, b) = m(a, b) * s_power(f, j);
            sd.push_back(flatten<Rational>(restrict_matrix(m, f)));
        }
        out.dichotomy_holds = out.a_cap_inn.dim() == n &&
                              out.a_cap_inn == Subspace<Rational>::span(sd, static_cast<Eigen::Index>(big) * big);
    } else {
        out.dichotomy_holds = out.a_cap_inn.dim() == 0;
    }
    return out;
}

}  // namespace aidlab
