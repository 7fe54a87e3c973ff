#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aidlab/derivations.hpp"
#include "aidlab/witness.hpp"

namespace aidlab {

struct SamplingConfig {
    std::uint64_t seed = 0;
    int stall_limit = 25;
    int max_samples = 2000;
    int threads = 1;
};

/// Linear functionals on vec(D) (length n^2) expressing D(x) ∈ [g, x].
template <class S>
struct PointConstraint {
    Element<S> x;
    Matrix<S> constraint_rows;
};

template <class S>
PointConstraint<S> point_constraint(const LieAlgebra<S>& g, const Element<S>& x)
{
    const int n = g.dim();
    Matrix<S> u = left_kernel_basis<S>(g.ad(x));  // rows u with u^T ad_x = 0
    Matrix<S> rows = zero_matrix<S>(u.rows(), static_cast<Eigen::Index>(n) * n);
    for (Eigen::Index r = 0; r < u.rows(); ++r)
        for (int j = 0; j < n; ++j) {
            if (is_zero(x(j))) continue;
            for (int p = 0; p < n; ++p)
                if (!is_zero(u(r, p))) rows(r, p + static_cast<Eigen::Index>(n) * j) = u(r, p) * x(j);
        }
    return {x, std::move(rows)};
}

/// D(x) ∈ [g, x], decided by an exact solve.
template <class S>
bool in_bracket_image(const LieAlgebra<S>& g, const Matrix<S>& d, const Element<S>& x)
{
    return solve<S>(g.ad(x), Vector<S>(d * x)).has_value();
}

/// Deterministic probe points: e_i, then e_i + e_j, then e_i - e_j (i < j), then
/// seeded pseudorandom integer points with coordinates in [-B, B], where B
/// starts at 2 and doubles every 50 random samples.  Over an extension field
/// every coordinate of a random point is a random element of the field.  An
/// optional invertible probe basis P replaces every point v by P v.
template <class S>
class SampleSchedule {
public:
    SampleSchedule(int n, FieldSpec field, std::uint64_t seed, const Matrix<S>* probe_basis = nullptr)
        : n_(n), field_(std::move(field)), rng_(seed), probe_(probe_basis)
    {
    }

    int structured_count() const { return n_ + n_ * (n_ - 1); }
    bool in_random_phase() const { return produced_ > structured_count(); }
    int produced() const { return produced_; }

    Element<S> next()
    {
        Element<S> v = raw_next();
        return probe_ ? Element<S>(*probe_ * v) : v;
    }

private:
    Element<S> raw_next()
    {
        const int k = produced_++;
        if (k < n_) return unit_vector<S>(n_, k);
        int rest = k - n_;
        const int pairs = n_ * (n_ - 1) / 2;
        if (rest < 2 * pairs) {
            const bool difference = rest >= pairs;
            rest %= pairs;
            int i = 0;
            while (rest >= n_ - 1 - i) {
                rest -= n_ - 1 - i;
                ++i;
            }
            const int j = i + 1 + rest;
            Element<S> v = unit_vector<S>(n_, i);
            v(j) = difference ? S(-1) : S(1);
            return v;
        }
        const int random_index = rest - 2 * pairs;
        const long bound = 2L << std::min(random_index / 50, 40);
        Element<S> v(n_);
        const int d = field_.degree();
        for (int i = 0; i < n_; ++i) {
            std::vector<Rational> comps(d);
            for (int m = 0; m < d; ++m) comps[m] = Rational(draw(bound));
            v(i) = ScalarOps<S>::from_components(comps, field_);
        }
        return v;
    }

    long draw(long bound)
    {
        // raw engine output reduced modulo 2B+1, identical on every platform
        const std::uint64_t span = static_cast<std::uint64_t>(2 * bound + 1);
        return static_cast<long>(rng_() % span) - bound;
    }

    int n_;
    FieldSpec field_;
    std::mt19937_64 rng_;
    const Matrix<S>* probe_;
    int produced_ = 0;
};

template <class S>
struct UpperBound {
    Subspace<S> upper;
    int samples_used = 0;
};

/// Sound over-approximation of AID: Der ∩ (intersection of L_x over the schedule).
/// Stops early once the bound meets `floor` (e.g. Inn or a verified lower bound).
template <class S>
UpperBound<S> aid_upper_bound(const LieAlgebra<S>& g, const SamplingConfig& cfg, const Subspace<S>* floor = nullptr,
                              const Matrix<S>* probe_basis = nullptr)
{
    const DerSpace<S>& ds = derivation_space(g);
    const int n = g.dim();
    const int m = ds.dim_der();
    const int target = floor ? floor->dim() : ds.dim_inn();
    if (probe_basis && (probe_basis->rows() != n || probe_basis->cols() != n || rank<S>(*probe_basis) != n))
        throw std::invalid_argument("probe basis must be an invertible n x n matrix");
    SampleSchedule<S> schedule(n, g.field(), cfg.seed, probe_basis);
    // current bound as rows in Der-basis coordinates
    Matrix<S> coords = zero_matrix<S>(m, m);
    for (int i = 0; i < m; ++i) coords(i, i) = S(1);
    int stall = 0, used = 0;
    auto constraint_in_der = [&](const Element<S>& x) {
        // u^T B_k x for each left-kernel vector u and derivation basis vector B_k
        Matrix<S> u = left_kernel_basis<S>(g.ad(x));
        Matrix<S> images(n, m);
        for (int k = 0; k < m; ++k) images.col(k) = ds.der_basis[k] * x;
        return Matrix<S>(u * images);
    };
    const int threads = std::max(1, cfg.threads);
    bool done = coords.rows() <= target;
    while (!done && used < cfg.max_samples) {
        const int batch = std::min(threads, cfg.max_samples - used);
        std::vector<Element<S>> points;
        std::vector<bool> random_phase;
        for (int b = 0; b < batch; ++b) {
            points.push_back(schedule.next());
            random_phase.push_back(schedule.in_random_phase());
        }
        std::vector<Matrix<S>> constraints(batch);
        if (batch == 1) {
            constraints[0] = constraint_in_der(points[0]);
        } else {
            std::vector<std::future<Matrix<S>>> jobs;
            for (int b = 0; b < batch; ++b) jobs.push_back(std::async(std::launch::async, constraint_in_der, points[b]));
            for (int b = 0; b < batch; ++b) constraints[b] = jobs[b].get();
        }
        // fold in schedule order
        for (int b = 0; b < batch && !done; ++b) {
            ++used;
            const Eigen::Index before = coords.rows();
            if (constraints[b].rows() > 0 && before > 0) {
                Matrix<S> restricted = constraints[b] * coords.transpose();
                Matrix<S> ker = kernel_basis<S>(restricted);
                if (ker.cols() < before) {
                    Matrix<S> next = ker.transpose() * coords;
                    rref_in_place(next);
                    coords = next.topRows(ker.cols());
                }
            }
            if (coords.rows() < before)
                stall = 0;
            else if (random_phase[b])
                ++stall;
            if (coords.rows() <= target || stall >= cfg.stall_limit) done = true;
        }
    }
    std::vector<Vector<S>> vecs;
    for (Eigen::Index r = 0; r < coords.rows(); ++r) {
        Matrix<S> d = zero_matrix<S>(n, n);
        for (int k = 0; k < m; ++k)
            if (!is_zero(coords(r, k))) d += coords(r, k) * ds.der_basis[k];
        vecs.push_back(flatten<S>(d));
    }
    return {Subspace<S>::span(vecs, static_cast<Eigen::Index>(n) * n), used};
}

/// First schedule point x with D(x) ∉ [g, x], re-verified by a rank check.
template <class S>
std::optional<Element<S>> refute_aid(const LieAlgebra<S>& g, const Matrix<S>& d, const SamplingConfig& cfg,
                                     const Matrix<S>* probe_basis = nullptr)
{
    SampleSchedule<S> schedule(g.dim(), g.field(), cfg.seed, probe_basis);
    for (int k = 0; k < cfg.max_samples; ++k) {
        Element<S> x = schedule.next();
        if (in_bracket_image(g, d, x)) continue;
        Matrix<S> a = g.ad(x);
        Matrix<S> aug(a.rows(), a.cols() + 1);
        aug.leftCols(a.cols()) = a;
        aug.col(a.cols()) = d * x;
        if (rank<S>(aug) != rank<S>(a) + 1) throw std::logic_error("refutation point failed re-verification");
        return x;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parametric decision: Gaussian elimination on [ad_x | D x] with symbolic x.

enum class ParametricKind { almost_inner, not_almost_inner };

template <class S>
struct ParametricVerdict {
    ParametricKind kind = ParametricKind::almost_inner;
    std::string stratum;             // conditions of the refuting stratum
    std::optional<Element<S>> point; // exact refutation point inside it
    long leaves = 0;
};

namespace detail {

template <class S>
class ParametricSolver {
public:
    using Poly = MultiPoly<S>;

    ParametricSolver(const LieAlgebra<S>& g, const Matrix<S>& d, int depth_limit, std::uint64_t seed)
        : g_(g), d_(d), n_(g.dim()), depth_limit_(depth_limit), rng_(seed)
    {
    }

    std::optional<ParametricVerdict<S>> run()
    {
        Node root;
        auto x = generic_point<S>(n_);
        // entries of ad_x: (ad_x)(k, j) = sum_i x_i c_{ij}^k
        root.rows.assign(n_, Row{std::vector<Poly>(n_, Poly(n_)), Poly(n_)});
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (const auto& [k, c] : g_.bracket_basis(i, j)) root.rows[k].a[j] += x[i] * c;
        auto dx = poly_apply(d_, x);
        for (int k = 0; k < n_; ++k) root.rows[k].rhs = dx[k];
        root.active.assign(n_, true);
        Outcome out = explore(std::move(root), 0);
        if (out.kind == Outcome::inconclusive) return std::nullopt;
        ParametricVerdict<S> v;
        v.leaves = leaves_;
        if (out.kind == Outcome::refuted) {
            v.kind = ParametricKind::not_almost_inner;
            v.stratum = out.stratum;
            v.point = out.point;
        }
        return v;
    }

private:
    struct Row {
        std::vector<Poly> a;
        Poly rhs;
    };
    struct Subst {
        int var;
        Poly num, den;  // x_var = num / den
    };
    struct Node {
        std::vector<Row> rows;
        std::vector<bool> active;
        std::vector<Poly> nonzero;
        std::vector<Poly> pending;
        std::vector<Subst> subs;
    };
    struct Outcome {
        enum Kind { solvable, refuted, inconclusive } kind = solvable;
        std::string stratum;
        std::optional<Element<S>> point;
    };

    static constexpr long kLeafCap = 200000;

    std::vector<int> nonzero_vars(const Node& nd) const
    {
        std::vector<int> out;
        for (const auto& p : nd.nonzero)
            if (p.is_monomial())
                for (int v : p.support()) out.push_back(v);
        return out;
    }

    bool known_nonzero(const Poly& e, const Node& nd) const
    {
        if (e.is_zero()) return false;
        if (e.is_constant()) return true;
        const auto nzv = nonzero_vars(nd);
        Monomial m = e.monomial_content();
        for (int i = 0; i < n_; ++i)
            if (m[i] && std::find(nzv.begin(), nzv.end(), i) == nzv.end()) return false;
        Poly rest = e.divide_monomial(m);
        for (const auto& l : nd.nonzero) {
            if (l.is_monomial()) continue;
            while (!rest.is_constant()) {
                auto q = rest.divide_exact(l);
                if (!q) break;
                rest = std::move(*q);
            }
        }
        return rest.is_constant();
    }

    // monic scaling only; monomial factors carry information about the stratum
    static Poly normalize(const Poly& p)
    {
        if (p.is_zero()) return p;
        return p * (S(1) / p.leading().second);
    }

    void apply_zero(Node& nd, int var) const
    {
        const std::vector<int> vs{var};
        for (auto& r : nd.rows) {
            for (auto& e : r.a) e = e.substitute_zero(vs);
            r.rhs = r.rhs.substitute_zero(vs);
        }
        for (auto& p : nd.nonzero) p = p.substitute_zero(vs);
        for (auto& p : nd.pending) p = p.substitute_zero(vs);
        nd.subs.push_back({var, Poly(n_), Poly::constant(n_, S(1))});
    }

    void apply_fraction(Node& nd, int var, const Poly& num, const Poly& den) const
    {
        for (auto& r : nd.rows) {
            int deg = r.rhs.degree_in(var);
            for (const auto& e : r.a) deg = std::max(deg, e.degree_in(var));
            if (deg <= 0) continue;
            for (auto& e : r.a) e = e.substitute_fraction(var, num, den, deg);
            r.rhs = r.rhs.substitute_fraction(var, num, den, deg);
        }
        auto one = [&](Poly& p) {
            const int deg = p.degree_in(var);
            if (deg > 0) p = p.substitute_fraction(var, num, den, deg);
        };
        for (auto& p : nd.nonzero) one(p);
        for (auto& p : nd.pending) one(p);
        nd.subs.push_back({var, num, den});
    }

    std::string describe(const Node& nd, const Poly* extra_nonzero) const
    {
        std::string out;
        auto add = [&](const std::string& s) { out += (out.empty() ? "" : "; ") + s; };
        for (const auto& s : nd.subs) {
            if (s.num.is_zero())
                add("x" + std::to_string(s.var + 1) + " = 0");
            else
                add("x" + std::to_string(s.var + 1) + " = (" + s.num.str() + ")/(" + s.den.str() + ")");
        }
        for (const auto& p : nd.nonzero) add(p.str() + " != 0");
        if (extra_nonzero) add(extra_nonzero->str() + " != 0");
        return out.empty() ? "generic" : out;
    }

    /// Rational point of the stratum where `witness_poly` != 0, verified exactly.
    std::optional<Element<S>> find_point(const Node& nd, const Poly& witness_poly)
    {
        std::vector<bool> fixed(n_, false);
        for (const auto& s : nd.subs) fixed[s.var] = true;
        for (int attempt = 0; attempt < 64; ++attempt) {
            const long bound = 3L << std::min(attempt / 8, 20);
            std::vector<S> pt(n_, S(0));
            for (int i = 0; i < n_; ++i)
                if (!fixed[i]) pt[i] = S(static_cast<long>(rng_() % static_cast<std::uint64_t>(2 * bound + 1)) - bound);
            bool ok = !is_zero(witness_poly.eval(pt));
            for (const auto& p : nd.nonzero) ok = ok && !is_zero(p.eval(pt));
            if (!ok) continue;
            for (auto it = nd.subs.rbegin(); it != nd.subs.rend() && ok; ++it) {
                const S den = it->den.eval(pt);
                if (is_zero(den)) {
                    ok = false;
                    break;
                }
                pt[it->var] = it->num.eval(pt) / den;
            }
            if (!ok) continue;
            Element<S> x(n_);
            for (int i = 0; i < n_; ++i) x(i) = pt[i];
            if (!in_bracket_image(g_, d_, x)) return x;
        }
        return std::nullopt;
    }

    Outcome explore(Node nd, int depth)
    {
        if (++leaves_ > kLeafCap) return {Outcome::inconclusive, {}, {}};
        while (true) {
            for (auto& p : nd.nonzero)
                if (p.is_zero()) return {};  // empty stratum
            if (!nd.pending.empty()) {
                Poly p = normalize(nd.pending.back());
                nd.pending.pop_back();
                if (p.is_zero()) continue;
                if (p.is_constant() || known_nonzero(p, nd)) return {};  // empty stratum
                return split_equation(std::move(nd), std::move(p), depth);
            }
            // a row with vanishing coefficient part demands rhs = 0
            for (const auto& r : nd.rows) {
                bool empty_row = true;
                for (int c = 0; c < n_ && empty_row; ++c)
                    if (nd.active[c] && !r.a[c].is_zero()) empty_row = false;
                if (empty_row && !r.rhs.is_zero()) {
                    auto pt = find_point(nd, r.rhs);
                    if (!pt) return {Outcome::inconclusive, {}, {}};
                    return {Outcome::refuted, describe(nd, &r.rhs), pt};
                }
            }
            // pivot choice: known-nonzero entries first, then fewest terms, ties by column
            int best_r = -1, best_c = -1;
            bool best_known = false;
            std::size_t best_terms = 0;
            for (int c = 0; c < n_; ++c) {
                if (!nd.active[c]) continue;
                for (int r = 0; r < static_cast<int>(nd.rows.size()); ++r) {
                    const Poly& e = nd.rows[r].a[c];
                    if (e.is_zero()) continue;
                    const bool known = known_nonzero(e, nd);
                    const bool better = best_r < 0 || (known && !best_known) ||
                                        (known == best_known && e.size() < best_terms);
                    if (better) {
                        best_r = r;
                        best_c = c;
                        best_known = known;
                        best_terms = e.size();
                    }
                }
            }
            if (best_r < 0) return {};  // solvable leaf
            if (!best_known) {
                if (depth >= depth_limit_) return {Outcome::inconclusive, {}, {}};
                const Poly pivot = nd.rows[best_r].a[best_c];
                Node zero_branch = nd;
                zero_branch.pending.push_back(pivot);
                nd.nonzero.push_back(normalize(pivot));
                // the pending equation is charged when split_equation resolves it
                Outcome o = explore(std::move(zero_branch), depth);
                if (o.kind != Outcome::solvable) return o;
                ++depth;
            }
            eliminate(nd, best_r, best_c);
        }
    }

    Outcome split_equation(Node nd, Poly p, int depth)
    {
        if (depth >= depth_limit_) return {Outcome::inconclusive, {}, {}};
        const auto nzv = nonzero_vars(nd);
        // factor out the monomial part first
        Monomial m = p.monomial_content();
        std::vector<int> unknown_vars;
        for (int i = 0; i < n_; ++i)
            if (m[i] && std::find(nzv.begin(), nzv.end(), i) == nzv.end()) unknown_vars.push_back(i);
        Poly rest = p.divide_monomial(m);
        // depth counts case splits only; a substitution under a known-nonzero
        // coefficient stays on the same level
        bool split = false;
        if (!unknown_vars.empty()) {
            split = true;
            for (std::size_t k = 0; k < unknown_vars.size(); ++k) {
                Node child = nd;
                for (std::size_t j = 0; j < k; ++j) child.nonzero.push_back(Poly::variable(n_, unknown_vars[j]));
                apply_zero(child, unknown_vars[k]);
                Outcome o = explore(std::move(child), depth + 1);
                if (o.kind != Outcome::solvable) return o;
            }
            for (int v : unknown_vars) nd.nonzero.push_back(Poly::variable(n_, v));
        }
        if (rest.is_constant()) return {};  // all factors nonzero: empty
        nd.pending.push_back(rest);
        Poly eq = normalize(nd.pending.back());
        nd.pending.pop_back();
        // a variable of degree one: eq = q x_k + r
        int var = -1;
        std::size_t best = 0;
        for (int v : eq.support()) {
            if (eq.degree_in(v) != 1) continue;
            auto [q, r] = eq.split_linear(v);
            if (var < 0 || q.size() < best) {
                var = v;
                best = q.size();
            }
        }
        if (var < 0) return {Outcome::inconclusive, {}, {}};
        auto [q, r] = eq.split_linear(var);
        if (!known_nonzero(q, nd)) {
            Node degenerate = nd;
            degenerate.pending.push_back(q);
            degenerate.pending.push_back(r);
            Outcome o = explore(std::move(degenerate), depth + 1);
            if (o.kind != Outcome::solvable) return o;
            nd.nonzero.push_back(normalize(q));
            split = true;
        }
        apply_fraction(nd, var, -r, q);
        return explore(std::move(nd), split ? depth + 1 : depth);
    }

    void eliminate(Node& nd, int pr, int pc)
    {
        const Row pivot_row = nd.rows[pr];
        const Poly& p = pivot_row.a[pc];
        std::vector<Row> next;
        for (int r = 0; r < static_cast<int>(nd.rows.size()); ++r) {
            if (r == pr) continue;
            Row row = std::move(nd.rows[r]);
            const Poly f = row.a[pc];
            if (!f.is_zero()) {
                for (int c = 0; c < n_; ++c) {
                    if (!nd.active[c]) continue;
                    row.a[c] = row.a[c] * p - pivot_row.a[c] * f;
                }
                row.rhs = row.rhs * p - pivot_row.rhs * f;
                reduce_row(row, nd);
            }
            next.push_back(std::move(row));
        }
        nd.rows = std::move(next);
        nd.active[pc] = false;
    }

    // divide a row by its common monomial factor and by known nonzero factors
    void reduce_row(Row& row, const Node& nd) const
    {
        Monomial g;
        bool first = true;
        auto fold = [&](const Poly& e) {
            if (e.is_zero()) return;
            Monomial m = e.monomial_content();
            if (first) {
                g = m;
                first = false;
            } else {
                for (int i = 0; i < n_; ++i) g[i] = std::min(g[i], m[i]);
            }
        };
        for (int c = 0; c < n_; ++c)
            if (nd.active[c]) fold(row.a[c]);
        fold(row.rhs);
        if (first) return;
        const auto nzv = nonzero_vars(nd);
        for (int i = 0; i < n_; ++i)
            if (std::find(nzv.begin(), nzv.end(), i) == nzv.end()) g[i] = 0;  // only divide by known nonzero variables
        if (total_degree(g) == 0) return;
        for (int c = 0; c < n_; ++c)
            if (nd.active[c] && !row.a[c].is_zero()) row.a[c] = row.a[c].divide_monomial(g);
        if (!row.rhs.is_zero()) row.rhs = row.rhs.divide_monomial(g);
    }

    const LieAlgebra<S>& g_;
    const Matrix<S>& d_;
    int n_;
    int depth_limit_;
    std::mt19937_64 rng_;
    long leaves_ = 0;
};

}  // namespace detail

/// Exact decision of D ∈ AID(g) by stratified elimination; nullopt when the
/// depth limit is exceeded or a stratum cannot be resolved.
template <class S>
std::optional<ParametricVerdict<S>> aid_exact_parametric(const LieAlgebra<S>& g, const Matrix<S>& d, int depth_limit = 12)
{
    detail::ParametricSolver<S> solver(g, d, depth_limit, 0);
    return solver.run();
}

// ---------------------------------------------------------------------------

enum class AidStatus { exact, bounded };

template <class S>
struct Generator {
    Matrix<S> derivation;
    std::string provenance;  // "inner", "witness:<name>", "parametric", "descended"
};

template <class S>
struct Refutation {
    Matrix<S> derivation;
    Element<S> point;
};

template <class S>
struct AidReport {
    std::string algebra;
    int dim_der = 0;
    int dim_inn = 0;
    Subspace<S> lower, upper, caid_lower, caid_upper;
    AidStatus status = AidStatus::bounded;
    std::vector<Generator<S>> generators;
    std::vector<Refutation<S>> refuted;
    std::vector<std::string> notes;
    int samples_used = 0;
    std::uint64_t seed = 0;
};

template <class S>
struct NamedWitness {
    std::string name;
    Matrix<S> derivation;
    PiecewiseWitness<S> witness;
};

struct SandwichOptions {
    bool parametric_fallback = false;
    int parametric_depth = 12;
    bool refute = true;
};

struct SoundnessError : std::logic_error {
    using std::logic_error::logic_error;
};

/// lower = Inn + verified witnesses, upper = sampled bound; exact iff they meet.
template <class S>
AidReport<S> aid_sandwich(const LieAlgebra<S>& g, const std::vector<NamedWitness<S>>& witnesses, const SamplingConfig& cfg,
                          const SandwichOptions& opt = {}, const Matrix<S>* probe_basis = nullptr)
{
    const DerSpace<S>& ds = derivation_space(g);
    const int n = g.dim();
    AidReport<S> rep;
    rep.algebra = g.name();
    rep.dim_der = ds.dim_der();
    rep.dim_inn = ds.dim_inn();
    rep.seed = cfg.seed;
    Subspace<S> lower(static_cast<Eigen::Index>(n) * n);
    for (int i = 0; i < n; ++i) {
        Vector<S> v = flatten<S>(g.ad_basis(i));
        if (lower.contains(v)) continue;
        lower = lower.sum(v);
        rep.generators.push_back({g.ad_basis(i), "inner"});
    }
    for (const auto& w : witnesses) {
        if (!is_derivation(g, w.derivation)) throw std::invalid_argument("witness target " + w.name + " is not a derivation");
        Vector<S> v = flatten<S>(w.derivation);
        WitnessVerdict verdict = verify_witness(g, w.derivation, w.witness);
        if (verdict.verified) {
            if (!lower.contains(v)) {
                lower = lower.sum(v);
                rep.generators.push_back({w.derivation, "witness:" + w.name});
            }
            continue;
        }
        rep.notes.push_back("witness " + w.name + " not verified: " + verdict.message);
        if (opt.parametric_fallback) {
            auto pv = aid_exact_parametric(g, w.derivation, opt.parametric_depth);
            if (pv && pv->kind == ParametricKind::almost_inner && !lower.contains(v)) {
                lower = lower.sum(v);
                rep.generators.push_back({w.derivation, "parametric"});
            }
        }
    }
    UpperBound<S> ub = aid_upper_bound(g, cfg, &lower, probe_basis);
    if (opt.parametric_fallback) {
        // settle the gap vector by vector: exact membership raises the lower
        // bound, an exact refutation point cuts the upper bound
        bool progress = true;
        while (progress && ub.upper.dim() > lower.dim()) {
            progress = false;
            for (int k = 0; k < ub.upper.dim() && !progress; ++k) {
                const Vector<S> v = ub.upper.vector(k);
                if (lower.contains(v)) continue;
                Matrix<S> d = unflatten<S>(v, n);
                auto pv = aid_exact_parametric(g, d, opt.parametric_depth);
                if (!pv) continue;
                if (pv->kind == ParametricKind::almost_inner) {
                    lower = lower.sum(v);
                    rep.generators.push_back({d, "parametric"});
                    progress = true;
                } else if (pv->point) {
                    const PointConstraint<S> pc = point_constraint(g, *pv->point);
                    ub.upper = ub.upper.intersect(Subspace<S>::kernel_of(pc.constraint_rows));
                    rep.notes.push_back("upper bound cut at a parametric refutation point");
                    progress = true;
                }
            }
        }
    }
    if (!ub.upper.contains(lower)) throw SoundnessError("soundness violation: lower bound not contained in upper bound for " + g.name());
    rep.lower = lower;
    rep.upper = ub.upper;
    rep.samples_used = ub.samples_used;
    rep.status = lower.dim() == ub.upper.dim() ? AidStatus::exact : AidStatus::bounded;
    rep.caid_lower = lower.intersect(ds.caid_condition);
    rep.caid_upper = ub.upper.intersect(ds.caid_condition);
    if (opt.refute) {
        for (int k = 0; k < ds.dim_der(); ++k) {
            const Vector<S> v = ds.der.vector(k);
            if (ub.upper.contains(v)) continue;
            Matrix<S> d = unflatten<S>(v, n);
            SamplingConfig rc = cfg;
            rc.max_samples = std::max(ub.samples_used, 1);
            if (auto x = refute_aid(g, d, rc, probe_basis)) rep.refuted.push_back({d, *x});
        }
    }
    return rep;
}

}  // namespace aidlab
