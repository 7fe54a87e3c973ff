#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aidlab/lie_algebra.hpp"
#include "aidlab/multipoly.hpp"

namespace aidlab {

/// Polynomial P = sum_m P_m s^m with coefficients in k[x]; the norm of P over k
/// (determinant of multiplication by P) may appear in witness denominators
/// wherever some component P_m is certified nonzero by the guard.
template <class S>
struct NormFactor {
    std::vector<MultiPoly<S>> components;
    MultiPoly<S> norm;
};

/// One stratum of a decision list: coordinates in `zero` vanish and every
/// coordinate in `nonzero` is nonzero.  Indices are 0-based.
template <class S>
struct WitnessPiece {
    std::vector<int> zero;
    std::vector<int> nonzero;
    std::vector<RationalFn<S>> map;  // phi(x), one entry per coordinate
    std::vector<NormFactor<S>> norm_factors;
    std::string label;
};

/// Guarded family of maps x -> phi(x) with D(x) = [x, phi(x)] on each stratum.
template <class S>
struct PiecewiseWitness {
    std::string name;
    int nvars = 0;
    std::vector<WitnessPiece<S>> pieces;
};

struct IllFormedWitness : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct WitnessVerdict {
    bool verified = false;
    int failing_piece = -1;        // 0-based
    int failing_coordinate = -1;   // 0-based
    std::string residual;          // polynomial text of the first nonzero residual
    std::string message;
};

/// Variables x1..xn with the given coordinates set to zero.
template <class S>
std::vector<MultiPoly<S>> generic_point(int n, const std::vector<int>& zero = {})
{
    std::vector<MultiPoly<S>> x;
    for (int i = 0; i < n; ++i) x.push_back(MultiPoly<S>::variable(n, i));
    for (int z : zero) x[z] = MultiPoly<S>(n);
    return x;
}

/// [x, y] for polynomial coordinate vectors.
template <class S>
std::vector<MultiPoly<S>> poly_bracket(const LieAlgebra<S>& g, const std::vector<MultiPoly<S>>& x,
                                       const std::vector<MultiPoly<S>>& y)
{
    const int n = g.dim();
    const int nv = x.empty() ? 0 : x[0].nvars();
    std::vector<MultiPoly<S>> out(n, MultiPoly<S>(nv));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& v = g.table().get(i, j);
            if (v.empty()) continue;
            if ((x[i].is_zero() || y[j].is_zero()) && (x[j].is_zero() || y[i].is_zero())) continue;
            MultiPoly<S> f = x[i] * y[j] - x[j] * y[i];
            if (f.is_zero()) continue;
            for (const auto& [k, c] : v) out[k] += f * c;
        }
    return out;
}

template <class S>
std::vector<MultiPoly<S>> poly_apply(const Matrix<S>& d, const std::vector<MultiPoly<S>>& x)
{
    const int n = static_cast<int>(d.rows());
    const int nv = x.empty() ? 0 : x[0].nvars();
    std::vector<MultiPoly<S>> out(n, MultiPoly<S>(nv));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < static_cast<int>(d.cols()); ++j)
            if (!is_zero(d(k, j)) && !x[j].is_zero()) out[k] += x[j] * d(k, j);
    return out;
}

namespace detail {

template <class S>
bool monomial_in(const MultiPoly<S>& p, const std::vector<int>& allowed)
{
    if (!p.is_monomial()) return false;
    const Monomial& m = p.leading().first;
    for (int i = 0; i < static_cast<int>(m.size()); ++i)
        if (m[i] && std::find(allowed.begin(), allowed.end(), i) == allowed.end()) return false;
    return true;
}

/// Checks that `den` cannot vanish on the piece's stratum.
template <class S>
void sanction_denominator(const WitnessPiece<S>& piece, int index, MultiPoly<S> den,
                          const std::vector<MultiPoly<S>>& norms)
{
    if (den.is_zero())
        throw IllFormedWitness("piece " + std::to_string(index + 1) + ": denominator vanishes on its stratum");
    for (const auto& nrm : norms) {
        while (!den.is_constant()) {
            auto q = den.divide_exact(nrm);
            if (!q) break;
            den = std::move(*q);
        }
    }
    if (!monomial_in(den, piece.nonzero))
        throw IllFormedWitness("piece " + std::to_string(index + 1) + ": denominator " + den.str() +
                               " may vanish on its stratum");
}

}  // namespace detail

/// True when every zero pattern of the guarded coordinates is matched by some piece.
template <class S>
bool witness_covers(const PiecewiseWitness<S>& w)
{
    std::vector<int> vars;
    for (const auto& p : w.pieces) {
        vars.insert(vars.end(), p.zero.begin(), p.zero.end());
        vars.insert(vars.end(), p.nonzero.begin(), p.nonzero.end());
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars.size() > 20) throw ResourceError("witness guards mention too many coordinates");
    const unsigned long patterns = 1ul << vars.size();
    auto pos = [&](int v) { return std::lower_bound(vars.begin(), vars.end(), v) - vars.begin(); };
    for (unsigned long mask = 0; mask < patterns; ++mask) {
        // bit set = coordinate is nonzero
        bool matched = false;
        for (const auto& p : w.pieces) {
            bool ok = true;
            for (int z : p.zero) ok = ok && !(mask >> pos(z) & 1ul);
            for (int z : p.nonzero) ok = ok && (mask >> pos(z) & 1ul);
            if (ok) {
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

/// Exact check of D(x) = [x, phi(x)] on every stratum of w.
template <class S>
WitnessVerdict verify_witness(const LieAlgebra<S>& g, const Matrix<S>& d, const PiecewiseWitness<S>& w)
{
    const int n = g.dim();
    if (w.nvars != n) throw std::invalid_argument("witness variable count differs from the algebra dimension");
    if (d.rows() != n || d.cols() != n) throw std::invalid_argument("derivation size differs from the algebra dimension");
    WitnessVerdict verdict;
    if (!witness_covers(w)) {
        verdict.message = "guards do not cover every point";
        return verdict;
    }
    for (int pi = 0; pi < static_cast<int>(w.pieces.size()); ++pi) {
        const auto& piece = w.pieces[pi];
        if (static_cast<int>(piece.map.size()) != n)
            throw IllFormedWitness("piece " + std::to_string(pi + 1) + ": map length differs from dimension");
        for (int z : piece.zero)
            if (std::find(piece.nonzero.begin(), piece.nonzero.end(), z) != piece.nonzero.end())
                throw IllFormedWitness("piece " + std::to_string(pi + 1) + ": guard is contradictory");
        std::vector<MultiPoly<S>> norms;
        for (const auto& nf : piece.norm_factors) {
            bool certified = false;
            for (const auto& c : nf.components)
                if (detail::monomial_in(c.substitute_zero(piece.zero), piece.nonzero)) certified = true;
            if (!certified)
                throw IllFormedWitness("piece " + std::to_string(pi + 1) + ": norm factor not certified nonzero");
            norms.push_back(nf.norm.substitute_zero(piece.zero));
        }
        std::vector<MultiPoly<S>> nums, dens;
        for (const auto& f : piece.map) {
            nums.push_back(f.num.substitute_zero(piece.zero));
            dens.push_back(f.den.substitute_zero(piece.zero));
            detail::sanction_denominator(piece, pi, dens.back(), norms);
        }
        // common denominator over the distinct denominators
        std::vector<MultiPoly<S>> distinct;
        std::vector<int> which(n);
        for (int k = 0; k < n; ++k) {
            if (nums[k].is_zero()) {
                which[k] = -1;
                continue;
            }
            auto it = std::find(distinct.begin(), distinct.end(), dens[k]);
            which[k] = static_cast<int>(it - distinct.begin());
            if (it == distinct.end()) distinct.push_back(dens[k]);
        }
        MultiPoly<S> common = MultiPoly<S>::constant(n, S(1));
        for (const auto& dd : distinct) common *= dd;
        std::vector<MultiPoly<S>> phi(n, MultiPoly<S>(n));
        for (int k = 0; k < n; ++k) {
            if (which[k] < 0) continue;
            MultiPoly<S> t = nums[k];
            for (int q = 0; q < static_cast<int>(distinct.size()); ++q)
                if (q != which[k]) t *= distinct[q];
            phi[k] = std::move(t);
        }
        auto x = generic_point<S>(n, piece.zero);
        auto lhs = poly_bracket(g, x, phi);
        auto dx = poly_apply(d, x);
        for (int k = 0; k < n; ++k) {
            MultiPoly<S> r = lhs[k] - dx[k] * common;
            if (!poly_is_zero(r)) {
                verdict.failing_piece = pi;
                verdict.failing_coordinate = k;
                verdict.residual = r.str();
                verdict.message = "residual on piece " + std::to_string(pi + 1) + ", coordinate e" +
                                  std::to_string(k + 1) + " (scaled by " + common.str() + "): " + verdict.residual;
                return verdict;
            }
        }
    }
    verdict.verified = true;
    verdict.message = "verified";
    return verdict;
}

/// Convenience constructors for witness maps.
template <class S>
RationalFn<S> rf_const(int n, const S& c)
{
    return RationalFn<S>::polynomial(MultiPoly<S>::constant(n, c));
}

template <class S>
std::vector<RationalFn<S>> zero_map(int n)
{
    return std::vector<RationalFn<S>>(n, rf_const<S>(n, S(0)));
}

}  // namespace aidlab
