#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "aidlab/aid_engine.hpp"
#include "aidlab/derivations.hpp"
#include "aidlab/witness.hpp"

namespace aidlab {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- scalars and fields ----------------------------------------------------

inline Json scalar_json(const Rational& q, const FieldSpec& = {}) { return to_string(q); }

inline Json scalar_json(const FieldElement& a, const FieldSpec& f)
{
    if (f.is_rationals()) return to_string(a.coeff(0));
    Json arr = Json::array();
    for (const auto& c : a.components(f.degree())) arr.push_back(to_string(c));
    return arr;
}

Json field_json(const FieldSpec& f);
FieldSpec field_from_json(const Json& j);

template <class S>
S scalar_from_json(const Json& j, const FieldSpec& f);

template <>
inline Rational scalar_from_json<Rational>(const Json& j, const FieldSpec& f)
{
    if (!f.is_rationals()) throw ParseError("rational algebra expected");
    if (!j.is_string()) throw ParseError("rational scalars are strings");
    return parse_rational(j.get<std::string>());
}

template <>
inline FieldElement scalar_from_json<FieldElement>(const Json& j, const FieldSpec& f)
{
    if (j.is_string()) return ScalarOps<FieldElement>::from_rational(parse_rational(j.get<std::string>()), f);
    if (!j.is_array()) throw ParseError("extension scalars are arrays of rational strings");
    std::vector<Rational> c;
    for (const auto& e : j) c.push_back(parse_rational(e.get<std::string>()));
    if (static_cast<int>(c.size()) != f.degree()) throw ParseError("extension scalar has the wrong length");
    return ScalarOps<FieldElement>::from_components(c, f);
}

// --- polynomials -------------------------------------------------------------

/// Parses "+ - * ^ / ( )", rational literals, variables x1..xn (1-based) and,
/// when `generator` is given, the field generator s.
template <class S>
MultiPoly<S> parse_poly(const std::string& text, int nvars, const std::optional<S>& generator = std::nullopt);

/// Univariate polynomial in `var` with rational coefficients, lowest power first.
std::vector<Rational> parse_univariate(const std::string& text, char var = 'x');

// --- algebras, matrices, subspaces -----------------------------------------

template <class S>
Json algebra_json(const LieAlgebra<S>& g)
{
    Json br = Json::array();
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j) {
            const auto& v = g.table().get(i, j);
            if (v.empty()) continue;
            Json coeffs = Json::object();
            for (const auto& [k, c] : v) coeffs[std::to_string(k + 1)] = scalar_json(c, g.field());
            br.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"v", coeffs}});
        }
    return Json{{"name", g.name()}, {"field", field_json(g.field())}, {"dim", g.dim()}, {"brackets", br}};
}

template <class S>
LieAlgebra<S> algebra_from_json(const Json& j)
{
    try {
        const FieldSpec f = field_from_json(j.at("field"));
        const int n = j.at("dim").get<int>();
        if (n < 0) throw ParseError("negative dimension");
        typename LieAlgebra<S>::Table t(n);
        for (const auto& b : j.at("brackets")) {
            const int i = b.at("i").get<int>() - 1, jj = b.at("j").get<int>() - 1;
            if (i < 0 || jj <= i || jj >= n) throw ParseError("bracket indices must satisfy 1 <= i < j <= dim");
            for (const auto& [key, val] : b.at("v").items()) {
                const int k = std::stoi(key) - 1;
                if (k < 0 || k >= n) throw ParseError("bracket coefficient index out of range");
                t.add(i, jj, k, scalar_from_json<S>(val, f));
            }
        }
        return LieAlgebra<S>(j.value("name", std::string("input")), f, std::move(t));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed algebra JSON: ") + e.what());
    }
}

template <class S>
Json vector_json(const Vector<S>& v, const FieldSpec& f)
{
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(scalar_json(v(i), f));
    return a;
}

/// Row-major matrix of scalar strings.
template <class S>
Json matrix_json(const Matrix<S>& m, const FieldSpec& f)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(scalar_json(m(i, j), f));
        rows.push_back(r);
    }
    return rows;
}

template <class S>
Matrix<S> matrix_from_json(const Json& j, const FieldSpec& f)
{
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw ParseError("matrix must be a nonempty array of rows");
    Matrix<S> m(j.size(), j[0].size());
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (j[r].size() != j[0].size()) throw ParseError("ragged matrix");
        for (std::size_t c = 0; c < j[r].size(); ++c) m(r, c) = scalar_from_json<S>(j[r][c], f);
    }
    return m;
}

template <class S>
Json derivation_json(const LieAlgebra<S>& g, const Matrix<S>& d)
{
    return Json{{"algebra", g.name()},
                {"basis", "column j is the image of e_j; rows and columns are 1-based e_1..e_n"},
                {"matrix", matrix_json(d, g.field())}};
}

/// A subspace of derivations, each basis vector shown as an n x n matrix.
template <class S>
Json derivation_subspace_json(const Subspace<S>& u, int n, const FieldSpec& f)
{
    Json basis = Json::array();
    for (int r = 0; r < u.dim(); ++r) basis.push_back(matrix_json(unflatten<S>(u.vector(r), n), f));
    return Json{{"dim", u.dim()}, {"basis", basis}};
}

// --- witnesses ----------------------------------------------------------------

template <class S>
Json witness_json(const PiecewiseWitness<S>& w)
{
    Json pieces = Json::array();
    for (const auto& p : w.pieces) {
        Json zero = Json::array();
        for (int z : p.zero) zero.push_back(z + 1);
        Json nonzero;
        if (p.nonzero.size() == 1) {
            nonzero = p.nonzero[0] + 1;
        } else if (!p.nonzero.empty()) {
            nonzero = Json::array();
            for (int z : p.nonzero) nonzero.push_back(z + 1);
        }
        Json map = Json::array();
        for (const auto& e : p.map) map.push_back(Json{{"num", e.num.str()}, {"den", e.den.str()}});
        Json piece{{"label", p.label}, {"guard", Json{{"zero", zero}, {"nonzero", nonzero}}}, {"map", map}};
        if (!p.norm_factors.empty()) {
            Json nf = Json::array();
            for (const auto& f : p.norm_factors) {
                Json comps = Json::array();
                for (const auto& c : f.components) comps.push_back(c.str());
                nf.push_back(Json{{"components", comps}, {"norm", f.norm.str()}});
            }
            piece["norm_factors"] = nf;
        }
        pieces.push_back(piece);
    }
    return Json{{"name", w.name}, {"nvars", w.nvars}, {"pieces", pieces}};
}

template <class S>
PiecewiseWitness<S> witness_from_json(const Json& j, const std::optional<S>& generator = std::nullopt)
{
    try {
        PiecewiseWitness<S> w;
        w.name = j.value("name", std::string("input"));
        w.nvars = j.at("nvars").get<int>();
        auto index = [&](const Json& v) {
            const int i = v.get<int>() - 1;
            if (i < 0 || i >= w.nvars) throw ParseError("guard index out of range");
            return i;
        };
        for (const auto& pj : j.at("pieces")) {
            WitnessPiece<S> p;
            p.label = pj.value("label", std::string());
            const Json& g = pj.at("guard");
            for (const auto& z : g.at("zero")) p.zero.push_back(index(z));
            const Json& nz = g.at("nonzero");
            if (nz.is_number_integer())
                p.nonzero.push_back(index(nz));
            else if (nz.is_array())
                for (const auto& z : nz) p.nonzero.push_back(index(z));
            else if (!nz.is_null())
                throw ParseError("guard nonzero must be an index, an array or null");
            for (const auto& e : pj.at("map"))
                p.map.emplace_back(parse_poly<S>(e.at("num").get<std::string>(), w.nvars, generator),
                                   parse_poly<S>(e.value("den", std::string("1")), w.nvars, generator));
            if (pj.contains("norm_factors"))
                for (const auto& fj : pj.at("norm_factors")) {
                    NormFactor<S> f;
                    for (const auto& c : fj.at("components")) f.components.push_back(parse_poly<S>(c.get<std::string>(), w.nvars, generator));
                    f.norm = parse_poly<S>(fj.at("norm").get<std::string>(), w.nvars, generator);
                    p.norm_factors.push_back(std::move(f));
                }
            w.pieces.push_back(std::move(p));
        }
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed witness JSON: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ParseError(std::string("malformed witness JSON: ") + e.what());
    }
}

inline Json verdict_json(const WitnessVerdict& v)
{
    Json j{{"verified", v.verified}, {"message", v.message}};
    if (!v.verified && v.failing_piece >= 0) {
        j["failing_piece"] = v.failing_piece + 1;
        j["failing_coordinate"] = v.failing_coordinate + 1;
        j["residual"] = v.residual;
    }
    return j;
}

// --- reports -----------------------------------------------------------------

template <class S>
Json aid_report_json(const LieAlgebra<S>& g, const AidReport<S>& r)
{
    const int n = g.dim();
    const FieldSpec& f = g.field();
    Json gens = Json::array();
    for (const auto& gen : r.generators)
        gens.push_back(Json{{"provenance", gen.provenance}, {"derivation", matrix_json(gen.derivation, f)}});
    Json refs = Json::array();
    for (const auto& ref : r.refuted)
        refs.push_back(Json{{"derivation", matrix_json(ref.derivation, f)}, {"point", vector_json(ref.point, f)}});
    Json j{{"algebra", r.algebra},
           {"field", field_json(f)},
           {"dim", n},
           {"dim_der", r.dim_der},
           {"dim_inn", r.dim_inn},
           {"aid_lower", derivation_subspace_json(r.lower, n, f)},
           {"aid_upper", derivation_subspace_json(r.upper, n, f)},
           {"status", r.status == AidStatus::exact ? "exact" : "bounded"},
           {"caid_lower", derivation_subspace_json(r.caid_lower, n, f)},
           {"caid_upper", derivation_subspace_json(r.caid_upper, n, f)},
           {"generators", gens},
           {"refutations", refs},
           {"samples_used", r.samples_used},
           {"seed", r.seed}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

}  // namespace aidlab
