#include "aidlab/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "aidlab/family_grammar.hpp"
#include "aidlab/free_nilpotent.hpp"

namespace aidlab {

namespace {

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

bool is_file(const std::string& text) { return std::filesystem::is_regular_file(text); }

/// "e<k>" -> 0-based k.
int basis_index(const std::string& text, int dim)
{
    if (text.size() < 2 || text[0] != 'e') throw ParseError("basis vector must look like e<k>: " + text);
    int k = 0;
    try {
        std::size_t used = 0;
        k = std::stoi(text.substr(1), &used);
        if (used != text.size() - 1) throw ParseError("");
    } catch (const std::exception&) {
        throw ParseError("basis vector must look like e<k>: " + text);
    }
    if (k < 1 || k > dim) throw ParseError("basis index out of range: " + text);
    return k - 1;
}

int report_exit(AidStatus s) { return s == AidStatus::exact ? exit_ok : exit_inconclusive; }

}  // namespace

LoadedAlgebra load_algebra(const std::string& target)
{
    if (is_file(target)) return {std::nullopt, algebra_from_json<Rational>(read_json_file(target))};
    FamilySpec spec = parse_family(target);
    try {
        return {spec, build_family(spec)};
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

Matrix<Rational> load_derivation(const LoadedAlgebra& a, const std::string& text)
{
    const auto& g = a.algebra;
    Matrix<Rational> d;
    if (text.rfind("ad:", 0) == 0) {
        d = g.ad_basis(basis_index(text.substr(3), g.dim()));
    } else if (is_file(text)) {
        const Json j = read_json_file(text);
        d = matrix_from_json<Rational>(j.is_object() ? j.at("matrix") : j, g.field());
    } else {
        if (!a.spec) throw ParseError("named derivations need a family spec, not a JSON algebra");
        try {
            d = named_derivation(*a.spec, g, text);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what());
        }
    }
    if (d.rows() != g.dim() || d.cols() != g.dim()) throw ParseError("derivation matrix has the wrong size");
    return d;
}

PiecewiseWitness<Rational> load_witness(const LoadedAlgebra& a, const std::string& text)
{
    if (is_file(text)) return witness_from_json<Rational>(read_json_file(text));
    if (!a.spec) throw ParseError("built-in witnesses need a family spec, not a JSON algebra");
    try {
        return builtin_witness(*a.spec, a.algebra, text);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

void write_json(const Json& j, const std::string& path, std::ostream& os)
{
    if (path.empty()) {
        os << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

int cmd_analyze(const std::string& target, const RunConfig& cfg, std::ostream& os)
{
    const LoadedAlgebra a = load_algebra(target);
    const auto rep = a.spec ? analyze_family(*a.spec, a.algebra, cfg)
                            : aid_sandwich(a.algebra, {}, cfg.sampling, sandwich_options(cfg));
    write_json(aid_report_json(a.algebra, rep), cfg.out, os);
    return report_exit(rep.status);
}

void print_suite_table(const std::vector<SuiteRow>& rows, std::ostream& os)
{
    os << std::left << std::setw(34) << "row" << std::setw(16) << "group" << std::setw(14) << "status" << std::right << std::setw(10)
       << "ms" << "  computed\n";
    for (const auto& r : rows) {
        std::ostringstream ms;
        ms << std::fixed << std::setprecision(1) << r.runtime_ms;
        os << std::left << std::setw(34) << r.label << std::setw(16) << r.group << std::setw(14) << row_status_name(r.status) << std::right
           << std::setw(10) << ms.str() << "  " << r.computed.dump();
        if (!r.note.empty()) os << "  (" << r.note << ")";
        os << "\n";
    }
}

int cmd_paper_suite(const RunConfig& cfg, std::ostream& os)
{
    RunConfig row_cfg = cfg;
    row_cfg.sampling.threads = 1;  // rows already run concurrently
    const auto rows = run_paper_suite(row_cfg);
    const Json j = suite_json(rows, cfg);
    print_suite_table(rows, os);
    const Json& s = j.at("summary");
    os << "pass " << s.at("pass").get<int>() << ", fail " << s.at("fail").get<int>() << ", inconclusive "
       << s.at("inconclusive").get<int>() << "\n";
    if (!cfg.out.empty()) write_json(j, cfg.out, os);
    if (s.at("fail").get<int>() > 0) return exit_error;
    return s.at("inconclusive").get<int>() > 0 ? exit_inconclusive : exit_ok;
}

int cmd_witness(const std::string& target, const std::string& derivation, const std::string& witness, const RunConfig& cfg,
                std::ostream& os)
{
    const LoadedAlgebra a = load_algebra(target);
    const Matrix<Rational> d = load_derivation(a, derivation);
    const PiecewiseWitness<Rational> w = load_witness(a, witness);
    if (w.nvars != a.algebra.dim()) throw ParseError("witness has " + std::to_string(w.nvars) + " variables, algebra has dimension " +
                                                     std::to_string(a.algebra.dim()));
    const WitnessVerdict v = verify_witness(a.algebra, d, w);
    Json j{{"algebra", a.algebra.name()},
           {"derivation", derivation},
           {"witness", w.name},
           {"is_derivation", is_derivation(a.algebra, d)},
           {"verdict", verdict_json(v)}};
    if (!v.verified) {
        if (auto x = refute_aid(a.algebra, d, cfg.sampling)) j["refutation_point"] = vector_json(*x, a.algebra.field());
    }
    write_json(j, cfg.out, os);
    return v.verified ? exit_ok : exit_inconclusive;
}

int cmd_family(const std::string& target, bool hall, const RunConfig& cfg, std::ostream& os)
{
    const LoadedAlgebra a = load_algebra(target);
    Json j = algebra_json(a.algebra);
    if (hall) {
        if (!a.spec || a.spec->family != Family::free_nilpotent) throw ParseError("--hall needs a free:r,c family");
        const FreeNilpotent f = build_free_nilpotent(a.spec->r, a.spec->c);
        Json basis = Json::array();
        for (int w = 0; w < static_cast<int>(f.hall_basis.size()); ++w)
            basis.push_back(Json{{"index", w + 1}, {"word", f.word_string(w)}, {"multidegree", f.hall_basis[w].multidegree}});
        j["hall_order"] = FreeNilpotent::order_description();
        j["hall_basis"] = basis;
    }
    write_json(j, cfg.out, os);
    return exit_ok;
}

namespace {

FieldSpec field_from_minpoly(const std::string& text)
{
    std::vector<Rational> p = parse_univariate(text, 'x');
    if (p.size() < 3) throw ParseError("minimal polynomial must have degree at least 2");
    if (p.back() != 1) throw ParseError("minimal polynomial must be monic");
    try {
        return FieldSpec::extension(std::move(p));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

int cmd_scalars_restrict(const ScalarsArgs& args, const RunConfig& cfg, std::ostream& os)
{
    const FieldSpec K = field_from_minpoly(args.minpoly);
    const LoadedAlgebra a = load_algebra(args.algebra);
    const AlgebraK gK = extend_scalars(a.algebra, K);
    const AlgebraQ gk = restrict_scalars(gK);
    Json j = algebra_json(gk);
    j["basis"] = "index m*" + std::to_string(a.algebra.dim()) + " + i is s^m e_i (1-based i)";
    j["extended_from"] = algebra_json(gK);
    write_json(j, cfg.out, os);
    return exit_ok;
}

int cmd_scalars_scaled(const ScalarsArgs& args, const RunConfig& cfg, std::ostream& os)
{
    const FieldSpec K = field_from_minpoly(args.minpoly);
    const LoadedAlgebra a = load_algebra(args.algebra);
    const AlgebraK gK = extend_scalars(a.algebra, K);
    const int n = a.algebra.dim();
    if (args.derivations.empty()) throw ParseError("scalars scaled needs at least one --derivation");
    if (args.y.size() > args.derivations.size()) throw ParseError("more --y values than derivations");
    std::vector<NamedWitness<Rational>> ws;
    Json families = Json::array();
    std::optional<AlgebraQ> restricted;
    for (std::size_t di = 0; di < args.derivations.size(); ++di) {
        const std::string& spec = args.derivations[di];
        Matrix<FieldElement> d;
        PiecewiseWitness<FieldElement> phi;
        if (spec.rfind("ad:", 0) == 0) {
            const int k = basis_index(spec.substr(3), n);
            d = gK.ad_basis(k);
            phi.name = spec;
            phi.nvars = n;
            WitnessPiece<FieldElement> p;
            p.label = "constant";
            p.map = zero_map<FieldElement>(n);
            p.map[k] = rf_const<FieldElement>(n, FieldElement(-1));  // [x, -e_k] = [e_k, x]
            phi.pieces.push_back(p);
        } else {
            d = extend_matrix(load_derivation(a, spec), K);
            phi = extend_witness(load_witness(a, spec), K);
        }
        std::optional<int> y;
        if (di < args.y.size()) y = basis_index(args.y[di], n);
        const ScaledFamily sf = [&] {
            try {
                return build_scaled_family(gK, d, phi, y);
            } catch (const std::invalid_argument& e) {
                throw ParseError(spec + ": " + e.what());
            }
        }();
        if (!restricted) restricted = sf.g_restricted;
        Json members = Json::array();
        for (const auto& m : sf.members) {
            ws.push_back({spec + ":" + m.witness.name, m.derivation, m.witness});
            members.push_back(Json{{"i", m.i},
                                   {"j", m.j},
                                   {"name", m.witness.name},
                                   {"is_derivation", m.is_derivation},
                                   {"inner", m.inner},
                                   {"verdict", verdict_json(m.verdict)},
                                   {"derivation", matrix_json(m.derivation, sf.g_restricted.field())}});
        }
        families.push_back(Json{{"derivation", spec},
                                {"source", matrix_json(sf.source, gK.field())},
                                {"y", sf.y + 1},
                                {"z", vector_json(sf.z, gK.field())},
                                {"source_inner", sf.source_inner},
                                {"dim_A", sf.span_a.dim()},
                                {"dim_A_cap_inn", sf.a_cap_inn.dim()},
                                {"sum_identity", sf.sum_identity},
                                {"independent", sf.independent},
                                {"dichotomy_holds", sf.dichotomy_holds},
                                {"members", members}});
    }
    const auto rep = aid_sandwich(*restricted, ws, cfg.sampling, sandwich_options(cfg));
    Json j = aid_report_json(*restricted, rep);
    j["scaled_families"] = families;
    write_json(j, cfg.out, os);
    return report_exit(rep.status);
}

}  // namespace aidlab
