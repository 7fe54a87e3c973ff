// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aidlab/aid_engine.hpp"
#include "aidlab/families.hpp"
#include "aidlab/family_grammar.hpp"
#include "aidlab/free_nilpotent.hpp"
#include "aidlab/paper_suite.hpp"
#include "aidlab/serialize.hpp"

using namespace aidlab;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int number, const std::string& title, const std::function<Outcome()>& body)
{
    const auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& ex) {
        o = {false, std::string("exception: ") + ex.what()};
    }
    if (!o.pass) ++failures;
    std::ostringstream line;
    line << (o.pass ? "PASS" : "FAIL") << "  criterion " << number << ": " << title << " — " << o.detail << " ["
         << static_cast<long>(ms_since(t0)) << " ms]";
    std::cout << line.str() << std::endl;
}

FamilySpec spec_of(const std::string& text) { return parse_family(text); }

// Leibniz system from dense brackets, independent of the derivations module
int dense_der_dim(const LieAlgebra<Rational>& g)
{
    const int n = g.dim();
    Matrix<Rational> m = zero_matrix<Rational>(static_cast<Eigen::Index>(n) * n * (n - 1) / 2, static_cast<Eigen::Index>(n) * n);
    Eigen::Index row = 0;
    auto br = [&](int a, int b) { return g.bracket(unit_vector<Rational>(n, a), unit_vector<Rational>(n, b)); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int p = 0; p < n; ++p, ++row) {
                const Vector<Rational> eij = br(i, j);
                for (int k = 0; k < n; ++k) m(row, p * n + k) += eij(k);
                for (int q = 0; q < n; ++q) {
                    m(row, q * n + i) -= br(q, j)(p);
                    m(row, q * n + j) -= br(i, q)(p);
                }
            }
    return n * n - rank<Rational>(m);
}

std::vector<const SuiteRow*> group(const std::vector<SuiteRow>& rows, const std::string& name)
{
    std::vector<const SuiteRow*> out;
    for (const auto& r : rows)
        if (r.group == name) out.push_back(&r);
    return out;
}

Outcome all_pass(const std::vector<const SuiteRow*>& rows, double budget_ms)
{
    Outcome o;
    int passed = 0;
    std::string bad;
    double slowest = 0;
    for (const auto* r : rows) {
        slowest = std::max(slowest, r->runtime_ms);
        if (r->status == RowStatus::pass)
            ++passed;
        else
            bad += " " + r->label + "(" + row_status_name(r->status) + ")";
        if (r->runtime_ms > budget_ms) bad += " " + r->label + "(over budget)";
    }
    o.pass = !rows.empty() && bad.empty();
    o.detail = std::to_string(passed) + "/" + std::to_string(rows.size()) + " rows pass, slowest row " +
               std::to_string(static_cast<long>(slowest)) + " ms" + (bad.empty() ? "" : ";" + bad);
    return o;
}

// every algebra of the suite with dimension <= 8, paired with its spec
std::vector<std::pair<FamilySpec, LieAlgebra<Rational>>> small_suite_algebras()
{
    std::vector<std::string> labels;
    for (int n = 3; n <= 8; ++n) labels.push_back("L:" + std::to_string(n));
    for (int n = 6; n <= 8; n += 2) labels.push_back("Q:" + std::to_string(n));
    for (int n = 5; n <= 8; ++n) labels.push_back("R:" + std::to_string(n));
    for (int n = 5; n <= 8; ++n) labels.push_back("W:" + std::to_string(n));
    for (const char* t : {"free:2,2", "free:2,3", "free:2,4", "free:3,2", "heis", "ex32:3", "ex32:4", "ex32:5", "ex32:6", "ex33", "sl2nat"})
        labels.push_back(t);
    std::vector<std::pair<FamilySpec, LieAlgebra<Rational>>> out;
    for (const auto& l : labels) {
        const auto s = spec_of(l);
        out.emplace_back(s, build_family(s));
    }
    for (const auto& [name, action] : suite_almost_abelian_actions()) {
        FamilySpec s;
        s.family = Family::almost_abelian;
        s.action = action;
        s.label = name;
        auto g = build_family(s);
        if (g.dim() <= 8) out.emplace_back(s, std::move(g));
    }
    return out;
}

}  // namespace

int main()
{
    RunConfig cfg;
    std::cout << "aidlab acceptance (seed " << cfg.sampling.seed << ", max_samples " << cfg.sampling.max_samples << ", stall_limit "
              << cfg.sampling.stall_limit << ", parametric_depth " << cfg.parametric_depth << ")" << std::endl;

    const auto suite_t0 = Clock::now();
    const std::vector<SuiteRow> rows = run_paper_suite(cfg);
    const double suite_ms = ms_since(suite_t0);

    report(1, "Jacobi identity for every family constructor", [] {
        std::vector<std::string> labels;
        for (int n = 3; n <= 12; ++n) labels.push_back("L:" + std::to_string(n));
        for (int n = 6; n <= 12; n += 2) labels.push_back("Q:" + std::to_string(n));
        for (int n = 5; n <= 12; ++n) labels.push_back("R:" + std::to_string(n));
        for (int n = 5; n <= 12; ++n) labels.push_back("W:" + std::to_string(n));
        for (int n = 13; n <= 16; ++n) labels.push_back("F:" + std::to_string(n));
        for (const char* t : {"free:2,2", "free:2,3", "free:2,4", "free:2,5", "free:3,2", "free:3,3", "heis", "ex32:3", "ex32:4",
                              "ex32:5", "ex32:6", "ex33", "sl2nat"})
            labels.push_back(t);
        const auto t0 = Clock::now();
        std::string bad;
        for (const auto& l : labels) {
            // construct without the built-in check, then check explicitly
            const auto g = build_family(spec_of(l));
            const LieAlgebra<Rational> raw(g.name(), g.field(), g.table(), false);
            if (auto v = jacobi_check(raw)) bad += " " + l;
        }
        const double t = ms_since(t0);
        return Outcome{bad.empty() && t < 10000, std::to_string(labels.size()) + " algebras" + (bad.empty() ? "" : ", violations:" + bad)};
    });

    report(2, "Der dimensions", [] {
        struct Item {
            std::string label;
            int formula;
        };
        std::vector<Item> items;
        for (int n = 3; n <= 12; ++n) items.push_back({"L:" + std::to_string(n), 2 * n - 1});
        for (int n = 6; n <= 12; n += 2) items.push_back({"Q:" + std::to_string(n), 3 * n / 2});
        for (int n = 5; n <= 12; ++n) items.push_back({"R:" + std::to_string(n), 2 * n - 3});
        for (int n = 5; n <= 12; ++n) items.push_back({"W:" + std::to_string(n), n + 3});
        for (int n = 13; n <= 15; ++n) items.push_back({"F:" + std::to_string(n), n + 2});
        // the general formulas start one step later for L and R: L:3 is the
        // Heisenberg algebra (Der = gl_2 ⋉ Q^2, dim 6) and R:5 has dim 8;
        // both boundary values are confirmed by the dense Leibniz oracle
        const std::map<std::string, int> boundary{{"L:3", 6}, {"R:5", 8}};
        std::string bad, notes;
        double slowest = 0;
        for (const auto& it : items) {
            const auto t0 = Clock::now();
            const auto g = build_family(spec_of(it.label));
            const int d = derivation_space(g).dim_der();
            slowest = std::max(slowest, ms_since(t0));
            const int oracle = dense_der_dim(g);
            auto b = boundary.find(it.label);
            const int expected = b == boundary.end() ? it.formula : b->second;
            if (d != expected || d != oracle) bad += " " + it.label + "=" + std::to_string(d);
            if (b != boundary.end()) notes += " " + it.label + "=" + std::to_string(d) + " (formula " + std::to_string(it.formula) + ")";
        }
        return Outcome{bad.empty() && slowest < 5000, std::to_string(items.size()) + " algebras match the formulas and the dense oracle; boundary:" +
                                                          notes + (bad.empty() ? "" : "; mismatches:" + bad)};
    });

    report(3, "AID sandwich closes for L, Q, R, W, F", [&] { return all_pass(group(rows, "dimensions"), 60000); });
    report(4, "free nilpotent algebras close at Inn", [&] { return all_pass(group(rows, "free"), 120000); });
    report(5, "almost abelian algebras close at Inn", [&] {
        auto g = group(rows, "almost_abelian");
        Outcome o = all_pass(g, 60000);
        if (g.size() != 8) o = {false, "expected 8 rows, found " + std::to_string(g.size())};
        return o;
    });
    report(6, "counterexamples: certified AID outside Inn", [&] {
        std::vector<const SuiteRow*> g;
        for (const auto* r : group(rows, "counterexample"))
            if (r->label.rfind("ex3", 0) == 0) g.push_back(r);
        return all_pass(g, 60000);
    });
    report(7, "witness identities and the refutation of h", [&] { return all_pass(group(rows, "witness"), 30000); });
    report(8, "sl2 acting on Q^2", [&] {
        auto g = group(rows, "semisimple");
        if (g.size() == 1 && g[0]->status == RowStatus::inconclusive)
            return Outcome{false, "sandwich bounded; flagged for inspection: " + g[0]->computed.dump()};
        Outcome o = all_pass(g, 60000);
        if (!g.empty()) o.detail += ", " + g[0]->computed.dump();
        return o;
    });
    report(9, "scalar change over Q(s), s^2 = -1 and s^2 = 2", [&] { return all_pass(group(rows, "scalars"), 120000); });

    report(10, "parametric decision agrees with closed sandwiches (dim <= 8)", [] {
        RunConfig rc;
        rc.parametric_fallback = false;  // keep the sandwich independent of the parametric solver
        const int depth = rc.parametric_depth;
        int algebras = 0, closed = 0, derivations = 0, unresolved = 0;
        std::string bad, open;
        for (const auto& [s, g] : small_suite_algebras()) {
            ++algebras;
            const auto rep = analyze_family(s, g, rc);
            if (rep.status != AidStatus::exact) {
                open += " " + family_label(s);
                continue;
            }
            ++closed;
            for (const auto& d : derivation_space(g).der_basis) {
                ++derivations;
                const auto v = aid_exact_parametric(g, d, depth);
                if (!v) {
                    ++unresolved;
                    continue;
                }
                const bool member = rep.lower.contains(flatten<Rational>(d));
                if ((v->kind == ParametricKind::almost_inner) != member) bad += " " + family_label(s);
            }
        }
        return Outcome{bad.empty() && unresolved == 0,
                       std::to_string(closed) + "/" + std::to_string(algebras) + " sandwiches closed, " + std::to_string(derivations) +
                           " Der basis elements decided at depth " + std::to_string(depth) + ", " + std::to_string(unresolved) +
                           " unresolved" + (open.empty() ? "" : ", open without the solver:" + open) +
                           (bad.empty() ? "" : ", disagreements:" + bad)};
    });

    report(11, "byte-identical JSON for repeated runs", [&] {
        const std::string first = suite_json(rows, cfg).dump(2);
        const std::string second = suite_json(run_paper_suite(cfg), cfg).dump(2);
        setenv("AIDLAB_THREADS", "3", 1);
        const std::string threaded = suite_json(run_paper_suite(cfg), cfg).dump(2);
        unsetenv("AIDLAB_THREADS");
        bool reports_same = true;
        for (const char* t : {"W:9", "F:13", "ex33", "free:2,4"}) {
            const auto s = spec_of(t);
            const auto g = build_family(s);
            reports_same = reports_same && aid_report_json(g, analyze_family(s, g, cfg)).dump() == aid_report_json(g, analyze_family(s, g, cfg)).dump();
        }
        return Outcome{first == second && first == threaded && reports_same,
                       std::string("suite JSON ") + (first == second ? "identical" : "differs") + " on repeat, " +
                           (first == threaded ? "identical" : "differs") + " with 3 workers; analyze reports " +
                           (reports_same ? "identical" : "differ")};
    });

    std::cout << "suite: " << rows.size() << " rows in " << static_cast<long>(suite_ms) << " ms; " << (failures ? "FAILED" : "ALL PASS") << " ("
              << failures << " criteria failed)" << std::endl;
    return failures ? 1 : 0;
}
