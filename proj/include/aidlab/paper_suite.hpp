#pragma once

#include <string>
#include <vector>

#include "aidlab/aid_engine.hpp"
#include "aidlab/families.hpp"
#include "aidlab/serialize.hpp"

namespace aidlab {

struct RunConfig {
    SamplingConfig sampling;
    int parametric_depth = 12;
    bool parametric_fallback = true;
    std::string out;  // empty: stdout
};

/// Worker count from AIDLAB_THREADS, else the hardware concurrency.
int worker_limit();

/// Built-in witnesses of a family, paired with their named derivations.
std::vector<NamedWitness<Rational>> builtin_witnesses(const FamilySpec& spec, const LieAlgebra<Rational>& g);

SandwichOptions sandwich_options(const RunConfig& cfg);

/// Sandwich with every built-in witness of the family.
AidReport<Rational> analyze_family(const FamilySpec& spec, const LieAlgebra<Rational>& g, const RunConfig& cfg);

/// Fixed almost abelian actions: five seeded random matrices (sizes 3..6) and
/// three companion-block matrices, two of them nilpotent.
std::vector<std::pair<std::string, Matrix<Rational>>> suite_almost_abelian_actions();

enum class RowStatus { pass, fail, inconclusive };

struct SuiteRow {
    std::string label;
    std::string group;
    Json expected;
    Json computed;
    RowStatus status = RowStatus::fail;
    std::string note;
    double runtime_ms = 0;
};

const char* row_status_name(RowStatus s);

/// Every reproduction row, run concurrently up to worker_limit(), returned in
/// declaration order.
std::vector<SuiteRow> run_paper_suite(const RunConfig& cfg);

Json suite_json(const std::vector<SuiteRow>& rows, const RunConfig& cfg);

}  // namespace aidlab
