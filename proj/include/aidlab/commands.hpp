#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aidlab/paper_suite.hpp"
#include "aidlab/scalar_change.hpp"

namespace aidlab {

/// Exit codes shared by every command.
enum ExitCode : int { exit_ok = 0, exit_error = 1, exit_inconclusive = 2 };

/// Family spec text (see parse_family) or a path to algebra JSON.
struct LoadedAlgebra {
    std::optional<FamilySpec> spec;
    LieAlgebra<Rational> algebra;
};
LoadedAlgebra load_algebra(const std::string& target);

/// "ad:e<k>", a named derivation of the family, or a JSON file holding a
/// matrix (either bare or under "matrix").
Matrix<Rational> load_derivation(const LoadedAlgebra& a, const std::string& text);

/// A built-in witness name or a witness JSON file.
PiecewiseWitness<Rational> load_witness(const LoadedAlgebra& a, const std::string& text);

/// Pretty JSON to `path`, or to `os` when the path is empty.
void write_json(const Json& j, const std::string& path, std::ostream& os);

int cmd_analyze(const std::string& target, const RunConfig& cfg, std::ostream& os);
int cmd_paper_suite(const RunConfig& cfg, std::ostream& os);
int cmd_witness(const std::string& target, const std::string& derivation, const std::string& witness, const RunConfig& cfg,
                std::ostream& os);
int cmd_family(const std::string& target, bool hall, const RunConfig& cfg, std::ostream& os);

struct ScalarsArgs {
    std::string minpoly = "x^2+1";
    std::string algebra = "heis";
    std::vector<std::string> derivations{"ad:e1"};
    std::vector<std::string> y;  // "e<k>" per derivation; missing: first basis vector outside ker D
};
int cmd_scalars_restrict(const ScalarsArgs& args, const RunConfig& cfg, std::ostream& os);
int cmd_scalars_scaled(const ScalarsArgs& args, const RunConfig& cfg, std::ostream& os);

/// Human-readable suite table.
void print_suite_table(const std::vector<SuiteRow>& rows, std::ostream& os);

}  // namespace aidlab
