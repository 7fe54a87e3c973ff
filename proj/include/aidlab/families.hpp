#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aidlab/lie_algebra.hpp"
#include "aidlab/witness.hpp"

namespace aidlab {

enum class Family {
    L,
    Q,
    R,
    W,
    F,
    heisenberg,
    free_nilpotent,
    almost_abelian,
    example_3_2,
    example_3_3,
    sl2_natural
};

struct FamilySpec {
    Family family = Family::L;
    int n = 0;                 // size parameter (L/Q/R/W/F, ex32)
    int r = 0, c = 0;          // free nilpotent
    Matrix<Rational> action;   // almost abelian
    std::string label;         // canonical text, e.g. "W:9"
};

using AlphaTable = std::map<std::pair<int, int>, Rational>;  // 1-based (k, s)

/// Nonzero alpha_{k,s} of F_n.
AlphaTable f_alpha_table(int n);

/// 6(j-i) / (j(j-1) binom(j+i-2, i-2)).
Rational witt_coefficient(int i, int j);

/// Companion matrix of the monic polynomial with coefficients a_0..a_{k-1}, 1.
Matrix<Rational> companion_matrix(const std::vector<Rational>& monic);

/// Canonical text form, e.g. "W:9"; spec.label wins when set.
std::string family_label(const FamilySpec& spec);

LieAlgebra<Rational> build_family(const FamilySpec& spec);

LieAlgebra<Rational> heisenberg();
LieAlgebra<Rational> almost_abelian(const Matrix<Rational>& action, std::string name = "aa");

/// Coefficient of e_{i+j} in [e_i, e_j] (1-based indices).
Rational graded_coefficient(const LieAlgebra<Rational>& g, int i, int j);

/// Names accepted by named_derivation for this family.
std::vector<std::string> derivation_names(const FamilySpec& spec);
Matrix<Rational> named_derivation(const FamilySpec& spec, const LieAlgebra<Rational>& g, const std::string& name);

/// Names with a built-in witness.
std::vector<std::string> witness_names(const FamilySpec& spec);
PiecewiseWitness<Rational> builtin_witness(const FamilySpec& spec, const LieAlgebra<Rational>& g, const std::string& name);

/// sl2 with basis h, e, f and its natural action on Q^2.
struct Sl2Data {
    LieAlgebra<Rational> s;
    std::vector<Matrix<Rational>> actions;
};
Sl2Data sl2_natural_data();

}  // namespace aidlab
