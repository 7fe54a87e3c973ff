#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aidlab/derivations.hpp"
#include "aidlab/witness.hpp"

namespace aidlab {

using AlgebraQ = LieAlgebra<Rational>;
using AlgebraK = LieAlgebra<FieldElement>;

Matrix<FieldElement> extend_matrix(const Matrix<Rational>& m, const FieldSpec& k_field);
PiecewiseWitness<FieldElement> extend_witness(const PiecewiseWitness<Rational>& w, const FieldSpec& k_field);

/// K ⊗ g: same structure constants, scalars embedded in K.
AlgebraK extend_scalars(const AlgebraQ& g, const FieldSpec& k_field);

/// g over K viewed over Q.  Basis s^m e_i sits at index m*dim(g) + i.
AlgebraQ restrict_scalars(const AlgebraK& g);

/// Rational matrix of a K-linear map in the restricted basis.
Matrix<Rational> restrict_matrix(const Matrix<FieldElement>& d, const FieldSpec& k_field);
Vector<Rational> restrict_vector(const Vector<FieldElement>& v, const FieldSpec& k_field);

/// Multiplication by s on the restricted algebra.
Matrix<Rational> multiplication_by_generator(int dim, const FieldSpec& k_field);

/// Quadratic K = Q(s): K ⊗ restrict(K ⊗ g) ≅ (K ⊗ g) ⊕ (K ⊗ g) via
/// e_i -> a_i + b_i, f_i -> s a_i + s' b_i, with s' the conjugate root.
struct QuadraticSplit {
    AlgebraK source;           // K ⊗ g_k', basis e_1..e_r, f_1..f_r
    AlgebraK target;           // (K ⊗ g) ⊕ (K ⊗ g), basis a_1..a_r, b_1..b_r
    Matrix<FieldElement> iso;  // columns are images of the source basis
    Matrix<FieldElement> inverse;
    FieldElement conjugate;    // s'
    bool verified = false;
};
QuadraticSplit quadratic_split(const AlgebraQ& g, const FieldSpec& k_field);

/// D restricted to g and expanded as D_1 + s D_2 + ... + s^{n-1} D_n.
std::vector<Matrix<Rational>> descend_derivation(const AlgebraQ& g, const Matrix<FieldElement>& d, const FieldSpec& k_field);

/// dim_K Der(K ⊗ g) = dim_Q Der(g), and the K-linear derivations of the
/// restricted algebra have Q-dimension n · dim_Q Der(g).
struct DerCorrespondence {
    int dim_der_base = 0;
    int dim_der_extended = 0;
    int dim_k_linear_restricted = 0;
    int degree = 0;
    bool holds() const
    {
        return dim_der_base == dim_der_extended && dim_k_linear_restricted == degree * dim_der_extended;
    }
};
DerCorrespondence der_correspondence(const AlgebraQ& g, const FieldSpec& k_field);

/// Component 0 of a K-witness for a rational derivation of a rational algebra.
/// Every denominator must be a K-multiple of a rational polynomial.
PiecewiseWitness<Rational> descend_witness(const PiecewiseWitness<FieldElement>& w);

/// D has one-dimensional image inside the center.
bool central_rank_one(const AlgebraK& g, const Matrix<FieldElement>& d);

struct ScaledMember {
    int i = 0, j = 0;              // map s^{j-1} D_i, 1-based
    Matrix<Rational> derivation;
    PiecewiseWitness<Rational> witness;
    WitnessVerdict verdict;
    bool is_derivation = false;
    bool inner = false;
};

struct ScaledFamily {
    AlgebraK g_ext;
    AlgebraQ g_restricted;
    Matrix<FieldElement> source;
    int y = 0;                   // 0-based basis index with D(e_y) = z
    Vector<FieldElement> z;
    std::vector<ScaledMember> members;
    Subspace<Rational> span_a;
    Subspace<Rational> a_cap_inn;
    bool source_inner = false;
    bool sum_identity = false;   // D_1 + ... + D_n equals D in the restricted basis
    bool independent = false;
    bool dichotomy_holds = false;
};

/// The n^2 derivations s^{j-1} D_i of the restricted algebra, each with its
/// witness.  `phi` must certify D ∈ AID(g) over K.
ScaledFamily build_scaled_family(const AlgebraK& g, const Matrix<FieldElement>& d, const PiecewiseWitness<FieldElement>& phi,
                                 std::optional<int> y = std::nullopt);

}  // namespace aidlab
