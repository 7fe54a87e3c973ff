#pragma once

#include <string>
#include <vector>

#include "aidlab/lie_algebra.hpp"

namespace aidlab {

/// Basic commutator in the Hall basis.  Generators have left = right = -1.
struct HallWord {
    int left = -1;
    int right = -1;
    int generator = -1;  // 0-based, generators only
    int length = 1;
    std::vector<int> multidegree;
};

/// Free c-step nilpotent Lie algebra on r generators over Q.
///
/// Hall order: the generators satisfy x1 > x2 > ... > xr, a longer word is
/// greater than a shorter one, and words of equal length compare by their
/// left factor, then by their right factor.  [u, v] is basic when u > v and,
/// for u = [u', u''], u'' <= v.  The basis is listed by length, then by
/// (left index, right index).
struct FreeNilpotent {
    int generators = 0;
    int nilpotency_class = 0;
    std::vector<HallWord> hall_basis;
    LieAlgebra<Rational> algebra;

    std::string word_string(int w) const;
    static const char* order_description();
};

/// Default cap on the dimension of f_{r,c}.
inline constexpr int kFreeNilpotentDimCap = 64;

/// Number of Lyndon words of length d on r letters.
long witt_dimension(int r, int d);

FreeNilpotent build_free_nilpotent(int r, int c, int dim_cap = kFreeNilpotentDimCap);

/// Span of the Hall words with exactly the given multidegree.
Subspace<Rational> multidegree_component(const FreeNilpotent& f, const std::vector<int>& degvec);

}  // namespace aidlab
