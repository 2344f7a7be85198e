#pragma once

#include "heightlab/numeric.hpp"

#include <array>
#include <vector>

namespace heightlab {

using IntMatrix = std::vector<std::vector<Int>>;
using RatMatrix = std::vector<std::vector<Rat>>;

/// Exact determinant by fraction-free (Bareiss) elimination.
Int bareiss_det(IntMatrix m);

/// Exact rank by fraction-free elimination with full pivoting.
int bareiss_rank(IntMatrix m);

/// Exact right-nullspace basis of an m x n rational matrix (via RREF).
RatMatrix rational_nullspace(RatMatrix m);

/// Index [Z^2 : L] of the sublattice L spanned by the given columns,
/// or 0 when L has rank < 2. Used for ideal norms in O_K = Z + Z*omega.
Int lattice_index_2d(const std::vector<std::array<Int, 2>>& gens);

} // namespace heightlab
