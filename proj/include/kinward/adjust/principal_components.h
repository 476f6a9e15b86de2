#pragma once

#include "kinward/core/kinship_matrix.h"
#include "kinward/core/linalg.h"

namespace kinward::adjust
{

/// Default number of PCs used for adjustment.
inline constexpr int kDefaultNumPcs = 10;

/// Top-k eigenpairs of K. Requires 1 <= k < n.
[[nodiscard]] EigenDecomposition principal_components(const KinshipMatrix& k, int num_pcs);

/// Truncated view of an existing full decomposition.
[[nodiscard]] EigenDecomposition principal_components(const EigenDecomposition& full, int num_pcs);

}  // namespace kinward::adjust
