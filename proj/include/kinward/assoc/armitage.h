#pragma once

#include <Eigen/Dense>

#include "kinward/core/phenotype.h"
#include "kinward/core/test_result.h"

namespace kinward::assoc
{

/// Armitage trend test T^2 / V on allele counts `x` (NaN = missing, dropped)
/// against a case-control phenotype. NA when x is constant or a class is
/// empty after dropping missing genotypes.
[[nodiscard]] TestResult armitage(const Eigen::VectorXd& x, const Phenotype& y, int snp_index = 0);

}  // namespace kinward::assoc
