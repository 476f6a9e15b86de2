#pragma once

#include <Eigen/Dense>

#include "kinward/adjust/mixed_model.h"
#include "kinward/core/kinship_matrix.h"
#include "kinward/core/phenotype.h"
#include "kinward/core/test_result.h"

namespace kinward::adjust
{

/// Per-SNP regression of the BLUP-residualized phenotype y - alpha - delta-hat
/// on [1, x]. The residual is formed once.
class Grammar
{
public:
    explicit Grammar(Eigen::VectorXd residual);
    /// Residual from a fitted model's null BLUP.
    Grammar(const MixedModel& model, const Eigen::VectorXd& y);

    [[nodiscard]] const Eigen::VectorXd& residual() const noexcept { return residual_; }

    /// Squared t-statistic of the slope, sigma^2 = RSS / (n - 2). NaN genotypes are mean-imputed.
    [[nodiscard]] TestResult test(const Eigen::VectorXd& x, int snp_index = 0) const;

private:
    Eigen::VectorXd residual_;
    Eigen::VectorXd centred_;
    double ss_ = 0.0;
};

[[nodiscard]] TestResult grammar_test(const Eigen::VectorXd& x,
                                      const Phenotype& y,
                                      const MixedModelFit& fit,
                                      const KinshipMatrix& k,
                                      int snp_index = 0);

}  // namespace kinward::adjust
