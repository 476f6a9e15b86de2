#include "kinward/adjust/grammar.h"

#include <stdexcept>

#include "kinward/core/genotype_matrix.h"

namespace kinward::adjust
{

Grammar::Grammar(Eigen::VectorXd residual) : residual_(std::move(residual))
{
    if (residual_.size() < 3)
    {
        throw std::invalid_argument("GRAMMAR needs at least 3 individuals");
    }
    centred_ = residual_.array() - residual_.mean();
    ss_ = centred_.squaredNorm();
}

Grammar::Grammar(const MixedModel& model, const Eigen::VectorXd& y)
    : Grammar((y.array() - model.null_fit().alpha).matrix() - model.blup())
{
}

TestResult Grammar::test(const Eigen::VectorXd& x, int snp_index) const
{
    const auto n = residual_.size();
    if (x.size() != n)
    {
        throw std::invalid_argument("genotype length does not match the phenotype");
    }
    Eigen::VectorXd xc = x;
    impute_mean(xc);
    xc.array() -= xc.mean();
    const double sxx = xc.squaredNorm();
    if (sxx / static_cast<double>(n) < 1e-12)
    {
        return TestResult::not_available(snp_index, Method::grammar);
    }
    const double sxy = xc.dot(centred_);
    const double rss = ss_ - sxy * sxy / sxx;
    const double sigma2 = rss / static_cast<double>(n - 2);
    if (!(sigma2 > 1e-300))
    {
        return TestResult::not_available(snp_index, Method::grammar);
    }
    return TestResult::chi_squared(snp_index, Method::grammar, sxy * sxy / (sxx * sigma2));
}

TestResult grammar_test(const Eigen::VectorXd& x,
                        const Phenotype& y,
                        const MixedModelFit& fit,
                        const KinshipMatrix& k,
                        int snp_index)
{
    if (k.size() != y.size())
    {
        throw std::invalid_argument("kinship matrix does not match the phenotype");
    }
    const Eigen::VectorXd yv = y.vector();
    const Eigen::VectorXd delta = blup(symmetric_eigen(k.matrix()), yv, fit.h2, fit.alpha);
    return Grammar((yv.array() - fit.alpha).matrix() - delta).test(x, snp_index);
}

}  // namespace kinward::adjust
