#include "kinward/adjust/ld_prune.h"

#include <deque>
#include <stdexcept>

namespace kinward::adjust
{

std::vector<int> ld_prune(const GenotypeMatrix& g, double r2_threshold, int window)
{
    if (!(r2_threshold > 0.0 && r2_threshold <= 1.0))
    {
        throw std::invalid_argument("r^2 threshold must lie in (0, 1]");
    }
    if (window < 1)
    {
        throw std::invalid_argument("LD window must be positive");
    }
    std::vector<int> kept;
    std::deque<Eigen::VectorXd> recent;  // centred, unit-norm columns
    for (int l = 0; l < g.num_snps(); ++l)
    {
        if (g.is_monomorphic(l))
        {
            continue;
        }
        Eigen::VectorXd x = g.snp_dosages(l);
        impute_mean(x);
        x.array() -= x.mean();
        const double norm = x.norm();
        if (norm <= 1e-12)
        {
            continue;
        }
        x /= norm;
        bool linked = false;
        for (const auto& other : recent)
        {
            const double r = x.dot(other);
            if (r * r >= r2_threshold)
            {
                linked = true;
                break;
            }
        }
        if (linked)
        {
            continue;
        }
        kept.push_back(l);
        recent.push_back(std::move(x));
        if (static_cast<int>(recent.size()) > window)
        {
            recent.pop_front();
        }
    }
    return kept;
}

}  // namespace kinward::adjust
