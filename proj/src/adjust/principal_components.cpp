#include "kinward/adjust/principal_components.h"

#include <stdexcept>
#include <string>

namespace kinward::adjust
{

EigenDecomposition principal_components(const EigenDecomposition& full, int num_pcs)
{
    if (num_pcs < 1 || num_pcs >= full.size() || num_pcs > full.rank())
    {
        throw std::out_of_range("number of PCs must lie in [1, n), got " + std::to_string(num_pcs));
    }
    EigenDecomposition out;
    out.vectors = full.vectors.leftCols(num_pcs);
    out.values = full.values.head(num_pcs);
    return out;
}

EigenDecomposition principal_components(const KinshipMatrix& k, int num_pcs)
{
    if (num_pcs < 1 || num_pcs >= k.size())
    {
        throw std::out_of_range("number of PCs must lie in [1, n), got " + std::to_string(num_pcs));
    }
    return principal_components(symmetric_eigen(k.matrix()), num_pcs);
}

}  // namespace kinward::adjust
