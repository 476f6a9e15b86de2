#include "kinward/assoc/tdt.h"

#include <stdexcept>
#include <string>

#include "kinward/core/distributions.h"

namespace kinward::assoc
{

namespace
{

bool can_transmit(int parent, int allele)
{
    // allele 1 = reference copy, 0 = other copy
    return allele == 1 ? parent >= 1 : parent <= 1;
}

bool mendelian(const Trio& t)
{
    for (int from_father = 0; from_father <= 1; ++from_father)
    {
        for (int from_mother = 0; from_mother <= 1; ++from_mother)
        {
            if (from_father + from_mother == t.child && can_transmit(t.father, from_father) &&
                can_transmit(t.mother, from_mother))
            {
                return true;
            }
        }
    }
    return false;
}

}  // namespace

TrioSet::TrioSet(std::vector<Trio> trios) : trios_(std::move(trios))
{
    for (std::size_t k = 0; k < trios_.size(); ++k)
    {
        const auto& t = trios_[k];
        for (int g : {t.father, t.mother, t.child})
        {
            if (g < 0 || g > 2)
            {
                throw std::invalid_argument("trio " + std::to_string(k) + " has a genotype outside {0,1,2}");
            }
        }
        if (!mendelian(t))
        {
            throw std::invalid_argument("trio " + std::to_string(k) + " violates Mendelian transmission");
        }
    }
}

Transmissions count_transmissions(const Trio& t)
{
    Transmissions out;
    const bool father_het = t.father == 1;
    const bool mother_het = t.mother == 1;
    if (father_het && mother_het)
    {
        out.ref = t.child;
        out.alt = 2 - t.child;
    }
    else if (father_het || mother_het)
    {
        // The homozygous parent's contribution is fixed.
        const int fixed = (father_het ? t.mother : t.father) / 2;
        const int transmitted = t.child - fixed;
        (transmitted == 1 ? out.ref : out.alt) += 1;
    }
    return out;
}

Transmissions count_transmissions(const TrioSet& trios)
{
    Transmissions total;
    for (const auto& t : trios.trios())
    {
        const auto c = count_transmissions(t);
        total.ref += c.ref;
        total.alt += c.alt;
    }
    return total;
}

TdtResult tdt(const Transmissions& counts, int snp_index)
{
    const long informative = counts.ref + counts.alt;
    if (informative <= 0)
    {
        throw std::invalid_argument("TDT needs at least one heterozygous parent");
    }
    const double diff = static_cast<double>(counts.alt - counts.ref);
    const double statistic = diff * diff / static_cast<double>(informative);
    return {TestResult::chi_squared(snp_index, Method::tdt, statistic), counts,
            binomial_half_two_sided(counts.alt, informative)};
}

TdtResult tdt(const TrioSet& trios, int snp_index)
{
    return tdt(count_transmissions(trios), snp_index);
}

}  // namespace kinward::assoc
