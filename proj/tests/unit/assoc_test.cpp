#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "helpers.h"
#include "kinward/assoc/armitage.h"
#include "kinward/assoc/mcp.h"
#include "kinward/assoc/tdt.h"
#include "kinward/core/distributions.h"
#include "kinward/kinship/kinship.h"

using namespace kinward;

namespace
{

Phenotype balanced(int n)
{
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        y[static_cast<std::size_t>(i)] = i % 2;
    }
    return Phenotype(y, PhenotypeKind::binary);
}

Eigen::VectorXd binomial_column(int n, double p, std::mt19937_64& rng)
{
    std::binomial_distribution<int> b(2, p);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i)
    {
        x[i] = b(rng);
    }
    return x;
}

}  // namespace

TEST(Armitage, EqualFractionsGiveZero)
{
    const Phenotype y({1, 1, 0, 0}, PhenotypeKind::binary);
    Eigen::VectorXd x(4);
    x << 0, 2, 2, 0;
    EXPECT_EQ(assoc::armitage(x, y).statistic, 0.0);
}

TEST(Armitage, HandArithmetic)
{
    // T = 2 - 0, V = (1/2 + 1/2)(8/4 - 1) = 1.
    const Phenotype y({1, 1, 0, 0}, PhenotypeKind::binary);
    Eigen::VectorXd x(4);
    x << 2, 2, 0, 0;
    const auto r = assoc::armitage(x, y, 7);
    EXPECT_DOUBLE_EQ(r.statistic, 4.0);
    EXPECT_EQ(r.snp_index, 7);
    EXPECT_EQ(r.df, 1);
    EXPECT_NEAR(r.p_value, chi_squared_sf(4.0, 1), 1e-15);
}

TEST(Armitage, EqualsSampleSizeTimesSquaredCorrelation)
{
    std::mt19937_64 rng(2);
    const auto y = balanced(101);
    const Eigen::VectorXd x = binomial_column(101, 0.3, rng);
    const Eigen::VectorXd yv = y.vector();
    const Eigen::VectorXd xc = x.array() - x.mean();
    const Eigen::VectorXd yc = yv.array() - yv.mean();
    const double r = xc.dot(yc) / std::sqrt(xc.squaredNorm() * yc.squaredNorm());
    EXPECT_NEAR(assoc::armitage(x, y).statistic, 101 * r * r, 1e-10);
}

TEST(Armitage, AlleleSwapInvariantAndMissingDropped)
{
    std::mt19937_64 rng(3);
    const auto y = balanced(50);
    Eigen::VectorXd x = binomial_column(50, 0.4, rng);
    const Eigen::VectorXd swapped = 2.0 - x.array();
    EXPECT_NEAR(assoc::armitage(x, y).statistic, assoc::armitage(swapped, y).statistic, 1e-12);

    x[0] = std::nan("");
    x[1] = std::nan("");
    std::vector<double> rest(y.values().begin() + 2, y.values().end());
    const auto sub = assoc::armitage(x.tail(48), Phenotype(rest, PhenotypeKind::binary));
    EXPECT_DOUBLE_EQ(assoc::armitage(x, y).statistic, sub.statistic);
}

TEST(Armitage, ConstantGenotypeIsNa)
{
    const auto y = balanced(6);
    EXPECT_FALSE(assoc::armitage(Eigen::VectorXd::Constant(6, 1.0), y).valid());
}

TEST(Tdt, DirectValues)
{
    const auto r = assoc::tdt(assoc::Transmissions{40, 60});
    EXPECT_DOUBLE_EQ(r.result.statistic, 4.0);
    EXPECT_NEAR(r.exact_p_value, binomial_half_two_sided(40, 100), 1e-15);
    EXPECT_EQ(assoc::tdt(assoc::Transmissions{25, 25}).result.statistic, 0.0);
    EXPECT_THROW((void)assoc::tdt(assoc::Transmissions{0, 0}), std::invalid_argument);
}

TEST(Tdt, EnumerationOracle)
{
    // Parent genotype g carries g copies of the counted allele A. Each parent
    // passes A with probability g/2; a heterozygous parent is informative.
    for (int f = 0; f <= 2; ++f)
    {
        for (int m = 0; m <= 2; ++m)
        {
            for (int tf = 0; tf <= 1; ++tf)
            {
                for (int tm = 0; tm <= 1; ++tm)
                {
                    if ((tf == 1 && f == 0) || (tf == 0 && f == 2) || (tm == 1 && m == 0) || (tm == 0 && m == 2))
                    {
                        continue;  // impossible transmission
                    }
                    const int child = tf + tm;
                    long ref = 0;
                    long alt = 0;
                    if (f == 1)
                    {
                        (tf ? ref : alt) += 1;
                    }
                    if (m == 1)
                    {
                        (tm ? ref : alt) += 1;
                    }
                    const auto c = assoc::count_transmissions(assoc::Trio{f, m, child});
                    EXPECT_EQ(c.ref, ref) << f << m << child;
                    EXPECT_EQ(c.alt, alt) << f << m << child;
                }
            }
        }
    }
    // Aa x AA -> AA: the heterozygous parent transmitted A.
    const auto c = assoc::count_transmissions(assoc::Trio{1, 2, 2});
    EXPECT_EQ(c.ref, 1);
    EXPECT_EQ(c.alt, 0);
}

TEST(Tdt, RejectsNonMendelianTrios)
{
    EXPECT_THROW(assoc::TrioSet({{0, 0, 1}}), std::invalid_argument);
    EXPECT_THROW(assoc::TrioSet({{2, 2, 0}}), std::invalid_argument);
    EXPECT_THROW(assoc::TrioSet({{3, 0, 1}}), std::invalid_argument);
}

TEST(Mcp, ProjectionAnnihilatesOnes)
{
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 5; ++rep)
    {
        const KinshipMatrix k(kinward::testing::random_spd(30, 0.05, 1.0, rng));
        const assoc::McpProjection proj(k);
        EXPECT_LT((proj.matrix() * Eigen::VectorXd::Ones(30)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Mcp, SymmetricAndShiftInvariant)
{
    std::mt19937_64 rng(5);
    const int n = 40;
    const KinshipMatrix k(kinward::testing::random_spd(n, 0.1, 1.0, rng));
    const assoc::McpProjection proj(k);
    const Eigen::VectorXd x = binomial_column(n, 0.3, rng);
    const Eigen::VectorXd y = balanced(n).vector();
    const auto xy = assoc::mcp_statistic(x, y, proj);
    const auto yx = assoc::mcp_statistic(y, x, proj);
    EXPECT_EQ(xy.statistic, yx.statistic);
    const Eigen::VectorXd shifted = x.array() + 3.0;
    EXPECT_NEAR(proj.form(shifted, y), proj.form(x, y), 1e-10);
    EXPECT_NEAR(assoc::mcp_statistic(shifted, y, proj).statistic, xy.statistic, 1e-8);
    // Constant x: T vanishes.
    EXPECT_NEAR(proj.form(Eigen::VectorXd::Constant(n, 2.0), y), 0.0, 1e-10);
    EXPECT_FALSE(assoc::mcp_statistic(Eigen::VectorXd::Constant(n, 2.0), y, proj).valid());
}

TEST(Mcp, UnrelatedReducesToArmitage)
{
    std::mt19937_64 rng(6);
    const int n = 60;
    std::vector<double> yv(n, 0.0);
    std::fill(yv.begin(), yv.begin() + 25, 1.0);
    const Phenotype y(yv, PhenotypeKind::binary);
    const auto k = KinshipMatrix::unrelated(n);
    const assoc::McpProjection proj(k);
    for (int rep = 0; rep < 20; ++rep)
    {
        const Eigen::VectorXd x = binomial_column(n, 0.35, rng);
        const double arm = assoc::armitage(x, y).statistic;
        const double mcp = assoc::mcp_score(x, y, k).statistic;
        // MCP = (n-1) r^2 / (1 - r^2) with Armitage = n r^2.
        const double expected = (n - 1.0) / n * arm / (1.0 - arm / n);
        EXPECT_NEAR(mcp, expected, 1e-10 * std::max(1.0, expected));
        EXPECT_GE(mcp, (n - 1.0) / n * arm - 1e-12);

        // T = 2 (n0 n1 / n)(mean cases - mean controls).
        const double mean_cases = x.head(25).mean();
        const double mean_controls = x.tail(n - 25).mean();
        const double t = proj.form(y.vector(), x);
        EXPECT_NEAR(t, 2.0 * 25.0 * 35.0 / n * (mean_cases - mean_controls), 1e-10);
    }
}

TEST(Mcp, TrioNumeratorMatchesTdt)
{
    // Trios of unrelated parents with an affected child; K from the pedigree.
    std::mt19937_64 rng(7);
    const int trios = 30;
    std::vector<PedigreeRecord> recs;
    for (int t = 0; t < trios; ++t)
    {
        const auto s = std::to_string(t);
        recs.push_back({"f" + s, "0", "0"});
        recs.push_back({"m" + s, "0", "0"});
        recs.push_back({"c" + s, "m" + s, "f" + s});
    }
    const auto k = kinship::pedigree_kinship(Pedigree::from_records(recs));
    const assoc::McpProjection proj(k);
    std::vector<double> yv(3 * trios, 0.0);
    for (int t = 0; t < trios; ++t)
    {
        yv[static_cast<std::size_t>(3 * t + 2)] = 1.0;
    }
    const Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(yv.data(), 3 * trios);

    std::bernoulli_distribution allele(0.4);
    std::bernoulli_distribution coin(0.5);
    for (int rep = 0; rep < 10; ++rep)
    {
        Eigen::VectorXd x(3 * trios);
        std::vector<assoc::Trio> set;
        for (int t = 0; t < trios; ++t)
        {
            const int f[2] = {allele(rng), allele(rng)};
            const int m[2] = {allele(rng), allele(rng)};
            const int c = f[coin(rng)] + m[coin(rng)];
            x[3 * t] = f[0] + f[1];
            x[3 * t + 1] = m[0] + m[1];
            x[3 * t + 2] = c;
            set.push_back({f[0] + f[1], m[0] + m[1], c});
        }
        const auto counts = assoc::count_transmissions(assoc::TrioSet(set));
        const double t_stat = proj.form(y, x);
        const double diff = static_cast<double>(counts.alt - counts.ref);
        EXPECT_NEAR(t_stat * t_stat, 4.0 * diff * diff, 1e-8);
    }
}

TEST(Mcp, RidgeIsReported)
{
    Eigen::MatrixXd k = Eigen::MatrixXd::Identity(4, 4) * 0.5;
    k.block(0, 0, 2, 2).setConstant(0.5);  // identical twins
    const assoc::McpProjection proj{KinshipMatrix(k)};
    EXPECT_TRUE(proj.ridged());
    const assoc::McpProjection fine{KinshipMatrix::unrelated(4)};
    EXPECT_FALSE(fine.ridged());
}

TEST(Calibration, UnstructuredNullTypeOneError)
{
    std::mt19937_64 rng(8);
    const int n = 200;
    const int snps = 10000;
    const auto y = balanced(n);
    const auto k = KinshipMatrix::unrelated(n);
    const assoc::McpProjection proj(k);
    const assoc::McpScorer scorer(proj, y.vector());
    std::uniform_real_distribution<double> maf(0.05, 0.5);
    int arm_rejects = 0;
    int mcp_rejects = 0;
    std::vector<double> arm_stats;
    for (int l = 0; l < snps; ++l)
    {
        const Eigen::VectorXd x = binomial_column(n, maf(rng), rng);
        const auto a = assoc::armitage(x, y, l);
        const auto m = scorer.test(x, l);
        if (!a.valid())
        {
            continue;
        }
        arm_stats.push_back(a.statistic);
        arm_rejects += a.p_value < 0.05;
        mcp_rejects += m.p_value < 0.05;
    }
    EXPECT_NEAR(arm_rejects / double(arm_stats.size()), 0.05, 0.01);
    EXPECT_NEAR(mcp_rejects / double(arm_stats.size()), 0.05, 0.01);
    std::nth_element(arm_stats.begin(), arm_stats.begin() + arm_stats.size() / 2, arm_stats.end());
    const double median = arm_stats[arm_stats.size() / 2];
    EXPECT_GT(median, 0.43);
    EXPECT_LT(median, 0.48);
}
