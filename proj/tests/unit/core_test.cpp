#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "helpers.h"
#include "kinward/core/allele_frequencies.h"
#include "kinward/core/distributions.h"
#include "kinward/core/error.h"
#include "kinward/core/genotype_matrix.h"
#include "kinward/core/kinship_matrix.h"
#include "kinward/core/linalg.h"
#include "kinward/core/pedigree.h"
#include "kinward/core/phenotype.h"
#include "kinward/core/standardize.h"
#include "kinward/core/test_result.h"

using namespace kinward;
using kinward::testing::from_rows;

TEST(GenotypeMatrix, RejectsBadShapesAndCounts)
{
    EXPECT_THROW(GenotypeMatrix(1, 1, {0}), std::invalid_argument);
    EXPECT_THROW(GenotypeMatrix(2, 0, {}), std::invalid_argument);
    EXPECT_THROW(GenotypeMatrix(2, 1, {0, 3}), std::invalid_argument);
    EXPECT_THROW(GenotypeMatrix(2, 1, {0}), std::invalid_argument);
}

TEST(GenotypeMatrix, MissingEntries)
{
    const auto g = from_rows({{0, -1, 2}, {1, 1, -1}});
    EXPECT_EQ(g.num_individuals(), 2);
    EXPECT_EQ(g.num_snps(), 3);
    EXPECT_TRUE(g.has_missing());
    EXPECT_TRUE(g.is_missing(0, 1));
    EXPECT_FALSE(g.is_missing(1, 1));
    const auto x = g.snp_dosages(1);
    EXPECT_TRUE(std::isnan(x[0]));
    EXPECT_EQ(x[1], 1.0);

    Eigen::VectorXd v = x;
    impute_mean(v);
    EXPECT_EQ(v[0], 1.0);
}

TEST(GenotypeMatrix, MonomorphicAndSelection)
{
    const auto g = from_rows({{2, 0, 0}, {2, 1, -1}, {2, 0, 0}});
    EXPECT_TRUE(g.is_monomorphic(0));
    EXPECT_FALSE(g.is_monomorphic(1));
    EXPECT_TRUE(g.is_monomorphic(2));
    EXPECT_EQ(polymorphic_snps(g), std::vector<int>{1});

    const std::vector<int> rows{2, 0};
    const auto s = g.select_individuals(rows);
    EXPECT_EQ(s.num_individuals(), 2);
    EXPECT_EQ(s.count(0, 2), 0);
    // All heterozygous still carries both alleles.
    EXPECT_FALSE(from_rows({{1}, {1}}).is_monomorphic(0));
    EXPECT_EQ(s.count(1, 1), 0);
}

TEST(AlleleFrequencies, NaiveEstimateAndClamp)
{
    const auto g = from_rows({{0, 2, 1}, {0, 2, -1}, {0, 1, 1}});
    const auto p = estimate_allele_frequencies(g);
    EXPECT_DOUBLE_EQ(p[0], frequency_floor(3));
    EXPECT_DOUBLE_EQ(p[1], 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(p[2], 0.5);
    EXPECT_DOUBLE_EQ(frequency_floor(3), 1.0 / 8.0);
    // Values inside the interval are untouched.
    EXPECT_EQ(clamp_frequency(0.3, 10), 0.3);
    EXPECT_DOUBLE_EQ(clamp_frequency(1.0, 10), 1.0 - 1.0 / 22.0);
}

TEST(Standardize, ArithmeticExamples)
{
    const auto g = from_rows({{0, 2, 1}, {1, 0, -1}, {2, 1, 1}});
    AlleleFrequencies p{{0.25, 0.5, 0.5}};
    const auto z = standardize_genotypes(g, p);
    const double s = std::sqrt(4.0 * 0.25 * 0.75);
    EXPECT_NEAR(z(0, 0), -0.5 / s, 1e-15);
    EXPECT_NEAR(z(1, 0), 0.5 / s, 1e-15);
    EXPECT_NEAR(z(2, 0), 1.5 / s, 1e-15);
    EXPECT_NEAR(z(0, 0), -0.5773502691896258, 1e-12);
    EXPECT_NEAR(z(2, 0), 1.7320508075688772, 1e-12);
    EXPECT_EQ(z(0, 1), 1.0);
    EXPECT_EQ(z(2, 2), 0.0);  // x = 2p
    EXPECT_EQ(z(1, 2), 0.0);  // missing
}

TEST(Standardize, BoundaryFrequencyIsDegenerate)
{
    const auto g = from_rows({{0}, {1}});
    EXPECT_THROW((void)standardize_genotypes(g, AlleleFrequencies{{0.0}}), DegenerateSnpError);
    EXPECT_THROW((void)standardize_genotypes(g, AlleleFrequencies{{1.0}}), DegenerateSnpError);
}

TEST(Standardize, ColumnsHaveHalfVarianceUnderTrueFrequencies)
{
    std::mt19937_64 rng(5);
    const std::vector<double> p{0.1, 0.3, 0.5};
    const auto g = kinward::testing::binomial_panel(10000, p, rng);
    const auto z = standardize_genotypes(g, AlleleFrequencies{p});
    for (int l = 0; l < 3; ++l)
    {
        const double mean = z.col(l).mean();
        const double var = (z.col(l).array() - mean).square().mean();
        EXPECT_NEAR(mean, 0.0, 0.05);
        EXPECT_NEAR(var, 0.5, 0.02);
    }
}

TEST(Phenotype, KindsAndCounts)
{
    const auto y = Phenotype::infer({0, 1, 1, 0, 1});
    EXPECT_EQ(y.kind(), PhenotypeKind::binary);
    EXPECT_EQ(y.num_cases(), 3);
    EXPECT_EQ(y.num_controls(), 2);
    EXPECT_NO_THROW(y.require_case_control());
    EXPECT_EQ(Phenotype::infer({0.5, 1.0}).kind(), PhenotypeKind::quantitative);
    EXPECT_THROW(Phenotype::infer({1, 1}).require_case_control(), std::invalid_argument);
    EXPECT_THROW(Phenotype({0, 2}, PhenotypeKind::binary), std::invalid_argument);
}

TEST(KinshipMatrix, Validation)
{
    Eigen::MatrixXd a(2, 2);
    a << 0.5, 0.1, 0.2, 0.5;
    EXPECT_THROW(KinshipMatrix{a}, std::invalid_argument);
    EXPECT_THROW(KinshipMatrix{Eigen::MatrixXd(2, 3)}, std::invalid_argument);
    a(1, 0) = 0.1;
    a(1, 1) = 0.6;
    const KinshipMatrix k(a);
    EXPECT_NEAR(k.inbreeding(1), 0.2, 1e-15);
    EXPECT_EQ(KinshipMatrix::unrelated(3)(2, 2), 0.5);
    EXPECT_EQ(KinshipMatrix::unrelated(3)(0, 2), 0.0);
}

TEST(Pedigree, ValidRecords)
{
    const auto ped = Pedigree::from_records({{"gm", "0", "0"}, {"gf", "0", "0"}, {"kid", "gm", "gf"}, {"x", "0", "0"}});
    EXPECT_EQ(ped.size(), 4);
    EXPECT_TRUE(ped.is_founder(0));
    EXPECT_FALSE(ped.is_founder(2));
    EXPECT_EQ(*ped.mother(2), 0);
    EXPECT_EQ(*ped.father(2), 1);
    EXPECT_EQ(ped.founders(), (std::vector<int>{0, 1, 3}));
    EXPECT_EQ(ped.records()[2].mother, "gm");
}

TEST(Pedigree, Errors)
{
    auto line_of = [](const std::vector<PedigreeRecord>& r)
    {
        try
        {
            (void)Pedigree::from_records(r);
        }
        catch (const ParseError& e)
        {
            return e.line();
        }
        return -1;
    };
    // Child before parent.
    EXPECT_EQ(line_of({{"kid", "m", "f"}, {"m", "0", "0"}, {"f", "0", "0"}}), 1);
    // One parent only.
    EXPECT_EQ(line_of({{"m", "0", "0"}, {"kid", "m", "0"}}), 2);
    // Unknown parent.
    EXPECT_EQ(line_of({{"m", "0", "0"}, {"kid", "m", "nobody"}}), 2);
    // Duplicate id.
    EXPECT_EQ(line_of({{"m", "0", "0"}, {"m", "0", "0"}}), 2);
    // Same individual as both parents.
    EXPECT_GT(line_of({{"m", "0", "0"}, {"kid", "m", "m"}}), 0);
    // Cycle.
    try
    {
        (void)Pedigree::from_records({{"a", "b", "c"}, {"b", "a", "c"}, {"c", "0", "0"}});
        FAIL() << "cycle accepted";
    }
    catch (const ParseError& e)
    {
        EXPECT_NE(std::string(e.what()).find("cycl"), std::string::npos);
    }
}

TEST(Linalg, DecompositionInvariants)
{
    std::mt19937_64 rng(3);
    const int n = 40;
    const Eigen::MatrixXd a = kinward::testing::random_spd(n, 0.0, 2.0, rng);
    const auto eig = symmetric_eigen(a);
    EXPECT_LT(eig.reconstruction_error(a), 1e-8 * n);
    EXPECT_LT(eig.orthonormality_error(), 1e-10);
    for (int i = 1; i < n; ++i)
    {
        EXPECT_GE(eig.values[i - 1], eig.values[i]);
    }
    for (int j = 0; j < n; ++j)
    {
        Eigen::Index arg = 0;
        eig.vectors.col(j).cwiseAbs().maxCoeff(&arg);
        EXPECT_GT(eig.vectors(arg, j), 0.0);
    }
}

TEST(Linalg, SpectralInverseRidge)
{
    std::mt19937_64 rng(4);
    const Eigen::MatrixXd a = kinward::testing::random_spd(10, 0.5, 2.0, rng);
    const SpectralInverse inv(a);
    EXPECT_FALSE(inv.ridged());
    EXPECT_LT((inv.inverse() * a - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-10);

    const Eigen::MatrixXd singular = Eigen::MatrixXd::Ones(3, 3);
    const SpectralInverse ridged(singular);
    EXPECT_TRUE(ridged.ridged());
    const Eigen::MatrixXd expected = (singular + SpectralInverse::kRidge * Eigen::MatrixXd::Identity(3, 3)).inverse();
    EXPECT_LT((ridged.inverse() - expected).cwiseAbs().maxCoeff() / expected.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Distributions, KnownValues)
{
    EXPECT_NEAR(chi_squared_1_median(), 0.45493642311957283, 1e-14);
    EXPECT_NEAR(chi_squared_sf(3.841458820694124, 1), 0.05, 1e-12);
    EXPECT_NEAR(chi_squared_sf(4.0, 1), std::erfc(std::sqrt(2.0)), 1e-14);
    EXPECT_NEAR(chi_squared_cdf(2.0, 3), 0.4275932955291202, 1e-13);
    EXPECT_NEAR(chi_squared_quantile(0.5, 1), chi_squared_1_median(), 1e-14);
    EXPECT_TRUE(std::isnan(chi_squared_sf(std::numeric_limits<double>::quiet_NaN(), 1)));
    EXPECT_NEAR(f_sf(3.0, 1, 100), 0.08634793392577864, 1e-12);
    // Binomial(4, 1/2): P(X <= 0) + P(X >= 4) = 2/16.
    EXPECT_NEAR(binomial_half_two_sided(0, 4), 0.125, 1e-15);
    EXPECT_NEAR(binomial_half_two_sided(2, 4), 1.0, 1e-15);
}

TEST(TestResult, TagsRoundTrip)
{
    for (Method m : {Method::armitage, Method::tdt, Method::mcp, Method::pc, Method::mm_lrt, Method::mm_score,
                     Method::grammar, Method::gc})
    {
        EXPECT_EQ(parse_method(to_string(m)), m);
    }
    EXPECT_FALSE(parse_method("bogus").has_value());
    const auto r = TestResult::chi_squared(3, Method::mcp, 3.841458820694124);
    EXPECT_NEAR(r.p_value, 0.05, 1e-12);
    EXPECT_FALSE(TestResult::not_available(0, Method::pc).valid());
}
