#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

#include "kinward/core/distributions.h"
#include "kinward/eval/compare.h"
#include "kinward/eval/qq.h"
#include "kinward/eval/roc.h"

using namespace kinward;

namespace
{

std::vector<TestResult> from_stats(const std::vector<double>& stats)
{
    std::vector<TestResult> out;
    for (std::size_t i = 0; i < stats.size(); ++i)
    {
        out.push_back(TestResult::chi_squared(static_cast<int>(i), Method::armitage, stats[i]));
    }
    return out;
}

}  // namespace

TEST(Qq, ExpectedQuantiles)
{
    const auto data = eval::qq(from_stats({1.0, 4.0, 0.1, 9.0}));
    ASSERT_EQ(data.expected.size(), 4u);
    EXPECT_NEAR(data.expected[0], -std::log10(3.5 / 4.0), 1e-12);
    EXPECT_NEAR(data.expected[3], -std::log10(0.5 / 4.0), 1e-12);
    EXPECT_TRUE(std::is_sorted(data.observed.begin(), data.observed.end()));
    EXPECT_NEAR(data.observed[3], -std::log10(chi_squared_sf(9.0, 1)), 1e-12);
}

TEST(Qq, SkipsNaAndCausal)
{
    auto results = from_stats({1.0, 2.0, 3.0});
    results.push_back(TestResult::not_available(3, Method::armitage));
    const std::vector<std::uint8_t> causal{0, 1, 0, 0};
    EXPECT_EQ(eval::qq(results, causal).observed.size(), 2u);
    EXPECT_EQ(eval::qq(results).observed.size(), 3u);
}

TEST(Qq, UniformPValuesOnDiagonal)
{
    const int m = 1000;
    std::vector<TestResult> results;
    for (int i = 1; i <= m; ++i)
    {
        auto r = TestResult::chi_squared(i, Method::armitage, 1.0);
        r.p_value = (i - 0.5) / m;
        results.push_back(r);
    }
    const auto data = eval::qq(results);
    for (int j = 0; j < m; ++j)
    {
        EXPECT_NEAR(data.observed[static_cast<std::size_t>(j)], data.expected[static_cast<std::size_t>(j)], 1e-12);
    }
}

TEST(Qq, CalibratedUnderNull)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z;
    const int m = 100000;
    std::vector<double> stats(m);
    for (auto& s : stats)
    {
        const double t = z(rng);
        s = t * t;
    }
    const auto data = eval::qq(from_stats(stats));
    double worst = 0.0;
    for (int j = m / 100; j < m - m / 100; ++j)
    {
        const auto k = static_cast<std::size_t>(j);
        worst = std::max(worst, std::abs(data.observed[k] - data.expected[k]));
    }
    EXPECT_LT(worst, 0.15);
}

TEST(Qq, ClampsZeroPValues)
{
    auto results = from_stats({1.0});
    results[0].p_value = 0.0;
    const auto data = eval::qq(results);
    EXPECT_EQ(data.clamped, 1);
    EXPECT_DOUBLE_EQ(data.observed[0], 300.0);
}

TEST(Roc, PerfectSeparation)
{
    const auto curve = eval::roc(from_stats({10, 9, 1, 2, 0.5}), std::vector<std::uint8_t>{1, 1, 0, 0, 0});
    EXPECT_DOUBLE_EQ(curve.auc, 1.0);
    EXPECT_EQ(curve.fpr.front(), 0.0);
    EXPECT_EQ(curve.tpr.front(), 0.0);
    EXPECT_EQ(curve.fpr.back(), 1.0);
    EXPECT_EQ(curve.tpr.back(), 1.0);
    EXPECT_TRUE(std::isinf(curve.thresholds.front()));
}

TEST(Roc, TiesContributeHalf)
{
    const auto curve = eval::roc(from_stats({1, 1}), std::vector<std::uint8_t>{1, 0});
    EXPECT_DOUBLE_EQ(curve.auc, 0.5);
}

TEST(Roc, RandomScoresNearHalf)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u;
    std::vector<double> stats(20000);
    std::vector<std::uint8_t> causal(20000);
    for (std::size_t i = 0; i < stats.size(); ++i)
    {
        stats[i] = u(rng);
        causal[i] = i % 10 == 0;
    }
    EXPECT_NEAR(eval::roc(from_stats(stats), causal).auc, 0.5, 0.02);
}

TEST(Roc, InvariantToMonotoneMapsAndOrder)
{
    std::mt19937_64 rng(3);
    std::exponential_distribution<double> e;
    std::vector<double> stats(500);
    std::vector<std::uint8_t> causal(500);
    for (std::size_t i = 0; i < stats.size(); ++i)
    {
        causal[i] = i % 7 == 0;
        stats[i] = e(rng) + (causal[i] ? 1.0 : 0.0);
    }
    const double auc = eval::roc(from_stats(stats), causal).auc;
    std::vector<double> mapped(stats);
    for (auto& v : mapped)
    {
        v = std::log1p(v) * 3.0;
    }
    EXPECT_DOUBLE_EQ(eval::roc(from_stats(mapped), causal).auc, auc);

    std::vector<std::size_t> perm(stats.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> s2;
    std::vector<std::uint8_t> c2;
    for (auto i : perm)
    {
        s2.push_back(stats[i]);
        c2.push_back(causal[i]);
    }
    EXPECT_NEAR(eval::roc(from_stats(s2), c2).auc, auc, 1e-12);
}

TEST(Roc, NaRanksLast)
{
    auto results = from_stats({5.0, 1.0, 0.0});
    results[2] = TestResult::not_available(2, Method::armitage);
    const auto curve = eval::roc(results, std::vector<std::uint8_t>{1, 0, 0});
    EXPECT_DOUBLE_EQ(curve.auc, 1.0);
    EXPECT_THROW((void)eval::roc(from_stats({1.0}), std::vector<std::uint8_t>{1}), std::invalid_argument);
}

TEST(Compare, MethodList)
{
    const auto m = eval::parse_method_list("gc,pc,mm,mcp,grammar,armitage");
    EXPECT_EQ(m, (std::vector<Method>{Method::gc, Method::pc, Method::mm_lrt, Method::mcp, Method::grammar,
                                      Method::armitage}));
    EXPECT_THROW((void)eval::parse_method_list("gc,bogus"), std::invalid_argument);
}

TEST(Compare, SmallStudyEndToEnd)
{
    auto sc = sim::SimScenario::unbiased();
    sc.population.population_size = 300;
    sc.population.cases = {50};
    sc.population.controls = {50};
    sc.snps = 500;
    sc.causal = 10;
    sc.odds_ratio = 2.0;
    sc.seed = 4;
    eval::CompareOptions opts;
    opts.methods = {Method::armitage, Method::gc, Method::pc, Method::mm_lrt, Method::mcp, Method::grammar};
    opts.replicates = 2;
    opts.num_pcs = 5;
    int calls = 0;
    opts.progress = [&calls](int, int) { ++calls; };
    const auto cmp = eval::compare_methods(sc, opts);
    EXPECT_EQ(calls, 2);
    ASSERT_EQ(cmp.summary.size(), opts.methods.size());
    EXPECT_EQ(cmp.gc_lambdas.size(), 2u);
    EXPECT_EQ(cmp.causal.size(), 1000u);
    for (const auto& s : cmp.summary)
    {
        EXPECT_EQ(cmp.pooled.at(s.method).size(), 1000u);
        EXPECT_EQ(s.causal_tests, 20);
        EXPECT_GE(s.auc, 0.0);
        EXPECT_LE(s.auc, 1.0);
        EXPECT_GE(s.type1_05, 0.0);
        EXPECT_LE(s.type1_05, 0.2);
        EXPECT_LE(s.type1_001, s.type1_05);
    }

    // GC statistics are the Armitage statistics divided by the per-replicate lambda.
    const auto& arm = cmp.pooled.at(Method::armitage);
    const auto& gc = cmp.pooled.at(Method::gc);
    for (std::size_t i = 0; i < arm.size(); ++i)
    {
        if (arm[i].valid())
        {
            EXPECT_NEAR(gc[i].statistic * cmp.gc_lambdas[i / 500], arm[i].statistic, 1e-9);
        }
    }

    const auto dir = std::filesystem::temp_directory_path() / "kinward_compare_test";
    std::filesystem::remove_all(dir);
    eval::write_comparison(dir, cmp);
    EXPECT_TRUE(std::filesystem::exists(dir / "summary.tsv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "qq_mcp.tsv"));
    EXPECT_TRUE(std::filesystem::exists(dir / "roc_mm-lrt.tsv"));
    std::filesystem::remove_all(dir);
}

TEST(Compare, ReplicatesAreIndependentOfBatching)
{
    auto sc = sim::SimScenario::unbiased();
    sc.population.population_size = 300;
    sc.population.cases = {50};
    sc.population.controls = {50};
    sc.snps = 200;
    sc.causal = 5;
    eval::CompareOptions opts;
    opts.methods = {Method::mcp};
    const auto alone = eval::run_replicate(sc, 1, opts);
    opts.replicates = 2;
    opts.threads = 2;
    const auto both = eval::compare_methods(sc, opts);
    const auto& pooled = both.pooled.at(Method::mcp);
    const auto& single = alone.results.at(Method::mcp);
    for (std::size_t i = 0; i < single.size(); ++i)
    {
        EXPECT_EQ(pooled[200 + i].statistic, single[i].statistic);
    }
}

TEST(Compare, ThreadCountDoesNotChangeResults)
{
    auto sc = sim::SimScenario::unbiased();
    sc.population.population_size = 300;
    sc.population.cases = {40};
    sc.population.controls = {60};
    sc.snps = 150;
    sc.causal = 5;
    eval::CompareOptions opts;
    opts.methods = {Method::gc, Method::pc, Method::mm_lrt, Method::mcp};
    opts.num_pcs = 3;
    opts.replicates = 4;
    opts.threads = 1;
    const auto serial = eval::compare_methods(sc, opts);
    opts.threads = 3;
    const auto parallel = eval::compare_methods(sc, opts);
    EXPECT_EQ(serial.gc_lambdas, parallel.gc_lambdas);
    for (Method m : opts.methods)
    {
        const auto& a = serial.pooled.at(m);
        const auto& b = parallel.pooled.at(m);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
        {
            EXPECT_TRUE(a[i].statistic == b[i].statistic || (!a[i].valid() && !b[i].valid())) << i;
        }
    }
}
