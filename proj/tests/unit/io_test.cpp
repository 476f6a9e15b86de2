#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "helpers.h"
#include "kinward/core/error.h"
#include "kinward/core/io.h"

using namespace kinward;
using kinward::testing::from_rows;

namespace
{

int parse_error_line(const std::string& text, auto reader)
{
    std::istringstream in(text);
    try
    {
        (void)reader(in);
    }
    catch (const ParseError& e)
    {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(IoGenotypes, ReadsFixture)
{
    std::istringstream in("2 3\n0 1 2\nNA 2 0\n");
    const auto g = io::read_genotypes(in);
    EXPECT_EQ(g.num_individuals(), 2);
    EXPECT_EQ(g.num_snps(), 3);
    EXPECT_TRUE(g.is_missing(1, 0));
    EXPECT_EQ(g.count(0, 2), 2);
    EXPECT_EQ(g.count(1, 1), 2);
}

TEST(IoGenotypes, RoundTrip)
{
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> d(-1, 2);
    std::vector<std::vector<int>> rows(7, std::vector<int>(11));
    for (auto& r : rows)
    {
        for (auto& v : r)
        {
            v = d(rng);
        }
    }
    const auto g = from_rows(rows);
    std::stringstream buf;
    io::write_genotypes(buf, g);
    EXPECT_EQ(io::read_genotypes(buf), g);
}

TEST(IoGenotypes, ErrorsNameTheLine)
{
    auto read = [](std::istream& in) { return io::read_genotypes(in); };
    EXPECT_EQ(parse_error_line("2 2\n0 1\n3 0\n", read), 3);
    EXPECT_EQ(parse_error_line("2 2\n0 1\n0\n", read), 3);
    EXPECT_EQ(parse_error_line("2 2\n0 1\n", read), 2);
    EXPECT_EQ(parse_error_line("two 2\n", read), 1);
}

TEST(IoPhenotypes, RoundTripWithIds)
{
    std::istringstream in("a 1\nb 0\nc 1\n");
    const auto y = io::read_phenotypes(in);
    EXPECT_EQ(y.kind(), PhenotypeKind::binary);
    EXPECT_EQ(y.ids()[1], "b");
    std::stringstream buf;
    io::write_phenotypes(buf, y);
    const auto back = io::read_phenotypes(buf);
    EXPECT_EQ(back.values(), y.values());
    EXPECT_EQ(back.ids(), y.ids());

    auto read = [](std::istream& s) { return io::read_phenotypes(s); };
    EXPECT_EQ(parse_error_line("a 1\nb\n", read), 2);
    EXPECT_EQ(parse_error_line("a 1\na 0\n", read), 2);
}

TEST(IoPedigree, ChildBeforeParentIsAnOrderError)
{
    std::istringstream in("kid mom dad\nmom 0 0\ndad 0 0\n");
    try
    {
        (void)io::read_pedigree(in);
        FAIL() << "accepted an unordered pedigree";
    }
    catch (const ParseError& e)
    {
        EXPECT_EQ(e.line(), 1);
        EXPECT_NE(std::string(e.what()).find("order"), std::string::npos);
    }
}

TEST(IoPedigree, RoundTrip)
{
    std::istringstream in("mom 0 0\ndad 0 0\nkid mom dad\n");
    const auto ped = io::read_pedigree(in);
    std::stringstream buf;
    io::write_pedigree(buf, ped);
    const auto back = io::read_pedigree(buf);
    EXPECT_EQ(back.members(), ped.members());
    EXPECT_EQ(*back.mother(2), 0);
}

TEST(IoPedigree, LinesSkipBlanks)
{
    auto read = [](std::istream& s) { return io::read_pedigree(s); };
    EXPECT_EQ(parse_error_line("a 0 0\n\nb a 0\n", read), 3);
}

TEST(IoTrios, Reads)
{
    std::istringstream in("f1 m1 c1\nf2 m2 c2\n");
    const auto t = io::read_trios(in);
    ASSERT_EQ(t.size(), 2u);
    EXPECT_EQ(t[1][2], "c2");
}

TEST(IoMatrix, RoundTripIsExact)
{
    std::mt19937_64 rng(2);
    const Eigen::MatrixXd a = kinward::testing::random_spd(6, 0.1, 1.0, rng);
    const KinshipMatrix k(a);
    std::stringstream buf;
    io::write_matrix(buf, k);
    EXPECT_EQ(buf.str().substr(0, 14), "# kinship n=6\n");
    const auto back = io::read_matrix(buf);
    EXPECT_EQ(back.matrix(), k.matrix());
}

TEST(IoResults, RoundTripKeepsNa)
{
    const std::vector<TestResult> r{TestResult::chi_squared(0, Method::mcp, 1.2345678901234567),
                                    TestResult::not_available(1, Method::mm_lrt),
                                    TestResult::chi_squared(2, Method::gc, 0.0)};
    std::stringstream buf;
    io::write_results(buf, r);
    const auto back = io::read_results(buf);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[0].statistic, r[0].statistic);
    EXPECT_EQ(back[0].p_value, r[0].p_value);
    EXPECT_EQ(back[0].method, Method::mcp);
    EXPECT_FALSE(back[1].valid());
    EXPECT_EQ(back[1].method, Method::mm_lrt);
    EXPECT_EQ(back[2].p_value, 1.0);
}

TEST(IoFormat, ShortestRoundTrip)
{
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5})
    {
        EXPECT_EQ(std::stod(io::format_double(v)), v);
    }
    EXPECT_EQ(io::format_double(std::numeric_limits<double>::quiet_NaN()), "NA");
}
