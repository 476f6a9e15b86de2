#include "kinward/core/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "kinward/core/error.h"

namespace kinward::io
{

namespace
{

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size())
    {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
        {
            ++pos;
        }
        const std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r')
        {
            ++pos;
        }
        if (pos > start)
        {
            tokens.push_back(line.substr(start, pos - start));
        }
    }
    return tokens;
}

// Reads lines while tracking 1-based line numbers; blank lines are skipped.
class LineReader
{
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::string& line)
    {
        while (std::getline(in_, line))
        {
            ++number_;
            if (line.find_first_not_of(" \t\r") != std::string::npos)
            {
                return true;
            }
        }
        return false;
    }

    [[nodiscard]] int number() const noexcept { return number_; }

private:
    std::istream& in_;
    int number_ = 0;
};

long parse_long(std::string_view token, int line, const char* what)
{
    long value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
    {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line);
    }
    return value;
}

double parse_double(std::string_view token, int line, const char* what)
{
    if (token == "NA" || token == "nan" || token == "NaN")
    {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
    {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line);
    }
    return value;
}

std::ifstream open_in(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw Error("cannot open '" + path.string() + "' for reading");
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
    {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
    {
        return "NA";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, ptr};
}

// --- genotypes -------------------------------------------------------------

GenotypeMatrix read_genotypes(std::istream& in)
{
    LineReader reader(in);
    std::string line;
    if (!reader.next(line))
    {
        throw ParseError("empty genotype file", 0);
    }
    const auto header = split(line);
    if (header.size() != 2)
    {
        throw ParseError("genotype header must be 'n L'", reader.number());
    }
    const long n = parse_long(header[0], reader.number(), "individual count");
    const long snps = parse_long(header[1], reader.number(), "SNP count");
    if (n < 2 || snps < 1)
    {
        throw ParseError("genotype file needs n >= 2 and L >= 1", reader.number());
    }

    const auto size = static_cast<std::size_t>(n) * static_cast<std::size_t>(snps);
    std::vector<std::uint8_t> counts(size, 0);
    std::vector<std::uint8_t> missing(size, 0);
    for (long i = 0; i < n; ++i)
    {
        if (!reader.next(line))
        {
            throw ParseError("expected " + std::to_string(n) + " genotype rows, found " + std::to_string(i),
                             reader.number());
        }
        const auto tokens = split(line);
        if (static_cast<long>(tokens.size()) != snps)
        {
            throw ParseError("expected " + std::to_string(snps) + " genotypes, found " +
                                 std::to_string(tokens.size()),
                             reader.number());
        }
        for (long l = 0; l < snps; ++l)
        {
            const auto idx = static_cast<std::size_t>(l) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
            const auto tok = tokens[static_cast<std::size_t>(l)];
            if (tok == "NA")
            {
                missing[idx] = 1;
            }
            else if (tok.size() == 1 && tok[0] >= '0' && tok[0] <= '2')
            {
                counts[idx] = static_cast<std::uint8_t>(tok[0] - '0');
            }
            else
            {
                throw ParseError("genotype '" + std::string(tok) + "' not in {0,1,2,NA}", reader.number());
            }
        }
    }
    if (reader.next(line))
    {
        throw ParseError("more genotype rows than declared", reader.number());
    }
    return GenotypeMatrix(static_cast<int>(n), static_cast<int>(snps), std::move(counts), std::move(missing));
}

GenotypeMatrix read_genotypes(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_genotypes(in);
}

void write_genotypes(std::ostream& out, const GenotypeMatrix& g)
{
    out << g.num_individuals() << ' ' << g.num_snps() << '\n';
    std::string row;
    for (int i = 0; i < g.num_individuals(); ++i)
    {
        row.clear();
        for (int l = 0; l < g.num_snps(); ++l)
        {
            if (l > 0)
            {
                row += ' ';
            }
            if (g.is_missing(i, l))
            {
                row += "NA";
            }
            else
            {
                row += static_cast<char>('0' + g.count(i, l));
            }
        }
        out << row << '\n';
    }
}

void write_genotypes(const std::filesystem::path& path, const GenotypeMatrix& g)
{
    auto out = open_out(path);
    write_genotypes(out, g);
}

// --- phenotypes ------------------------------------------------------------

Phenotype read_phenotypes(std::istream& in)
{
    LineReader reader(in);
    std::string line;
    std::vector<std::string> ids;
    std::vector<double> values;
    std::unordered_map<std::string, int> seen;
    while (reader.next(line))
    {
        const auto tokens = split(line);
        if (tokens.size() != 2)
        {
            throw ParseError("phenotype line must be 'ID value'", reader.number());
        }
        const double v = parse_double(tokens[1], reader.number(), "phenotype value");
        if (!std::isfinite(v))
        {
            throw ParseError("phenotype value must be finite", reader.number());
        }
        if (!seen.emplace(std::string(tokens[0]), reader.number()).second)
        {
            throw ParseError("duplicate individual id '" + std::string(tokens[0]) + "'", reader.number());
        }
        ids.emplace_back(tokens[0]);
        values.push_back(v);
    }
    if (values.empty())
    {
        throw ParseError("empty phenotype file", 0);
    }
    return Phenotype::infer(std::move(values), std::move(ids));
}

Phenotype read_phenotypes(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_phenotypes(in);
}

void write_phenotypes(std::ostream& out, const Phenotype& y)
{
    for (int i = 0; i < y.size(); ++i)
    {
        if (y.ids().empty())
        {
            out << "ind" << i;
        }
        else
        {
            out << y.ids()[static_cast<std::size_t>(i)];
        }
        out << ' ' << format_double(y[i]) << '\n';
    }
}

void write_phenotypes(const std::filesystem::path& path, const Phenotype& y)
{
    auto out = open_out(path);
    write_phenotypes(out, y);
}

// --- pedigree and trios ----------------------------------------------------

Pedigree read_pedigree(std::istream& in)
{
    LineReader reader(in);
    std::string line;
    std::vector<PedigreeRecord> records;
    std::vector<int> line_of;
    while (reader.next(line))
    {
        const auto tokens = split(line);
        if (tokens.size() != 3)
        {
            throw ParseError("pedigree line must be 'ID motherID fatherID'", reader.number());
        }
        records.push_back({std::string(tokens[0]), std::string(tokens[1]), std::string(tokens[2])});
        line_of.push_back(reader.number());
    }
    try
    {
        return Pedigree::from_records(records);
    }
    catch (const ParseError& e)
    {
        // from_records reports record numbers; map them back to file lines.
        const int rec = e.line();
        if (rec > 0 && rec <= static_cast<int>(line_of.size()))
        {
            std::string msg = e.what();
            const auto colon = msg.find(": ");
            throw ParseError(colon == std::string::npos ? msg : msg.substr(colon + 2),
                             line_of[static_cast<std::size_t>(rec - 1)]);
        }
        throw;
    }
}

Pedigree read_pedigree(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_pedigree(in);
}

void write_pedigree(std::ostream& out, const Pedigree& ped)
{
    for (const auto& r : ped.records())
    {
        out << r.id << ' ' << r.mother << ' ' << r.father << '\n';
    }
}

std::vector<TrioIds> read_trios(std::istream& in)
{
    LineReader reader(in);
    std::string line;
    std::vector<TrioIds> trios;
    while (reader.next(line))
    {
        const auto tokens = split(line);
        if (tokens.size() != 3)
        {
            throw ParseError("trio line must be 'fatherID motherID childID'", reader.number());
        }
        trios.push_back({std::string(tokens[0]), std::string(tokens[1]), std::string(tokens[2])});
    }
    return trios;
}

std::vector<TrioIds> read_trios(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_trios(in);
}

// --- matrices --------------------------------------------------------------

KinshipMatrix read_matrix(std::istream& in)
{
    LineReader reader(in);
    std::string line;
    if (!reader.next(line))
    {
        throw ParseError("empty matrix file", 0);
    }
    constexpr std::string_view prefix = "# kinship n=";
    if (line.rfind(prefix, 0) != 0)
    {
        throw ParseError("matrix header must be '# kinship n=<n>'", reader.number());
    }
    const auto rest = split(std::string_view(line).substr(prefix.size()));
    if (rest.size() != 1)
    {
        throw ParseError("matrix header must be '# kinship n=<n>'", reader.number());
    }
    const long n = parse_long(rest[0], reader.number(), "matrix size");
    if (n < 1)
    {
        throw ParseError("matrix size must be positive", reader.number());
    }
    Eigen::MatrixXd k(n, n);
    for (long i = 0; i < n; ++i)
    {
        if (!reader.next(line))
        {
            throw ParseError("expected " + std::to_string(n) + " matrix rows", reader.number());
        }
        const auto tokens = split(line);
        if (static_cast<long>(tokens.size()) != n)
        {
            throw ParseError("expected " + std::to_string(n) + " matrix entries, found " +
                                 std::to_string(tokens.size()),
                             reader.number());
        }
        for (long j = 0; j < n; ++j)
        {
            k(i, j) = parse_double(tokens[static_cast<std::size_t>(j)], reader.number(), "matrix entry");
        }
    }
    if (reader.next(line))
    {
        throw ParseError("more matrix rows than declared", reader.number());
    }
    try
    {
        return KinshipMatrix(std::move(k));
    }
    catch (const std::invalid_argument& e)
    {
        throw ParseError(e.what(), 0);
    }
}

KinshipMatrix read_matrix(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const KinshipMatrix& k)
{
    out << "# kinship n=" << k.size() << '\n';
    std::string row;
    for (int i = 0; i < k.size(); ++i)
    {
        row.clear();
        for (int j = 0; j < k.size(); ++j)
        {
            if (j > 0)
            {
                row += '\t';
            }
            row += format_double(k(i, j));
        }
        out << row << '\n';
    }
}

void write_matrix(const std::filesystem::path& path, const KinshipMatrix& k)
{
    auto out = open_out(path);
    write_matrix(out, k);
}

// --- results ---------------------------------------------------------------

std::vector<TestResult> read_results(std::istream& in)
{
    LineReader reader(in);
    std::string line;
    if (!reader.next(line))
    {
        throw ParseError("empty results file", 0);
    }
    const auto header = split(line);
    const std::vector<std::string_view> expected{"snp_index", "method", "statistic", "df", "p_value"};
    if (header != expected)
    {
        throw ParseError("results header must be 'snp_index method statistic df p_value'", reader.number());
    }
    std::vector<TestResult> results;
    while (reader.next(line))
    {
        const auto t = split(line);
        if (t.size() != 5)
        {
            throw ParseError("results line must have 5 columns", reader.number());
        }
        TestResult r;
        r.snp_index = static_cast<int>(parse_long(t[0], reader.number(), "snp_index"));
        const auto method = parse_method(t[1]);
        if (!method)
        {
            throw ParseError("unknown method '" + std::string(t[1]) + "'", reader.number());
        }
        r.method = *method;
        r.statistic = parse_double(t[2], reader.number(), "statistic");
        r.df = static_cast<int>(parse_long(t[3], reader.number(), "df"));
        r.p_value = parse_double(t[4], reader.number(), "p_value");
        if (r.df < 1)
        {
            throw ParseError("df must be positive", reader.number());
        }
        results.push_back(r);
    }
    return results;
}

std::vector<TestResult> read_results(const std::filesystem::path& path)
{
    auto in = open_in(path);
    return read_results(in);
}

void write_results(std::ostream& out, const std::vector<TestResult>& results)
{
    out << "snp_index\tmethod\tstatistic\tdf\tp_value\n";
    for (const auto& r : results)
    {
        out << r.snp_index << '\t' << to_string(r.method) << '\t' << format_double(r.statistic) << '\t' << r.df
            << '\t' << format_double(r.p_value) << '\n';
    }
}

void write_results(const std::filesystem::path& path, const std::vector<TestResult>& results)
{
    auto out = open_out(path);
    write_results(out, results);
}

}  // namespace kinward::io
