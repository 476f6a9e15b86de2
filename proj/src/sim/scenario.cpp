#include "kinward/sim/scenario.h"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "kinward/core/error.h"
#include "kinward/core/io.h"

namespace kinward::sim
{

namespace
{

void require(bool ok, const std::string& what)
{
    if (!ok)
    {
        throw std::invalid_argument("scenario: " + what);
    }
}

int sum(const std::vector<int>& v)
{
    return std::accumulate(v.begin(), v.end(), 0);
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
    {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& text, int line)
{
    T value{};
    const auto* first = text.data();
    const auto* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
    {
        throw ParseError("bad number '" + text + "'", line);
    }
    return value;
}

std::vector<int> parse_int_list(const std::string& text, int line)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        out.push_back(parse_number<int>(trim(item), line));
    }
    if (out.empty())
    {
        throw ParseError("empty list", line);
    }
    return out;
}

std::string join(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        out += (i ? "," : "") + std::to_string(v[i]);
    }
    return out;
}

}  // namespace

void SimScenario::validate() const
{
    require(islands >= 1, "need at least one island");
    require(fst >= 0.0 && fst < 1.0, "F must lie in [0, 1)");
    require(snps >= 1, "need at least one SNP");
    require(maf_min > 0.0 && maf_min <= maf_max && maf_max <= 0.5, "ancestral MAF range must lie within (0, 0.5]");
    require(causal >= 0 && causal <= snps, "causal SNP count out of range");
    require(odds_ratio > 0.0, "odds ratio must be positive");
    require(prevalence > 0.0 && prevalence < 1.0, "prevalence must lie in (0, 1)");
    if (design == Design::population)
    {
        const auto& p = population;
        require(p.population_size >= 2, "population too small");
        require(p.population_size % islands == 0, "population size must divide evenly into islands");
        for (const auto* quota : {&p.cases, &p.controls})
        {
            require(quota->size() == 1 || static_cast<int>(quota->size()) == islands,
                    "quotas need one pooled entry or one per island");
            for (int q : *quota)
            {
                require(q >= 0, "quotas must be non-negative");
            }
        }
        require(sum(p.cases) >= 1 && sum(p.controls) >= 1, "need at least one case and one control");
        require(sum(p.cases) + sum(p.controls) <= p.population_size, "quotas exceed the population");
    }
    else
    {
        const auto& a = admixture;
        require(causal == 0, "the admixture design has no causal SNPs");
        for (int s : {a.anchor_island, a.source_a, a.source_b})
        {
            require(s >= 0 && s < islands, "admixture island index out of range");
        }
        require(a.source_a != a.source_b, "admixture sources must differ");
        require(a.anchor_cases >= 0 && a.anchor_controls >= 0 && a.admixed >= 0, "counts must be non-negative");
        require(a.case_intercept >= 0.0 && a.case_intercept + a.case_slope <= 1.0 &&
                    a.case_intercept + a.case_slope >= 0.0 && a.case_intercept <= 1.0,
                "admixed case probability must stay in [0, 1]");
        require(sample_size() >= 2, "sample too small");
    }
}

int SimScenario::sample_size() const
{
    if (design == Design::population)
    {
        return sum(population.cases) + sum(population.controls);
    }
    return admixture.anchor_cases + admixture.anchor_controls + admixture.admixed;
}

SimScenario SimScenario::unbiased()
{
    return SimScenario{};
}

SimScenario SimScenario::ascertained()
{
    SimScenario sc;
    sc.population.controls = {50, 50, 900};
    return sc;
}

SimScenario SimScenario::admixed()
{
    SimScenario sc;
    sc.design = Design::admixture;
    sc.fst = 0.01;
    sc.snps = 2000;
    sc.causal = 0;
    sc.odds_ratio = 1.0;
    return sc;
}

SimScenario read_scenario(std::istream& in)
{
    SimScenario sc;
    using Setter = std::function<void(const std::string&, int)>;
    const std::map<std::string, Setter> setters{
        {"design",
         [&](const std::string& v, int line)
         {
             if (v == "population")
                 sc.design = Design::population;
             else if (v == "admixture")
                 sc.design = Design::admixture;
             else
                 throw ParseError("design must be population or admixture", line);
         }},
        {"islands", [&](const std::string& v, int line) { sc.islands = parse_number<int>(v, line); }},
        {"fst", [&](const std::string& v, int line) { sc.fst = parse_number<double>(v, line); }},
        {"snps", [&](const std::string& v, int line) { sc.snps = parse_number<int>(v, line); }},
        {"maf_min", [&](const std::string& v, int line) { sc.maf_min = parse_number<double>(v, line); }},
        {"maf_max", [&](const std::string& v, int line) { sc.maf_max = parse_number<double>(v, line); }},
        {"causal", [&](const std::string& v, int line) { sc.causal = parse_number<int>(v, line); }},
        {"odds_ratio", [&](const std::string& v, int line) { sc.odds_ratio = parse_number<double>(v, line); }},
        {"prevalence", [&](const std::string& v, int line) { sc.prevalence = parse_number<double>(v, line); }},
        {"seed", [&](const std::string& v, int line) { sc.seed = parse_number<std::uint64_t>(v, line); }},
        {"population_size",
         [&](const std::string& v, int line) { sc.population.population_size = parse_number<int>(v, line); }},
        {"cases", [&](const std::string& v, int line) { sc.population.cases = parse_int_list(v, line); }},
        {"controls", [&](const std::string& v, int line) { sc.population.controls = parse_int_list(v, line); }},
        {"anchor_island",
         [&](const std::string& v, int line) { sc.admixture.anchor_island = parse_number<int>(v, line); }},
        {"anchor_cases",
         [&](const std::string& v, int line) { sc.admixture.anchor_cases = parse_number<int>(v, line); }},
        {"anchor_controls",
         [&](const std::string& v, int line) { sc.admixture.anchor_controls = parse_number<int>(v, line); }},
        {"admixed", [&](const std::string& v, int line) { sc.admixture.admixed = parse_number<int>(v, line); }},
        {"source_a", [&](const std::string& v, int line) { sc.admixture.source_a = parse_number<int>(v, line); }},
        {"source_b", [&](const std::string& v, int line) { sc.admixture.source_b = parse_number<int>(v, line); }},
        {"case_intercept",
         [&](const std::string& v, int line) { sc.admixture.case_intercept = parse_number<double>(v, line); }},
        {"case_slope",
         [&](const std::string& v, int line) { sc.admixture.case_slope = parse_number<double>(v, line); }},
    };

    std::string raw;
    int line = 0;
    while (std::getline(in, raw))
    {
        ++line;
        const auto hash = raw.find('#');
        const auto text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty())
        {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
        {
            throw ParseError("expected key = value", line);
        }
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
        {
            throw ParseError("unknown scenario key '" + key + "'", line);
        }
        if (value.empty())
        {
            throw ParseError("missing value for '" + key + "'", line);
        }
        it->second(value, line);
    }
    sc.validate();
    return sc;
}

SimScenario read_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw Error("cannot open scenario file " + path.string());
    }
    return read_scenario(in);
}

void write_scenario(std::ostream& out, const SimScenario& sc)
{
    out << "design = " << (sc.design == Design::population ? "population" : "admixture") << '\n'
        << "islands = " << sc.islands << '\n'
        << "fst = " << io::format_double(sc.fst) << '\n'
        << "snps = " << sc.snps << '\n'
        << "maf_min = " << io::format_double(sc.maf_min) << '\n'
        << "maf_max = " << io::format_double(sc.maf_max) << '\n'
        << "causal = " << sc.causal << '\n'
        << "odds_ratio = " << io::format_double(sc.odds_ratio) << '\n'
        << "prevalence = " << io::format_double(sc.prevalence) << '\n'
        << "seed = " << sc.seed << '\n';
    if (sc.design == Design::population)
    {
        out << "population_size = " << sc.population.population_size << '\n'
            << "cases = " << join(sc.population.cases) << '\n'
            << "controls = " << join(sc.population.controls) << '\n';
    }
    else
    {
        const auto& a = sc.admixture;
        out << "anchor_island = " << a.anchor_island << '\n'
            << "anchor_cases = " << a.anchor_cases << '\n'
            << "anchor_controls = " << a.anchor_controls << '\n'
            << "admixed = " << a.admixed << '\n'
            << "source_a = " << a.source_a << '\n'
            << "source_b = " << a.source_b << '\n'
            << "case_intercept = " << io::format_double(a.case_intercept) << '\n'
            << "case_slope = " << io::format_double(a.case_slope) << '\n';
    }
}

}  // namespace kinward::sim
