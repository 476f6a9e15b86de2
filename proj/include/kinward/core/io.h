#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kinward/core/genotype_matrix.h"
#include "kinward/core/kinship_matrix.h"
#include "kinward/core/pedigree.h"
#include "kinward/core/phenotype.h"
#include "kinward/core/test_result.h"

// Plain-text formats:
//   genotypes   first line "n L", then n lines of L tokens from {0, 1, 2, NA}
//   phenotypes  "ID value" per individual, in genotype row order
//   pedigree    "ID motherID fatherID", "0" for an unknown parent
//   trios       "fatherID motherID childID"
//   matrix      "# kinship n=<n>" then n tab-separated rows
//   results     TSV with header snp_index, method, statistic, df, p_value
// Readers throw ParseError naming the offending line.

namespace kinward::io
{

GenotypeMatrix read_genotypes(std::istream& in);
GenotypeMatrix read_genotypes(const std::filesystem::path& path);
void write_genotypes(std::ostream& out, const GenotypeMatrix& g);
void write_genotypes(const std::filesystem::path& path, const GenotypeMatrix& g);

Phenotype read_phenotypes(std::istream& in);
Phenotype read_phenotypes(const std::filesystem::path& path);
/// Individuals without ids are written as "ind<i>".
void write_phenotypes(std::ostream& out, const Phenotype& y);
void write_phenotypes(const std::filesystem::path& path, const Phenotype& y);

Pedigree read_pedigree(std::istream& in);
Pedigree read_pedigree(const std::filesystem::path& path);
void write_pedigree(std::ostream& out, const Pedigree& ped);

using TrioIds = std::array<std::string, 3>;  ///< father, mother, child
std::vector<TrioIds> read_trios(std::istream& in);
std::vector<TrioIds> read_trios(const std::filesystem::path& path);

KinshipMatrix read_matrix(std::istream& in);
KinshipMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(std::ostream& out, const KinshipMatrix& k);
void write_matrix(const std::filesystem::path& path, const KinshipMatrix& k);

std::vector<TestResult> read_results(std::istream& in);
std::vector<TestResult> read_results(const std::filesystem::path& path);
void write_results(std::ostream& out, const std::vector<TestResult>& results);
void write_results(const std::filesystem::path& path, const std::vector<TestResult>& results);

/// Shortest decimal text that parses back to the same double; "NA" for NaN.
std::string format_double(double v);

}  // namespace kinward::io
