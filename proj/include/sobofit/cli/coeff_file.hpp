#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sobofit/polynomial.hpp"

namespace sobofit::cli {

inline constexpr const char* kCoeffFileHeader = "sobofit-coeffs v1";

/// Coefficient file, version 1:
///
///   sobofit-coeffs v1
///   degree <n>
///   coeff <i> <value>          one line per degree, ascending, i = 0..n
///   <key> <value...>           metadata, e.g. domain, cost, condition
///
/// Coefficients are written as shortest round-trip decimals.
struct CoeffFile {
  Polynomial poly;
  std::vector<std::pair<std::string, std::string>> metadata;

  std::optional<std::string> meta(const std::string& key) const;
};

std::string shortest_decimal(double v);

std::string format_coeff_file(const CoeffFile& f);
CoeffFile parse_coeff_file(const std::string& text);

void write_coeff_file(const std::filesystem::path& path, const CoeffFile& f);
CoeffFile read_coeff_file(const std::filesystem::path& path);

}  // namespace sobofit::cli
