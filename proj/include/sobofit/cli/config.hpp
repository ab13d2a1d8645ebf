#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sobofit/error.hpp"
#include "sobofit/target.hpp"

namespace sobofit::cli {

class ParseError : public Error {
 public:
  using Error::Error;
};

struct BuiltinTarget {
  std::string name;  // relu, abs, sigmoid or tanh
  double lo;
  double hi;

  bool is_smooth() const { return name == "sigmoid" || name == "tanh"; }
};

struct SegmentSpec {
  double lo;
  double hi;
  std::vector<double> coeffs;
};

struct SampleFileTarget {
  std::filesystem::path path;
  std::optional<std::pair<double, double>> domain;
};

using TargetSpec = std::variant<BuiltinTarget, std::vector<SegmentSpec>, SampleFileTarget>;

struct FitSpecConfig {
  TargetSpec target;
  unsigned degree = 0;
  // Either one shared row of per-order weights or one row per segment.
  std::vector<std::vector<double>> weights{{1.0, 1.0}};
  bool per_segment_weights = false;
  unsigned surrogate_degree = 0;
  std::size_t grid_points = 4001;
  std::optional<std::filesystem::path> out;

  bool uses_surrogate() const;
  std::size_t segment_count() const;
};

/// Parses the line-oriented `key = value` format. Relative paths are
/// resolved against `base_dir`.
FitSpecConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});

FitSpecConfig load_config(const std::filesystem::path& path);

}  // namespace sobofit::cli
