#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sobofit/cli/config.hpp"
#include "sobofit/sobolev.hpp"
#include "sobofit/target.hpp"

namespace sobofit::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

/// Two-column `x,y` text; blank lines, `#` comments and one leading header
/// line are skipped.
SampleSet load_samples(const std::filesystem::path& path,
                       const std::optional<std::pair<double, double>>& domain = std::nullopt);

/// The piecewise-polynomial target a config fits against. Smooth builtins
/// and sample files become their surrogate.
PiecewiseTarget fit_target(const FitSpecConfig& cfg);

WeightTable weight_table(const FitSpecConfig& cfg);

FitResult run_fit(const FitSpecConfig& cfg);

using TargetFn = std::function<std::optional<double>(double)>;

/// Pointwise target for CSV output: a builtin name is evaluated exactly,
/// anything else is read as a config path.
TargetFn target_function(const std::string& spec);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sobofit::cli
