#include "sobofit/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sobofit/cli/coeff_file.hpp"
#include "sobofit/error.hpp"
#include "sobofit/metrics.hpp"

namespace sobofit::cli {

namespace {

std::string g9(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, ptr);
}

double smooth_builtin(const std::string& name, double x) { return name == "tanh" ? std::tanh(x) : sigmoid(x); }

SampleSet target_samples(const FitSpecConfig& cfg) {
  if (const auto* b = std::get_if<BuiltinTarget>(&cfg.target)) {
    const std::string name = b->name;
    return SampleSet::uniform([&](double x) { return smooth_builtin(name, x); }, b->lo, b->hi);
  }
  const auto& file = std::get<SampleFileTarget>(cfg.target);
  return load_samples(file.path, file.domain);
}

std::string describe_target(const FitSpecConfig& cfg) {
  if (const auto* b = std::get_if<BuiltinTarget>(&cfg.target)) return b->name;
  if (std::holds_alternative<std::vector<SegmentSpec>>(cfg.target)) return "segments";
  return "samples " + std::get<SampleFileTarget>(cfg.target).path.string();
}

}  // namespace

SampleSet load_samples(const std::filesystem::path& path, const std::optional<std::pair<double, double>>& domain) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read sample file '" + path.string() + "'");
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = line.substr(0, line.find('#'));
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto comma = line.find(',');
    double x = 0.0, y = 0.0;
    bool ok = comma != std::string::npos;
    if (ok) {
      std::istringstream xs_in(line.substr(0, comma)), ys_in(line.substr(comma + 1));
      xs_in.imbue(std::locale::classic());
      ys_in.imbue(std::locale::classic());
      ok = static_cast<bool>(xs_in >> x) && static_cast<bool>(ys_in >> y) && (xs_in >> std::ws).eof() &&
           (ys_in >> std::ws).eof();
    }
    if (!ok) {
      if (!seen_data && xs.empty()) {
        seen_data = true;  // header
        continue;
      }
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 'x,y'");
    }
    seen_data = true;
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) throw ParseError(path.string() + ": need at least two samples");
  const double lo = domain ? domain->first : xs.front();
  const double hi = domain ? domain->second : xs.back();
  return SampleSet(std::move(xs), std::move(ys), lo, hi);
}

PiecewiseTarget fit_target(const FitSpecConfig& cfg) {
  if (cfg.uses_surrogate()) return surrogate(target_samples(cfg), cfg.surrogate_degree);
  if (const auto* b = std::get_if<BuiltinTarget>(&cfg.target)) {
    return b->name == "relu" ? relu_target(b->lo, b->hi) : abs_target(b->lo, b->hi);
  }
  std::vector<Segment> segs;
  for (const auto& s : std::get<std::vector<SegmentSpec>>(cfg.target)) segs.emplace_back(s.lo, s.hi, Polynomial(s.coeffs));
  return PiecewiseTarget(std::move(segs));
}

WeightTable weight_table(const FitSpecConfig& cfg) {
  if (cfg.per_segment_weights) return WeightTable(cfg.weights);
  return WeightTable::broadcast(cfg.weights.front(), cfg.segment_count());
}

FitResult run_fit(const FitSpecConfig& cfg) {
  if (cfg.uses_surrogate()) {
    return fit_final(target_samples(cfg), cfg.degree, cfg.surrogate_degree, weight_table(cfg));
  }
  return fit(SobolevObjective(fit_target(cfg), weight_table(cfg), cfg.degree));
}

TargetFn target_function(const std::string& spec) {
  if (spec == "relu") return [](double x) -> std::optional<double> { return std::max(0.0, x); };
  if (spec == "abs") return [](double x) -> std::optional<double> { return std::abs(x); };
  if (spec == "sigmoid") return [](double x) -> std::optional<double> { return sigmoid(x); };
  if (spec == "tanh") return [](double x) -> std::optional<double> { return std::tanh(x); };
  const auto cfg = load_config(spec);
  if (const auto* b = std::get_if<BuiltinTarget>(&cfg.target)) {
    // Builtins from a config are exact inside their domain.
    auto inner = target_function(b->name);
    const double lo = b->lo, hi = b->hi;
    return [inner, lo, hi](double x) -> std::optional<double> {
      if (x < lo || x > hi) return std::nullopt;
      return inner(x);
    };
  }
  auto target = fit_target(cfg);
  return [target](double x) { return eval_target(target, x); };
}

namespace {

int cmd_fit(const std::filesystem::path& config_path, bool quiet, std::ostream& out) {
  const auto cfg = load_config(config_path);
  const auto result = run_fit(cfg);
  const auto target = fit_target(cfg);
  const auto weights = weight_table(cfg);
  const auto report = error_report(target, result.poly, weights, cfg.grid_points);

  CoeffFile file{result.poly, {}};
  file.metadata.emplace_back("target", describe_target(cfg));
  file.metadata.emplace_back("domain", shortest_decimal(target.lo()) + " " + shortest_decimal(target.hi()));
  file.metadata.emplace_back("cost", shortest_decimal(result.cost));
  file.metadata.emplace_back("condition", shortest_decimal(result.gram_condition_estimate));
  for (std::size_t k = 0; k < report.l2_sq_by_order.size(); ++k) {
    file.metadata.emplace_back("residual_l2sq", std::to_string(k) + " " + shortest_decimal(report.l2_sq_by_order[k]));
  }
  file.metadata.emplace_back("linf_grid", shortest_decimal(report.linf_grid) + " " + shortest_decimal(report.linf_argmax));

  auto out_path = cfg.out.value_or(std::filesystem::path(config_path).replace_extension(".coeffs"));
  write_coeff_file(out_path, file);

  if (!quiet) {
    out << "target " << describe_target(cfg) << " on [" << g9(target.lo()) << ", " << g9(target.hi())
        << "], degree " << cfg.degree << "\n";
    if (cfg.uses_surrogate()) out << "surrogate degree " << cfg.surrogate_degree << "\n";
    for (std::size_t i = 0; i < result.poly.size(); ++i) out << "  x^" << i << "  " << g9(result.poly[i]) << "\n";
    out << "cost " << g9(result.cost) << "\n";
    out << "condition estimate " << g9(result.gram_condition_estimate) << "\n";
    for (std::size_t k = 0; k < report.l2_sq_by_order.size(); ++k) {
      out << "order-" << k << " residual L2^2 " << g9(report.l2_sq_by_order[k]) << "\n";
    }
    out << "grid Linf " << g9(report.linf_grid) << " at x = " << g9(report.linf_argmax) << "\n";
    out << "wrote " << out_path.string() << "\n";
  }
  return kOk;
}

std::string label_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

int cmd_sample(const std::vector<std::string>& coeff_paths, const std::string& target_spec, double from, double to,
               double step, std::ostream& out, std::ostream& err) {
  if (!(step > 0.0) || !(from < to)) {
    err << "sample: need step > 0 and from < to\n";
    return kUsage;
  }
  std::vector<Polynomial> polys;
  for (const auto& p : coeff_paths) polys.push_back(read_coeff_file(p).poly);
  const auto target = target_function(target_spec);

  const auto rows = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::ostringstream csv;
  csv << "x,target";
  for (const auto& p : coeff_paths) csv << ',' << label_of(p);
  csv << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    double x = from + step * static_cast<double>(i);
    if (std::abs(x) < 1e-9 * step) x = 0.0;
    // Evaluate at the abscissa as printed so each row is self-consistent.
    const std::string label = g9(x);
    std::from_chars(label.data(), label.data() + label.size(), x);
    csv << label << ',';
    if (auto y = target(x)) csv << g9(*y);
    for (const auto& p : polys) csv << ',' << g9(p(x));
    csv << '\n';
  }
  out << csv.str();
  return kOk;
}

int cmd_compare(const std::filesystem::path& config_path, const std::vector<std::string>& coeff_paths, bool as_csv,
                std::ostream& out) {
  const auto cfg = load_config(config_path);
  std::vector<LabeledFit> fits;
  for (const auto& p : coeff_paths) fits.push_back({label_of(p), read_coeff_file(p).poly});
  const auto rows = compare(fit_target(cfg), fits, weight_table(cfg), cfg.grid_points);

  std::vector<std::string> header{"label"};
  for (std::size_t k = 0; k < rows.front().report.l2_sq_by_order.size(); ++k) {
    header.push_back("l2sq_" + std::to_string(k));
  }
  header.insert(header.end(), {"linf", "linf_x", "weighted_cost"});

  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    std::vector<std::string> line{r.label};
    for (double v : r.report.l2_sq_by_order) line.push_back(g9(v));
    line.insert(line.end(), {g9(r.report.linf_grid), g9(r.report.linf_argmax), g9(r.report.total_weighted_cost)});
    cells.push_back(std::move(line));
  }

  std::ostringstream text;
  if (as_csv) {
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) text << (i ? "," : "") << line[i];
      text << '\n';
    };
    emit(header);
    for (const auto& line : cells) emit(line);
  } else {
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    auto emit = [&](const std::vector<std::string>& line) {
      for (std::size_t i = 0; i < line.size(); ++i) {
        if (i == 0) {
          text << std::left << std::setw(static_cast<int>(width[i])) << line[i];
        } else {
          text << "  " << std::right << std::setw(static_cast<int>(width[i])) << line[i];
        }
      }
      text << '\n';
    };
    emit(header);
    for (const auto& line : cells) emit(line);
  }
  out << text.str();
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sobolev-weighted least-squares polynomial approximation of activation functions", "sobofit"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress human-readable summaries");

  std::string fit_config;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a polynomial and write its coefficient file");
  fit_cmd->add_option("config", fit_config, "Fit config")->required();

  std::vector<std::string> sample_coeffs;
  std::string sample_target;
  double from = 0.0, to = 0.0, step = 0.0;
  auto* sample_cmd = app.add_subcommand("sample", "Write plot-ready CSV of target and fits");
  sample_cmd->add_option("coeffs", sample_coeffs, "Coefficient files")->required();
  sample_cmd->add_option("--target", sample_target, "relu, abs, sigmoid, tanh or a config path")->required();
  sample_cmd->add_option("--from", from, "First abscissa")->required();
  sample_cmd->add_option("--to", to, "Last abscissa")->required();
  sample_cmd->add_option("--step", step, "Grid spacing")->required();

  std::string compare_config;
  std::vector<std::string> compare_coeffs;
  bool as_csv = false;
  auto* compare_cmd = app.add_subcommand("compare", "Tabulate error metrics of several fits");
  compare_cmd->add_option("config", compare_config, "Config naming target and weights")->required();
  compare_cmd->add_option("coeffs", compare_coeffs, "Coefficient files")->required();
  compare_cmd->add_flag("--csv", as_csv, "Emit CSV instead of an aligned table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sobofit: " << e.what() << "\n" << "run 'sobofit --help' for usage\n";
    return kUsage;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit_config, quiet, out);
    if (*sample_cmd) return cmd_sample(sample_coeffs, sample_target, from, to, step, out, err);
    if (*compare_cmd) return cmd_compare(compare_config, compare_coeffs, as_csv, out);
  } catch (const SingularSystem& e) {
    err << "sobofit: " << e.what() << "\n";
    return kNumerical;
  } catch (const SingularFit& e) {
    err << "sobofit: " << e.what() << "\n";
    return kNumerical;
  } catch (const InvalidObjective& e) {
    err << "sobofit: invalid objective: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    err << "sobofit: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace sobofit::cli
