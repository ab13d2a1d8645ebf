#include "sobofit/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sobofit::cli {

namespace {

constexpr std::array kKeys{"target", "domain", "segments", "samples", "degree",
                           "weights", "surrogate_degree", "grid_points", "out"};

struct Entry {
  std::size_t line;
  std::string inline_value;
  std::vector<std::pair<std::size_t, std::string>> rows;  // continuation lines
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& field, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + field + ": " + msg);
}

double parse_number(std::string_view tok, std::size_t line, const std::string& field) {
  const std::string s = trim(tok);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    fail(line, field, "expected a finite number, got '" + s + "'");
  }
  return v;
}

unsigned long parse_count(const std::string& s, std::size_t line, const std::string& field) {
  unsigned long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    fail(line, field, "expected a nonnegative integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string s, std::size_t line, const std::string& field) {
  std::erase(s, '[');
  std::erase(s, ']');
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_number(tok, line, field));
  if (out.empty()) fail(line, field, "expected a comma-separated list of numbers");
  return out;
}

std::pair<double, double> parse_interval(const std::string& s, std::size_t line, const std::string& field) {
  const auto v = parse_list(s, line, field);
  if (v.size() != 2) fail(line, field, "expected two numbers 'lo, hi'");
  if (!(v[0] < v[1])) fail(line, field, "lower bound must be below upper bound");
  return {v[0], v[1]};
}

std::map<std::string, Entry> tokenize(const std::string& text) {
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  Entry* open_table = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = raw.substr(0, raw.find('#'));
    if (trim(line).empty()) continue;
    if (line[0] == ' ' || line[0] == '\t') {
      if (open_table == nullptr) fail(lineno, "config", "indented line does not continue a table key");
      open_table->rows.emplace_back(lineno, trim(line));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "config", "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      fail(lineno, key.empty() ? "config" : key, "unknown key");
    }
    if (entries.contains(key)) fail(lineno, key, "duplicate key");
    auto& e = entries[key];
    e.line = lineno;
    e.inline_value = trim(line.substr(eq + 1));
    open_table = e.inline_value.empty() ? &e : nullptr;
  }
  for (const auto& [key, e] : entries) {
    if (e.inline_value.empty() && e.rows.empty()) fail(e.line, key, "missing value");
  }
  return entries;
}

SegmentSpec parse_segment_row(const std::string& row, std::size_t line) {
  const auto colon = row.find(':');
  if (colon == std::string::npos) fail(line, "segments", "expected 'lo, hi : c0, c1, ...'");
  const auto [lo, hi] = parse_interval(row.substr(0, colon), line, "segments");
  return SegmentSpec{lo, hi, parse_list(row.substr(colon + 1), line, "segments")};
}

}  // namespace

bool FitSpecConfig::uses_surrogate() const {
  if (const auto* b = std::get_if<BuiltinTarget>(&target)) return b->is_smooth();
  return std::holds_alternative<SampleFileTarget>(target);
}

std::size_t FitSpecConfig::segment_count() const {
  if (const auto* b = std::get_if<BuiltinTarget>(&target)) return b->is_smooth() ? 1 : 2;
  if (const auto* s = std::get_if<std::vector<SegmentSpec>>(&target)) return s->size();
  return 1;
}

FitSpecConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  auto entries = tokenize(text);
  auto find = [&](const std::string& k) -> const Entry* {
    auto it = entries.find(k);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto inline_only = [](const Entry* e, const std::string& key) -> const std::string& {
    if (!e->rows.empty()) fail(e->line, key, "expects a single-line value");
    return e->inline_value;
  };

  FitSpecConfig cfg;
  const Entry* target = find("target");
  const Entry* segments = find("segments");
  const Entry* samples = find("samples");
  const Entry* domain = find("domain");
  const int variants = (target != nullptr) + (segments != nullptr) + (samples != nullptr);
  if (variants != 1) {
    throw ParseError("target: exactly one of 'target', 'segments' or 'samples' must be given");
  }

  if (target != nullptr) {
    const std::string& name = inline_only(target, "target");
    if (name != "relu" && name != "abs" && name != "sigmoid" && name != "tanh") {
      fail(target->line, "target", "unknown builtin '" + name + "' (expected relu, abs, sigmoid or tanh)");
    }
    if (domain == nullptr) fail(target->line, "domain", "builtin targets need a domain");
    const auto [lo, hi] = parse_interval(inline_only(domain, "domain"), domain->line, "domain");
    if ((name == "relu" || name == "abs") && !(lo < 0.0 && 0.0 < hi)) {
      fail(domain->line, "domain", "must contain 0 in its interior for " + name);
    }
    cfg.target = BuiltinTarget{name, lo, hi};
  } else if (segments != nullptr) {
    if (domain != nullptr) fail(domain->line, "domain", "not used with explicit segments");
    std::vector<SegmentSpec> segs;
    if (!segments->inline_value.empty()) segs.push_back(parse_segment_row(segments->inline_value, segments->line));
    for (const auto& [line, row] : segments->rows) segs.push_back(parse_segment_row(row, line));
    for (std::size_t i = 1; i < segs.size(); ++i) {
      if (segs[i - 1].hi > segs[i].lo) fail(segments->line, "segments", "segments must be sorted and non-overlapping");
    }
    cfg.target = std::move(segs);
  } else {
    SampleFileTarget t;
    t.path = inline_only(samples, "samples");
    if (t.path.is_relative() && !base_dir.empty()) t.path = base_dir / t.path;
    if (domain != nullptr) t.domain = parse_interval(inline_only(domain, "domain"), domain->line, "domain");
    cfg.target = std::move(t);
  }

  const Entry* degree = find("degree");
  if (degree == nullptr) throw ParseError("degree: missing required key");
  cfg.degree = static_cast<unsigned>(parse_count(inline_only(degree, "degree"), degree->line, "degree"));

  if (cfg.degree == 0) cfg.weights = {{1.0}};
  if (const Entry* w = find("weights")) {
    cfg.weights.clear();
    if (!w->inline_value.empty() && !w->rows.empty()) fail(w->line, "weights", "use either one line or a table");
    if (!w->inline_value.empty()) {
      cfg.weights.push_back(parse_list(w->inline_value, w->line, "weights"));
    } else {
      cfg.per_segment_weights = true;
      for (const auto& [line, row] : w->rows) cfg.weights.push_back(parse_list(row, line, "weights"));
      if (cfg.weights.size() != cfg.segment_count()) {
        fail(w->line, "weights", "table has " + std::to_string(cfg.weights.size()) + " rows but the target has " +
                                     std::to_string(cfg.segment_count()) + " segments");
      }
    }
    for (const auto& row : cfg.weights) {
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] < 0.0) fail(w->line, "weights", "order-" + std::to_string(k) + " weight is negative");
        if (row[k] > 0.0 && k > cfg.degree) {
          fail(w->line, "weights", "order " + std::to_string(k) + " is weighted but degree is " +
                                       std::to_string(cfg.degree));
        }
      }
    }
  }

  const Entry* sd = find("surrogate_degree");
  if (sd != nullptr) {
    if (!cfg.uses_surrogate()) fail(sd->line, "surrogate_degree", "only applies to sigmoid, tanh or sample targets");
    const auto n = parse_count(inline_only(sd, "surrogate_degree"), sd->line, "surrogate_degree");
    if (n < cfg.degree || n > kMaxSurrogateDegree) {
      fail(sd->line, "surrogate_degree",
           "must lie between degree and " + std::to_string(kMaxSurrogateDegree));
    }
    cfg.surrogate_degree = static_cast<unsigned>(n);
  } else if (cfg.uses_surrogate()) {
    if (cfg.degree > kMaxSurrogateDegree) {
      fail(degree->line, "degree", "exceeds the surrogate cap of " + std::to_string(kMaxSurrogateDegree));
    }
    cfg.surrogate_degree = default_surrogate_degree(cfg.degree);
  }

  if (const Entry* g = find("grid_points")) {
    cfg.grid_points = parse_count(inline_only(g, "grid_points"), g->line, "grid_points");
    if (cfg.grid_points < 2) fail(g->line, "grid_points", "must be at least 2");
  }

  if (const Entry* o = find("out")) {
    std::filesystem::path p = inline_only(o, "out");
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    cfg.out = std::move(p);
  }
  return cfg;
}

FitSpecConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace sobofit::cli
