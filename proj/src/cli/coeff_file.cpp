#include "sobofit/cli/coeff_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sobofit/cli/config.hpp"

namespace sobofit::cli {

std::optional<std::string> CoeffFile::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string shortest_decimal(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_coeff_file(const CoeffFile& f) {
  std::ostringstream out;
  out << kCoeffFileHeader << '\n';
  out << "degree " << f.poly.degree() << '\n';
  for (std::size_t i = 0; i < f.poly.size(); ++i) out << "coeff " << i << ' ' << shortest_decimal(f.poly[i]) << '\n';
  for (const auto& [k, v] : f.metadata) out << k << ' ' << v << '\n';
  return out.str();
}

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw ParseError("coefficient file line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    bad(line, "bad number '" + s + "'");
  }
  return v;
}

}  // namespace

CoeffFile parse_coeff_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line != kCoeffFileHeader) bad(1, "expected header '" + std::string(kCoeffFileHeader) + "'");

  std::size_t degree = 0;
  bool have_degree = false;
  std::vector<double> coeffs;
  CoeffFile f;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "degree") {
      std::string d;
      ls >> d;
      auto [ptr, ec] = std::from_chars(d.data(), d.data() + d.size(), degree);
      if (d.empty() || ec != std::errc{} || ptr != d.data() + d.size()) bad(lineno, "bad degree");
      have_degree = true;
    } else if (key == "coeff") {
      std::size_t idx = 0;
      std::string value;
      if (!(ls >> idx >> value) || idx != coeffs.size()) bad(lineno, "coefficients must be listed in ascending order");
      coeffs.push_back(to_double(value, lineno));
    } else {
      std::string rest;
      std::getline(ls >> std::ws, rest);
      f.metadata.emplace_back(key, rest);
    }
  }
  if (!have_degree) bad(lineno, "missing degree line");
  if (coeffs.size() != degree + 1) bad(lineno, "expected " + std::to_string(degree + 1) + " coefficients");
  f.poly = Polynomial(std::move(coeffs));
  return f;
}

void write_coeff_file(const std::filesystem::path& path, const CoeffFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << format_coeff_file(f);
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

CoeffFile read_coeff_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read coefficient file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_coeff_file(buf.str());
}

}  // namespace sobofit::cli
