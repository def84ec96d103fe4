#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hextv/errors.hpp"
#include "hextv/harness.hpp"

namespace hextv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || !std::isfinite(x)) {
    throw std::invalid_argument("descriptor: bad number for " + key + ": '" + v + "'");
  }
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    throw std::invalid_argument("descriptor: bad integer for " + key + ": '" + v + "'");
  }
  return x;
}

}  // namespace

std::vector<double> parse_lambda_grid(const std::string& text) {
  std::vector<double> out;
  const auto range = split(text, ':');
  if (range.size() == 3) {
    const double start = to_double("lambda", range[0]);
    const double stop = to_double("lambda", range[1]);
    const double step = to_double("lambda", range[2]);
    if (step <= 0.0 || stop < start) throw std::invalid_argument("descriptor: empty lambda range");
    const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long long k = 0; k < count; ++k) out.push_back(start + static_cast<double>(k) * step);
  } else if (range.size() == 1) {
    for (const auto& v : split(text, ',')) out.push_back(to_double("lambda", v));
  } else {
    throw std::invalid_argument("descriptor: lambda must be start:stop:step or a list");
  }
  for (double l : out) {
    if (l < 0.0) throw std::invalid_argument("descriptor: lambda must be non-negative");
  }
  if (out.empty()) throw std::invalid_argument("descriptor: empty lambda grid");
  return out;
}

ExperimentDescriptor parse_descriptor(std::istream& in) {
  ExperimentDescriptor d;
  std::vector<LatticeKind> lattices{LatticeKind::Square, LatticeKind::Hex};
  std::vector<int> nus;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("descriptor line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "image") {
      if (value != "shepplogan" && value != "cosine" && value.rfind("file:", 0) != 0) {
        throw std::invalid_argument("descriptor: unknown image '" + value + "'");
      }
      d.image = value;
    } else if (key == "size") {
      d.size = static_cast<int>(to_int(key, value));
    } else if (key == "L" || key == "labels") {
      d.labels = static_cast<int>(to_int(key, value));
    } else if (key == "lattice") {
      lattices.clear();
      for (const auto& v : split(value, ',')) lattices.push_back(parse_lattice_kind(v));
    } else if (key == "nu") {
      nus.clear();
      for (const auto& v : split(value, ',')) nus.push_back(static_cast<int>(to_int(key, v)));
    } else if (key == "alpha") {
      d.alpha = static_cast<int>(to_int(key, value));
    } else if (key == "noise") {
      d.noise = parse_noise(value);
    } else if (key == "lambda") {
      d.lambdas = parse_lambda_grid(value);
    } else if (key == "seeds") {
      d.seeds = static_cast<int>(to_int(key, value));
    } else if (key == "seed_base") {
      d.seed_base = static_cast<std::uint64_t>(to_int(key, value));
    } else if (key == "scale") {
      d.hex_scale = to_double(key, value);
    } else if (key == "threads") {
      d.threads = static_cast<int>(to_int(key, value));
    } else if (key == "out") {
      d.out = value;
    } else if (key == "svg") {
      d.svg = value;
    } else {
      throw std::invalid_argument("descriptor: unknown key '" + key + "'");
    }
  }

  d.configs.clear();
  for (LatticeKind kind : lattices) {
    if (nus.empty()) {
      d.configs.push_back({kind, resolve_neighbourhood(kind, 0)});
      continue;
    }
    for (int nu : nus) {
      if (is_supported_neighbourhood(kind, nu)) d.configs.push_back({kind, nu});
    }
  }
  if (d.configs.empty()) throw std::invalid_argument("descriptor: no supported lattice/nu pair");
  if (d.size < 2) throw std::invalid_argument("descriptor: size must be at least 2");
  if (d.labels < 2 || d.labels > 65536) throw std::invalid_argument("descriptor: L must be in [2, 65536]");
  if (d.alpha != 1 && d.alpha != 2) throw std::invalid_argument("descriptor: alpha must be 1 or 2");
  if (d.seeds < 1) throw std::invalid_argument("descriptor: seeds must be positive");
  if (d.threads < 1) throw std::invalid_argument("descriptor: threads must be positive");
  return d;
}

ExperimentDescriptor read_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open descriptor " + path);
  return parse_descriptor(in);
}

}  // namespace hextv
