// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace harmgate {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t idx = 0;
    const double v = std::stod(s, &idx);
    if (idx != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": not a number: '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t idx = 0;
    const int v = std::stoi(s, &idx);
    if (idx != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": not an integer: '" + s + "'");
  }
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void PipelineConfig::validate() const {
  analysis.validate();
  if (!(vrd_alpha > 0.0)) throw UsageError("config: vrd_alpha must be positive");
  if (band != "wb" && band != "fb")
    throw UsageError("config: band must be wb or fb, got '" + band + "'");
  if (template_mode != "binary" && template_mode != "raw")
    throw UsageError("config: template_mode must be binary or raw, got '" + template_mode + "'");
  parse_kernel(gate_kernel);  // throws on a malformed stencil spec
  if (mask != "oracle" && mask.rfind("constant:", 0) != 0 && mask.rfind("file:", 0) != 0)
    throw UsageError("config: mask must be oracle, constant:<v> or file:<path>");
  if (mask.rfind("constant:", 0) == 0)
    parse_double(mask.substr(9), "config: mask constant");
  if (gamma.rfind("file:", 0) != 0) parse_double(gamma, "config: gamma");
}

void apply_band(PipelineConfig& cfg, const std::string& band) {
  if (band == "wb") {
    cfg.analysis = AnalysisConfig::wide_band();
  } else if (band == "fb") {
    cfg.analysis = AnalysisConfig::full_band();
  } else {
    throw UsageError("band must be wb or fb, got '" + band + "'");
  }
  cfg.band = band;
}

PipelineConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }

  PipelineConfig cfg;
  // The band preset anchors the analysis settings; explicit keys then
  // override it regardless of where the band line sits in the file.
  for (const auto& [key, value] : entries)
    if (key == "band") apply_band(cfg, value);
  for (const auto& [key, value] : entries) {
    if (key == "band") {
    } else if (key == "sample_rate") {
      cfg.analysis.sample_rate = parse_int(value, "config: sample_rate");
    } else if (key == "fft_size") {
      cfg.analysis.fft_size = parse_int(value, "config: fft_size");
    } else if (key == "window_ms") {
      cfg.analysis.window_ms = parse_double(value, "config: window_ms");
    } else if (key == "overlap_fraction") {
      cfg.analysis.overlap_fraction = parse_double(value, "config: overlap_fraction");
    } else if (key == "vrd_alpha") {
      cfg.vrd_alpha = parse_double(value, "config: vrd_alpha");
    } else if (key == "gate_kernel") {
      cfg.gate_kernel = value;
    } else if (key == "gamma") {
      cfg.gamma = value;
    } else if (key == "mask") {
      cfg.mask = value;
    } else if (key == "template_mode") {
      cfg.template_mode = value;
    } else {
      throw UsageError(path + ": unknown config key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

std::string canonical_config(const PipelineConfig& cfg) {
  std::ostringstream out;
  out << "band=" << cfg.band << '\n'
      << "fft_size=" << cfg.analysis.fft_size << '\n'
      << "gamma=" << cfg.gamma << '\n'
      << "gate_kernel=" << cfg.gate_kernel << '\n'
      << "mask=" << cfg.mask << '\n'
      << "overlap_fraction=" << format_double(cfg.analysis.overlap_fraction) << '\n'
      << "sample_rate=" << cfg.analysis.sample_rate << '\n'
      << "template_mode=" << cfg.template_mode << '\n'
      << "vrd_alpha=" << format_double(cfg.vrd_alpha) << '\n'
      << "window_ms=" << format_double(cfg.analysis.window_ms) << '\n';
  return out.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string config_hash(const PipelineConfig& cfg) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config(cfg))));
  return buf;
}

Kernel parse_kernel(const std::string& spec) {
  if (spec == "identity") return Kernel::identity();
  const auto parse_dims = [&](const std::string& dims) {
    const auto x = dims.find('x');
    if (x == std::string::npos)
      throw UsageError("kernel spec: expected <kt>x<kf>, got '" + dims + "'");
    return std::pair<int, int>{parse_int(dims.substr(0, x), "kernel rows"),
                               parse_int(dims.substr(x + 1), "kernel cols")};
  };
  if (spec.rfind("box:", 0) == 0) {
    const auto [kt, kf] = parse_dims(spec.substr(4));
    return Kernel::box(kt, kf);
  }
  if (spec.rfind("custom:", 0) == 0) {
    const auto rest = spec.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw UsageError("kernel spec: custom needs <kt>x<kf>:<weights>");
    const auto [kt, kf] = parse_dims(rest.substr(0, colon));
    if (kt < 1 || kf < 1) throw UsageError("kernel spec: sizes must be positive");
    std::vector<double> w;
    std::stringstream items(rest.substr(colon + 1));
    std::string item;
    while (std::getline(items, item, ',')) w.push_back(parse_double(item, "kernel weight"));
    if (static_cast<int>(w.size()) != kt * kf)
      throw UsageError("kernel spec: expected " + std::to_string(kt * kf) + " weights, got " +
                       std::to_string(w.size()));
    Kernel k;
    k.w.resize(kt, kf);
    for (int r = 0; r < kt; ++r)
      for (int c = 0; c < kf; ++c) k.w(r, c) = w[static_cast<std::size_t>(r) * kf + c];
    k.time_origin = kt - 1;
    return k;
  }
  throw UsageError("kernel spec: expected identity, box:.. or custom:.., got '" + spec + "'");
}

LoudnessExponent parse_gamma(const std::string& spec, int bins) {
  LoudnessExponent le;
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open gamma file: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(f, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      values.push_back(parse_double(line, "gamma file value"));
    }
    if (static_cast<int>(values.size()) != bins)
      throw FormatError("gamma file " + path + ": expected " + std::to_string(bins) +
                        " values, got " + std::to_string(values.size()));
    le.gamma.resize(bins);
    for (int f2 = 0; f2 < bins; ++f2) le.gamma[f2] = values[f2];
    le.validate();
    return le;
  }
  return LoudnessExponent::constant(parse_double(spec, "gamma"), bins);
}

}  // namespace harmgate
