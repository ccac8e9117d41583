// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <string>

#include "harmgate/gating.hpp"
#include "harmgate/metrics.hpp"
#include "harmgate/types.hpp"

namespace harmgate {

// Resolved run configuration. Files use line-oriented `key=value` with `#`
// comments; recognized keys: band, sample_rate, fft_size, window_ms,
// overlap_fraction, vrd_alpha, gate_kernel, gamma, mask, template_mode.
struct PipelineConfig {
  AnalysisConfig analysis = AnalysisConfig::wide_band();
  double vrd_alpha = 0.4;
  std::string gate_kernel = "identity";  // identity | box:<kt>x<kf> | custom:<kt>x<kf>:<w,...>
  std::string gamma = "0.5";             // constant or file:<path> (one value per line)
  std::string mask = "oracle";           // oracle | constant:<v> | file:<path>
  std::string band = "wb";               // wb | fb
  std::string template_mode = "binary";  // binary | raw

  void validate() const;
};

PipelineConfig parse_config_file(const std::string& path);

// Apply a band preset (wb: 16 kHz/512, fb: 48 kHz/1536), replacing the
// analysis settings wholesale; the CLI --band override runs this after the
// config file loads, explicit analysis keys in the file run after their
// own band key.
void apply_band(PipelineConfig& cfg, const std::string& band);

// Canonical text form of every semantic field, and its FNV-1a 64 hash.
// Two configs hash equal iff they resolve to the same semantics.
std::string canonical_config(const PipelineConfig& cfg);
std::uint64_t fnv1a64(const std::string& bytes);
std::string config_hash(const PipelineConfig& cfg);

Kernel parse_kernel(const std::string& spec);
LoudnessExponent parse_gamma(const std::string& spec, int bins);

}  // namespace harmgate
