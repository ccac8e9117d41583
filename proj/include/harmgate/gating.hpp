// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <optional>
#include <string>
#include <utility>

#include "harmgate/types.hpp"

namespace harmgate {

// Running state of the voiced-region detector: a moving average of the
// per-frame maximum significance, and the scale factor applied to it.
struct VrdState {
  std::optional<double> xi;  // empty until the first utterance seeds it
  double alpha = 0.4;
};

// Per-point energy labels: 1 where the log magnitude exceeds that bin's
// mean over time (strict), 0 elsewhere. Magnitudes are floored at 1e-8
// before the log.
MatD sed_labels(const MatD& clean_mag);

// Stand-in for a learned energy detector; requires the clean reference.
inline MatD oracle_sed(const MatD& clean_mag) { return sed_labels(clean_mag); }

// Per-frame voiced flags: flag_t = max(Q_t) > alpha * xi, with xi taken
// from before this utterance (a fresh state seeds xi with this utterance's
// own mean of per-frame maxima). Returns flags and the updated state
// (xi_new = 0.9*xi + 0.1*mean_t max(Q_t), clamped at 0).
std::pair<VecD, VrdState> vrd(const MatF& Q, const VrdState& state);

// G = flags (broadcast over bins) * R_A * R_H, elementwise.
MatD compose_gate(const VecD& vrd_flags, const MatD& ra, const MatD& rh);

// Small causal correlation stencil. Row r acts at time offset r - time_origin,
// so causality requires time_origin to be the last row; columns are centered
// in frequency.
struct Kernel {
  MatD w;
  int time_origin = 0;
  static Kernel identity();
  static Kernel box(int kt, int kf);
};

// Causal 2-D correlation of the gate with the stencil, clamped to [0, 1].
MatD smooth_gate(const MatD& gate, const Kernel& kernel);

// Text persistence: "<xi|nan> <alpha>". Writes go through a temp file and
// an atomic rename.
VrdState read_vrd_state(const std::string& path);
void write_vrd_state(const std::string& path, const VrdState& state);

}  // namespace harmgate
