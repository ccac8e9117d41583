// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/gating.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace harmgate {

MatD sed_labels(const MatD& clean_mag) {
  const Eigen::Index T = clean_mag.rows();
  const Eigen::Index F = clean_mag.cols();
  if (T < 1 || F < 1) throw UsageError("sed_labels: empty magnitude matrix");
  MatD lg(T, F);
  for (Eigen::Index t = 0; t < T; ++t)
    for (Eigen::Index f = 0; f < F; ++f)
      lg(t, f) = std::log(std::max(clean_mag(t, f), kLogFloor));
  MatD labels(T, F);
  for (Eigen::Index f = 0; f < F; ++f) {
    // Mean anchored at the first frame: constant columns sum deltas of
    // exactly zero, so the strict comparison below stays exact for them.
    double delta_sum = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) delta_sum += lg(t, f) - lg(0, f);
    const double mu = lg(0, f) + delta_sum / static_cast<double>(T);
    for (Eigen::Index t = 0; t < T; ++t) labels(t, f) = lg(t, f) > mu ? 1.0 : 0.0;
  }
  return labels;
}

std::pair<VecD, VrdState> vrd(const MatF& Q, const VrdState& state) {
  const Eigen::Index T = Q.rows();
  if (T < 1 || Q.cols() < 1) throw UsageError("vrd: empty significance matrix");
  VecD frame_max(T);
  for (Eigen::Index t = 0; t < T; ++t)
    frame_max[t] = static_cast<double>(Q.row(t).maxCoeff());
  const double utterance_mean = frame_max.mean();
  // A fresh detector seeds its reference with the utterance's own average,
  // so the first clip still separates its loud frames from its quiet ones.
  const double xi_old = state.xi.value_or(utterance_mean);
  VecD flags(T);
  for (Eigen::Index t = 0; t < T; ++t)
    flags[t] = frame_max[t] > state.alpha * xi_old ? 1.0 : 0.0;
  VrdState next = state;
  next.xi = std::max(0.0, 0.9 * xi_old + 0.1 * utterance_mean);
  return {std::move(flags), next};
}

MatD compose_gate(const VecD& vrd_flags, const MatD& ra, const MatD& rh) {
  if (ra.rows() != rh.rows() || ra.cols() != rh.cols())
    throw UsageError("compose_gate: label and template shapes differ");
  if (vrd_flags.size() != ra.rows())
    throw UsageError("compose_gate: flag count does not match the frames");
  MatD g(ra.rows(), ra.cols());
  for (Eigen::Index t = 0; t < ra.rows(); ++t)
    for (Eigen::Index f = 0; f < ra.cols(); ++f)
      g(t, f) = std::clamp(vrd_flags[t] * ra(t, f) * rh(t, f), 0.0, 1.0);
  return g;
}

Kernel Kernel::identity() {
  Kernel k;
  k.w = MatD::Ones(1, 1);
  k.time_origin = 0;
  return k;
}

Kernel Kernel::box(int kt, int kf) {
  if (kt < 1 || kf < 1) throw UsageError("box kernel: sizes must be positive");
  Kernel k;
  k.w = MatD::Constant(kt, kf, 1.0 / (static_cast<double>(kt) * static_cast<double>(kf)));
  k.time_origin = kt - 1;
  return k;
}

MatD smooth_gate(const MatD& gate, const Kernel& kernel) {
  const Eigen::Index kt = kernel.w.rows();
  const Eigen::Index kf = kernel.w.cols();
  if (kt < 1 || kf < 1) throw UsageError("smooth_gate: empty kernel");
  if (kernel.time_origin != kt - 1)
    throw UsageError("smooth_gate: kernel reaches future frames");
  const Eigen::Index fc = (kf - 1) / 2;
  MatD out = MatD::Zero(gate.rows(), gate.cols());
  for (Eigen::Index t = 0; t < gate.rows(); ++t) {
    for (Eigen::Index f = 0; f < gate.cols(); ++f) {
      double acc = 0.0;
      for (Eigen::Index r = 0; r < kt; ++r) {
        const Eigen::Index tt = t + r - kernel.time_origin;
        if (tt < 0 || tt >= gate.rows()) continue;
        for (Eigen::Index c = 0; c < kf; ++c) {
          const Eigen::Index ff = f + c - fc;
          if (ff < 0 || ff >= gate.cols()) continue;
          acc += kernel.w(r, c) * gate(tt, ff);
        }
      }
      out(t, f) = std::clamp(acc, 0.0, 1.0);
    }
  }
  return out;
}

VrdState read_vrd_state(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw FormatError("cannot open detector state file: " + path);
  std::string xi_text;
  double alpha = 0.0;
  if (!(f >> xi_text >> alpha))
    throw FormatError("malformed detector state file: " + path);
  VrdState state;
  state.alpha = alpha;
  try {
    const double xi = std::stod(xi_text);
    if (!std::isnan(xi)) state.xi = xi;
  } catch (const std::exception&) {
    throw FormatError("malformed detector state file: " + path);
  }
  return state;
}

void write_vrd_state(const std::string& path, const VrdState& state) {
  char line[80];
  std::snprintf(line, sizeof line, "%.17g %.17g\n",
                state.xi.value_or(std::nan("")), state.alpha);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw FormatError("cannot write detector state file: " + tmp);
    f << line;
    if (!f.flush()) throw FormatError("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw FormatError("cannot replace detector state file: " + path);
}

}  // namespace harmgate
