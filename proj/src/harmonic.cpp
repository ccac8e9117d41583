// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/harmonic.hpp"

#include <cmath>

namespace harmgate {

IntegralMatrix build_integral_matrix(int F, double bin_hz) {
  if (F < 2) throw UsageError("build_integral_matrix: need at least two bins");
  if (!(bin_hz > 0.0)) throw UsageError("build_integral_matrix: bin_hz must be positive");
  IntegralMatrix m;
  m.bin_hz = bin_hz;
  m.values.setZero(kCandidates, F);
  for (int j = 0; j < kCandidates; ++j) {
    const double x = 0.1 * static_cast<double>(600 + j);  // candidate frequency in Hz
    const int kmax = static_cast<int>(std::llround(kHarmonicCeilHz / x));
    int loc_last = 0;
    double peak_last = 1.0;
    for (int k = 1; k <= kmax; ++k) {
      const int loc = static_cast<int>(std::llround((x * static_cast<double>(k)) / bin_hz));
      if (loc >= F) break;  // harmonics past the spectrum's edge contribute nothing
      const double peak = 1.0 / std::sqrt(static_cast<double>(k));
      m.values(j, loc) = static_cast<float>(peak);
      if (loc - loc_last > 1) {
        // Cosine valley over the closed span between consecutive peaks,
        // scaled by the linear interpolation of the peak heights.
        const double span = static_cast<double>(loc - loc_last);
        for (int i = 0; i <= loc - loc_last; ++i) {
          const double s = static_cast<double>(i) / span;
          m.values(j, loc_last + i) = static_cast<float>(
              std::cos((2.0 * M_PI) * s) * (peak_last + (peak - peak_last) * s));
        }
      } else {
        // Peaks collide or touch: no room for a valley, recenter both bins.
        const double avg = 0.5 * (peak_last + peak);
        m.values(j, loc) = static_cast<float>(static_cast<double>(m.values(j, loc)) - avg);
        m.values(j, loc_last) =
            static_cast<float>(static_cast<double>(m.values(j, loc_last)) - avg);
      }
      loc_last = loc;
      peak_last = peak;
    }
  }
  return m;
}

MatF significance(const MatD& coarse_mag, const IntegralMatrix& U) {
  if (coarse_mag.cols() != U.values.cols())
    throw UsageError("significance: spectrogram bins do not match the matrix");
  if ((coarse_mag.array() < 0.0).any())
    throw NumericError("significance: negative magnitude");
  const MatF P = coarse_mag.array().sqrt().cast<float>();
  return P * U.values.transpose();
}

PitchTrack select_pitch(const MatF& Q) {
  if (Q.cols() != kCandidates)
    throw UsageError("select_pitch: expected one column per pitch candidate");
  PitchTrack track;
  const Eigen::Index T = Q.rows();
  track.candidate.resize(T);
  track.pitch_hz.resize(T);
  track.significance.resize(T);
  for (Eigen::Index t = 0; t < T; ++t) {
    int best = 0;
    float best_q = Q(t, 0);
    for (int j = 1; j < kCandidates; ++j) {
      if (Q(t, j) > best_q) {  // strict: ties keep the lowest candidate
        best_q = Q(t, j);
        best = j;
      }
    }
    track.candidate[t] = best;
    track.pitch_hz[t] = candidate_hz(best);
    track.significance[t] = static_cast<double>(best_q);
  }
  return track;
}

PitchTrack mask_unvoiced(const PitchTrack& track, const VecD& flags) {
  if (static_cast<std::size_t>(flags.size()) != track.frames())
    throw UsageError("mask_unvoiced: flag count does not match the track");
  PitchTrack out = track;
  for (std::size_t t = 0; t < out.frames(); ++t) {
    if (flags[static_cast<Eigen::Index>(t)] == 0.0) {
      out.candidate[t] = -1;
      out.pitch_hz[t] = 0.0;
    }
  }
  return out;
}

MatD harmonic_template(const PitchTrack& track, int F, double bin_hz) {
  if (F < 2) throw UsageError("harmonic_template: need at least two bins");
  if (!(bin_hz > 0.0)) throw UsageError("harmonic_template: bin_hz must be positive");
  MatD rh = MatD::Zero(static_cast<Eigen::Index>(track.frames()), F);
  for (std::size_t t = 0; t < track.frames(); ++t) {
    if (track.candidate[t] < 0) continue;
    const double x = track.pitch_hz[t];
    if (!(x > 0.0)) continue;
    const int kmax = static_cast<int>(std::llround(kHarmonicCeilHz / x));
    for (int k = 1; k <= kmax; ++k) {
      const int loc = static_cast<int>(std::llround((x * static_cast<double>(k)) / bin_hz));
      if (loc >= F) break;
      rh(static_cast<Eigen::Index>(t), loc) = 1.0;
    }
  }
  return rh;
}

MatD harmonic_template_raw(const PitchTrack& track, const IntegralMatrix& U) {
  MatD rh = MatD::Zero(static_cast<Eigen::Index>(track.frames()), U.values.cols());
  for (std::size_t t = 0; t < track.frames(); ++t) {
    if (track.candidate[t] < 0) continue;
    rh.row(static_cast<Eigen::Index>(t)) =
        U.values.row(track.candidate[t]).cast<double>();
  }
  return rh;
}

}  // namespace harmgate
