// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include "harmgate/types.hpp"

namespace harmgate {

// Per-bin loudness exponents, all in (0, 1].
struct LoudnessExponent {
  VecD gamma;
  static LoudnessExponent constant(double g, int bins);
  void validate() const;
};

// Magnitude mapped to |S| * (|S|+1)^((gamma-1)/2), phase untouched.
ComplexSpectrogram loudness_compress(const ComplexSpectrogram& spec,
                                     const LoudnessExponent& gamma);

// Scale-invariant SNR of the loudness-compressed complex spectra, treated
// as flat real vectors (re/im interleaved). dB, clamped to [-60, 60].
double apc_snr(const ComplexSpectrogram& est, const ComplexSpectrogram& ref,
               const LoudnessExponent& gamma);

// Plain scale-invariant SNR on real vectors, same clamp.
double si_snr(const std::vector<double>& est, const std::vector<double>& ref);

// Mean over points of (|est|-|ref|)^2 + (log|est|-log|ref|)^2, magnitudes
// floored at 1e-8 before the log.
double hb_loss(const MatD& est_mag, const MatD& ref_mag);

// Mean over points of -alpha*(1-p)^beta*log(p); p must be positive.
double focal_loss(const MatD& p, double alpha = 1.0, double beta = 2.0);

struct LossReport {
  double l_hb = 0.0;
  double l_apc_coarse = 0.0;   // negated SNR score: lower is better
  double l_apc_refined = 0.0;  // negated SNR score: lower is better
  double l_focal = 0.0;
  double total = 0.0;          // plain sum of the four components
};

// Combine components; the SNR scores enter negated so the total is a loss.
LossReport total_loss(double l_hb, double apc_coarse_db, double apc_refined_db,
                      double l_focal);

}  // namespace harmgate
