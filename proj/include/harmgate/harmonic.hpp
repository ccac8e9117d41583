// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include "harmgate/types.hpp"

namespace harmgate {

inline constexpr int kCandidates = 3600;       // 60.0..419.9 Hz in 0.1 Hz steps
inline constexpr double kHarmonicCeilHz = 8000.0;

inline double candidate_hz(int j) { return (600.0 + static_cast<double>(j)) / 10.0; }

// Precomputed bank of harmonic peak-valley templates, one row per pitch
// candidate. Peaks carry 1/sqrt(k) at the k-th harmonic's bin; the span
// between consecutive peaks is a cosine arc scaled by the linear
// interpolation of the neighboring peak heights, so each row integrates
// spectral energy at harmonics and subtracts it between them.
struct IntegralMatrix {
  MatF values;          // kCandidates x F, float32 (matches the file format)
  double bin_hz = 0.0;  // Hz per spectrogram bin the rows were built for
};

IntegralMatrix build_integral_matrix(int F, double bin_hz);

// Q = sqrt(mag) * U^T, frame by frame: the significance of every pitch
// candidate in every frame. This is the analysis hot path.
MatF significance(const MatD& coarse_mag, const IntegralMatrix& U);

// Per-frame pitch decision. candidate < 0 marks a frame with no pitch.
struct PitchTrack {
  std::vector<int> candidate;      // index into the 3600 candidates, or -1
  std::vector<double> pitch_hz;    // (600+j)/10, or 0 when unvoiced
  std::vector<double> significance;  // max of the frame's Q row
  std::size_t frames() const { return candidate.size(); }
};

// Argmax per frame; ties break toward the lowest candidate index.
PitchTrack select_pitch(const MatF& Q);

// Copy of `track` with frames whose flag is 0 marked unvoiced.
PitchTrack mask_unvoiced(const PitchTrack& track, const VecD& flags);

// Binary harmonic peak template: row t has ones at round(k*pitch/bin_hz)
// for k = 1.. up to 8 kHz; zero rows for unvoiced frames.
MatD harmonic_template(const PitchTrack& track, int F, double bin_hz);

// The selected candidate's raw signed template row (for inspection or the
// raw gate mode); zero rows for unvoiced frames.
MatD harmonic_template_raw(const PitchTrack& track, const IntegralMatrix& U);

}  // namespace harmgate
