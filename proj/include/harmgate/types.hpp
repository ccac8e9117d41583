// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace harmgate {

// Row-major so spectrogram frames are contiguous rows and binary IO is a
// straight memory copy.
using MatD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VecD = Eigen::VectorXd;

// CLI exit code 2: the caller passed something inconsistent.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// CLI exit code 3: a file on disk had the wrong shape or encoding.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// CLI exit code 4: a numeric precondition failed (zero reference, bad domain).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kLogFloor = 1e-8;  // magnitude floor before any log
inline constexpr double kMaskEps = 1e-4;   // sigmoid-path oracle ratio clamp
inline constexpr double kTanhEps = 1e-7;   // upper ratio clamp on the atanh path
inline constexpr double kDbClamp = 60.0;   // SNR scores live in [-60, 60]

struct AudioBuffer {
  std::vector<double> samples;  // nominal range [-1, 1]
  int sample_rate = 0;          // Hz
};

struct AnalysisConfig {
  double window_ms = 32.0;
  double overlap_fraction = 0.25;
  int fft_size = 512;
  int sample_rate = 16000;

  int win_length() const {
    return static_cast<int>(std::llround(window_ms * sample_rate / 1000.0));
  }
  int hop() const {
    return static_cast<int>(std::llround(win_length() * (1.0 - overlap_fraction)));
  }
  int bins() const { return fft_size / 2 + 1; }
  double bin_hz() const { return static_cast<double>(sample_rate) / fft_size; }

  void validate() const {
    if (sample_rate <= 0) throw UsageError("analysis config: sample_rate must be positive");
    if (!(overlap_fraction > 0.0 && overlap_fraction < 1.0))
      throw UsageError("analysis config: overlap_fraction must be in (0, 1)");
    if (fft_size < win_length())
      throw UsageError("analysis config: fft_size smaller than the analysis window");
    if (win_length() < 2) throw UsageError("analysis config: window shorter than 2 samples");
    if (hop() < 1) throw UsageError("analysis config: hop shorter than 1 sample");
  }

  static AnalysisConfig wide_band() { return AnalysisConfig{32.0, 0.25, 512, 16000}; }
  static AnalysisConfig full_band() { return AnalysisConfig{32.0, 0.25, 1536, 48000}; }
};

struct ComplexSpectrogram {
  MatD re, im;           // T x F each
  int frame_hop = 0;     // samples between frames
  double bin_hz = 0.0;   // Hz per bin
  Eigen::Index frames() const { return re.rows(); }
  Eigen::Index bins() const { return re.cols(); }
};

struct MagPhase {
  MatD magnitude;  // T x F, nonnegative
  MatD phase;      // T x F, in (-pi, pi]
};

}  // namespace harmgate
