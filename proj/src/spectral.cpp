// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>

namespace harmgate {

namespace {

// Reflect an out-of-range index into [0, n) around the endpoints
// (period 2(n-1), endpoints not repeated).
long long reflect_index(long long i, long long n) {
  if (n == 1) return 0;
  const long long period = 2 * (n - 1);
  long long m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - m;
}

struct FftwRealDeleter {
  void operator()(double* p) const { fftw_free(p); }
};
struct FftwComplexDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
struct FftwPlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

}  // namespace

std::vector<double> hann_periodic(int n) {
  if (n < 1) throw UsageError("hann_periodic: window length must be positive");
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
  return w;
}

int stft_frame_count(long long num_samples, const AnalysisConfig& cfg) {
  cfg.validate();
  if (num_samples < 1) throw UsageError("stft: empty audio");
  const long long hop = cfg.hop();
  return static_cast<int>(1 + (num_samples + hop - 1) / hop);
}

ComplexSpectrogram stft(const AudioBuffer& audio, const AnalysisConfig& cfg) {
  cfg.validate();
  if (audio.samples.empty()) throw UsageError("stft: empty audio");
  if (audio.sample_rate != cfg.sample_rate)
    throw UsageError("stft: buffer is " + std::to_string(audio.sample_rate) +
                     " Hz but the analysis config expects " + std::to_string(cfg.sample_rate));
  const int win = cfg.win_length();
  const int hop = cfg.hop();
  const int fft = cfg.fft_size;
  const int F = cfg.bins();
  const long long len = static_cast<long long>(audio.samples.size());
  const int T = stft_frame_count(len, cfg);
  const std::vector<double> window = hann_periodic(win);

  std::unique_ptr<double, FftwRealDeleter> in(fftw_alloc_real(fft));
  std::unique_ptr<fftw_complex, FftwComplexDeleter> out(fftw_alloc_complex(F));
  std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(
      fftw_plan_dft_r2c_1d(fft, in.get(), out.get(), FFTW_ESTIMATE));

  ComplexSpectrogram spec;
  spec.re.setZero(T, F);
  spec.im.setZero(T, F);
  spec.frame_hop = hop;
  spec.bin_hz = cfg.bin_hz();
  for (int t = 0; t < T; ++t) {
    const long long start = static_cast<long long>(t) * hop - win / 2;
    for (int i = 0; i < win; ++i)
      in.get()[i] = window[i] * audio.samples[reflect_index(start + i, len)];
    std::memset(in.get() + win, 0, sizeof(double) * static_cast<std::size_t>(fft - win));
    fftw_execute(plan.get());
    for (int f = 0; f < F; ++f) {
      spec.re(t, f) = out.get()[f][0];
      spec.im(t, f) = out.get()[f][1];
    }
  }
  return spec;
}

AudioBuffer istft(const ComplexSpectrogram& spec, const AnalysisConfig& cfg) {
  cfg.validate();
  if (spec.frames() < 1) throw UsageError("istft: empty spectrogram");
  if (spec.bins() != cfg.bins())
    throw UsageError("istft: spectrogram has " + std::to_string(spec.bins()) +
                     " bins but the analysis config expects " + std::to_string(cfg.bins()));
  const int win = cfg.win_length();
  const int hop = cfg.hop();
  const int fft = cfg.fft_size;
  const int F = cfg.bins();
  const int T = static_cast<int>(spec.frames());
  const std::vector<double> window = hann_periodic(win);

  // Synthesis window: analysis window over the periodic sum of its squared
  // hop-shifts. Offsets congruent mod hop land on the same output sample.
  std::vector<double> wsyn(win);
  for (int o = 0; o < win; ++o) {
    double d = 0.0;
    for (int p = o % hop; p < win; p += hop) d += window[p] * window[p];
    wsyn[o] = d > 1e-12 ? window[o] / d : 0.0;
  }

  std::unique_ptr<fftw_complex, FftwComplexDeleter> in(fftw_alloc_complex(F));
  std::unique_ptr<double, FftwRealDeleter> out(fftw_alloc_real(fft));
  std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(
      fftw_plan_dft_c2r_1d(fft, in.get(), out.get(), FFTW_ESTIMATE));

  const long long out_len = T == 1 ? win : static_cast<long long>(T - 1) * hop;
  AudioBuffer audio;
  audio.sample_rate = cfg.sample_rate;
  audio.samples.assign(static_cast<std::size_t>(out_len), 0.0);
  const double scale = 1.0 / static_cast<double>(fft);
  for (int t = 0; t < T; ++t) {
    for (int f = 0; f < F; ++f) {
      in.get()[f][0] = spec.re(t, f);
      in.get()[f][1] = spec.im(t, f);
    }
    fftw_execute(plan.get());
    const long long start = T == 1 ? 0 : static_cast<long long>(t) * hop - win / 2;
    for (int o = 0; o < win; ++o) {
      const long long idx = start + o;
      if (idx >= 0 && idx < out_len) audio.samples[idx] += wsyn[o] * out.get()[o] * scale;
    }
  }
  return audio;
}

std::pair<ComplexSpectrogram, ComplexSpectrogram> split_bands(const ComplexSpectrogram& full) {
  if (full.bins() != kFbBins)
    throw UsageError("split_bands: expected " + std::to_string(kFbBins) + " bins, got " +
                     std::to_string(full.bins()));
  ComplexSpectrogram wb, hb;
  wb.re = full.re.leftCols(kWbBins);
  wb.im = full.im.leftCols(kWbBins);
  hb.re = full.re.rightCols(kHbBins);
  hb.im = full.im.rightCols(kHbBins);
  wb.frame_hop = hb.frame_hop = full.frame_hop;
  wb.bin_hz = hb.bin_hz = full.bin_hz;
  return {std::move(wb), std::move(hb)};
}

ComplexSpectrogram merge_bands(const ComplexSpectrogram& wb, const ComplexSpectrogram& hb) {
  if (wb.bins() != kWbBins || hb.bins() != kHbBins || wb.frames() != hb.frames())
    throw UsageError("merge_bands: parts are not a 257/512-bin split with equal frames");
  ComplexSpectrogram full;
  full.re.resize(wb.frames(), kFbBins);
  full.im.resize(wb.frames(), kFbBins);
  full.re << wb.re, hb.re;
  full.im << wb.im, hb.im;
  full.frame_hop = wb.frame_hop;
  full.bin_hz = wb.bin_hz;
  return full;
}

ComplexSpectrogram compress_power(const ComplexSpectrogram& spec, double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0))
    throw UsageError("compress_power: exponent must be in (0, 1]");
  ComplexSpectrogram out = spec;
  for (Eigen::Index t = 0; t < spec.frames(); ++t) {
    for (Eigen::Index f = 0; f < spec.bins(); ++f) {
      const double m = std::hypot(spec.re(t, f), spec.im(t, f));
      if (m > 0.0) {
        const double factor = std::pow(m, exponent - 1.0);
        out.re(t, f) = spec.re(t, f) * factor;
        out.im(t, f) = spec.im(t, f) * factor;
      }
    }
  }
  return out;
}

MagPhase mag_phase(const ComplexSpectrogram& spec) {
  MagPhase mp;
  mp.magnitude.resize(spec.frames(), spec.bins());
  mp.phase.resize(spec.frames(), spec.bins());
  for (Eigen::Index t = 0; t < spec.frames(); ++t) {
    for (Eigen::Index f = 0; f < spec.bins(); ++f) {
      const double m = std::hypot(spec.re(t, f), spec.im(t, f));
      mp.magnitude(t, f) = m;
      double ph = m == 0.0 ? 0.0 : std::atan2(spec.im(t, f), spec.re(t, f));
      if (ph == -M_PI) ph = M_PI;  // keep phase in (-pi, pi]
      mp.phase(t, f) = ph;
    }
  }
  return mp;
}

ComplexSpectrogram polar(const MagPhase& mp, int frame_hop, double bin_hz) {
  if (mp.magnitude.rows() != mp.phase.rows() || mp.magnitude.cols() != mp.phase.cols())
    throw UsageError("polar: magnitude and phase shapes differ");
  ComplexSpectrogram spec;
  spec.re = mp.magnitude.array() * mp.phase.array().cos();
  spec.im = mp.magnitude.array() * mp.phase.array().sin();
  spec.frame_hop = frame_hop;
  spec.bin_hz = bin_hz;
  return spec;
}

}  // namespace harmgate
