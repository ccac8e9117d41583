// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <utility>
#include <vector>

#include "harmgate/types.hpp"

namespace harmgate {

inline constexpr int kWbBins = 257;  // 0..8 kHz inclusive at 31.25 Hz/bin
inline constexpr int kFbBins = 769;  // 0..24 kHz inclusive at 31.25 Hz/bin
inline constexpr int kHbBins = kFbBins - kWbBins;

// Periodic Hann window: w[n] = 0.5*(1 - cos(2*pi*n/n_total)).
std::vector<double> hann_periodic(int n);

// Number of analysis frames for a signal of the given length.
int stft_frame_count(long long num_samples, const AnalysisConfig& cfg);

// Windowed forward transform. Frames are centered every hop samples starting
// at sample 0; edges are reflection-padded by half a window.
ComplexSpectrogram stft(const AudioBuffer& audio, const AnalysisConfig& cfg);

// Weighted overlap-add inverse with synthesis window = analysis window
// divided by the periodic sum of squared window shifts, so the stft round
// trip reconstructs the signal exactly on every emitted sample. Output
// length is (T-1)*hop; callers that know the original length trim to it.
// A single-frame spectrogram has no hop grid: its inverse is the one
// synthesized frame (win samples).
AudioBuffer istft(const ComplexSpectrogram& spec, const AnalysisConfig& cfg);

// Partition a 769-bin full-band spectrogram into the 257-bin wide band
// (0-8 kHz inclusive) and the 512-bin high band.
std::pair<ComplexSpectrogram, ComplexSpectrogram> split_bands(const ComplexSpectrogram& full);
ComplexSpectrogram merge_bands(const ComplexSpectrogram& wb, const ComplexSpectrogram& hb);

// Magnitude raised to `exponent` (in (0, 1]), phase untouched.
ComplexSpectrogram compress_power(const ComplexSpectrogram& spec, double exponent);

MagPhase mag_phase(const ComplexSpectrogram& spec);
ComplexSpectrogram polar(const MagPhase& mp, int frame_hop = 0, double bin_hz = 0.0);

}  // namespace harmgate
