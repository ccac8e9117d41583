// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>

#include "harmgate/config.hpp"
#include "harmgate/gating.hpp"
#include "harmgate/harmonic.hpp"
#include "harmgate/masking.hpp"
#include "harmgate/metrics.hpp"
#include "harmgate/spectral.hpp"
#include "harmgate/types.hpp"

namespace harmgate {

struct StageTimings {
  double stft_ms = 0.0;
  double significance_ms = 0.0;
  double gating_ms = 0.0;
  double total_ms = 0.0;
};

// Analysis pass over a single clip: spectrogram, harmonic significance,
// pitch track, detection flags and the composed (smoothed) gate.
struct AnalyzeResult {
  ComplexSpectrogram spec;
  MatF Q;               // frames x 3600 significance
  PitchTrack track_raw; // argmax track before voicing decisions
  PitchTrack track;     // unvoiced frames masked out
  VecD flags;           // per-frame voicing flags
  MatD ra;              // frames x bins activity labels
  MatD rh;              // frames x bins harmonic template
  MatD gate;            // smoothed composed gate
  StageTimings timings;
};

AnalyzeResult run_analyze(const AudioBuffer& audio, const PipelineConfig& cfg,
                          VrdState& state);

// Enhancement pass: coarse mask stage followed by gated compensation.
// Wide band runs the full chain on the whole spectrum; full band applies
// the chain below the crossover and a magnitude mask above it.
struct EnhanceResult {
  AudioBuffer out;
  LossReport report;
  double apc_noisy_db = 0.0;
  double apc_coarse_db = 0.0;
  double apc_refined_db = 0.0;
  ComplexSpectrogram coarse;
  ComplexSpectrogram refined;
  MatD gate_smoothed;
};

EnhanceResult run_enhance(const AudioBuffer& noisy, const AudioBuffer& clean,
                          const PipelineConfig& cfg, VrdState& state);

// Loss report for a pair of clips, treating the estimate as both the coarse
// and refined stage (the CLI metrics command has no intermediate signals).
LossReport run_metrics(const AudioBuffer& est, const AudioBuffer& ref,
                       const PipelineConfig& cfg);

}  // namespace harmgate
