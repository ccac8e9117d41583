// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/pipeline.hpp"

#include <chrono>
#include <cmath>

#include "harmgate/matrix_io.hpp"

namespace harmgate {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct MaskSource {
  enum class Kind { oracle, constant, file } kind = Kind::oracle;
  double value = 0.0;
  std::string path;
};

MaskSource parse_mask_source(const std::string& spec) {
  MaskSource src;
  if (spec == "oracle") {
    src.kind = MaskSource::Kind::oracle;
  } else if (spec.rfind("constant:", 0) == 0) {
    src.kind = MaskSource::Kind::constant;
    src.value = std::stod(spec.substr(9));
  } else if (spec.rfind("file:", 0) == 0) {
    src.kind = MaskSource::Kind::file;
    src.path = spec.substr(5);
  } else {
    throw UsageError("mask must be oracle, constant:<v> or file:<path>, got '" + spec + "'");
  }
  return src;
}

MatD load_mask_matrix(const MaskSource& src, Eigen::Index T, Eigen::Index F) {
  if (src.kind == MaskSource::Kind::constant) return MatD::Constant(T, F, src.value);
  const MatF m = read_matrix(src.path);
  if (m.rows() != T || m.cols() != F)
    throw FormatError("mask file " + src.path + ": expected " + std::to_string(T) + "x" +
                      std::to_string(F) + ", got " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()));
  return m.cast<double>();
}

// Agreement-based stand-in for a detector's confidence: full confidence where
// the estimated labels match the reference, a floor probability elsewhere.
MatD label_agreement(const MatD& est_labels, const MatD& ref_labels) {
  MatD p(ref_labels.rows(), ref_labels.cols());
  for (Eigen::Index t = 0; t < p.rows(); ++t)
    for (Eigen::Index f = 0; f < p.cols(); ++f)
      p(t, f) = est_labels(t, f) == ref_labels(t, f) ? 1.0 : kMaskEps;
  return p;
}

// The gate pipeline shared by analysis and enhancement: significance,
// voicing flags, pitch track, template, composed and smoothed gate.
struct GateChain {
  MatF Q;
  PitchTrack track_raw;
  PitchTrack track;
  VecD flags;
  MatD rh;
  MatD gate;           // pre-smoothing
  MatD gate_smoothed;
};

GateChain run_gate_chain(const MatD& mag, const MatD& ra, const IntegralMatrix& U,
                         const PipelineConfig& cfg, VrdState& state, double* significance_ms) {
  GateChain out;
  const auto t0 = Clock::now();
  out.Q = significance(mag, U);
  if (significance_ms != nullptr) *significance_ms = ms_since(t0);
  VrdState pre = state;
  pre.alpha = cfg.vrd_alpha;  // the config owns alpha; the file only carries xi
  auto [flags, next] = vrd(out.Q, pre);
  state = next;
  out.flags = std::move(flags);
  out.track_raw = select_pitch(out.Q);
  out.track = mask_unvoiced(out.track_raw, out.flags);
  out.rh = cfg.template_mode == "raw"
               ? harmonic_template_raw(out.track, U)
               : harmonic_template(out.track, static_cast<int>(mag.cols()), U.bin_hz);
  out.gate = compose_gate(out.flags, ra, out.rh);
  out.gate_smoothed = smooth_gate(out.gate, parse_kernel(cfg.gate_kernel));
  return out;
}

}  // namespace

AnalyzeResult run_analyze(const AudioBuffer& audio, const PipelineConfig& cfg,
                          VrdState& state) {
  cfg.validate();
  const auto t_total = Clock::now();
  AnalyzeResult res;

  auto t0 = Clock::now();
  const ComplexSpectrogram full = stft(audio, cfg.analysis);
  res.spec = cfg.band == "fb" ? split_bands(full).first : full;
  res.timings.stft_ms = ms_since(t0);

  const MatD mag = mag_phase(res.spec).magnitude;
  const IntegralMatrix U =
      build_integral_matrix(static_cast<int>(res.spec.bins()), res.spec.bin_hz);
  t0 = Clock::now();
  // Analysis has no clean reference: the energy labels come from the input
  // itself, thresholded per bin.
  res.ra = sed_labels(mag);
  GateChain chain = run_gate_chain(mag, res.ra, U, cfg, state, &res.timings.significance_ms);
  res.timings.gating_ms = ms_since(t0) - res.timings.significance_ms;

  res.Q = std::move(chain.Q);
  res.track_raw = std::move(chain.track_raw);
  res.track = std::move(chain.track);
  res.flags = std::move(chain.flags);
  res.rh = std::move(chain.rh);
  res.gate = std::move(chain.gate_smoothed);
  res.timings.total_ms = ms_since(t_total);
  return res;
}

EnhanceResult run_enhance(const AudioBuffer& noisy, const AudioBuffer& clean,
                          const PipelineConfig& cfg, VrdState& state) {
  cfg.validate();
  if (noisy.samples.size() != clean.samples.size())
    throw UsageError("enhance: noisy and clean lengths differ");
  if (noisy.sample_rate != clean.sample_rate)
    throw UsageError("enhance: noisy and clean sample rates differ");
  const MaskSource source = parse_mask_source(cfg.mask);
  const bool fb = cfg.band == "fb";

  const ComplexSpectrogram noisy_full = stft(noisy, cfg.analysis);
  const ComplexSpectrogram clean_full = stft(clean, cfg.analysis);
  ComplexSpectrogram noisy_wb = noisy_full, clean_wb = clean_full;
  ComplexSpectrogram noisy_hb, clean_hb, hb_enh;
  if (fb) {
    std::tie(noisy_wb, noisy_hb) = split_bands(noisy_full);
    std::tie(clean_wb, clean_hb) = split_bands(clean_full);
    // High band: plain magnitude masking, nothing to gate up there.
    const MatD hb_logits = source.kind == MaskSource::Kind::oracle
                               ? oracle_magnitude_mask(noisy_hb, clean_hb)
                               : load_mask_matrix(source, noisy_hb.frames(), noisy_hb.bins());
    hb_enh = apply_mask_magnitude(noisy_hb, hb_logits);
  }

  // Coarse stage: complex mask on the wide band.
  MatD m_re, m_im;
  if (source.kind == MaskSource::Kind::oracle) {
    std::tie(m_re, m_im) = oracle_complex_mask(noisy_wb, clean_wb);
  } else {
    m_re = load_mask_matrix(source, noisy_wb.frames(), noisy_wb.bins());
    m_im = MatD::Zero(noisy_wb.frames(), noisy_wb.bins());
  }
  const ComplexSpectrogram coarse_wb = apply_mask_complex(noisy_wb, m_re, m_im);

  // Gate from the coarse magnitudes; energy labels from the clean reference.
  const MatD coarse_mag = mag_phase(coarse_wb).magnitude;
  const MatD clean_wb_mag = mag_phase(clean_wb).magnitude;
  const IntegralMatrix U =
      build_integral_matrix(static_cast<int>(coarse_wb.bins()), coarse_wb.bin_hz);
  const MatD ra = oracle_sed(clean_wb_mag);
  GateChain chain = run_gate_chain(coarse_mag, ra, U, cfg, state, nullptr);

  // Refine stage: gated compensation on the coarse output.
  const MatD comp_logits =
      source.kind == MaskSource::Kind::oracle
          ? oracle_compensation_mask(coarse_wb, clean_wb, chain.gate_smoothed)
          : load_mask_matrix(source, coarse_wb.frames(), coarse_wb.bins());
  const ComplexSpectrogram refined_wb =
      apply_gated_compensation(coarse_wb, chain.gate_smoothed, comp_logits);

  EnhanceResult res;
  res.gate_smoothed = chain.gate_smoothed;
  res.coarse = fb ? merge_bands(coarse_wb, hb_enh) : coarse_wb;
  res.refined = fb ? merge_bands(refined_wb, hb_enh) : refined_wb;

  res.out = istft(res.refined, cfg.analysis);
  res.out.samples.resize(noisy.samples.size());

  const ComplexSpectrogram& ref_full = clean_full;
  const LoudnessExponent gamma = parse_gamma(cfg.gamma, static_cast<int>(ref_full.bins()));
  res.apc_noisy_db = apc_snr(noisy_full, ref_full, gamma);
  res.apc_coarse_db = apc_snr(res.coarse, ref_full, gamma);
  res.apc_refined_db = apc_snr(res.refined, ref_full, gamma);

  const double l_hb = fb ? hb_loss(mag_phase(hb_enh).magnitude, mag_phase(clean_hb).magnitude)
                         : 0.0;  // no high band to score in wide-band mode
  const MatD p = label_agreement(sed_labels(mag_phase(refined_wb).magnitude),
                                 sed_labels(clean_wb_mag));
  res.report = total_loss(l_hb, res.apc_coarse_db, res.apc_refined_db, focal_loss(p));
  return res;
}

LossReport run_metrics(const AudioBuffer& est, const AudioBuffer& ref,
                       const PipelineConfig& cfg) {
  cfg.validate();
  if (est.samples.size() != ref.samples.size())
    throw UsageError("metrics: estimate and reference lengths differ");
  if (est.sample_rate != ref.sample_rate)
    throw UsageError("metrics: estimate and reference sample rates differ");
  const bool fb = cfg.band == "fb";
  const ComplexSpectrogram est_full = stft(est, cfg.analysis);
  const ComplexSpectrogram ref_full = stft(ref, cfg.analysis);

  const LoudnessExponent gamma = parse_gamma(cfg.gamma, static_cast<int>(ref_full.bins()));
  const double apc = apc_snr(est_full, ref_full, gamma);

  double l_hb;
  MatD p;
  if (fb) {
    auto [est_wb, est_hb] = split_bands(est_full);
    auto [ref_wb, ref_hb] = split_bands(ref_full);
    l_hb = hb_loss(mag_phase(est_hb).magnitude, mag_phase(ref_hb).magnitude);
    p = label_agreement(sed_labels(mag_phase(est_wb).magnitude),
                        sed_labels(mag_phase(ref_wb).magnitude));
  } else {
    l_hb = hb_loss(mag_phase(est_full).magnitude, mag_phase(ref_full).magnitude);
    p = label_agreement(sed_labels(mag_phase(est_full).magnitude),
                        sed_labels(mag_phase(ref_full).magnitude));
  }
  // There is no intermediate signal in a plain scoring run: the estimate
  // stands in both APC slots.
  return total_loss(l_hb, apc, apc, focal_loss(p));
}

}  // namespace harmgate
