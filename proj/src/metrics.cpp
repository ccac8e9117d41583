// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace harmgate {

LoudnessExponent LoudnessExponent::constant(double g, int bins) {
  LoudnessExponent le;
  le.gamma = VecD::Constant(bins, g);
  le.validate();
  return le;
}

void LoudnessExponent::validate() const {
  if (gamma.size() < 1) throw UsageError("loudness exponent: empty");
  for (Eigen::Index f = 0; f < gamma.size(); ++f)
    if (!(gamma[f] > 0.0 && gamma[f] <= 1.0))
      throw UsageError("loudness exponent: values must be in (0, 1]");
}

ComplexSpectrogram loudness_compress(const ComplexSpectrogram& spec,
                                     const LoudnessExponent& gamma) {
  if (gamma.gamma.size() != spec.bins())
    throw UsageError("loudness_compress: one exponent per bin required");
  ComplexSpectrogram out = spec;
  for (Eigen::Index t = 0; t < spec.frames(); ++t) {
    for (Eigen::Index f = 0; f < spec.bins(); ++f) {
      const double m = std::hypot(spec.re(t, f), spec.im(t, f));
      const double factor = std::pow(m + 1.0, 0.5 * (gamma.gamma[f] - 1.0));
      out.re(t, f) = spec.re(t, f) * factor;
      out.im(t, f) = spec.im(t, f) * factor;
    }
  }
  return out;
}

double si_snr(const std::vector<double>& est, const std::vector<double>& ref) {
  if (est.size() != ref.size() || est.empty())
    throw UsageError("si_snr: size mismatch or empty input");
  double dot = 0.0;
  double ref_energy = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    dot += est[i] * ref[i];
    ref_energy += ref[i] * ref[i];
  }
  if (ref_energy == 0.0) throw NumericError("si_snr: zero reference");
  const double a = dot / ref_energy;
  double signal = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double s = a * ref[i];
    const double e = est[i] - s;
    signal += s * s;
    error += e * e;
  }
  if (error == 0.0) return kDbClamp;
  if (signal == 0.0) return -kDbClamp;
  return std::clamp(10.0 * std::log10(signal / error), -kDbClamp, kDbClamp);
}

double apc_snr(const ComplexSpectrogram& est, const ComplexSpectrogram& ref,
               const LoudnessExponent& gamma) {
  if (est.frames() != ref.frames() || est.bins() != ref.bins())
    throw UsageError("apc_snr: spectrogram shapes differ");
  const ComplexSpectrogram ce = loudness_compress(est, gamma);
  const ComplexSpectrogram cr = loudness_compress(ref, gamma);
  const std::size_t n = static_cast<std::size_t>(est.frames()) *
                        static_cast<std::size_t>(est.bins());
  std::vector<double> ve(2 * n), vr(2 * n);
  std::size_t i = 0;
  for (Eigen::Index t = 0; t < est.frames(); ++t) {
    for (Eigen::Index f = 0; f < est.bins(); ++f) {
      ve[i] = ce.re(t, f);
      vr[i++] = cr.re(t, f);
      ve[i] = ce.im(t, f);
      vr[i++] = cr.im(t, f);
    }
  }
  return si_snr(ve, vr);
}

double hb_loss(const MatD& est_mag, const MatD& ref_mag) {
  if (est_mag.rows() != ref_mag.rows() || est_mag.cols() != ref_mag.cols())
    throw UsageError("hb_loss: shapes differ");
  if (est_mag.size() == 0) throw UsageError("hb_loss: empty input");
  if ((est_mag.array() < 0.0).any() || (ref_mag.array() < 0.0).any())
    throw NumericError("hb_loss: negative magnitude");
  double acc = 0.0;
  for (Eigen::Index t = 0; t < est_mag.rows(); ++t) {
    for (Eigen::Index f = 0; f < est_mag.cols(); ++f) {
      const double d = est_mag(t, f) - ref_mag(t, f);
      const double dl = std::log(std::max(est_mag(t, f), kLogFloor)) -
                        std::log(std::max(ref_mag(t, f), kLogFloor));
      acc += d * d + dl * dl;
    }
  }
  return acc / static_cast<double>(est_mag.size());
}

double focal_loss(const MatD& p, double alpha, double beta) {
  if (p.size() == 0) throw UsageError("focal_loss: empty input");
  if ((p.array() <= 0.0).any() || (p.array() > 1.0).any())
    throw NumericError("focal_loss: probabilities must be in (0, 1]");
  double acc = 0.0;
  for (Eigen::Index t = 0; t < p.rows(); ++t)
    for (Eigen::Index f = 0; f < p.cols(); ++f)
      acc += -alpha * std::pow(1.0 - p(t, f), beta) * std::log(p(t, f));
  return acc / static_cast<double>(p.size());
}

LossReport total_loss(double l_hb, double apc_coarse_db, double apc_refined_db,
                      double l_focal) {
  LossReport r;
  r.l_hb = l_hb;
  r.l_apc_coarse = -apc_coarse_db;
  r.l_apc_refined = -apc_refined_db;
  r.l_focal = l_focal;
  r.total = r.l_hb + r.l_apc_coarse + r.l_apc_refined + r.l_focal;
  return r;
}

}  // namespace harmgate
