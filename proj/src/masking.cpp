// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/masking.hpp"

#include <algorithm>
#include <cmath>

namespace harmgate {

namespace {

double sigmoid(double m) { return 1.0 / (1.0 + std::exp(-m)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

void check_shape(const ComplexSpectrogram& spec, const MatD& m, const char* what) {
  if (m.rows() != spec.frames() || m.cols() != spec.bins())
    throw UsageError(std::string(what) + ": shape does not match the spectrogram");
}

}  // namespace

ComplexSpectrogram apply_mask_magnitude(const ComplexSpectrogram& spec, const MatD& logits) {
  check_shape(spec, logits, "magnitude mask");
  ComplexSpectrogram out = spec;
  for (Eigen::Index t = 0; t < spec.frames(); ++t) {
    for (Eigen::Index f = 0; f < spec.bins(); ++f) {
      const double factor = sigmoid(logits(t, f));
      out.re(t, f) = factor * spec.re(t, f);
      out.im(t, f) = factor * spec.im(t, f);
    }
  }
  return out;
}

ComplexSpectrogram apply_mask_complex(const ComplexSpectrogram& spec, const MatD& m_re,
                                      const MatD& m_im) {
  check_shape(spec, m_re, "complex mask");
  check_shape(spec, m_im, "complex mask");
  ComplexSpectrogram out = spec;
  for (Eigen::Index t = 0; t < spec.frames(); ++t) {
    for (Eigen::Index f = 0; f < spec.bins(); ++f) {
      const double mm = std::hypot(m_re(t, f), m_im(t, f));
      if (mm == 0.0) {  // tanh(0): the mask erases the point
        out.re(t, f) = 0.0;
        out.im(t, f) = 0.0;
        continue;
      }
      const double gain = std::tanh(mm);
      const double c = m_re(t, f) / mm;
      const double s = m_im(t, f) / mm;
      out.re(t, f) = gain * (spec.re(t, f) * c - spec.im(t, f) * s);
      out.im(t, f) = gain * (spec.re(t, f) * s + spec.im(t, f) * c);
    }
  }
  return out;
}

ComplexSpectrogram apply_gated_compensation(const ComplexSpectrogram& spec, const MatD& gate,
                                            const MatD& logits) {
  check_shape(spec, gate, "compensation gate");
  check_shape(spec, logits, "compensation mask");
  if ((gate.array() < 0.0).any() || (gate.array() > 1.0).any())
    throw UsageError("compensation gate: values outside [0, 1]");
  ComplexSpectrogram out = spec;
  for (Eigen::Index t = 0; t < spec.frames(); ++t) {
    for (Eigen::Index f = 0; f < spec.bins(); ++f) {
      const double factor = 1.0 + gate(t, f) * sigmoid(logits(t, f));
      out.re(t, f) = factor * spec.re(t, f);
      out.im(t, f) = factor * spec.im(t, f);
    }
  }
  return out;
}

MatD oracle_magnitude_mask(const ComplexSpectrogram& noisy, const ComplexSpectrogram& clean) {
  if (noisy.frames() != clean.frames() || noisy.bins() != clean.bins())
    throw UsageError("oracle magnitude mask: spectrogram shapes differ");
  MatD logits(noisy.frames(), noisy.bins());
  for (Eigen::Index t = 0; t < noisy.frames(); ++t) {
    for (Eigen::Index f = 0; f < noisy.bins(); ++f) {
      const double mn = std::hypot(noisy.re(t, f), noisy.im(t, f));
      const double mc = std::hypot(clean.re(t, f), clean.im(t, f));
      double ratio = mn == 0.0 ? (mc == 0.0 ? 0.0 : 1.0) : mc / mn;
      ratio = std::clamp(ratio, kMaskEps, 1.0 - kMaskEps);
      logits(t, f) = logit(ratio);
    }
  }
  return logits;
}

std::pair<MatD, MatD> oracle_complex_mask(const ComplexSpectrogram& noisy,
                                          const ComplexSpectrogram& clean) {
  if (noisy.frames() != clean.frames() || noisy.bins() != clean.bins())
    throw UsageError("oracle complex mask: spectrogram shapes differ");
  MatD m_re(noisy.frames(), noisy.bins());
  MatD m_im(noisy.frames(), noisy.bins());
  for (Eigen::Index t = 0; t < noisy.frames(); ++t) {
    for (Eigen::Index f = 0; f < noisy.bins(); ++f) {
      const double mn = std::hypot(noisy.re(t, f), noisy.im(t, f));
      const double mc = std::hypot(clean.re(t, f), clean.im(t, f));
      double ratio = mn == 0.0 ? 0.0 : mc / mn;
      // The gain recovers as tanh(|M|); the tighter upper clamp keeps a
      // pass-through mask's reconstruction error at the 1e-7 level.
      ratio = std::clamp(ratio, kMaskEps, 1.0 - kTanhEps);
      const double mag = std::atanh(ratio);
      const double dphi = (mc == 0.0 ? 0.0 : std::atan2(clean.im(t, f), clean.re(t, f))) -
                          (mn == 0.0 ? 0.0 : std::atan2(noisy.im(t, f), noisy.re(t, f)));
      m_re(t, f) = mag * std::cos(dphi);
      m_im(t, f) = mag * std::sin(dphi);
    }
  }
  return {std::move(m_re), std::move(m_im)};
}

MatD oracle_compensation_mask(const ComplexSpectrogram& coarse, const ComplexSpectrogram& clean,
                              const MatD& gate) {
  if (coarse.frames() != clean.frames() || coarse.bins() != clean.bins())
    throw UsageError("oracle compensation mask: spectrogram shapes differ");
  check_shape(coarse, gate, "oracle compensation mask");
  const double floor_logit = logit(kMaskEps);
  MatD logits(coarse.frames(), coarse.bins());
  for (Eigen::Index t = 0; t < coarse.frames(); ++t) {
    for (Eigen::Index f = 0; f < coarse.bins(); ++f) {
      if (gate(t, f) == 0.0) {  // nothing to compensate where the gate is shut
        logits(t, f) = floor_logit;
        continue;
      }
      const double mo = std::hypot(coarse.re(t, f), coarse.im(t, f));
      const double mc = std::hypot(clean.re(t, f), clean.im(t, f));
      double boost = mo == 0.0 ? 0.0 : mc / mo - 1.0;
      boost = std::clamp(boost, kMaskEps, 1.0 - kMaskEps);
      logits(t, f) = logit(boost);
    }
  }
  return logits;
}

}  // namespace harmgate
