// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <utility>

#include "harmgate/types.hpp"

namespace harmgate {

// Magnitude mask: |S| * sigmoid(m), phase untouched. Never amplifies.
ComplexSpectrogram apply_mask_magnitude(const ComplexSpectrogram& spec, const MatD& logits);

// Complex mask: magnitude scaled by tanh(|M|), phase rotated by M's phase.
// Never amplifies.
ComplexSpectrogram apply_mask_complex(const ComplexSpectrogram& spec, const MatD& m_re,
                                      const MatD& m_im);

// Gated compensation: each element scaled by 1 + gate*sigmoid(m), a factor
// in [1, 2]; phase untouched. Gate values must lie in [0, 1].
ComplexSpectrogram apply_gated_compensation(const ComplexSpectrogram& spec, const MatD& gate,
                                            const MatD& logits);

// Ideal masks derived from an aligned clean reference; these stand in for
// learned estimators. Ratios are clamped before the inverse link functions
// (sigmoid paths to [1e-4, 1-1e-4]; the atanh path's upper clamp is 1-1e-7
// so a unit ratio reconstructs to within 1e-7).
MatD oracle_magnitude_mask(const ComplexSpectrogram& noisy, const ComplexSpectrogram& clean);
std::pair<MatD, MatD> oracle_complex_mask(const ComplexSpectrogram& noisy,
                                          const ComplexSpectrogram& clean);
// Compensation targets |clean|/|coarse| - 1 on bins where the gate is
// nonzero; gated-out bins get the floor logit (no compensation requested).
MatD oracle_compensation_mask(const ComplexSpectrogram& coarse, const ComplexSpectrogram& clean,
                              const MatD& gate);

}  // namespace harmgate
