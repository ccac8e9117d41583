// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>

#include "harmgate/harmonic.hpp"
#include "harmgate/types.hpp"

namespace harmgate {

// Binary matrix file: 16-byte header (magic "HGM1", uint32 rows, uint32
// cols, uint32 reserved = 0), then rows*cols little-endian float32 values
// in row-major order.
void write_matrix(const std::string& path, const MatF& m);
void write_matrix(const std::string& path, const MatD& m);  // cast to float32
MatF read_matrix(const std::string& path);

void write_matrix_csv(const std::string& path, const MatD& m);

// Pitch CSV: header "frame,time_s,candidate,pitch_hz,significance", one row
// per frame; candidate -1 marks unvoiced frames (pitch written as 0.0).
void write_pitch_csv(const std::string& path, const PitchTrack& track, int frame_hop,
                     int sample_rate);

}  // namespace harmgate
