// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/matrix_io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

namespace harmgate {

namespace {

constexpr char kMagic[4] = {'H', 'G', 'M', '1'};

void write_header(std::ofstream& f, std::uint32_t rows, std::uint32_t cols) {
  std::uint32_t header[3] = {rows, cols, 0};
  f.write(kMagic, 4);
  f.write(reinterpret_cast<const char*>(header), sizeof header);
}

}  // namespace

void write_matrix(const std::string& path, const MatF& m) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FormatError("cannot open for writing: " + path);
  write_header(f, static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols()));
  f.write(reinterpret_cast<const char*>(m.data()),
          static_cast<std::streamsize>(sizeof(float) * static_cast<std::size_t>(m.size())));
  if (!f) throw FormatError("short write: " + path);
}

void write_matrix(const std::string& path, const MatD& m) {
  write_matrix(path, MatF(m.cast<float>()));
}

MatF read_matrix(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open matrix file: " + path);
  char magic[4];
  std::uint32_t header[3];
  f.read(magic, 4);
  f.read(reinterpret_cast<char*>(header), sizeof header);
  if (!f || std::memcmp(magic, kMagic, 4) != 0)
    throw FormatError("not a matrix file: " + path);
  if (header[0] == 0 || header[1] == 0 || header[2] != 0)
    throw FormatError("bad matrix header in " + path);
  MatF m(header[0], header[1]);
  f.read(reinterpret_cast<char*>(m.data()),
         static_cast<std::streamsize>(sizeof(float) * static_cast<std::size_t>(m.size())));
  if (!f) throw FormatError("truncated matrix file: " + path);
  return m;
}

void write_matrix_csv(const std::string& path, const MatD& m) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw FormatError("cannot open for writing: " + path);
  char cell[48];
  for (Eigen::Index t = 0; t < m.rows(); ++t) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(cell, sizeof cell, "%.9g", m(t, c));
      if (c) f << ',';
      f << cell;
    }
    f << '\n';
  }
  if (!f.flush()) throw FormatError("short write: " + path);
}

void write_pitch_csv(const std::string& path, const PitchTrack& track, int frame_hop,
                     int sample_rate) {
  if (frame_hop < 1 || sample_rate < 1)
    throw UsageError("write_pitch_csv: hop and sample rate must be positive");
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw FormatError("cannot open for writing: " + path);
  f << "frame,time_s,candidate,pitch_hz,significance\n";
  char line[160];
  for (std::size_t t = 0; t < track.frames(); ++t) {
    const double time_s = static_cast<double>(t) * frame_hop / sample_rate;
    std::snprintf(line, sizeof line, "%zu,%.6f,%d,%.1f,%.9g\n", t, time_s,
                  track.candidate[t], track.pitch_hz[t], track.significance[t]);
    f << line;
  }
  if (!f.flush()) throw FormatError("short write: " + path);
}

}  // namespace harmgate
