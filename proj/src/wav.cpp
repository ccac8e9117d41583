// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "harmgate/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace harmgate {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void push_u32(std::vector<unsigned char>& v, std::uint32_t x) {
  v.push_back(static_cast<unsigned char>(x & 0xff));
  v.push_back(static_cast<unsigned char>(x >> 8 & 0xff));
  v.push_back(static_cast<unsigned char>(x >> 16 & 0xff));
  v.push_back(static_cast<unsigned char>(x >> 24 & 0xff));
}

void push_u16(std::vector<unsigned char>& v, std::uint16_t x) {
  v.push_back(static_cast<unsigned char>(x & 0xff));
  v.push_back(static_cast<unsigned char>(x >> 8 & 0xff));
}

void push_tag(std::vector<unsigned char>& v, const char* tag) {
  v.insert(v.end(), tag, tag + 4);
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot open WAV file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw FormatError("not a RIFF/WAVE file: " + path);

  std::uint16_t audio_format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    const std::uint32_t chunk_len = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size())
      throw FormatError("truncated WAV chunk in " + path);
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw FormatError("fmt chunk too short in " + path);
      const unsigned char* p = bytes.data() + body;
      audio_format = read_u16(p);
      channels = read_u16(p + 2);
      sample_rate = read_u32(p + 4);
      bits = read_u16(p + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }
  if (!have_fmt || data == nullptr) throw FormatError("WAV missing fmt or data chunk: " + path);
  if (channels != 1)
    throw FormatError(path + " has " + std::to_string(channels) +
                      " channels; only mono input is supported (downmix it first)");

  AudioBuffer buf;
  buf.sample_rate = static_cast<int>(sample_rate);
  if (audio_format == 1 && bits == 16) {
    const std::size_t n = data_len / 2;
    buf.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::int16_t s;
      std::memcpy(&s, data + 2 * i, 2);
      buf.samples[i] = static_cast<double>(s) / 32768.0;
    }
  } else if (audio_format == 3 && bits == 32) {
    const std::size_t n = data_len / 4;
    buf.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      float s;
      std::memcpy(&s, data + 4 * i, 4);
      buf.samples[i] = static_cast<double>(s);
    }
  } else {
    throw FormatError(path + ": unsupported encoding (format " + std::to_string(audio_format) +
                      ", " + std::to_string(bits) + "-bit); use 16-bit PCM or 32-bit float");
  }
  return buf;
}

void write_wav(const std::string& path, const AudioBuffer& buf, WavFormat fmt) {
  if (buf.sample_rate <= 0) throw UsageError("write_wav: sample rate must be positive");
  const std::uint32_t n = static_cast<std::uint32_t>(buf.samples.size());
  const bool pcm = fmt == WavFormat::pcm16;
  const std::uint16_t bytes_per = pcm ? 2 : 4;

  std::vector<unsigned char> out;
  out.reserve(60 + static_cast<std::size_t>(n) * bytes_per);
  push_tag(out, "RIFF");
  push_u32(out, 0);  // patched below
  push_tag(out, "WAVE");
  push_tag(out, "fmt ");
  push_u32(out, 16);
  push_u16(out, pcm ? 1 : 3);
  push_u16(out, 1);  // mono
  push_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
  push_u32(out, static_cast<std::uint32_t>(buf.sample_rate) * bytes_per);
  push_u16(out, bytes_per);
  push_u16(out, pcm ? 16 : 32);
  if (!pcm) {
    push_tag(out, "fact");
    push_u32(out, 4);
    push_u32(out, n);
  }
  push_tag(out, "data");
  push_u32(out, n * bytes_per);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (pcm) {
      const double clipped = std::clamp(buf.samples[i], -1.0, 1.0);
      const std::int16_t s = static_cast<std::int16_t>(std::llround(clipped * 32767.0));
      push_u16(out, static_cast<std::uint16_t>(s));
    } else {
      const float s = static_cast<float>(buf.samples[i]);
      std::uint32_t raw;
      std::memcpy(&raw, &s, 4);
      push_u32(out, raw);
    }
  }
  const std::uint32_t riff_len = static_cast<std::uint32_t>(out.size() - 8);
  out[4] = static_cast<unsigned char>(riff_len & 0xff);
  out[5] = static_cast<unsigned char>(riff_len >> 8 & 0xff);
  out[6] = static_cast<unsigned char>(riff_len >> 16 & 0xff);
  out[7] = static_cast<unsigned char>(riff_len >> 24 & 0xff);

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw FormatError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw FormatError("short write: " + path);
}

}  // namespace harmgate
