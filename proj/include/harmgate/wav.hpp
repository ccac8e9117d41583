// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <string>

#include "harmgate/types.hpp"

namespace harmgate {

enum class WavFormat { pcm16, float32 };

// Mono PCM 16-bit or IEEE float 32-bit only; anything else is a FormatError
// (no silent downmix of multichannel files).
AudioBuffer read_wav(const std::string& path);
void write_wav(const std::string& path, const AudioBuffer& buf,
               WavFormat fmt = WavFormat::float32);

}  // namespace harmgate
