// Copyright 2026 The harmgate authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

namespace harmgate {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace harmgate
