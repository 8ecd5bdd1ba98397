// Copyright 2026 The subgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace subgauss {

// Philox4x64-10 counter-based generator. Each call is a pure function of
// (counter, key), so streams are reproducible for any evaluation order or
// worker count. Round function and constants follow the original
// specification (Salmon et al., SC'11); verified against the published
// known-answer vectors.
struct Philox4x64 {
  static constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
  static constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
  static constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

  static std::array<std::uint64_t, 4> block(
      std::array<std::uint64_t, 4> counter, std::array<std::uint64_t, 2> key);
};

/// The i-th draw of the stream keyed by (key0, key1): lane i%4 of the
/// Philox block at counter (i/4, 0, 0, 0).
std::uint64_t counter_uint64(std::uint64_t key0, std::uint64_t key1,
                             std::uint64_t index);

/// Maps a u64 to the open interval (0,1): ((bits >> 12) + 0.5) * 2^-52,
/// every step exact in binary64, range [2^-53, 1 - 2^-53].
double to_unit_open(std::uint64_t bits);

/// The i-th uniform (0,1) draw of the stream keyed by (key0, key1).
double counter_uniform(std::uint64_t key0, std::uint64_t key1,
                       std::uint64_t index);

}  // namespace subgauss
