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

#include "subgauss/rng.hpp"

namespace subgauss {

namespace {

#ifdef __SIZEOF_INT128__
inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  using u128 = unsigned __int128;
  const u128 p = static_cast<u128>(a) * static_cast<u128>(b);
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}
#else
inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const std::uint64_t a_lo = a & 0xFFFFFFFFULL, a_hi = a >> 32;
  const std::uint64_t b_lo = b & 0xFFFFFFFFULL, b_hi = b >> 32;
  const std::uint64_t t = a_lo * b_lo;
  const std::uint64_t u = a_hi * b_lo + (t >> 32);
  const std::uint64_t v = a_lo * b_hi + (u & 0xFFFFFFFFULL);
  hi = a_hi * b_hi + (u >> 32) + (v >> 32);
  lo = (v << 32) | (t & 0xFFFFFFFFULL);
}
#endif

}  // namespace

std::array<std::uint64_t, 4> Philox4x64::block(
    std::array<std::uint64_t, 4> c, std::array<std::uint64_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, c[0], hi0, lo0);
    mulhilo(kMult1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

std::uint64_t counter_uint64(std::uint64_t key0, std::uint64_t key1,
                             std::uint64_t index) {
  const auto out = Philox4x64::block({index >> 2, 0, 0, 0}, {key0, key1});
  return out[index & 3];
}

double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

double counter_uniform(std::uint64_t key0, std::uint64_t key1,
                       std::uint64_t index) {
  return to_unit_open(counter_uint64(key0, key1, index));
}

}  // namespace subgauss
