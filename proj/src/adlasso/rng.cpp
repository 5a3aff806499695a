/*
Copyright 2026 The adlasso Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "adlasso/rng.hpp"

#include <cmath>

namespace adlasso {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ 0x6a09e667f3bcc909ULL;
  std::uint64_t h = splitmix64(s);
  s = h ^ b;
  return splitmix64(s);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed), stream_id_(stream_id) {
  std::uint64_t st = mix(master_seed, stream_id);
  for (auto& w : s_) w = splitmix64(st);
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

RngStream RngStream::substream(std::uint64_t child) const {
  return RngStream(master_seed_, mix(stream_id_ + 0x632be59bd9b4e019ULL, child));
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= limit) return r % bound;
  }
}

}  // namespace adlasso
