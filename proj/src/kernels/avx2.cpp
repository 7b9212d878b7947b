// Copyright 2026 The kgen Authors. All Rights Reserved.
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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstring>

#include "kgen/kernels.hpp"

namespace kgen::kernels::avx2_impl {
namespace {

inline __m256i load(const std::uint64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}
inline void store(std::uint64_t* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

}  // namespace

// `words` is a multiple of 4: one 256-lane vector per plane chunk.
void execute_sliced(std::span<const vm::Opcode> code,
                    std::span<const std::uint64_t> input_planes, std::size_t words,
                    std::vector<std::uint64_t>& output_planes) {
  output_planes.assign(sliced_output_length(code) * words, 0);
  std::uint64_t* out = output_planes.data();
  const std::uint64_t* in = input_planes.data();
  const __m256i ones = _mm256_set1_epi64x(-1);
  std::size_t len = 0;
  for (vm::Opcode op : code) {
    std::uint64_t* dst = out + len * words;
    switch (op) {
      case vm::Opcode::kHalt:
        return;
      case vm::Opcode::kOut0:
        ++len;  // already zero
        break;
      case vm::Opcode::kOut1:
        for (std::size_t w = 0; w < words; w += 4) store(dst + w, ones);
        ++len;
        break;
      case vm::Opcode::kInOut:
        for (std::size_t w = 0; w < words; w += 4) store(dst + w, load(in + w));
        in += words;
        ++len;
        break;
      case vm::Opcode::kInDrop:
        in += words;
        break;
      case vm::Opcode::kDup: {
        std::size_t n = len * words;
        for (std::size_t w = 0; w < n; w += 4) store(dst + w, load(out + w));
        len *= 2;
        break;
      }
      case vm::Opcode::kRepLast:
        for (std::size_t w = 0; w < words; w += 4) store(dst + w, load(dst - words + w));
        ++len;
        break;
      case vm::Opcode::kFlipLast:
        for (std::size_t w = 0; w < words; w += 4) {
          store(dst + w, _mm256_xor_si256(load(dst - words + w), ones));
        }
        ++len;
        break;
    }
  }
}

// Nibble lookup popcount (pshufb) with byte sums folded by SAD.
std::size_t popcount(std::span<const std::uint64_t> words) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  const std::size_t n = words.size();
  for (; i + 4 <= n; i += 4) {
    __m256i v = load(words.data() + i);
    __m256i lo = _mm256_and_si256(v, low_mask);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                  _mm256_shuffle_epi8(lookup, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = static_cast<std::size_t>(lanes[0] + lanes[1] + lanes[2] + lanes[3]);
  for (; i < n; ++i) total += static_cast<std::size_t>(_mm_popcnt_u64(words[i]));
  return total;
}

}  // namespace kgen::kernels::avx2_impl
