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

#include <algorithm>
#include <bit>
#include <cstring>

#include "kgen/kernels.hpp"

namespace kgen::kernels {
namespace {

void execute_sliced_swar(std::span<const vm::Opcode> code,
                         std::span<const std::uint64_t> input_planes,
                         std::size_t words,
                         std::vector<std::uint64_t>& output_planes) {
  output_planes.assign(sliced_output_length(code) * words, 0);
  std::uint64_t* out = output_planes.data();
  const std::uint64_t* in = input_planes.data();
  std::size_t len = 0;  // planes written so far
  for (vm::Opcode op : code) {
    std::uint64_t* dst = out + len * words;
    switch (op) {
      case vm::Opcode::kHalt:
        return;
      case vm::Opcode::kOut0:
        std::fill_n(dst, words, 0);
        ++len;
        break;
      case vm::Opcode::kOut1:
        std::fill_n(dst, words, ~std::uint64_t{0});
        ++len;
        break;
      case vm::Opcode::kInOut:
        std::copy_n(in, words, dst);
        in += words;
        ++len;
        break;
      case vm::Opcode::kInDrop:
        in += words;
        break;
      case vm::Opcode::kDup:
        std::memcpy(dst, out, len * words * sizeof(std::uint64_t));
        len *= 2;
        break;
      case vm::Opcode::kRepLast:
        std::copy_n(dst - words, words, dst);
        ++len;
        break;
      case vm::Opcode::kFlipLast:
        for (std::size_t w = 0; w < words; ++w) dst[w] = ~dst[w - words];
        ++len;
        break;
    }
  }
}

std::size_t popcount_swar(std::span<const std::uint64_t> words) {
  std::size_t n = 0;
  for (std::uint64_t w : words) {
    w = w - ((w >> 1) & 0x5555555555555555ull);
    w = (w & 0x3333333333333333ull) + ((w >> 2) & 0x3333333333333333ull);
    w = (w + (w >> 4)) & 0x0F0F0F0F0F0F0F0Full;
    n += static_cast<std::size_t>((w * 0x0101010101010101ull) >> 56);
  }
  return n;
}

// Recursive block swap; rows are MSB-first.
void transpose64_swar(std::uint64_t* a) {
  std::uint64_t m = 0x00000000FFFFFFFFull;
  for (unsigned j = 32; j != 0; j >>= 1, m ^= (m << j)) {
    for (unsigned k = 0; k < 64; k = ((k | j) + 1) & ~j) {
      std::uint64_t t = (a[k] ^ (a[k | j] >> j)) & m;
      a[k] ^= t;
      a[k | j] ^= (t << j);
    }
  }
}

}  // namespace

const KernelSet& swar64_kernels() {
  static const KernelSet kSet{"swar64", 1, &execute_sliced_swar, &popcount_swar,
                              &transpose64_swar};
  return kSet;
}

}  // namespace kgen::kernels
