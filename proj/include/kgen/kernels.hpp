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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "kgen/vm.hpp"

// Data-parallel inner loops with a scalar reference and vectorized variants,
// selected at runtime.
//
// Bit-sliced layout: a block of lanes (one VM input per lane) is stored as
// planes. A plane is `words` consecutive 64-bit words; lane t of a plane is
// bit 63 - t % 64 of word t / 64 (MSB-first, the same order BitString uses).
namespace kgen::kernels {

struct KernelSet {
  std::string_view name;
  // Plane width granularity; callers pass `words` that are multiples of this.
  std::size_t lane_words;

  // Runs `code` on every lane. input_planes holds one plane per input bit in
  // consumption order (arity * words). output_planes is resized to
  // output_length * words. `code` must be free of operand faults.
  void (*execute_sliced)(std::span<const vm::Opcode> code,
                         std::span<const std::uint64_t> input_planes,
                         std::size_t words,
                         std::vector<std::uint64_t>& output_planes);

  // Number of set bits.
  std::size_t (*popcount)(std::span<const std::uint64_t> words);

  // In-place 64x64 bit-matrix transpose: bit 63 - c of row r moves to
  // bit 63 - r of row c.
  void (*transpose64)(std::uint64_t* rows);
};

const KernelSet& scalar_kernels();
const KernelSet& swar64_kernels();
// nullptr when the CPU (or the build) lacks AVX2.
const KernelSet* avx2_kernels();

// Every kernel set usable on this machine, reference first.
std::vector<const KernelSet*> available_kernels();

// Fastest available set. The KGEN_KERNELS environment variable
// (scalar|swar64|avx2) overrides the choice when that set is available.
const KernelSet& active_kernels();

// Output length of a fault-free run of `code`.
constexpr std::size_t sliced_output_length(std::span<const vm::Opcode> code) {
  std::size_t len = 0;
  for (vm::Opcode op : code) {
    switch (op) {
      case vm::Opcode::kHalt: return len;
      case vm::Opcode::kInDrop: break;
      case vm::Opcode::kDup: len *= 2; break;
      default: ++len; break;
    }
  }
  return len;
}

// Lane-pattern mask for input bit `shift` of consecutive values starting at a
// multiple of 64: bit 63 - t is ((t >> shift) & 1) for t in [0, 64).
constexpr std::uint64_t lane_pattern(unsigned shift) {
  constexpr std::uint64_t kPatterns[6] = {
      0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
      0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
  return kPatterns[shift];
}

}  // namespace kgen::kernels
