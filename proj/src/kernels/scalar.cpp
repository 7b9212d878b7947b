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

// Reference kernels: one lane / one bit at a time, built on the reference
// interpreter. Every other kernel set is tested against these.

#include "kgen/kernels.hpp"

namespace kgen::kernels {
namespace {

bool lane_bit(const std::uint64_t* plane, std::size_t lane) {
  return (plane[lane >> 6] >> (63 - (lane & 63))) & 1u;
}

void execute_sliced_scalar(std::span<const vm::Opcode> code,
                           std::span<const std::uint64_t> input_planes,
                           std::size_t words,
                           std::vector<std::uint64_t>& output_planes) {
  vm::Program program = vm::Program::from_opcodes({code.begin(), code.end()});
  std::size_t arity = words == 0 ? 0 : input_planes.size() / words;
  std::size_t lanes = words * 64;
  output_planes.clear();
  std::size_t out_len = 0;
  for (std::size_t lane = 0; lane < lanes; ++lane) {
    BitString input;
    for (std::size_t k = 0; k < arity; ++k) {
      input.push_back(lane_bit(input_planes.data() + k * words, lane));
    }
    vm::ExecutionOutcome r = vm::execute(program, input);
    if (lane == 0) {
      out_len = r.output.size();
      output_planes.assign(out_len * words, 0);
    }
    for (std::size_t j = 0; j < out_len; ++j) {
      if (r.output[j]) {
        output_planes[j * words + (lane >> 6)] |= std::uint64_t{1} << (63 - (lane & 63));
      }
    }
  }
}

std::size_t popcount_scalar(std::span<const std::uint64_t> words) {
  std::size_t n = 0;
  for (std::uint64_t w : words) {
    for (unsigned b = 0; b < 64; ++b) n += (w >> b) & 1u;
  }
  return n;
}

void transpose64_scalar(std::uint64_t* rows) {
  std::uint64_t out[64] = {};
  for (unsigned r = 0; r < 64; ++r) {
    for (unsigned c = 0; c < 64; ++c) {
      if ((rows[r] >> (63 - c)) & 1u) out[c] |= std::uint64_t{1} << (63 - r);
    }
  }
  for (unsigned r = 0; r < 64; ++r) rows[r] = out[r];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet kSet{"scalar", 1, &execute_sliced_scalar, &popcount_scalar,
                              &transpose64_scalar};
  return kSet;
}

}  // namespace kgen::kernels
