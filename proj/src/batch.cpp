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

#include "kgen/batch.hpp"

#include <algorithm>

#include "kgen/error.hpp"

namespace kgen::vm {
namespace {

constexpr std::size_t kBlockWords = 16;  // 1024 lanes per block

void fill_input_planes(std::uint64_t base, std::size_t arity, std::size_t words,
                       std::vector<std::uint64_t>& planes) {
  planes.assign(arity * words, 0);
  bool aligned = (base & 63) == 0;
  for (std::size_t k = 0; k < arity; ++k) {
    unsigned shift = static_cast<unsigned>(arity - 1 - k);
    std::uint64_t* plane = planes.data() + k * words;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t lane0 = base + 64 * w;
      if (aligned && shift < 6) {
        plane[w] = kernels::lane_pattern(shift);
      } else if (aligned) {
        plane[w] = ((lane0 >> shift) & 1u) ? ~std::uint64_t{0} : 0;
      } else {
        std::uint64_t bits = 0;
        for (unsigned t = 0; t < 64; ++t) {
          bits |= (((lane0 + t) >> shift) & 1u) << (63 - t);
        }
        plane[w] = bits;
      }
    }
  }
}

}  // namespace

void for_each_output(const Program& program, std::uint64_t first, std::uint64_t count,
                     const std::function<void(std::uint64_t, const BitString&)>& sink,
                     const kernels::KernelSet& kernels) {
  StaticProfile prof = profile(program);
  if (prof.fault) {
    throw Error(ErrorCode::kNonTotal,
                std::string("program faults (") + to_string(*prof.fault) +
                    ") on every input");
  }
  if (prof.output_length > (std::uint64_t{1} << 24)) {
    throw Error(ErrorCode::kCapExceeded, "output longer than 2^24 bits");
  }
  std::size_t arity = prof.arity;
  if (arity < 64 && count > 0 && (first + (count - 1)) >> arity != 0) {
    throw Error(ErrorCode::kPrecondition, "input value out of range for arity");
  }
  std::span<const Opcode> code = program.code();
  std::size_t n = static_cast<std::size_t>(prof.output_length);
  std::size_t groups = BitString::word_count(n);

  std::vector<std::uint64_t> in_planes;
  std::vector<std::uint64_t> out_planes;
  std::uint64_t rows[64];
  std::vector<std::uint64_t> lane_words(groups * 64);
  BitString artefact(n);
  std::uint64_t done = 0;
  while (done < count) {
    std::uint64_t lanes = std::min<std::uint64_t>(count - done, kBlockWords * 64);
    std::size_t words = static_cast<std::size_t>((lanes + 63) / 64);
    words = (words + kernels.lane_words - 1) / kernels.lane_words * kernels.lane_words;
    std::uint64_t base = first + done;
    fill_input_planes(base, arity, words, in_planes);
    kernels.execute_sliced(code, in_planes, words, out_planes);
    for (std::size_t w = 0; w * 64 < lanes; ++w) {
      std::size_t lanes_here = static_cast<std::size_t>(std::min<std::uint64_t>(64, lanes - 64 * w));
      for (std::size_t g = 0; g < groups; ++g) {
        for (std::size_t j = 0; j < 64; ++j) {
          std::size_t plane = g * 64 + j;
          rows[j] = plane < n ? out_planes[plane * words + w] : 0;
        }
        kernels.transpose64(rows);
        for (std::size_t t = 0; t < lanes_here; ++t) lane_words[t * groups + g] = rows[t];
      }
      for (std::size_t t = 0; t < lanes_here; ++t) {
        auto dst = artefact.mutable_words();
        std::copy_n(lane_words.begin() + t * groups, groups, dst.begin());
        sink(base + 64 * w + t, artefact);
      }
    }
    done += lanes;
  }
}

std::vector<BitString> execute_range(const Program& program, std::uint64_t first,
                                     std::uint64_t count,
                                     const kernels::KernelSet& kernels) {
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(count));
  for_each_output(program, first, count,
                  [&](std::uint64_t, const BitString& a) { out.push_back(a); }, kernels);
  return out;
}

}  // namespace kgen::vm
