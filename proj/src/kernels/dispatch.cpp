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

#include <cstdlib>
#include <string_view>

#include "kgen/kernels.hpp"

namespace kgen::kernels {

#if defined(KGEN_HAVE_AVX2)
namespace avx2_impl {
void execute_sliced(std::span<const vm::Opcode> code,
                    std::span<const std::uint64_t> input_planes, std::size_t words,
                    std::vector<std::uint64_t>& output_planes);
std::size_t popcount(std::span<const std::uint64_t> words);
}  // namespace avx2_impl
#endif

const KernelSet* avx2_kernels() {
#if defined(KGEN_HAVE_AVX2)
  static const KernelSet* set = [] () -> const KernelSet* {
    __builtin_cpu_init();
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("popcnt")) {
      return nullptr;
    }
    static const KernelSet kSet{"avx2", 4, &avx2_impl::execute_sliced,
                                &avx2_impl::popcount, swar64_kernels().transpose64};
    return &kSet;
  }();
  return set;
#else
  return nullptr;
#endif
}

std::vector<const KernelSet*> available_kernels() {
  std::vector<const KernelSet*> sets{&scalar_kernels(), &swar64_kernels()};
  if (const KernelSet* k = avx2_kernels()) sets.push_back(k);
  return sets;
}

const KernelSet& active_kernels() {
  static const KernelSet* chosen = [] {
    auto sets = available_kernels();
    const KernelSet* best = sets.back();
    if (const char* env = std::getenv("KGEN_KERNELS")) {
      for (const KernelSet* k : sets) {
        if (k->name == std::string_view(env)) best = k;
      }
    }
    return best;
  }();
  return *chosen;
}

}  // namespace kgen::kernels
