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

#include <cstdint>
#include <functional>
#include <vector>

#include "kgen/bitstring.hpp"
#include "kgen/kernels.hpp"
#include "kgen/vm.hpp"

namespace kgen::vm {

// Runs `program` on the inputs whose unsigned values are first .. first+count-1
// (each input_arity(program) bits wide) and calls sink(value, output) in
// ascending value order. Uses the bit-sliced kernels; results are identical to
// calling execute() per input. Throws kNonTotal if the program has an operand
// fault (which then happens on every input).
void for_each_output(const Program& program, std::uint64_t first, std::uint64_t count,
                     const std::function<void(std::uint64_t, const BitString&)>& sink,
                     const kernels::KernelSet& kernels = kernels::active_kernels());

std::vector<BitString> execute_range(
    const Program& program, std::uint64_t first, std::uint64_t count,
    const kernels::KernelSet& kernels = kernels::active_kernels());

}  // namespace kgen::vm
