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
#include <functional>
#include <optional>
#include <vector>

#include "kgen/bitstring.hpp"
#include "kgen/generators.hpp"
#include "kgen/vm.hpp"

// Idealization: turns a terminating generator with a finite, variable-length
// domain and no injectivity guarantee into an ideal one, via a length-prefixed
// fixed-width input encoding and output ++ input concatenation.
namespace kgen::transform {

struct RawGenerator {
  // nullopt where the generator has no output for an input.
  std::function<std::optional<BitString>(const BitString&)> evaluate;
  std::vector<BitString> domain;  // finite and nonempty
  BitString code;                 // serialization used for the code-length proxy

  // m: length of the longest domain element.
  std::size_t max_input_length() const;
};

// evaluate(i) = output of running `program` on i; unconsumed input is ignored
// and faults give nullopt.
RawGenerator raw_from_program(const vm::Program& program, std::vector<BitString> domain);

// Every string of length <= m on which `program` runs without a fault.
std::vector<BitString> runnable_inputs(const vm::Program& program, std::size_t m);

// Bits needed to write any length 0..m: ceil(log2(m + 1)).
std::size_t header_width(std::size_t m);

// from_unsigned(|i|, header_width(m)) ++ pad_leading_zeros(i, m).
BitString enc(const BitString& i, std::size_t m);

// Reads the header (clamped to m) and returns that many trailing payload
// bits. Inverse of enc on valid encodings; total on strings of the right length.
BitString dec_total(const BitString& x, std::size_t m);

enum class Totalization {
  // Outside the domain: raw evaluate if defined there, else the smallest domain
  // element's output. The result is total over all fixed-length inputs.
  kFallback,
  // Outside the domain: raw evaluate if defined there, else kDomainFault.
  kStrict,
};

// G'': fixed input size, defined only on valid encodings of domain elements
// (kDomainFault elsewhere); not necessarily injective.
gen::GeneratorSpec intermediate(const RawGenerator& g);

// G'(x) = g(dec_total(x)) ++ x, input size header_width(m) + m.
gen::GeneratorSpec idealize(const RawGenerator& g, Totalization mode = Totalization::kFallback);

struct IdealizedSpaces {
  std::uint64_t total = 0;            // #pi over every fixed-length input
  std::uint64_t valid_encodings = 0;  // #pi restricted to enc(domain)
};

IdealizedSpaces idealized_spaces(const RawGenerator& g,
                                 Totalization mode = Totalization::kFallback);

}  // namespace kgen::transform
