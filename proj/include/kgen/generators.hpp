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
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kgen/bitstring.hpp"
#include "kgen/vm.hpp"

namespace kgen::gen {

inline constexpr std::uint8_t kFlowerTag = 0x01;
inline constexpr std::uint8_t kOatmealTag = 0x02;
inline constexpr std::uint8_t kIdealizedTag = 0x03;

struct VmFamily {
  vm::Program program;
};

// size x size monochrome sprite with 4-fold mirror symmetry.
struct FlowerFamily {
  std::size_t size = 0;
};

// Concatenation of `slots` parts, each picked by an index_bits-wide seed field.
struct OatmealFamily {
  std::vector<BitString> parts;
  std::size_t slots = 0;
  std::size_t index_bits = 0;
};

// Any other deterministic map, e.g. the output of transform::idealize.
// evaluate throws kgen::Error (kDomainFault) on inputs it cannot map.
struct FunctionFamily {
  std::function<BitString(const BitString&)> evaluate;
  BitString serialization;  // canonical code proxy
  std::string kind;
};

using Family = std::variant<VmFamily, FlowerFamily, OatmealFamily, FunctionFamily>;

class GeneratorSpec {
 public:
  static GeneratorSpec from_program(vm::Program program, std::string label = "");
  static GeneratorSpec flower(std::size_t size, std::string label = "");
  static GeneratorSpec oatmeal(std::vector<BitString> parts, std::size_t slots,
                               std::string label = "");
  static GeneratorSpec from_function(FunctionFamily family, std::size_t input_size,
                                     std::string label);

  const Family& family() const noexcept { return family_; }
  std::size_t input_size() const noexcept { return input_size_; }
  const std::string& label() const noexcept { return label_; }
  // "vm", "flower", "oatmeal" or the function family's kind.
  std::string kind() const;

 private:
  GeneratorSpec(Family family, std::size_t input_size, std::string label)
      : family_(std::move(family)), input_size_(input_size), label_(std::move(label)) {}

  Family family_;
  std::size_t input_size_ = 0;
  std::string label_;
};

// Pixel rule: seed fills the top-left (size/2)^2 quadrant row-major, the other
// quadrants mirror it. Row-major size*size result.
BitString flower(std::size_t size, const BitString& seed);

BitString oatmeal(std::span<const BitString> parts, std::size_t slots, const BitString& seed);

// Throws kArity for a wrong input length, kNonTotal when a vm generator faults.
BitString evaluate(const GeneratorSpec& g, const BitString& input);

enum class CodeLengthKind { kProgram, kProxy };
const char* to_string(CodeLengthKind kind);

struct CodeLength {
  std::size_t bits = 0;
  CodeLengthKind kind = CodeLengthKind::kProgram;
};

// vm: the program bits. Natives: tag(8) + parameters (counts as 8-bit fields,
// parts as raw bits), an upper-bound proxy for the shortest code.
BitString canonical_serialization(const GeneratorSpec& g);
CodeLength code_length(const GeneratorSpec& g);

struct SpaceOptions {
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t threads = 1;
};

struct PossibilitySpace {
  std::vector<BitString> artefacts;  // distinct, sorted
  std::uint64_t size = 0;
};

// Evaluates all 2^input_size inputs. Any evaluation error aborts, naming the
// offending input.
PossibilitySpace enumerate_space(const GeneratorSpec& g, const SpaceOptions& options = {});

enum class IdealityMethod { kExhaustive, kStructural };
const char* to_string(IdealityMethod method);

struct IdealityReport {
  bool fixed_input = true;
  bool total = true;
  bool injective = true;
  std::optional<std::pair<BitString, BitString>> counterexample;
  std::optional<BitString> fault_input;  // first input that failed to evaluate
  std::string fault_reason;
  IdealityMethod method = IdealityMethod::kExhaustive;
  std::uint64_t distinct_outputs = 0;  // exhaustive method only

  bool ideal() const noexcept { return fixed_input && total && injective; }
};

// Exhaustive when input_size fits the enumeration cap. Native families beyond
// the cap are judged by their construction (flower always injective, oatmeal
// iff its parts are distinct); anything else beyond the cap is refused.
IdealityReport check_ideal(const GeneratorSpec& g, const SpaceOptions& options = {});

// Plain PBM (P1): "P1", "<width> <height>", then one row of 0/1 per line.
std::string to_pbm(const BitString& pixels, std::size_t width, std::size_t height);

}  // namespace kgen::gen
