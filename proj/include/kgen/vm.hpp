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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgen/bitstring.hpp"

namespace kgen::vm {

inline constexpr std::size_t kOpcodeBits = 3;

// 3-bit opcodes, MSB first in program text.
enum class Opcode : std::uint8_t {
  kHalt = 0b000,
  kOut0 = 0b001,
  kOut1 = 0b010,
  kInOut = 0b011,
  kDup = 0b100,
  kRepLast = 0b101,
  kFlipLast = 0b110,
  kInDrop = 0b111,
};

const char* mnemonic(Opcode op);
std::optional<Opcode> parse_mnemonic(std::string_view text);

constexpr bool reads_input(Opcode op) {
  return op == Opcode::kInOut || op == Opcode::kInDrop;
}
constexpr bool reads_output(Opcode op) {
  return op == Opcode::kDup || op == Opcode::kRepLast || op == Opcode::kFlipLast;
}

class Program {
 public:
  Program() = default;

  // kInvalidLength unless |raw| is a multiple of 3.
  static Program decode(const BitString& raw);
  static Program from_opcodes(std::vector<Opcode> code);

  const BitString& raw() const noexcept { return raw_; }
  std::span<const Opcode> code() const noexcept { return code_; }
  std::size_t size() const noexcept { return code_.size(); }
  std::size_t bit_length() const noexcept { return raw_.size(); }

  // Space-separated mnemonics, e.g. "OUT0 DUP DUP".
  std::string to_assembly() const;

  friend bool operator==(const Program& a, const Program& b) { return a.raw_ == b.raw_; }

 private:
  BitString raw_;
  std::vector<Opcode> code_;
};

inline Program decode(const BitString& raw) { return Program::decode(raw); }

enum class Fault : std::uint8_t { kEmptyOutputOperand, kInputExhausted };
const char* to_string(Fault fault);

struct ExecutionOutcome {
  std::optional<Fault> fault;
  BitString output;             // empty on fault
  std::size_t bits_consumed = 0;

  bool ok() const noexcept { return !fault.has_value(); }
};

// Number of INOUT/INDROP instructions before the first HALT.
std::size_t input_arity(const Program& program);

// Reference interpreter: one instruction per step, implicit halt at the end.
ExecutionOutcome execute(const Program& program, const BitString& input);

// execute succeeds and consumes the whole input.
bool admissible(const Program& program, const BitString& input);

// What a run on an input of exactly input_arity bits does, independent of the
// input's value. Execution is branch-free, so operand faults and the output
// length never depend on input bits.
struct StaticProfile {
  std::optional<Fault> fault;      // only kEmptyOutputOperand can occur
  std::size_t arity = 0;
  std::size_t executed = 0;        // instructions run before HALT / end
  std::uint64_t output_length = 0; // saturates at UINT64_MAX
};

StaticProfile profile(const Program& program);

}  // namespace kgen::vm
