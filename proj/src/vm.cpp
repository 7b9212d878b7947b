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

#include "kgen/vm.hpp"

#include <array>
#include <limits>

#include "kgen/error.hpp"

namespace kgen::vm {
namespace {

constexpr std::array<const char*, 8> kMnemonics = {
    "HALT", "OUT0", "OUT1", "INOUT", "DUP", "REPLAST", "FLIPLAST", "INDROP"};

}  // namespace

const char* mnemonic(Opcode op) { return kMnemonics[static_cast<std::size_t>(op)]; }

std::optional<Opcode> parse_mnemonic(std::string_view text) {
  for (std::size_t i = 0; i < kMnemonics.size(); ++i) {
    if (text == kMnemonics[i]) return static_cast<Opcode>(i);
  }
  return std::nullopt;
}

const char* to_string(Fault fault) {
  switch (fault) {
    case Fault::kEmptyOutputOperand: return "empty-output-operand";
    case Fault::kInputExhausted: return "input-exhausted";
  }
  return "unknown";
}

Program Program::decode(const BitString& raw) {
  if (raw.size() % kOpcodeBits != 0) {
    throw Error(ErrorCode::kInvalidLength,
                "program length " + std::to_string(raw.size()) +
                    " is not a multiple of 3");
  }
  Program p;
  p.raw_ = raw;
  p.code_.reserve(raw.size() / kOpcodeBits);
  for (std::size_t i = 0; i < raw.size(); i += kOpcodeBits) {
    unsigned v = (unsigned{raw[i]} << 2) | (unsigned{raw[i + 1]} << 1) | unsigned{raw[i + 2]};
    p.code_.push_back(static_cast<Opcode>(v));
  }
  return p;
}

Program Program::from_opcodes(std::vector<Opcode> code) {
  Program p;
  p.raw_.reserve(code.size() * kOpcodeBits);
  for (Opcode op : code) {
    auto v = static_cast<unsigned>(op);
    p.raw_.push_back(v & 4u);
    p.raw_.push_back(v & 2u);
    p.raw_.push_back(v & 1u);
  }
  p.code_ = std::move(code);
  return p;
}

std::string Program::to_assembly() const {
  std::string out;
  for (Opcode op : code_) {
    if (!out.empty()) out += ' ';
    out += mnemonic(op);
  }
  return out;
}

std::size_t input_arity(const Program& program) {
  std::size_t n = 0;
  for (Opcode op : program.code()) {
    if (op == Opcode::kHalt) break;
    if (reads_input(op)) ++n;
  }
  return n;
}

ExecutionOutcome execute(const Program& program, const BitString& input) {
  ExecutionOutcome out;
  BitString& acc = out.output;
  std::size_t cursor = 0;
  auto fail = [&](Fault f) {
    out.fault = f;
    out.output = BitString();
    return out;
  };
  for (Opcode op : program.code()) {
    switch (op) {
      case Opcode::kHalt:
        out.bits_consumed = cursor;
        return out;
      case Opcode::kOut0:
        acc.push_back(false);
        break;
      case Opcode::kOut1:
        acc.push_back(true);
        break;
      case Opcode::kInOut:
        if (cursor >= input.size()) return fail(Fault::kInputExhausted);
        acc.push_back(input[cursor++]);
        break;
      case Opcode::kInDrop:
        if (cursor >= input.size()) return fail(Fault::kInputExhausted);
        ++cursor;
        break;
      case Opcode::kDup:
        if (acc.empty()) return fail(Fault::kEmptyOutputOperand);
        acc.append(acc);
        break;
      case Opcode::kRepLast:
        if (acc.empty()) return fail(Fault::kEmptyOutputOperand);
        acc.push_back(acc[acc.size() - 1]);
        break;
      case Opcode::kFlipLast:
        if (acc.empty()) return fail(Fault::kEmptyOutputOperand);
        acc.push_back(!acc[acc.size() - 1]);
        break;
    }
  }
  out.bits_consumed = cursor;
  return out;
}

bool admissible(const Program& program, const BitString& input) {
  ExecutionOutcome r = execute(program, input);
  return r.ok() && r.bits_consumed == input.size();
}

StaticProfile profile(const Program& program) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  StaticProfile p;
  for (Opcode op : program.code()) {
    if (op == Opcode::kHalt) break;
    ++p.executed;
    if (reads_output(op) && p.output_length == 0) {
      p.fault = Fault::kEmptyOutputOperand;
      return p;
    }
    switch (op) {
      case Opcode::kInOut:
        ++p.arity;
        [[fallthrough]];
      case Opcode::kOut0:
      case Opcode::kOut1:
      case Opcode::kRepLast:
      case Opcode::kFlipLast:
        if (p.output_length != kMax) ++p.output_length;
        break;
      case Opcode::kInDrop:
        ++p.arity;
        break;
      case Opcode::kDup:
        p.output_length = p.output_length > kMax / 2 ? kMax : 2 * p.output_length;
        break;
      case Opcode::kHalt:
        break;
    }
  }
  return p;
}

}  // namespace kgen::vm
