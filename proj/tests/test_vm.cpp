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

#include <string>

#include "doctest.h"
#include "kgen/error.hpp"
#include "kgen/vm.hpp"
#include "oracle/naive.hpp"

using kgen::BitString;
using kgen::vm::Fault;
using kgen::vm::Opcode;
using kgen::vm::Program;

namespace {

BitString B(const std::string& s) { return BitString::parse(s); }
Program P(std::vector<Opcode> code) { return Program::from_opcodes(std::move(code)); }

}  // namespace

TEST_CASE("decode") {
  auto p = kgen::vm::decode(B("001100"));
  CHECK(p.size() == 2);
  CHECK(p.code()[0] == Opcode::kOut0);
  CHECK(p.code()[1] == Opcode::kDup);
  CHECK(kgen::vm::decode(B("")).size() == 0);
  try {
    kgen::vm::decode(B("0011"));
    FAIL("expected invalid length");
  } catch (const kgen::Error& e) {
    CHECK(e.code() == kgen::ErrorCode::kInvalidLength);
  }
}

TEST_CASE("opcode table is a bijection") {
  for (unsigned v = 0; v < 8; ++v) {
    auto p = kgen::vm::decode(kgen::from_unsigned(v, 3));
    CHECK(static_cast<unsigned>(p.code()[0]) == v);
    auto op = kgen::vm::parse_mnemonic(kgen::vm::mnemonic(p.code()[0]));
    REQUIRE(op.has_value());
    CHECK(*op == p.code()[0]);
    CHECK(P({*op}).raw() == kgen::from_unsigned(v, 3));
  }
  CHECK(kgen::vm::decode(B("001100100")).to_assembly() == "OUT0 DUP DUP");
}

TEST_CASE("input arity") {
  CHECK(kgen::vm::input_arity(P({Opcode::kInOut, Opcode::kInOut})) == 2);
  CHECK(kgen::vm::input_arity(P({Opcode::kInOut, Opcode::kHalt, Opcode::kInOut})) == 1);
  CHECK(kgen::vm::input_arity(P({Opcode::kOut0, Opcode::kDup})) == 0);
}

TEST_CASE("execute") {
  auto r = kgen::vm::execute(P({Opcode::kOut1, Opcode::kFlipLast, Opcode::kFlipLast}), B(""));
  CHECK(r.ok());
  CHECK(r.output == B("101"));
  CHECK(r.bits_consumed == 0);
  r = kgen::vm::execute(P({Opcode::kOut0, Opcode::kDup, Opcode::kDup}), B(""));
  CHECK(r.output == B("0000"));
  r = kgen::vm::execute(P({Opcode::kDup}), B(""));
  CHECK(r.fault == Fault::kEmptyOutputOperand);
  r = kgen::vm::execute(P({Opcode::kInOut}), B(""));
  CHECK(r.fault == Fault::kInputExhausted);
}

TEST_CASE("admissible") {
  CHECK(kgen::vm::admissible(P({Opcode::kInOut}), B("0")));
  CHECK_FALSE(kgen::vm::admissible(P({Opcode::kOut0}), B("1")));
  CHECK(kgen::vm::admissible(P({}), B("")));
}

TEST_CASE("execute agrees with the oracle interpreter") {
  for (std::size_t j = 0; j <= 4; ++j) {
    for (const BitString& raw : kgen::enumerate(3 * j)) {
      Program p = kgen::vm::decode(raw);
      auto prof = kgen::vm::profile(p);
      for (std::size_t n = 0; n <= 4; ++n) {
        for (const BitString& in : kgen::enumerate(n)) {
          auto mine = kgen::vm::execute(p, in);
          auto theirs = oracle::run(raw.to_string(), in.to_string());
          REQUIRE(mine.ok() == theirs.has_value());
          if (!theirs) continue;
          REQUIRE(mine.output.to_string() == theirs->output);
          REQUIRE(mine.bits_consumed == theirs->consumed);
          REQUIRE(kgen::vm::admissible(p, in) == (theirs->consumed == n));
          if (n == prof.arity) {
            REQUIRE_FALSE(prof.fault.has_value());
            REQUIRE(mine.output.size() == prof.output_length);
          }
        }
      }
    }
  }
}

TEST_CASE("faults and output length do not depend on input bits") {
  for (std::size_t j = 0; j <= 4; ++j) {
    for (const BitString& raw : kgen::enumerate(3 * j)) {
      Program p = kgen::vm::decode(raw);
      std::size_t a = kgen::vm::input_arity(p);
      std::optional<kgen::vm::ExecutionOutcome> first;
      for (const BitString& in : kgen::enumerate(a)) {
        auto r = kgen::vm::execute(p, in);
        if (!first) first = r;
        REQUIRE(r.fault == first->fault);
        REQUIRE(r.output.size() == first->output.size());
      }
    }
  }
}

TEST_CASE("profile saturates instead of overflowing") {
  std::vector<Opcode> code{Opcode::kOut0};
  for (int i = 0; i < 80; ++i) code.push_back(Opcode::kDup);
  auto prof = kgen::vm::profile(P(code));
  CHECK(prof.output_length == ~std::uint64_t{0});
}
