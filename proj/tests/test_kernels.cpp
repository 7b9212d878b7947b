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

#include <random>
#include <vector>

#include "doctest.h"
#include "kgen/batch.hpp"
#include "kgen/error.hpp"
#include "kgen/kernels.hpp"
#include "kgen/vm.hpp"

using kgen::BitString;
namespace kk = kgen::kernels;

TEST_CASE("scalar set is always available and listed first") {
  auto sets = kk::available_kernels();
  REQUIRE_FALSE(sets.empty());
  CHECK(sets.front()->name == "scalar");
  CHECK(kk::active_kernels().name.size() > 0);
}

TEST_CASE("popcount agrees across kernel sets") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 31u, 64u, 100u}) {
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = rng();
    std::size_t expected = 0;
    for (auto x : w) {
      for (int b = 0; b < 64; ++b) expected += (x >> b) & 1;
    }
    for (const auto* k : kk::available_kernels()) {
      CHECK_MESSAGE(k->popcount(w) == expected, k->name);
    }
  }
}

TEST_CASE("transpose64 matches the naive transpose") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint64_t rows[64];
    for (auto& r : rows) r = rng();
    std::uint64_t expected[64] = {};
    for (int r = 0; r < 64; ++r) {
      for (int c = 0; c < 64; ++c) {
        if ((rows[r] >> (63 - c)) & 1) expected[c] |= std::uint64_t{1} << (63 - r);
      }
    }
    for (const auto* k : kk::available_kernels()) {
      std::uint64_t copy[64];
      std::copy(std::begin(rows), std::end(rows), copy);
      k->transpose64(copy);
      for (int i = 0; i < 64; ++i) REQUIRE_MESSAGE(copy[i] == expected[i], k->name);
    }
  }
}

TEST_CASE("sliced execution agrees across kernel sets") {
  std::mt19937_64 rng(13);
  const auto& ref = kk::scalar_kernels();
  int checked = 0;
  while (checked < 300) {
    std::size_t len = 1 + rng() % 6;
    std::vector<kgen::vm::Opcode> code;
    for (std::size_t i = 0; i < len; ++i) code.push_back(static_cast<kgen::vm::Opcode>(rng() % 8));
    auto prog = kgen::vm::Program::from_opcodes(code);
    auto prof = kgen::vm::profile(prog);
    if (prof.fault || prof.output_length > 64) continue;
    ++checked;
    for (std::size_t words : {std::size_t{4}, std::size_t{16}}) {
      std::vector<std::uint64_t> in(prof.arity * words);
      for (auto& x : in) x = rng();
      std::vector<std::uint64_t> expected;
      ref.execute_sliced(prog.code(), in, words, expected);
      for (const auto* k : kk::available_kernels()) {
        if (words % k->lane_words != 0) continue;
        std::vector<std::uint64_t> got;
        k->execute_sliced(prog.code(), in, words, got);
        REQUIRE_MESSAGE(got == expected, k->name, " on ", prog.to_assembly());
      }
    }
  }
}

TEST_CASE("batched outputs equal per-input execution") {
  for (std::size_t j = 1; j <= 4; ++j) {
    for (const BitString& raw : kgen::enumerate(3 * j)) {
      auto p = kgen::vm::decode(raw);
      auto prof = kgen::vm::profile(p);
      if (prof.fault) continue;
      std::uint64_t n = std::uint64_t{1} << prof.arity;
      for (const auto* k : kk::available_kernels()) {
        auto outs = kgen::vm::execute_range(p, 0, n, *k);
        REQUIRE(outs.size() == n);
        for (std::uint64_t v = 0; v < n; ++v) {
          auto r = kgen::vm::execute(p, kgen::from_unsigned(v, prof.arity));
          REQUIRE_MESSAGE(outs[v] == r.output, k->name, " ", p.to_assembly());
        }
      }
    }
  }
}

TEST_CASE("batched execution over an unaligned window of a wide program") {
  using kgen::vm::Opcode;
  std::vector<Opcode> code;
  for (int i = 0; i < 12; ++i) code.push_back(Opcode::kInOut);
  code.push_back(Opcode::kFlipLast);
  code.push_back(Opcode::kDup);
  auto p = kgen::vm::Program::from_opcodes(code);
  std::size_t arity = kgen::vm::input_arity(p);
  const std::uint64_t first = 37;
  const std::uint64_t count = 2500;
  for (const auto* k : kk::available_kernels()) {
    std::uint64_t expect_value = first;
    kgen::vm::for_each_output(
        p, first, count,
        [&](std::uint64_t v, const BitString& out) {
          REQUIRE(v == expect_value++);
          REQUIRE(out == kgen::vm::execute(p, kgen::from_unsigned(v, arity)).output);
        },
        *k);
    CHECK(expect_value == first + count);
  }
}

TEST_CASE("batched execution refuses faulting programs") {
  auto p = kgen::vm::Program::from_opcodes({kgen::vm::Opcode::kDup});
  CHECK_THROWS_AS(kgen::vm::execute_range(p, 0, 1), kgen::Error);
}
