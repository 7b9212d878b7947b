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

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "kgen/analysis.hpp"
#include "kgen/complexity.hpp"
#include "kgen/error.hpp"

using kgen::BitString;
using kgen::gen::GeneratorSpec;
using kgen::vm::Opcode;
namespace ka = kgen::analysis;

namespace {

BitString B(const std::string& s) { return BitString::parse(s); }
GeneratorSpec vm(std::vector<Opcode> code) {
  return GeneratorSpec::from_program(kgen::vm::Program::from_opcodes(std::move(code)));
}

ka::BoundsReport exact(const GeneratorSpec& g) {
  std::size_t cap = kgen::gen::code_length(g).bits + g.input_size();
  return ka::verify_bounds(g, ka::ExactMethod{cap});
}

}  // namespace

TEST_CASE("bounds for single-copy programs") {
  auto r = exact(vm({Opcode::kInOut}));
  CHECK(r.code_length == 3);
  CHECK(r.space_size == 2u);
  CHECK(r.log2_space == 1.0);
  CHECK(r.k_star == 3);
  CHECK(r.upper_bound == 4);
  CHECK(r.upper_holds == true);
  CHECK(r.lower_holds == true);

  r = exact(vm({Opcode::kInOut, Opcode::kInOut}));
  CHECK(r.code_length == 6);
  CHECK(r.space_size == 4u);
  CHECK(r.k_star == 6);
  CHECK(r.upper_bound == 8);
  CHECK(r.upper_holds == true);
  CHECK(r.lower_holds == true);

  r = exact(vm({Opcode::kOut0}));
  CHECK(r.space_size == 1u);
  CHECK(r.log2_space == 0.0);
  CHECK(r.k_star == 3);
  CHECK(r.upper_bound == 3);
  CHECK(r.k_star_kind == ka::KStarKind::kExact);
  CHECK_FALSE(r.direction_only());
}

TEST_CASE("non-ideal generators are refused with their report") {
  try {
    exact(vm({Opcode::kInOut, Opcode::kInDrop}));
    FAIL("expected refusal");
  } catch (const ka::NotIdealError& e) {
    CHECK(e.code() == kgen::ErrorCode::kNotIdeal);
    CHECK_FALSE(e.report().injective);
  }
  CHECK_THROWS_AS(exact(vm({Opcode::kDup})), ka::NotIdealError);
}

TEST_CASE("exact method needs a cap covering code plus input") {
  try {
    ka::verify_bounds(vm({Opcode::kInOut, Opcode::kInOut}), ka::ExactMethod{7});
    FAIL("expected refusal");
  } catch (const kgen::Error& e) {
    CHECK(e.code() == kgen::ErrorCode::kCapExceeded);
    CHECK(std::string(e.what()).find(">= 8") != std::string::npos);
  }
}

TEST_CASE("certified lower bounds") {
  auto b = ka::certified_lower_bound(4, 6);
  CHECK(b.value == 6);
  CHECK_FALSE(b.exceeds_cap);
  CHECK(ka::certified_lower_bound(1, 6).value == 0);
  b = ka::certified_lower_bound(std::uint64_t{1} << 20, 12);
  CHECK(b.exceeds_cap);
  CHECK(b.value == 13);
  // The pair basis counts more, so its floor is never higher.
  for (std::uint64_t n : {1u, 2u, 3u, 4u, 7u, 16u, 100u}) {
    CHECK(ka::certified_lower_bound(n, 12, ka::CountBasis::kPairs).value <=
          ka::certified_lower_bound(n, 12, ka::CountBasis::kArtefacts).value);
  }
}

TEST_CASE("certified floor never exceeds exact k_star") {
  std::mt19937_64 rng(41);
  int checked = 0;
  while (checked < 80) {
    std::size_t len = 1 + rng() % 4;
    std::vector<Opcode> code;
    for (std::size_t i = 0; i < len; ++i) code.push_back(static_cast<Opcode>(rng() % 8));
    auto g = vm(code);
    if (!kgen::gen::check_ideal(g).ideal()) continue;
    auto r = exact(g);
    REQUIRE(r.certified_lower.value <= r.k_star);
    REQUIRE(r.upper_holds == true);
    REQUIRE(r.lower_holds == true);
    ++checked;
  }
}

TEST_CASE("estimate path is direction-only") {
  auto cm = kgen::complexity::make_compressor("cm");
  ka::EstimateMethod est;
  est.compressor = cm.get();
  est.samples = 200;
  est.seed = 5;
  auto r = ka::verify_bounds(GeneratorSpec::flower(12), est);
  CHECK(r.k_star_kind == ka::KStarKind::kEstimate);
  CHECK(r.direction_only());
  CHECK_FALSE(r.upper_holds.has_value());
  CHECK_FALSE(r.lower_holds.has_value());
  CHECK(r.log2_space == 36.0);
  CHECK(r.estimate_samples == 200);
  CHECK(r.compressor == "cm");
  CHECK(r.ideality_method == kgen::gen::IdealityMethod::kStructural);
  auto again = ka::verify_bounds(GeneratorSpec::flower(12), est);
  CHECK(again.k_star == r.k_star);
}

TEST_CASE("input sampler is seeded and width exact") {
  ka::InputSampler a(9);
  ka::InputSampler b(9);
  for (std::size_t n : {0u, 1u, 9u, 36u, 64u, 65u, 200u}) {
    BitString x = a.next(n);
    CHECK(x.size() == n);
    CHECK(x == b.next(n));
  }
}

TEST_CASE("density and runs") {
  CHECK(ka::density(B("")) == 0.0);
  CHECK(ka::density(B("0110")) == 0.5);
  CHECK(ka::longest_run_fraction(B("")) == 0.0);
  CHECK(ka::longest_run_fraction(B("0111")) == 0.75);
  CHECK(ka::longest_run_fraction(B("0101")) == 0.25);
  for (const auto* k : kgen::kernels::available_kernels()) {
    CHECK(ka::density(BitString::ones(300), *k) == 1.0);
  }
  CHECK(ka::bin_of(1.0, 10) == 9);
  CHECK(ka::bin_of(0.0, 10) == 0);
  CHECK(ka::bin_of(0.55, 10) == 5);
}

TEST_CASE("era histogram") {
  auto h = ka::era_histogram(GeneratorSpec::flower(6), 1000, 0, 10);
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  CHECK(total == 1000);
  std::uint64_t middle = 0;
  for (std::size_t x = 3; x <= 6; ++x) {
    for (std::size_t y = 0; y < 10; ++y) middle += h.at(x, y);
  }
  CHECK(middle > 800);
  // Regression fixture for seed 0: per-bin totals along each axis.
  std::vector<std::uint64_t> by_density(10);
  std::vector<std::uint64_t> by_run(10);
  for (std::size_t x = 0; x < 10; ++x) {
    for (std::size_t y = 0; y < 10; ++y) {
      by_density[x] += h.at(x, y);
      by_run[y] += h.at(x, y);
    }
  }
  CHECK(by_density == std::vector<std::uint64_t>{3, 20, 74, 129, 270, 228, 180, 76, 19, 1});
  CHECK(by_run == std::vector<std::uint64_t>{44, 618, 78, 195, 28, 0, 19, 14, 0, 4});
  auto again = ka::era_histogram(GeneratorSpec::flower(6), 1000, 0, 10);
  CHECK(again.counts == h.counts);
  CHECK(ka::to_csv(h) == ka::to_csv(again));
  auto j = ka::to_json(h);
  CHECK(j["counts"].size() == 10);
  CHECK_THROWS_AS(ka::era_histogram(GeneratorSpec::flower(6), 10, 0, 1), kgen::Error);
}

TEST_CASE("comparisons") {
  auto cm = kgen::complexity::make_compressor("cm");
  ka::EstimateMethod est{cm.get(), 300, 1, 20};
  auto f6 = ka::verify_bounds(GeneratorSpec::flower(6), est);
  auto f12 = ka::verify_bounds(GeneratorSpec::flower(12), est);
  auto c = ka::compare(f12, f6);
  CHECK(c.movement == ka::Movement::kScaleChange);
  CHECK(c.delta_code_length == 0);
  CHECK(c.delta_log2_space == -27.0);
  CHECK(c.delta_k_star < 0);

  std::vector<BitString> parts{B("0011"), B("1100")};
  auto o2 = ka::verify_bounds(GeneratorSpec::oatmeal(parts, 4), est);
  auto o4 = ka::verify_bounds(GeneratorSpec::oatmeal(parts, 8), est);
  c = ka::compare(o2, o4);
  CHECK(c.movement == ka::Movement::kOatmealChange);
  CHECK(o4.log2_space == 2 * o2.log2_space);

  c = ka::compare(f6, f6);
  CHECK(c.movement == ka::Movement::kUnchanged);
  CHECK(c.delta_code_length == 0);
  CHECK(c.delta_log2_space == 0.0);
  CHECK(c.delta_k_star == 0);

  auto a = exact(vm({Opcode::kInOut, Opcode::kInOut}));
  auto b = exact(vm({Opcode::kInOut, Opcode::kOut1, Opcode::kInOut}));
  c = ka::compare(a, b);
  CHECK(c.movement == ka::Movement::kKnowledgeChange);
  CHECK_FALSE(ka::compare(a, f6).k_star_comparable);
}

TEST_CASE("bounds plane csv") {
  auto r = exact(vm({Opcode::kInOut, Opcode::kInOut}));
  std::string csv = ka::bounds_plane_csv(std::span(&r, 1));
  std::istringstream in(csv);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "label,log2_space,code_length,k_star,k_star_kind,upper_bound,certified_lower");
  CHECK(row == "vm:011011,2,6,6,exact,8,6");
  CHECK(std::count(row.begin(), row.end(), ',') == 6);
  r.label = "a,b";
  csv = ka::bounds_plane_csv(std::span(&r, 1));
  CHECK(csv.find("\"a,b\",") != std::string::npos);
}

TEST_CASE("report json mirrors the fields") {
  auto j = ka::to_json(exact(vm({Opcode::kInOut})));
  CHECK(j["k_star"] == 3);
  CHECK(j["upper_holds"] == true);
  CHECK(j["lower_holds"] == true);
  CHECK(j["k_star_kind"] == "exact");
  CHECK(j["code_length_kind"] == "program");
}
