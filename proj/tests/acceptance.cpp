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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kgen/analysis.hpp"
#include "kgen/complexity.hpp"
#include "kgen/compress.hpp"
#include "kgen/error.hpp"
#include "kgen/generators.hpp"
#include "kgen/transform.hpp"
#include "oracle/naive.hpp"

using kgen::BitString;
using kgen::gen::GeneratorSpec;
using kgen::vm::Opcode;
namespace ka = kgen::analysis;
namespace kc = kgen::complexity;

namespace {

constexpr std::size_t kOracleCap = 12;
constexpr double kOracleSeconds = 10.0;
constexpr double kTheoremSeconds = 60.0;
constexpr std::size_t kCorpusSize = 500;
constexpr std::size_t kMaxInstructions = 4;
constexpr std::size_t kRawCorpusSize = 200;
constexpr std::size_t kRawMaxArity = 3;
constexpr std::size_t kRawMaxM = 4;
constexpr std::size_t kEncMaxM = 8;
constexpr std::uint64_t kFlowerSamples = 1000;
constexpr std::size_t kNcdPairs = 200;
constexpr double kNcdTolerance = 0.05;
constexpr std::size_t kZerosMaxK = 4;
constexpr std::size_t kCliTableCap = 14;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

kgen::vm::Program random_program(std::mt19937_64& rng, std::size_t max_len) {
  std::size_t len = 1 + rng() % max_len;
  std::vector<Opcode> code;
  for (std::size_t i = 0; i < len; ++i) code.push_back(static_cast<Opcode>(rng() % 8));
  return kgen::vm::Program::from_opcodes(std::move(code));
}

// Distinct ideal vm generators with at most kMaxInstructions instructions.
std::vector<GeneratorSpec> theorem_corpus() {
  std::mt19937_64 rng(20260101);
  std::set<BitString> seen;
  std::vector<GeneratorSpec> corpus;
  for (int attempt = 0; attempt < 200000 && corpus.size() < kCorpusSize; ++attempt) {
    auto p = random_program(rng, kMaxInstructions);
    if (!seen.insert(p.raw()).second) continue;
    auto g = GeneratorSpec::from_program(p);
    if (kgen::gen::check_ideal(g).ideal()) corpus.push_back(std::move(g));
  }
  return corpus;
}

Outcome oracle_equivalence() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  auto table = kc::build_table(kOracleCap);
  double elapsed = seconds_since(start);
  auto naive = oracle::shortest_descriptions(kOracleCap);
  if (table.size() != naive.size()) {
    o.fail("artefact counts differ: " + std::to_string(table.size()) + " vs " +
           std::to_string(naive.size()));
  }
  for (const auto& [text, w] : naive) {
    const auto* d = table.find(BitString::parse(text));
    if (d == nullptr) {
      o.fail("missing artefact '" + text + "'");
      continue;
    }
    if (d->k != w.k || d->program().to_string() != w.program || d->input().to_string() != w.input) {
      o.fail("witness mismatch on '" + text + "'");
    }
  }
  if (elapsed >= kOracleSeconds) o.fail("build took " + fixed(elapsed) + " s");
  if (o.pass) {
    o.detail = std::to_string(table.size()) + " artefacts identical, build " + fixed(elapsed) + " s";
  }
  return o;
}

struct TheoremRun {
  std::vector<ka::BoundsReport> reports;
  std::vector<std::uint64_t> expected_sizes;
  std::string error;
  double seconds = 0.0;
};

TheoremRun run_theorem_corpus() {
  TheoremRun run;
  auto start = std::chrono::steady_clock::now();
  try {
    for (const GeneratorSpec& g : theorem_corpus()) {
      std::size_t cap = kgen::gen::code_length(g).bits + g.input_size();
      run.reports.push_back(ka::verify_bounds(g, ka::ExactMethod{cap}));
      run.expected_sizes.push_back(std::uint64_t{1} << g.input_size());
    }
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  run.seconds = seconds_since(start);
  return run;
}

Outcome upper_bound(const TheoremRun& run) {
  Outcome o;
  if (!run.error.empty()) o.fail("verify_bounds threw: " + run.error);
  if (run.reports.size() < kCorpusSize) {
    o.fail("corpus has only " + std::to_string(run.reports.size()) + " generators");
  }
  std::size_t holds = 0;
  for (const auto& r : run.reports) {
    if (r.upper_holds == true) {
      ++holds;
    } else {
      o.fail("upper bound fails for " + r.label);
    }
  }
  if (run.seconds >= kTheoremSeconds) o.fail("corpus took " + fixed(run.seconds) + " s");
  if (o.pass) {
    o.detail = std::to_string(holds) + "/" + std::to_string(run.reports.size()) +
               " generators, " + fixed(run.seconds) + " s";
  }
  return o;
}

Outcome lower_bound(const TheoremRun& run) {
  Outcome o;
  if (!run.error.empty()) o.fail("verify_bounds threw: " + run.error);
  if (run.reports.size() < kCorpusSize) o.fail("corpus too small");
  std::size_t tight = 0;
  for (const auto& r : run.reports) {
    if (r.lower_holds != true) o.fail("lower bound fails for " + r.label);
    if (r.certified_lower.exceeds_cap || r.certified_lower.value > r.k_star) {
      o.fail("certified floor above k_star for " + r.label);
    }
    if (r.certified_lower.value == r.k_star) ++tight;
  }
  if (o.pass) {
    o.detail = std::to_string(run.reports.size()) + " generators, certified floor tight on " +
               std::to_string(tight);
  }
  return o;
}

Outcome space_sizes(const TheoremRun& run) {
  Outcome o;
  if (!run.error.empty()) o.fail("verify_bounds threw: " + run.error);
  if (run.reports.size() < kCorpusSize) o.fail("corpus too small");
  for (std::size_t i = 0; i < run.reports.size(); ++i) {
    if (run.reports[i].space_size != run.expected_sizes[i]) {
      o.fail("space size mismatch for " + run.reports[i].label);
    }
  }
  if (o.pass) o.detail = std::to_string(run.reports.size()) + " spaces of exactly 2^input_size";
  return o;
}

Outcome idealization() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::size_t done = 0;
  try {
    for (int attempt = 0; attempt < 100000 && done < kRawCorpusSize; ++attempt) {
      auto p = random_program(rng, kMaxInstructions);
      if (kgen::vm::input_arity(p) > kRawMaxArity) continue;
      std::size_t m = rng() % (kRawMaxM + 1);
      auto runnable = kgen::transform::runnable_inputs(p, m);
      if (runnable.empty()) continue;
      std::vector<BitString> domain;
      for (const auto& i : runnable) {
        if (rng() % 2 == 0) domain.push_back(i);
      }
      if (domain.empty()) domain.push_back(runnable[rng() % runnable.size()]);
      auto raw = kgen::transform::raw_from_program(p, domain);
      auto r = kgen::gen::check_ideal(kgen::transform::idealize(raw));
      if (!r.ideal()) o.fail("idealized " + p.to_assembly() + " is not ideal");
      ++done;
    }
  } catch (const std::exception& e) {
    o.fail(std::string("threw: ") + e.what());
  }
  if (done < kRawCorpusSize) o.fail("only " + std::to_string(done) + " raw generators");
  std::size_t roundtrips = 0;
  for (std::size_t m = 0; m <= kEncMaxM; ++m) {
    for (std::size_t len = 0; len <= m; ++len) {
      for (const BitString& i : kgen::enumerate(len)) {
        if (kgen::transform::dec_total(kgen::transform::enc(i, m), m) != i) {
          o.fail("enc/dec mismatch at m=" + std::to_string(m));
        }
        ++roundtrips;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(done) + " idealized generators ideal, " +
               std::to_string(roundtrips) + " enc/dec round trips";
  }
  return o;
}

std::size_t max_sampled_estimate(const GeneratorSpec& g, const kc::Compressor& c,
                                 std::uint64_t seed) {
  ka::InputSampler sampler(seed);
  std::size_t best = 0;
  for (std::uint64_t s = 0; s < kFlowerSamples; ++s) {
    BitString a = kgen::gen::evaluate(g, sampler.next(g.input_size()));
    best = std::max(best, kc::k_upper_estimate(a, c).bits);
  }
  return best;
}

Outcome flower_direction() {
  Outcome o;
  auto small = GeneratorSpec::flower(6);
  auto large = GeneratorSpec::flower(12);
  auto cs = kgen::gen::code_length(small).bits;
  auto cl = kgen::gen::code_length(large).bits;
  if (cs != cl) o.fail("code lengths differ");
  if (small.input_size() != 9 || large.input_size() != 36) o.fail("log2 spaces are not 9 and 36");
  auto cm = kc::make_compressor("cm");
  std::size_t es = max_sampled_estimate(small, *cm, 6);
  std::size_t el = max_sampled_estimate(large, *cm, 12);
  if (!(es < el)) o.fail("estimates " + std::to_string(es) + " vs " + std::to_string(el));
  if (o.pass) {
    o.detail = "code " + std::to_string(cs) + "=" + std::to_string(cl) +
               ", log2 9 vs 36, max estimate " + std::to_string(es) + " < " + std::to_string(el);
  }
  return o;
}

double mean_ncd(const GeneratorSpec& g, const kc::Compressor& c, std::uint64_t seed) {
  ka::InputSampler sampler(seed);
  double sum = 0.0;
  for (std::size_t i = 0; i < kNcdPairs; ++i) {
    BitString a = kgen::gen::evaluate(g, sampler.next(g.input_size()));
    BitString b = kgen::gen::evaluate(g, sampler.next(g.input_size()));
    sum += kc::ncd(a, b, c);
  }
  return sum / static_cast<double>(kNcdPairs);
}

Outcome oatmeal_direction() {
  Outcome o;
  std::vector<BitString> parts;
  for (const char* p : {"00110101", "11001010", "10010110", "01101001"}) {
    parts.push_back(BitString::parse(p));
  }
  const std::size_t slots = 8;
  auto base = GeneratorSpec::oatmeal(parts, slots);
  auto doubled = GeneratorSpec::oatmeal(parts, 2 * slots);
  if (doubled.input_size() != 2 * base.input_size()) o.fail("log2 space did not double");
  if (kgen::gen::code_length(base).bits != kgen::gen::code_length(doubled).bits) {
    o.fail("code length changed");
  }
  auto cm = kc::make_compressor("cm");
  double before = mean_ncd(base, *cm, 1);
  double after = mean_ncd(doubled, *cm, 2);
  if (after - before > kNcdTolerance) {
    o.fail("mean NCD rose from " + fixed(before) + " to " + fixed(after));
  }
  if (o.pass) {
    o.detail = "log2 " + std::to_string(base.input_size()) + " -> " +
               std::to_string(doubled.input_size()) + ", mean NCD " + fixed(before) + " -> " +
               fixed(after) + " (limit +" + fixed(kNcdTolerance, 2) + ")";
  }
  return o;
}

Outcome zeros_compressibility() {
  Outcome o;
  auto table = kc::build_table(3 * (kZerosMaxK + 1));
  std::string ks;
  for (std::size_t k = 0; k <= kZerosMaxK; ++k) {
    BitString z = BitString::zeros(std::size_t{1} << k);
    const auto* d = table.find(z);
    if (d == nullptr || d->k > 3 * (k + 1)) {
      o.fail("K(2^" + std::to_string(k) + " zeros) above " + std::to_string(3 * (k + 1)));
      continue;
    }
    auto p = kgen::vm::decode(d->program());
    if (kgen::vm::execute(p, d->input()).output != z) o.fail("witness does not reproduce zeros");
    ks += (ks.empty() ? "" : ",") + std::to_string(d->k);
  }
  auto cm = kc::make_compressor("cm");
  std::size_t est = kc::k_upper_estimate(BitString::zeros(1024), *cm).bits;
  if (est >= 1024) o.fail("estimate of 1024 zeros is " + std::to_string(est));
  if (o.pass) o.detail = "K = " + ks + "; estimate of 1024 zeros " + std::to_string(est);
  return o;
}

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  std::string cmd = std::string(KGEN_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_determinism() {
  Outcome o;
  const std::vector<std::string> commands = {
      "vm run --program 001100100",
      "vm decode --program 011101110 --format json",
      "k exact --artifact 0110 --cap 15",
      "k estimate --artifact 00000000111111110000000011111111 --compressor cm",
      "k estimate --artifact 00000000111111110000000011111111 --compressor deflate",
      "gen analyze --gen oatmeal:0011,1100@3",
      "gen flower --size 8 --seed 1011001110001111",
      "gen oatmeal --parts 00,11,01,10 --slots 3 --seed 011011",
      "transform idealize --program 011111 --max-input 3",
      "analyze bounds --program 011011 --cap 10",
      "analyze bounds --gen flower:12 --samples 300 --seed 3",
      "analyze era --gen flower:8 --samples 500 --seed 4 --format csv",
      "analyze compare --from oatmeal:0011,1100@4 --to oatmeal:0011,1100@8 --samples 200",
      "analyze plane --gen vm:011011 --gen vm:001100100 --gen flower:6 --samples 200",
  };
  for (const std::string& c : commands) {
    for (const char* threads : {"--threads 1", "--threads 4"}) {
      CliRun a = cli(c + " " + threads);
      CliRun b = cli(c + " " + threads);
      if (a.status != 0 || b.status != 0) o.fail("'" + c + "' exited " + std::to_string(a.status));
      if (a.out != b.out || a.out.empty()) o.fail("'" + c + "' output differs between runs");
    }
  }
  std::string cap = "k table --cap " + std::to_string(kCliTableCap);
  CliRun one = cli(cap + " --threads 1");
  CliRun eight = cli(cap + " --threads 8");
  if (one.status != 0 || eight.status != 0) o.fail("k table exited nonzero");
  if (one.out != eight.out || one.out.empty()) o.fail("k table differs between 1 and 8 threads");
  if (o.pass) {
    o.detail = std::to_string(commands.size() * 2 + 1) + " command pairs byte-identical";
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  TheoremRun theorem;
  bool theorem_ready = false;
  auto corpus = [&]() -> const TheoremRun& {
    if (!theorem_ready) {
      theorem = run_theorem_corpus();
      theorem_ready = true;
    }
    return theorem;
  };
  const std::vector<Criterion> criteria = {
      {"oracle equivalence of the cap-12 table", oracle_equivalence},
      {"upper bound on the random ideal corpus", [&] { return upper_bound(corpus()); }},
      {"lower bound and certified floor", [&] { return lower_bound(corpus()); }},
      {"ideal space size is 2^input_size", [&] { return space_sizes(corpus()); }},
      {"idealization and enc/dec round trip", idealization},
      {"flower scale direction", flower_direction},
      {"oatmeal slot doubling", oatmeal_direction},
      {"zeros are compressible", zeros_compressibility},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << "AC" << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].name
              << ": " << o.detail << "\n";
  }
  std::cout << (failures == 0 ? "all acceptance criteria pass" : "acceptance FAILED") << "\n";
  return failures == 0 ? 0 : 1;
}
