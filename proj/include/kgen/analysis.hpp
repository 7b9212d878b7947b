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
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "kgen/compress.hpp"
#include "kgen/error.hpp"
#include "kgen/generators.hpp"
#include "kgen/kernels.hpp"

// Checks of |G| + log2 #pi(G) >= K*(G) >= log2 #pi(G), pigeonhole floors on
// K*, expressive-range histograms and bounds-plane data.
namespace kgen::analysis {

enum class KStarKind { kExact, kEstimate };
const char* to_string(KStarKind kind);

struct CertifiedBound {
  std::size_t value = 0;
  bool exceeds_cap = false;  // K* > cap is certified; value = cap + 1
  std::size_t cap = 0;
};

struct BoundsReport {
  std::string label;
  std::size_t code_length = 0;
  gen::CodeLengthKind code_length_kind = gen::CodeLengthKind::kProgram;
  std::size_t input_size = 0;
  std::optional<std::uint64_t> space_size;  // empty when >= 2^64
  double log2_space = 0.0;
  std::size_t k_star = 0;
  KStarKind k_star_kind = KStarKind::kExact;
  std::string compressor;          // estimate path only
  std::size_t estimate_overhead = 0;
  std::uint64_t estimate_samples = 0;
  std::size_t upper_bound = 0;     // code_length + log2_space
  CertifiedBound certified_lower;
  // Set on the exact path; the estimate path is direction-only.
  std::optional<bool> upper_holds;
  std::optional<bool> lower_holds;
  gen::IdealityMethod ideality_method = gen::IdealityMethod::kExhaustive;

  bool direction_only() const noexcept { return k_star_kind == KStarKind::kEstimate; }
};

nlohmann::ordered_json to_json(const BoundsReport& report);

// Thrown by verify_bounds for a generator that is not ideal.
class NotIdealError : public Error {
 public:
  explicit NotIdealError(gen::IdealityReport report);
  const gen::IdealityReport& report() const noexcept { return report_; }

 private:
  gen::IdealityReport report_;
};

nlohmann::ordered_json to_json(const gen::IdealityReport& report);

struct ExactMethod {
  std::size_t cap = 0;
};

struct EstimateMethod {
  const complexity::Compressor* compressor = nullptr;
  // Spaces larger than this are sampled (with replacement) instead of
  // enumerated.
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  // Cap for the pair-count pigeonhole floor reported alongside.
  std::size_t certify_cap = 20;
};

using Method = std::variant<ExactMethod, EstimateMethod>;

struct AnalysisOptions {
  std::size_t threads = 1;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  std::size_t hard_limit = 24;
};

// Refuses non-ideal generators (NotIdealError) and exact runs whose cap is
// below code_length + input_size (kCapExceeded).
BoundsReport verify_bounds(const gen::GeneratorSpec& g, const Method& method,
                           const AnalysisOptions& options = {});

enum class CountBasis {
  kArtefacts,  // distinct artefacts with K <= L (exhaustive table)
  kPairs,      // admissible descriptions with |p| + |i| <= L
};

// Smallest L <= cap whose count reaches space_size; K* >= L by pigeonhole.
CertifiedBound certified_lower_bound(std::uint64_t space_size,
                                     std::span<const std::uint64_t> cumulative_counts);
CertifiedBound certified_lower_bound(std::uint64_t space_size, std::size_t cap,
                                     CountBasis basis = CountBasis::kArtefacts,
                                     const AnalysisOptions& options = {});

// Fraction of 1 bits; 0 for the empty string.
double density(const BitString& a, const kernels::KernelSet& k = kernels::active_kernels());
// Longest constant run divided by length; 0 for the empty string.
double longest_run_fraction(const BitString& a);

struct EraHistogram {
  std::string metric_x = "density";
  std::string metric_y = "longest_run";
  std::size_t bins = 0;
  std::vector<std::uint64_t> counts;  // counts[x * bins + y]
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  std::uint64_t at(std::size_t x, std::size_t y) const { return counts[x * bins + y]; }
};

std::size_t bin_of(double value, std::size_t bins);

// Samples inputs with std::mt19937_64(seed); bins >= 2.
EraHistogram era_histogram(const gen::GeneratorSpec& g, std::uint64_t samples,
                           std::uint64_t seed, std::size_t bins);

nlohmann::ordered_json to_json(const EraHistogram& h);
std::string to_csv(const EraHistogram& h);

// Seeded uniform input source. Bits come straight from std::mt19937_64
// output words, so samples are identical on every platform.
class InputSampler {
 public:
  explicit InputSampler(std::uint64_t seed) : engine_(seed) {}
  BitString next(std::size_t bits);

 private:
  std::mt19937_64 engine_;
};

enum class Movement { kUnchanged, kScaleChange, kKnowledgeChange, kOatmealChange, kMixed };
const char* to_string(Movement m);

struct ComparisonRecord {
  std::string from;
  std::string to;
  long long delta_code_length = 0;
  double delta_log2_space = 0.0;
  long long delta_k_star = 0;
  bool k_star_comparable = true;  // both exact or both estimates
  Movement movement = Movement::kUnchanged;
};

// Deltas are to - from.
ComparisonRecord compare(const BoundsReport& from, const BoundsReport& to);
nlohmann::ordered_json to_json(const ComparisonRecord& c);

// Header plus one row per report, in input order.
std::string bounds_plane_csv(std::span<const BoundsReport> reports);

// Shortest round-trip decimal form.
std::string format_real(double v);

}  // namespace kgen::analysis
