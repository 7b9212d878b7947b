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
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgen/bitstring.hpp"
#include "kgen/kernels.hpp"

// Exact Kolmogorov complexity relative to the kgen VM: the length of the
// shortest admissible (program, input) pair producing an artefact.
namespace kgen::complexity {

inline constexpr std::size_t kDefaultHardLimit = 24;
// Witness codes are stored in 64-bit words.
inline constexpr std::size_t kMaxHardLimit = 30;

// Shortest known description of one artefact.
struct Description {
  std::uint8_t k = 0;
  std::uint8_t program_bits = 0;
  std::uint8_t input_bits = 0;
  std::uint64_t program_code = 0;  // program text read as an unsigned integer
  std::uint64_t input_code = 0;

  BitString program() const { return BitString::from_code(program_code, program_bits); }
  BitString input() const { return BitString::from_code(input_code, input_bits); }
};

// Total order used to pick witnesses: cost, then program text, then input
// text (both lexicographic).
bool description_less(const Description& a, const Description& b) noexcept;

class DescriptionTable {
 public:
  using Map = std::unordered_map<BitString, Description, BitStringHash>;

  DescriptionTable() = default;
  DescriptionTable(std::size_t cap, Map entries) : cap_(cap), entries_(std::move(entries)) {}

  std::size_t cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Map& entries() const noexcept { return entries_; }

  // Entry for `artefact` when its complexity is at most `cap` (default: the
  // table's own cap). A larger table answers exactly for every smaller cap.
  const Description* find(const BitString& artefact) const;
  const Description* find(const BitString& artefact, std::size_t cap) const;

  // Entries with k <= cap, sorted by (k, artefact).
  std::vector<std::pair<BitString, Description>> sorted(std::size_t cap) const;
  std::vector<std::pair<BitString, Description>> sorted() const { return sorted(cap_); }

  // Number of distinct artefacts with complexity <= L, for L = 0 .. cap.
  std::vector<std::uint64_t> cumulative_artefact_counts() const;

 private:
  std::size_t cap_ = 0;
  Map entries_;
};

struct BuildOptions {
  std::size_t threads = 1;
  std::size_t hard_limit = kDefaultHardLimit;
  const kernels::KernelSet* kernels = nullptr;  // nullptr: active set
};

// Exhaustive over every description of total length <= cap. Refuses
// (kCapExceeded) when cap exceeds the hard limit. The result does not depend
// on the thread count.
DescriptionTable build_table(std::size_t cap, const BuildOptions& options = {});

// Process-wide cache: returns a table whose cap is at least `cap`.
std::shared_ptr<const DescriptionTable> shared_table(std::size_t cap,
                                                     const BuildOptions& options = {});

struct KResult {
  std::optional<Description> description;  // empty: K(a) > cap
  std::size_t cap = 0;

  bool exceeds_cap() const noexcept { return !description.has_value(); }
};

KResult k_exact(const BitString& artefact, std::size_t cap, const BuildOptions& options = {});
KResult k_exact(const BitString& artefact, const DescriptionTable& table, std::size_t cap);

// Number of admissible (program, input) pairs with |p| + |i| <= L.
std::uint64_t description_count(std::size_t L, std::size_t hard_limit = kDefaultHardLimit);
// description_count(l) for l = 0 .. L.
std::vector<std::uint64_t> cumulative_description_counts(
    std::size_t L, std::size_t hard_limit = kDefaultHardLimit);

// One JSON object per line: {"artefact","k","program","input"}, sorted by
// (k, artefact).
std::string to_json_lines(const DescriptionTable& table);

}  // namespace kgen::complexity
