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

#include "kgen/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "kgen/complexity.hpp"

namespace kgen::analysis {
namespace {

std::string describe(const gen::IdealityReport& r) {
  std::string s = "generator is not ideal:";
  if (!r.fixed_input) s += " no fixed input size;";
  if (!r.total) s += " faults on input '" + r.fault_input->to_string() + "' (" + r.fault_reason + ");";
  if (!r.injective) {
    s += " inputs '" + r.counterexample->first.to_string() + "' and '" +
         r.counterexample->second.to_string() + "' collide;";
  }
  return s;
}

double log2_of_space(std::size_t input_size, const std::optional<std::uint64_t>& size) {
  if (size) return std::log2(static_cast<double>(*size));
  return static_cast<double>(input_size);
}

std::optional<std::uint64_t> ideal_space_size(std::size_t input_size) {
  if (input_size >= 64) return std::nullopt;
  return std::uint64_t{1} << input_size;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string certified_text(const CertifiedBound& b) {
  return b.exceeds_cap ? ">" + std::to_string(b.cap) : std::to_string(b.value);
}

}  // namespace

const char* to_string(KStarKind kind) {
  return kind == KStarKind::kExact ? "exact" : "estimate";
}

const char* to_string(Movement m) {
  switch (m) {
    case Movement::kUnchanged: return "unchanged";
    case Movement::kScaleChange: return "scale-change";
    case Movement::kKnowledgeChange: return "knowledge-change";
    case Movement::kOatmealChange: return "oatmeal-change";
    case Movement::kMixed: return "mixed";
  }
  return "unknown";
}

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

NotIdealError::NotIdealError(gen::IdealityReport report)
    : Error(ErrorCode::kNotIdeal, describe(report)), report_(std::move(report)) {}

nlohmann::ordered_json to_json(const gen::IdealityReport& r) {
  nlohmann::ordered_json j;
  j["fixed_input"] = r.fixed_input;
  j["total"] = r.total;
  j["injective"] = r.injective;
  j["ideal"] = r.ideal();
  j["method"] = gen::to_string(r.method);
  if (r.counterexample) {
    j["counterexample"] = {r.counterexample->first.to_string(),
                           r.counterexample->second.to_string()};
  } else {
    j["counterexample"] = nullptr;
  }
  if (r.fault_input) {
    j["fault_input"] = r.fault_input->to_string();
    j["fault_reason"] = r.fault_reason;
  }
  if (r.method == gen::IdealityMethod::kExhaustive) j["distinct_outputs"] = r.distinct_outputs;
  return j;
}

nlohmann::ordered_json to_json(const BoundsReport& r) {
  nlohmann::ordered_json j;
  j["label"] = r.label;
  j["code_length"] = r.code_length;
  j["code_length_kind"] = gen::to_string(r.code_length_kind);
  j["input_size"] = r.input_size;
  if (r.space_size) {
    j["space_size"] = *r.space_size;
  } else {
    j["space_size"] = nullptr;
  }
  j["log2_space"] = r.log2_space;
  j["k_star"] = r.k_star;
  j["k_star_kind"] = to_string(r.k_star_kind);
  if (r.k_star_kind == KStarKind::kEstimate) {
    j["compressor"] = r.compressor;
    j["estimate_overhead"] = r.estimate_overhead;
    j["estimate_samples"] = r.estimate_samples;
  }
  j["upper_bound"] = r.upper_bound;
  j["certified_lower"] = r.certified_lower.value;
  j["certified_lower_exceeds_cap"] = r.certified_lower.exceeds_cap;
  j["certified_cap"] = r.certified_lower.cap;
  if (r.upper_holds) {
    j["upper_holds"] = *r.upper_holds;
  } else {
    j["upper_holds"] = nullptr;
  }
  if (r.lower_holds) {
    j["lower_holds"] = *r.lower_holds;
  } else {
    j["lower_holds"] = nullptr;
  }
  j["direction_only"] = r.direction_only();
  j["ideality_method"] = gen::to_string(r.ideality_method);
  return j;
}

BitString InputSampler::next(std::size_t bits) {
  BitString out(bits);
  auto words = out.mutable_words();
  for (auto& w : words) w = engine_();
  std::size_t rem = bits & 63;
  if (rem != 0) words.back() &= ~std::uint64_t{0} << (64 - rem);
  return out;
}

CertifiedBound certified_lower_bound(std::uint64_t space_size,
                                     std::span<const std::uint64_t> cumulative_counts) {
  CertifiedBound b;
  b.cap = cumulative_counts.empty() ? 0 : cumulative_counts.size() - 1;
  for (std::size_t l = 0; l < cumulative_counts.size(); ++l) {
    if (cumulative_counts[l] >= space_size) {
      b.value = l;
      return b;
    }
  }
  b.exceeds_cap = true;
  b.value = b.cap + 1;
  return b;
}

CertifiedBound certified_lower_bound(std::uint64_t space_size, std::size_t cap,
                                     CountBasis basis, const AnalysisOptions& options) {
  std::vector<std::uint64_t> counts;
  if (basis == CountBasis::kPairs) {
    counts = complexity::cumulative_description_counts(cap, options.hard_limit);
  } else {
    complexity::BuildOptions build{options.threads, options.hard_limit, nullptr};
    if (cap > options.hard_limit) {
      throw Error(ErrorCode::kCapExceeded, "cap " + std::to_string(cap) + " exceeds the hard limit");
    }
    auto table = complexity::shared_table(cap, build);
    counts = table->cumulative_artefact_counts();
    counts.resize(cap + 1);
  }
  return certified_lower_bound(space_size, counts);
}

BoundsReport verify_bounds(const gen::GeneratorSpec& g, const Method& method,
                           const AnalysisOptions& options) {
  gen::SpaceOptions space_options{options.enumeration_cap, options.threads};
  gen::IdealityReport ideality = gen::check_ideal(g, space_options);
  if (!ideality.ideal()) throw NotIdealError(ideality);

  BoundsReport r;
  r.label = g.label();
  gen::CodeLength code = gen::code_length(g);
  r.code_length = code.bits;
  r.code_length_kind = code.kind;
  r.input_size = g.input_size();
  r.ideality_method = ideality.method;

  if (const auto* exact = std::get_if<ExactMethod>(&method)) {
    std::size_t needed = r.code_length + r.input_size;
    if (exact->cap < needed) {
      throw Error(ErrorCode::kCapExceeded,
                  "exact bounds for '" + g.label() + "' require cap >= " +
                      std::to_string(needed) + " (got " + std::to_string(exact->cap) + ")");
    }
    if (exact->cap > options.hard_limit) {
      throw Error(ErrorCode::kCapExceeded,
                  "cap " + std::to_string(exact->cap) + " exceeds the hard limit " +
                      std::to_string(options.hard_limit));
    }
    gen::PossibilitySpace space = gen::enumerate_space(g, space_options);
    complexity::BuildOptions build{options.threads, options.hard_limit, nullptr};
    auto table = complexity::shared_table(exact->cap, build);
    bool is_vm = std::holds_alternative<gen::VmFamily>(g.family());
    std::size_t k_star = 0;
    for (const BitString& a : space.artefacts) {
      const complexity::Description* d = table->find(a, exact->cap);
      if (d == nullptr) {
        if (is_vm) {
          throw std::logic_error("artefact '" + a.to_string() +
                                 "' of a vm generator has no description within cap");
        }
        throw Error(ErrorCode::kCapExceeded,
                    "K('" + a.to_string() + "') exceeds cap " + std::to_string(exact->cap) +
                        "; exact K* unavailable for '" + g.label() + "'");
      }
      // (G, i) is itself an admissible description of every vm artefact.
      if (is_vm && d->k > needed) {
        throw std::logic_error("description table misses the generator witness for '" +
                               a.to_string() + "'");
      }
      k_star = std::max<std::size_t>(k_star, d->k);
    }
    r.space_size = space.size;
    r.log2_space = log2_of_space(r.input_size, r.space_size);
    r.k_star = k_star;
    r.k_star_kind = KStarKind::kExact;
    r.upper_bound = r.code_length + r.input_size;
    auto counts = table->cumulative_artefact_counts();
    counts.resize(exact->cap + 1);
    r.certified_lower = certified_lower_bound(space.size, counts);
    r.upper_holds = static_cast<double>(r.code_length) + r.log2_space >= static_cast<double>(k_star);
    r.lower_holds = static_cast<double>(k_star) >= r.log2_space;
    return r;
  }

  const auto& est = std::get<EstimateMethod>(method);
  if (est.compressor == nullptr) throw Error(ErrorCode::kPrecondition, "no compressor given");
  r.k_star_kind = KStarKind::kEstimate;
  r.compressor = std::string(est.compressor->name());
  r.estimate_overhead = est.compressor->overhead();
  r.space_size = ideal_space_size(r.input_size);
  r.log2_space = static_cast<double>(r.input_size);
  r.upper_bound = r.code_length + r.input_size;
  std::size_t best = 0;
  bool enumerable = r.input_size <= options.enumeration_cap && r.space_size &&
                    *r.space_size <= est.samples;
  if (enumerable) {
    gen::PossibilitySpace space = gen::enumerate_space(g, space_options);
    for (const BitString& a : space.artefacts) {
      best = std::max(best, complexity::k_upper_estimate(a, *est.compressor).bits);
    }
    r.estimate_samples = space.size;
  } else {
    InputSampler sampler(est.seed);
    for (std::uint64_t s = 0; s < est.samples; ++s) {
      BitString a = gen::evaluate(g, sampler.next(r.input_size));
      best = std::max(best, complexity::k_upper_estimate(a, *est.compressor).bits);
    }
    r.estimate_samples = est.samples;
  }
  r.k_star = best;
  std::uint64_t space_for_floor = r.space_size.value_or(~std::uint64_t{0});
  r.certified_lower = certified_lower_bound(
      space_for_floor,
      complexity::cumulative_description_counts(std::min(est.certify_cap, options.hard_limit),
                                                options.hard_limit));
  return r;
}

double density(const BitString& a, const kernels::KernelSet& k) {
  if (a.empty()) return 0.0;
  return static_cast<double>(k.popcount(a.words())) / static_cast<double>(a.size());
}

double longest_run_fraction(const BitString& a) {
  if (a.empty()) return 0.0;
  std::size_t best = 1;
  std::size_t run = 1;
  for (std::size_t i = 1; i < a.size(); ++i) {
    run = a[i] == a[i - 1] ? run + 1 : 1;
    best = std::max(best, run);
  }
  return static_cast<double>(best) / static_cast<double>(a.size());
}

std::size_t bin_of(double value, std::size_t bins) {
  auto b = static_cast<std::size_t>(std::floor(value * static_cast<double>(bins)));
  return std::min(b, bins - 1);
}

EraHistogram era_histogram(const gen::GeneratorSpec& g, std::uint64_t samples,
                           std::uint64_t seed, std::size_t bins) {
  if (bins < 2) throw Error(ErrorCode::kPrecondition, "era histogram needs at least 2 bins");
  EraHistogram h;
  h.bins = bins;
  h.counts.assign(bins * bins, 0);
  h.samples = samples;
  h.seed = seed;
  InputSampler sampler(seed);
  const kernels::KernelSet& k = kernels::active_kernels();
  for (std::uint64_t s = 0; s < samples; ++s) {
    BitString a = gen::evaluate(g, sampler.next(g.input_size()));
    ++h.counts[bin_of(density(a, k), bins) * bins + bin_of(longest_run_fraction(a), bins)];
  }
  return h;
}

nlohmann::ordered_json to_json(const EraHistogram& h) {
  nlohmann::ordered_json j;
  j["metric_x"] = h.metric_x;
  j["metric_y"] = h.metric_y;
  j["bins"] = h.bins;
  j["samples"] = h.samples;
  j["seed"] = h.seed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < h.bins; ++x) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t y = 0; y < h.bins; ++y) row.push_back(h.at(x, y));
    rows.push_back(std::move(row));
  }
  j["counts"] = std::move(rows);
  return j;
}

std::string to_csv(const EraHistogram& h) {
  std::string out = "x_bin,y_bin,x_low,y_low,count\n";
  for (std::size_t x = 0; x < h.bins; ++x) {
    for (std::size_t y = 0; y < h.bins; ++y) {
      out += std::to_string(x) + "," + std::to_string(y) + "," +
             format_real(static_cast<double>(x) / static_cast<double>(h.bins)) + "," +
             format_real(static_cast<double>(y) / static_cast<double>(h.bins)) + "," +
             std::to_string(h.at(x, y)) + "\n";
    }
  }
  return out;
}

ComparisonRecord compare(const BoundsReport& from, const BoundsReport& to) {
  ComparisonRecord c;
  c.from = from.label;
  c.to = to.label;
  c.delta_code_length =
      static_cast<long long>(to.code_length) - static_cast<long long>(from.code_length);
  c.delta_log2_space = to.log2_space - from.log2_space;
  c.delta_k_star = static_cast<long long>(to.k_star) - static_cast<long long>(from.k_star);
  c.k_star_comparable = from.k_star_kind == to.k_star_kind;
  bool same_code = c.delta_code_length == 0;
  bool same_scale = c.delta_log2_space == 0.0;
  if (same_code && same_scale && c.delta_k_star == 0) {
    c.movement = Movement::kUnchanged;
  } else if (same_code && c.delta_log2_space < 0) {
    c.movement = Movement::kScaleChange;
  } else if (same_code && c.delta_log2_space > 0) {
    c.movement = Movement::kOatmealChange;
  } else if (same_scale) {
    c.movement = Movement::kKnowledgeChange;
  } else {
    c.movement = Movement::kMixed;
  }
  return c;
}

nlohmann::ordered_json to_json(const ComparisonRecord& c) {
  nlohmann::ordered_json j;
  j["from"] = c.from;
  j["to"] = c.to;
  j["delta_code_length"] = c.delta_code_length;
  j["delta_log2_space"] = c.delta_log2_space;
  j["delta_k_star"] = c.delta_k_star;
  j["k_star_comparable"] = c.k_star_comparable;
  j["movement"] = to_string(c.movement);
  return j;
}

std::string bounds_plane_csv(std::span<const BoundsReport> reports) {
  std::string out = "label,log2_space,code_length,k_star,k_star_kind,upper_bound,certified_lower\n";
  for (const BoundsReport& r : reports) {
    out += csv_field(r.label) + "," + format_real(r.log2_space) + "," +
           std::to_string(r.code_length) + "," + std::to_string(r.k_star) + "," +
           to_string(r.k_star_kind) + "," + std::to_string(r.upper_bound) + "," +
           certified_text(r.certified_lower) + "\n";
  }
  return out;
}

}  // namespace kgen::analysis
