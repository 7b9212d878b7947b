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

// kgen command-line driver. Data goes to stdout (or --output); diagnostics go
// to stderr. Exit codes: 0 ok, 1 usage, 2 refusal, 3 internal error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgen/analysis.hpp"
#include "kgen/bitstring.hpp"
#include "kgen/complexity.hpp"
#include "kgen/compress.hpp"
#include "kgen/error.hpp"
#include "kgen/generators.hpp"
#include "kgen/transform.hpp"
#include "kgen/vm.hpp"

namespace {

using kgen::BitString;
using kgen::Error;
using kgen::ErrorCode;
using json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitRefusal = 2;
constexpr int kExitInternal = 3;

// Thrown for flag combinations CLI11 cannot validate on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::size_t threads = 1;
  std::string format;  // empty: the subcommand's default
  std::string output;
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
};

const CLI::Validator kBits(
    [](std::string& s) -> std::string {
      return s.find_first_not_of("01") == std::string::npos ? "" : "expected a 0/1 string";
    },
    "BITS");

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

BitString bits(const std::string& s) { return BitString::parse(s); }

std::size_t to_size(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size() || s.empty()) throw UsageError("bad " + what + ": '" + s + "'");
  return static_cast<std::size_t>(v);
}

// vm:<bits> | flower:<size> | oatmeal:<part>,<part>,...@<slots>
kgen::gen::GeneratorSpec parse_generator(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("generator spec needs a kind: '" + text + "'");
  std::string kind = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  if (kind == "vm") {
    if (rest.find_first_not_of("01") != std::string::npos) {
      throw UsageError("bad program bits in '" + text + "'");
    }
    return kgen::gen::GeneratorSpec::from_program(kgen::vm::decode(bits(rest)));
  }
  if (kind == "flower") return kgen::gen::GeneratorSpec::flower(to_size(rest, "flower size"));
  if (kind == "oatmeal") {
    auto at = rest.find('@');
    if (at == std::string::npos) throw UsageError("oatmeal spec needs @<slots>: '" + text + "'");
    std::vector<BitString> parts;
    for (const std::string& p : split(rest.substr(0, at), ',')) {
      if (p.find_first_not_of("01") != std::string::npos) {
        throw UsageError("bad oatmeal part '" + p + "'");
      }
      parts.push_back(bits(p));
    }
    return kgen::gen::GeneratorSpec::oatmeal(std::move(parts),
                                             to_size(rest.substr(at + 1), "oatmeal slots"));
  }
  throw UsageError("unknown generator kind '" + kind + "'");
}

kgen::gen::GeneratorSpec generator_from(const std::string& program, const std::string& gen) {
  if (!program.empty() && !gen.empty()) throw UsageError("give --program or --gen, not both");
  if (!program.empty()) return parse_generator("vm:" + program);
  if (!gen.empty()) return parse_generator(gen);
  throw UsageError("a generator is required (--program or --gen)");
}

std::string format_or(const Globals& g, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError("format '" + f + "' not supported here (use " + list + ")");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct BoundsFlags {
  std::string method = "auto";
  std::string compressor = "cm";
  std::size_t overhead = 0;
  std::uint64_t samples = 1000;
  std::size_t certify_cap = 20;
};

void add_bounds_flags(CLI::App* cmd, BoundsFlags& f) {
  cmd->add_option("--method", f.method,
                  "exact, estimate, or auto (exact for vm generators whose code length plus "
                  "input size fits the hard limit)")
      ->check(CLI::IsMember({"auto", "exact", "estimate"}))
      ->capture_default_str();
  cmd->add_option("--compressor", f.compressor, "Estimator for the estimate method")
      ->check(CLI::IsMember({"cm", "deflate"}))
      ->capture_default_str();
  cmd->add_option("--overhead", f.overhead, "Constant added to every estimate")
      ->capture_default_str();
  cmd->add_option("--samples", f.samples, "Sampled artefacts when the space is larger")
      ->capture_default_str();
  cmd->add_option("--certify-cap", f.certify_cap,
                  "Cap of the pair-count floor on the estimate method")
      ->capture_default_str();
}

kgen::analysis::BoundsReport run_bounds(const kgen::gen::GeneratorSpec& g, const BoundsFlags& f,
                                        const Globals& globals) {
  kgen::analysis::AnalysisOptions opts;
  opts.threads = globals.threads;
  std::size_t needed = kgen::gen::code_length(g).bits + g.input_size();
  std::string method = f.method;
  if (method == "auto") {
    bool vm = std::holds_alternative<kgen::gen::VmFamily>(g.family());
    method = vm && needed <= opts.hard_limit ? "exact" : "estimate";
  }
  if (method == "exact") {
    return kgen::analysis::verify_bounds(g, kgen::analysis::ExactMethod{globals.cap.value_or(needed)},
                                         opts);
  }
  auto compressor = kgen::complexity::make_compressor(f.compressor, f.overhead);
  kgen::analysis::EstimateMethod est;
  est.compressor = compressor.get();
  est.samples = f.samples;
  est.seed = globals.seed;
  est.certify_cap = f.certify_cap;
  return kgen::analysis::verify_bounds(g, est, opts);
}

std::string space_json(const kgen::gen::GeneratorSpec& g, const Globals& globals) {
  kgen::gen::SpaceOptions so{kgen::kDefaultEnumerationCap, globals.threads};
  auto report = kgen::gen::check_ideal(g, so);
  json j;
  j["label"] = g.label();
  j["kind"] = g.kind();
  auto code = kgen::gen::code_length(g);
  j["code_length"] = code.bits;
  j["code_length_kind"] = kgen::gen::to_string(code.kind);
  j["input_size"] = g.input_size();
  j["ideality"] = kgen::analysis::to_json(report);
  if (report.ideal()) {
    j["space_size"] = g.input_size() < 64 ? json(std::uint64_t{1} << g.input_size()) : json(nullptr);
    j["log2_space"] = g.input_size();
  } else if (report.method == kgen::gen::IdealityMethod::kExhaustive && report.total) {
    j["space_size"] = report.distinct_outputs;
    j["log2_space"] = std::log2(static_cast<double>(report.distinct_outputs));
  } else {
    j["space_size"] = nullptr;
    j["log2_space"] = nullptr;
  }
  return dump(j);
}

void write_output(const Globals& g, const std::string& data) {
  if (g.output.empty()) {
    std::cout << data;
    std::cout.flush();
    return;
  }
  std::ofstream out(g.output, std::ios::binary);
  if (!out) throw UsageError("cannot open output file '" + g.output + "'");
  out << data;
  if (!out) throw std::runtime_error("failed writing '" + g.output + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"kgen: generator complexity toolkit", "kgen"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--threads", globals.threads, "Worker threads")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
      ->capture_default_str();
  app.add_option("--format", globals.format,
                 "Output encoding: json, csv, pbm or text (default depends on the command)")
      ->check(CLI::IsMember({"json", "csv", "pbm", "text"}));
  app.add_option("--output", globals.output, "Write data here instead of stdout");
  app.add_option("--seed", globals.seed, "Seed for sampled inputs")->capture_default_str();
  app.add_option("--cap", globals.cap,
                 "Length cap for exact complexity (k exact: 20, k table: 12, analyze "
                 "bounds: code length + input size)");

  std::string result;

  // vm
  auto* vm_cmd = app.add_subcommand("vm", "Run or decode VM programs");
  vm_cmd->require_subcommand(1);
  std::string program;
  std::string input;
  auto* vm_run = vm_cmd->add_subcommand("run", "Execute a program (default format text)");
  vm_run->add_option("--program", program, "Program bits")->required()->check(kBits);
  vm_run->add_option("--input", input, "Input bits")->check(kBits)->capture_default_str();
  vm_run->callback([&] {
    auto p = kgen::vm::decode(bits(program));
    auto outcome = kgen::vm::execute(p, bits(input));
    if (!outcome.ok()) {
      throw Error(ErrorCode::kPrecondition,
                  std::string("program faults: ") + kgen::vm::to_string(*outcome.fault));
    }
    std::string f = format_or(globals, "text", {"text", "json"});
    if (f == "text") {
      result = outcome.output.to_string() + "\n";
    } else {
      json j;
      j["output"] = outcome.output.to_string();
      j["bits_consumed"] = outcome.bits_consumed;
      j["admissible"] = outcome.bits_consumed == input.size();
      result = dump(j);
    }
  });
  auto* vm_decode = vm_cmd->add_subcommand("decode", "Disassemble a program (default format text)");
  vm_decode->add_option("--program", program, "Program bits")->required()->check(kBits);
  vm_decode->callback([&] {
    auto p = kgen::vm::decode(bits(program));
    std::string f = format_or(globals, "text", {"text", "json"});
    if (f == "text") {
      result = p.to_assembly() + "\n";
    } else {
      auto prof = kgen::vm::profile(p);
      json j;
      j["program"] = program;
      j["assembly"] = p.to_assembly();
      j["arity"] = prof.arity;
      j["fault"] = prof.fault ? json(kgen::vm::to_string(*prof.fault)) : json(nullptr);
      j["output_length"] = prof.fault ? json(nullptr) : json(prof.output_length);
      result = dump(j);
    }
  });

  // k
  auto* k_cmd = app.add_subcommand("k", "Exact complexity and compression estimates");
  k_cmd->require_subcommand(1);
  std::string artifact;
  auto* k_exact = k_cmd->add_subcommand("exact", "Exact K with witness (default format text)");
  k_exact->add_option("--artifact", artifact, "Artefact bits")->required()->check(kBits);
  k_exact->callback([&] {
    std::size_t cap = globals.cap.value_or(20);
    kgen::complexity::BuildOptions opts;
    opts.threads = globals.threads;
    auto r = kgen::complexity::k_exact(bits(artifact), cap, opts);
    std::string f = format_or(globals, "text", {"text", "json"});
    if (f == "text") {
      if (r.exceeds_cap()) {
        result = ">" + std::to_string(cap) + "\n";
      } else {
        const auto& d = *r.description;
        result = std::to_string(d.k) + "\nprogram " + d.program().to_string() + " (" +
                 kgen::vm::decode(d.program()).to_assembly() + ")\ninput " +
                 d.input().to_string() + "\n";
      }
    } else {
      json j;
      j["artefact"] = artifact;
      j["cap"] = cap;
      j["exceeds_cap"] = r.exceeds_cap();
      if (r.exceeds_cap()) {
        j["k"] = nullptr;
        j["program"] = nullptr;
        j["input"] = nullptr;
      } else {
        j["k"] = r.description->k;
        j["program"] = r.description->program().to_string();
        j["input"] = r.description->input().to_string();
      }
      result = dump(j);
    }
  });
  auto* k_table = k_cmd->add_subcommand("table", "Full description table (default format json lines)");
  k_table->callback([&] {
    std::size_t cap = globals.cap.value_or(12);
    kgen::complexity::BuildOptions opts;
    opts.threads = globals.threads;
    auto table = kgen::complexity::build_table(cap, opts);
    std::string f = format_or(globals, "json", {"json", "csv"});
    if (f == "json") {
      result = kgen::complexity::to_json_lines(table);
    } else {
      result = "artefact,k,program,input\n";
      for (const auto& [a, d] : table.sorted()) {
        result += a.to_string() + "," + std::to_string(d.k) + "," + d.program().to_string() +
                  "," + d.input().to_string() + "\n";
      }
    }
  });
  std::string compressor_name = "cm";
  std::size_t overhead = 0;
  auto* k_estimate = k_cmd->add_subcommand("estimate", "Compression upper estimate (default format text)");
  k_estimate->add_option("--artifact", artifact, "Artefact bits")->required()->check(kBits);
  k_estimate->add_option("--compressor", compressor_name, "cm or deflate")
      ->check(CLI::IsMember({"cm", "deflate"}))
      ->capture_default_str();
  k_estimate->add_option("--overhead", overhead, "Constant added to the compressed length")
      ->capture_default_str();
  k_estimate->callback([&] {
    auto c = kgen::complexity::make_compressor(compressor_name, overhead);
    auto e = kgen::complexity::k_upper_estimate(bits(artifact), *c);
    std::string f = format_or(globals, "text", {"text", "json"});
    if (f == "text") {
      result = std::to_string(e.bits) + "\n";
    } else {
      json j;
      j["kind"] = "estimate";
      j["bits"] = e.bits;
      j["compressed_bits"] = e.compressed_bits;
      j["overhead"] = e.overhead;
      j["compressor"] = e.compressor;
      j["artefact_bits"] = artifact.size();
      result = dump(j);
    }
  });

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generators and their possibility spaces");
  gen_cmd->require_subcommand(1);
  std::string gen_spec;
  auto* gen_analyze = gen_cmd->add_subcommand("analyze", "Ideality report and space size (json)");
  gen_analyze->add_option("--program", program, "VM generator program bits")->check(kBits);
  gen_analyze->add_option("--gen", gen_spec,
                          "Generator: vm:<bits>, flower:<size> or oatmeal:<parts,...>@<slots>");
  gen_analyze->callback([&] {
    format_or(globals, "json", {"json"});
    result = space_json(generator_from(program, gen_spec), globals);
  });
  std::size_t flower_size = 0;
  std::string seed_bits;
  auto* gen_flower = gen_cmd->add_subcommand("flower", "Render one flower sprite (default format pbm)");
  gen_flower->add_option("--size", flower_size, "Even side length, 2..16")->required();
  gen_flower->add_option("--seed", seed_bits, "Quadrant bits, (size/2)^2 of them")
      ->required()
      ->check(kBits);
  gen_flower->callback([&] {
    BitString pixels = kgen::gen::flower(flower_size, bits(seed_bits));
    std::string f = format_or(globals, "pbm", {"pbm", "text"});
    result = f == "pbm" ? kgen::gen::to_pbm(pixels, flower_size, flower_size)
                        : pixels.to_string() + "\n";
  });
  std::string parts_text;
  std::size_t slots = 0;
  auto* gen_oatmeal = gen_cmd->add_subcommand("oatmeal", "Evaluate an oatmeal generator (default format text)");
  gen_oatmeal->add_option("--parts", parts_text, "Comma-separated parts, a power of two of them")
      ->required();
  gen_oatmeal->add_option("--slots", slots, "Parts per artefact")->required();
  gen_oatmeal->add_option("--seed", seed_bits, "Index bits, slots * log2(parts) of them")
      ->required()
      ->check(kBits);
  gen_oatmeal->callback([&] {
    std::vector<BitString> parts;
    for (const std::string& p : split(parts_text, ',')) {
      if (p.find_first_not_of("01") != std::string::npos) throw UsageError("bad part '" + p + "'");
      parts.push_back(bits(p));
    }
    BitString a = kgen::gen::oatmeal(parts, slots, bits(seed_bits));
    std::string f = format_or(globals, "text", {"text", "json"});
    if (f == "text") {
      result = a.to_string() + "\n";
    } else {
      json j;
      j["artefact"] = a.to_string();
      j["parts"] = parts.size();
      j["slots"] = slots;
      result = dump(j);
    }
  });

  // transform
  auto* tr_cmd = app.add_subcommand("transform", "Idealizing transform");
  tr_cmd->require_subcommand(1);
  std::size_t max_input = 0;
  std::string domain_text;
  bool strict = false;
  auto* tr_idealize = tr_cmd->add_subcommand("idealize", "Ideality report of the idealized generator (json)");
  tr_idealize->add_option("--program", program, "Raw VM program bits")->required()->check(kBits);
  tr_idealize->add_option("--max-input", max_input, "Longest domain input m")->required();
  tr_idealize->add_option("--domain", domain_text,
                          "Comma-separated domain inputs (empty entries allowed); default: every "
                          "input of length <= m the program runs on");
  tr_idealize->add_flag("--strict", strict, "Fault outside the domain instead of falling back");
  tr_idealize->callback([&] {
    format_or(globals, "json", {"json"});
    auto p = kgen::vm::decode(bits(program));
    std::vector<BitString> domain;
    if (tr_idealize->count("--domain") > 0) {
      for (const std::string& d : split(domain_text, ',')) {
        if (d.find_first_not_of("01") != std::string::npos) {
          throw UsageError("bad domain input '" + d + "'");
        }
        if (d.size() > max_input) {
          throw UsageError("domain input '" + d + "' is longer than --max-input");
        }
        domain.push_back(bits(d));
      }
    } else {
      domain = kgen::transform::runnable_inputs(p, max_input);
    }
    auto raw = kgen::transform::raw_from_program(p, domain);
    if (raw.max_input_length() != max_input) {
      throw Error(ErrorCode::kPrecondition,
                  "no domain input has length " + std::to_string(max_input));
    }
    auto mode = strict ? kgen::transform::Totalization::kStrict
                       : kgen::transform::Totalization::kFallback;
    auto g = kgen::transform::idealize(raw, mode);
    kgen::gen::SpaceOptions so{kgen::kDefaultEnumerationCap, globals.threads};
    auto report = kgen::gen::check_ideal(g, so);
    json j;
    j["program"] = program;
    j["max_input"] = max_input;
    j["header_width"] = kgen::transform::header_width(max_input);
    j["domain_size"] = domain.size();
    j["totalization"] = strict ? "strict" : "fallback";
    j["input_size"] = g.input_size();
    j["ideality"] = kgen::analysis::to_json(report);
    std::set<BitString> valid;
    for (const BitString& d : raw.domain) {
      valid.insert(kgen::gen::evaluate(g, kgen::transform::enc(d, max_input)));
    }
    j["space_size"] = report.total ? json(report.distinct_outputs) : json(nullptr);
    j["valid_encoding_space_size"] = valid.size();
    result = dump(j);
  });

  // analyze
  auto* an_cmd = app.add_subcommand("analyze", "Bounds, expressive range and comparisons");
  an_cmd->require_subcommand(1);
  BoundsFlags bflags;
  auto* an_bounds = an_cmd->add_subcommand("bounds", "Check both bounds for one generator (default format json)");
  an_bounds->add_option("--program", program, "VM generator program bits")->check(kBits);
  an_bounds->add_option("--gen", gen_spec, "Generator spec (see gen analyze)");
  add_bounds_flags(an_bounds, bflags);
  an_bounds->callback([&] {
    std::string f = format_or(globals, "json", {"json", "csv"});
    auto r = run_bounds(generator_from(program, gen_spec), bflags, globals);
    result = f == "json" ? dump(kgen::analysis::to_json(r))
                         : kgen::analysis::bounds_plane_csv(std::span(&r, 1));
  });
  std::uint64_t era_samples = 1000;
  std::size_t bins = 10;
  auto* an_era = an_cmd->add_subcommand("era", "Density / longest-run histogram (default format json)");
  an_era->add_option("--program", program, "VM generator program bits")->check(kBits);
  an_era->add_option("--gen", gen_spec, "Generator spec (see gen analyze)");
  an_era->add_option("--samples", era_samples, "Sampled inputs")->capture_default_str();
  an_era->add_option("--bins", bins, "Bins per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000}))
      ->capture_default_str();
  an_era->callback([&] {
    std::string f = format_or(globals, "json", {"json", "csv"});
    auto h = kgen::analysis::era_histogram(generator_from(program, gen_spec), era_samples,
                                           globals.seed, bins);
    result = f == "json" ? dump(kgen::analysis::to_json(h)) : kgen::analysis::to_csv(h);
  });
  std::string from_spec;
  std::string to_spec;
  auto* an_compare = an_cmd->add_subcommand("compare", "Move between two generators on the bounds plane (json)");
  an_compare->add_option("--from", from_spec, "Generator spec")->required();
  an_compare->add_option("--to", to_spec, "Generator spec")->required();
  add_bounds_flags(an_compare, bflags);
  an_compare->callback([&] {
    format_or(globals, "json", {"json"});
    auto a = run_bounds(parse_generator(from_spec), bflags, globals);
    auto b = run_bounds(parse_generator(to_spec), bflags, globals);
    json j = kgen::analysis::to_json(kgen::analysis::compare(a, b));
    j["from_report"] = kgen::analysis::to_json(a);
    j["to_report"] = kgen::analysis::to_json(b);
    result = dump(j);
  });
  std::vector<std::string> plane_specs;
  auto* an_plane = an_cmd->add_subcommand("plane", "Bounds-plane rows for several generators (default format csv)");
  an_plane->add_option("--gen", plane_specs, "Generator spec, repeatable")->required();
  add_bounds_flags(an_plane, bflags);
  an_plane->callback([&] {
    std::string f = format_or(globals, "csv", {"csv", "json"});
    std::vector<kgen::analysis::BoundsReport> reports;
    for (const std::string& s : plane_specs) {
      reports.push_back(run_bounds(parse_generator(s), bflags, globals));
    }
    if (f == "csv") {
      result = kgen::analysis::bounds_plane_csv(reports);
    } else {
      json j = json::array();
      for (const auto& r : reports) j.push_back(kgen::analysis::to_json(r));
      result = dump(j);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  write_output(globals, result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "kgen: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kgen::analysis::NotIdealError& e) {
    std::cerr << "kgen: refused: " << e.what() << "\n";
    return kExitRefusal;
  } catch (const Error& e) {
    std::cerr << "kgen: refused (" << kgen::to_string(e.code()) << "): " << e.what() << "\n";
    return kExitRefusal;
  } catch (const std::exception& e) {
    std::cerr << "kgen: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
