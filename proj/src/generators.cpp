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

#include "kgen/generators.hpp"

#include <algorithm>
#include <thread>

#include "kgen/batch.hpp"
#include "kgen/error.hpp"

namespace kgen::gen {
namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::size_t log2_exact(std::size_t n) {
  std::size_t b = 0;
  while ((std::size_t{1} << b) < n) ++b;
  return b;
}

void check_flower(std::size_t size) {
  if (size < 2 || size > 16 || size % 2 != 0) {
    throw Error(ErrorCode::kParameter,
                "flower size must be even and within [2, 16], got " + std::to_string(size));
  }
}

void check_oatmeal(std::span<const BitString> parts, std::size_t slots) {
  std::size_t b = log2_exact(parts.size());
  if (parts.size() < 2 || (std::size_t{1} << b) != parts.size() || b > 8) {
    throw Error(ErrorCode::kParameter,
                "oatmeal needs 2^b parts with 1 <= b <= 8, got " + std::to_string(parts.size()));
  }
  for (const BitString& p : parts) {
    if (p.size() != parts.front().size()) {
      throw Error(ErrorCode::kParameter, "oatmeal parts must have equal length");
    }
  }
  if (parts.front().size() > 255) {
    throw Error(ErrorCode::kParameter, "oatmeal part length above 255 bits");
  }
  if (slots < 1 || slots > 255) {
    throw Error(ErrorCode::kParameter, "oatmeal slots must be within [1, 255]");
  }
}

void put_byte(BitString& out, std::size_t v) { out.append(from_unsigned(v, 8)); }

struct Evaluated {
  BitString artefact;
  std::uint64_t input;
};

struct Sweep {
  std::vector<Evaluated> outputs;  // ascending input order
  std::optional<std::uint64_t> first_fault;
  std::string fault_reason;
};

void sweep_range(const GeneratorSpec& g, std::uint64_t begin, std::uint64_t end, Sweep& out) {
  if (const auto* v = std::get_if<VmFamily>(&g.family())) {
    vm::for_each_output(v->program, begin, end - begin,
                        [&](std::uint64_t input, const BitString& a) {
                          out.outputs.push_back({a, input});
                        });
    return;
  }
  for (std::uint64_t x = begin; x < end; ++x) {
    try {
      out.outputs.push_back({evaluate(g, BitString::from_code(x, g.input_size())), x});
    } catch (const Error& e) {
      if (!out.first_fault) {
        out.first_fault = x;
        out.fault_reason = e.what();
      }
    }
  }
}

Sweep sweep(const GeneratorSpec& g, const SpaceOptions& options) {
  Sweep result;
  if (const auto* v = std::get_if<VmFamily>(&g.family())) {
    vm::StaticProfile prof = vm::profile(v->program);
    if (prof.fault) {
      result.first_fault = 0;
      result.fault_reason = vm::to_string(*prof.fault);
      return result;
    }
  }
  std::uint64_t total = std::uint64_t{1} << g.input_size();
  std::size_t threads = std::max<std::size_t>(1, options.threads);
  if (threads == 1 || total < 4096) {
    sweep_range(g, 0, total, result);
    return result;
  }
  std::vector<Sweep> parts(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    std::uint64_t begin = total * t / threads;
    std::uint64_t end = total * (t + 1) / threads;
    pool.emplace_back([&, t, begin, end] { sweep_range(g, begin, end, parts[t]); });
  }
  for (auto& th : pool) th.join();
  for (Sweep& part : parts) {
    if (part.first_fault && !result.first_fault) {
      result.first_fault = part.first_fault;
      result.fault_reason = std::move(part.fault_reason);
    }
    std::move(part.outputs.begin(), part.outputs.end(), std::back_inserter(result.outputs));
  }
  return result;
}

void check_enumerable(const GeneratorSpec& g, const SpaceOptions& options) {
  if (g.input_size() > options.enumeration_cap) {
    throw Error(ErrorCode::kCapExceeded,
                "input size " + std::to_string(g.input_size()) +
                    " exceeds the enumeration cap " + std::to_string(options.enumeration_cap));
  }
}

IdealityReport structural_ideality(const GeneratorSpec& g) {
  IdealityReport r;
  r.method = IdealityMethod::kStructural;
  if (std::holds_alternative<FlowerFamily>(g.family())) return r;
  const auto* o = std::get_if<OatmealFamily>(&g.family());
  if (o == nullptr) {
    throw Error(ErrorCode::kCapExceeded,
                "input size " + std::to_string(g.input_size()) +
                    " is beyond the enumeration cap and the family has no structural "
                    "ideality guarantee");
  }
  // Smallest colliding pair: every slot 0 except the last, which takes the
  // smallest duplicated part index and then its next duplicate.
  for (std::size_t p = 0; p < o->parts.size(); ++p) {
    for (std::size_t q = p + 1; q < o->parts.size(); ++q) {
      if (o->parts[p] == o->parts[q]) {
        r.injective = false;
        BitString prefix(o->index_bits * (o->slots - 1));
        r.counterexample = {concat(prefix, from_unsigned(p, o->index_bits)),
                            concat(prefix, from_unsigned(q, o->index_bits))};
        return r;
      }
    }
  }
  return r;
}

}  // namespace

GeneratorSpec GeneratorSpec::from_program(vm::Program program, std::string label) {
  std::size_t arity = vm::input_arity(program);
  if (label.empty()) label = "vm:" + program.raw().to_string();
  return GeneratorSpec(VmFamily{std::move(program)}, arity, std::move(label));
}

GeneratorSpec GeneratorSpec::flower(std::size_t size, std::string label) {
  check_flower(size);
  if (label.empty()) label = "flower" + std::to_string(size);
  return GeneratorSpec(FlowerFamily{size}, (size / 2) * (size / 2), std::move(label));
}

GeneratorSpec GeneratorSpec::oatmeal(std::vector<BitString> parts, std::size_t slots,
                                     std::string label) {
  check_oatmeal(parts, slots);
  std::size_t b = log2_exact(parts.size());
  if (label.empty()) label = "oatmeal" + std::to_string(parts.size()) + "x" + std::to_string(slots);
  return GeneratorSpec(OatmealFamily{std::move(parts), slots, b}, slots * b, std::move(label));
}

GeneratorSpec GeneratorSpec::from_function(FunctionFamily family, std::size_t input_size,
                                           std::string label) {
  return GeneratorSpec(std::move(family), input_size, std::move(label));
}

std::string GeneratorSpec::kind() const {
  return std::visit(Overloaded{[](const VmFamily&) { return std::string("vm"); },
                               [](const FlowerFamily&) { return std::string("flower"); },
                               [](const OatmealFamily&) { return std::string("oatmeal"); },
                               [](const FunctionFamily& f) { return f.kind; }},
                    family_);
}

BitString flower(std::size_t size, const BitString& seed) {
  check_flower(size);
  std::size_t half = size / 2;
  if (seed.size() != half * half) {
    throw Error(ErrorCode::kParameter, "flower " + std::to_string(size) + " needs a " +
                                           std::to_string(half * half) + "-bit seed");
  }
  BitString out(size * size);
  for (std::size_t r = 0; r < size; ++r) {
    std::size_t qr = r < half ? r : size - 1 - r;
    for (std::size_t c = 0; c < size; ++c) {
      std::size_t qc = c < half ? c : size - 1 - c;
      out.set(r * size + c, seed[qr * half + qc]);
    }
  }
  return out;
}

BitString oatmeal(std::span<const BitString> parts, std::size_t slots, const BitString& seed) {
  check_oatmeal(parts, slots);
  std::size_t b = log2_exact(parts.size());
  if (seed.size() != slots * b) {
    throw Error(ErrorCode::kParameter,
                "oatmeal seed must have slots * " + std::to_string(b) + " = " +
                    std::to_string(slots * b) + " bits");
  }
  BitString out;
  out.reserve(slots * parts.front().size());
  for (std::size_t s = 0; s < slots; ++s) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < b; ++k) index = (index << 1) | seed[s * b + k];
    out.append(parts[index]);
  }
  return out;
}

BitString evaluate(const GeneratorSpec& g, const BitString& input) {
  if (input.size() != g.input_size()) {
    throw Error(ErrorCode::kArity, "generator '" + g.label() + "' takes " +
                                       std::to_string(g.input_size()) + " input bits, got " +
                                       std::to_string(input.size()));
  }
  return std::visit(
      Overloaded{
          [&](const VmFamily& v) {
            vm::ExecutionOutcome r = vm::execute(v.program, input);
            if (!r.ok()) {
              throw Error(ErrorCode::kNonTotal, std::string("program faults (") +
                                                    vm::to_string(*r.fault) + ") on input '" +
                                                    input.to_string() + "'");
            }
            return r.output;
          },
          [&](const FlowerFamily& f) { return flower(f.size, input); },
          [&](const OatmealFamily& o) { return oatmeal(o.parts, o.slots, input); },
          [&](const FunctionFamily& f) { return f.evaluate(input); }},
      g.family());
}

const char* to_string(CodeLengthKind kind) {
  return kind == CodeLengthKind::kProgram ? "program" : "proxy";
}

BitString canonical_serialization(const GeneratorSpec& g) {
  return std::visit(Overloaded{[](const VmFamily& v) { return v.program.raw(); },
                               [](const FlowerFamily& f) {
                                 BitString s;
                                 put_byte(s, kFlowerTag);
                                 put_byte(s, f.size);
                                 return s;
                               },
                               [](const OatmealFamily& o) {
                                 BitString s;
                                 put_byte(s, kOatmealTag);
                                 put_byte(s, o.slots);
                                 put_byte(s, o.index_bits);
                                 put_byte(s, o.parts.front().size());
                                 for (const BitString& p : o.parts) s.append(p);
                                 return s;
                               },
                               [](const FunctionFamily& f) { return f.serialization; }},
                    g.family());
}

CodeLength code_length(const GeneratorSpec& g) {
  CodeLength c;
  c.bits = canonical_serialization(g).size();
  c.kind = std::holds_alternative<VmFamily>(g.family()) ? CodeLengthKind::kProgram
                                                        : CodeLengthKind::kProxy;
  return c;
}

PossibilitySpace enumerate_space(const GeneratorSpec& g, const SpaceOptions& options) {
  check_enumerable(g, options);
  Sweep s = sweep(g, options);
  if (s.first_fault) {
    throw Error(ErrorCode::kNonTotal,
                "evaluation failed on input '" +
                    BitString::from_code(*s.first_fault, g.input_size()).to_string() +
                    "': " + s.fault_reason);
  }
  PossibilitySpace space;
  space.artefacts.reserve(s.outputs.size());
  for (Evaluated& e : s.outputs) space.artefacts.push_back(std::move(e.artefact));
  std::sort(space.artefacts.begin(), space.artefacts.end());
  space.artefacts.erase(std::unique(space.artefacts.begin(), space.artefacts.end()),
                        space.artefacts.end());
  space.size = space.artefacts.size();
  return space;
}

const char* to_string(IdealityMethod method) {
  return method == IdealityMethod::kExhaustive ? "exhaustive" : "structural";
}

IdealityReport check_ideal(const GeneratorSpec& g, const SpaceOptions& options) {
  if (g.input_size() > options.enumeration_cap) return structural_ideality(g);
  IdealityReport r;
  Sweep s = sweep(g, options);
  if (s.first_fault) {
    r.total = false;
    r.fault_input = BitString::from_code(*s.first_fault, g.input_size());
    r.fault_reason = s.fault_reason;
  }
  auto& outs = s.outputs;
  std::sort(outs.begin(), outs.end(), [](const Evaluated& a, const Evaluated& b) {
    if (auto c = a.artefact <=> b.artefact; c != 0) return c < 0;
    return a.input < b.input;
  });
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  for (std::size_t i = 0; i < outs.size();) {
    std::size_t j = i + 1;
    while (j < outs.size() && outs[j].artefact == outs[i].artefact) ++j;
    ++r.distinct_outputs;
    if (j - i >= 2) {
      std::pair<std::uint64_t, std::uint64_t> cand{outs[i].input, outs[i + 1].input};
      if (!best || cand < *best) best = cand;
    }
    i = j;
  }
  if (best) {
    r.injective = false;
    r.counterexample = {BitString::from_code(best->first, g.input_size()),
                        BitString::from_code(best->second, g.input_size())};
  }
  return r;
}

std::string to_pbm(const BitString& pixels, std::size_t width, std::size_t height) {
  if (pixels.size() != width * height) {
    throw Error(ErrorCode::kParameter, "pixel count does not match the bitmap dimensions");
  }
  std::string out = "P1\n" + std::to_string(width) + " " + std::to_string(height) + "\n";
  for (std::size_t r = 0; r < height; ++r) {
    for (std::size_t c = 0; c < width; ++c) out += pixels[r * width + c] ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace kgen::gen
