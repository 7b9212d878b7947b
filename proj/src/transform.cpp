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

#include "kgen/transform.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <set>

#include "kgen/error.hpp"

namespace kgen::transform {
namespace {

struct Prepared {
  RawGenerator raw;
  std::size_t m = 0;
};

std::shared_ptr<const Prepared> prepare(const RawGenerator& g) {
  if (g.domain.empty()) throw Error(ErrorCode::kPrecondition, "raw generator domain is empty");
  auto p = std::make_shared<Prepared>();
  p->raw = g;
  std::sort(p->raw.domain.begin(), p->raw.domain.end());
  p->raw.domain.erase(std::unique(p->raw.domain.begin(), p->raw.domain.end()),
                      p->raw.domain.end());
  p->m = p->raw.max_input_length();
  for (const BitString& i : p->raw.domain) {
    if (!p->raw.evaluate(i)) {
      throw Error(ErrorCode::kPrecondition,
                  "raw generator is undefined on domain element '" + i.to_string() + "'");
    }
  }
  return p;
}

bool in_domain(const Prepared& p, const BitString& i) {
  return std::binary_search(p.raw.domain.begin(), p.raw.domain.end(), i);
}

BitString serialization(const Prepared& p) {
  BitString s = from_unsigned(gen::kIdealizedTag, 8);
  s.append(from_unsigned(p.m, 8));
  s.append(p.raw.code);
  for (const BitString& d : p.raw.domain) {
    s.append(from_unsigned(d.size(), 8));
    s.append(d);
  }
  return s;
}

BitString ideal_output(const Prepared& p, Totalization mode, const BitString& x) {
  BitString d = dec_total(x, p.m);
  std::optional<BitString> out = p.raw.evaluate(d);
  if (!out) {
    if (mode == Totalization::kStrict || in_domain(p, d)) {
      throw Error(ErrorCode::kDomainFault,
                  "decoded input '" + d.to_string() + "' has no output");
    }
    out = p.raw.evaluate(p.raw.domain.front());
  }
  out->append(x);
  return std::move(*out);
}

}  // namespace

std::size_t RawGenerator::max_input_length() const {
  std::size_t m = 0;
  for (const BitString& d : domain) m = std::max(m, d.size());
  return m;
}

RawGenerator raw_from_program(const vm::Program& program, std::vector<BitString> domain) {
  RawGenerator g;
  g.evaluate = [program](const BitString& i) -> std::optional<BitString> {
    vm::ExecutionOutcome r = vm::execute(program, i);
    if (!r.ok()) return std::nullopt;
    return std::move(r.output);
  };
  g.domain = std::move(domain);
  g.code = program.raw();
  return g;
}

std::vector<BitString> runnable_inputs(const vm::Program& program, std::size_t m) {
  std::vector<BitString> out;
  for (std::size_t len = 0; len <= m; ++len) {
    for (BitString i : enumerate(len)) {
      if (vm::execute(program, i).ok()) out.push_back(std::move(i));
    }
  }
  return out;
}

std::size_t header_width(std::size_t m) { return static_cast<std::size_t>(std::bit_width(m)); }

BitString enc(const BitString& i, std::size_t m) {
  if (i.size() > m) {
    throw Error(ErrorCode::kLengthOverflow, "input of " + std::to_string(i.size()) +
                                                " bits is longer than m = " + std::to_string(m));
  }
  return concat(from_unsigned(i.size(), header_width(m)), pad_leading_zeros(i, m));
}

BitString dec_total(const BitString& x, std::size_t m) {
  std::size_t hw = header_width(m);
  if (x.size() != hw + m) {
    throw Error(ErrorCode::kLengthOverflow,
                "encoded input must have " + std::to_string(hw + m) + " bits, got " +
                    std::to_string(x.size()));
  }
  std::size_t h = 0;
  for (std::size_t k = 0; k < hw; ++k) h = (h << 1) | x[k];
  h = std::min(h, m);
  BitString out(h);
  for (std::size_t k = 0; k < h; ++k) out.set(k, x[x.size() - h + k]);
  return out;
}

gen::GeneratorSpec intermediate(const RawGenerator& g) {
  auto p = prepare(g);
  std::size_t width = header_width(p->m) + p->m;
  gen::FunctionFamily family;
  family.kind = "intermediate";
  family.serialization = serialization(*p);
  family.evaluate = [p](const BitString& x) {
    BitString d = dec_total(x, p->m);
    if (!in_domain(*p, d) || enc(d, p->m) != x) {
      throw Error(ErrorCode::kDomainFault, "'" + x.to_string() + "' is not a valid encoding");
    }
    return *p->raw.evaluate(d);
  };
  return gen::GeneratorSpec::from_function(std::move(family), width, "intermediate");
}

gen::GeneratorSpec idealize(const RawGenerator& g, Totalization mode) {
  auto p = prepare(g);
  std::size_t width = header_width(p->m) + p->m;
  gen::FunctionFamily family;
  family.kind = "idealized";
  family.serialization = serialization(*p);
  family.evaluate = [p, mode](const BitString& x) { return ideal_output(*p, mode, x); };
  return gen::GeneratorSpec::from_function(std::move(family), width, "idealized");
}

IdealizedSpaces idealized_spaces(const RawGenerator& g, Totalization mode) {
  auto p = prepare(g);
  IdealizedSpaces s;
  s.total = gen::enumerate_space(idealize(g, mode)).size;
  std::set<BitString> valid;
  for (const BitString& i : p->raw.domain) valid.insert(ideal_output(*p, mode, enc(i, p->m)));
  s.valid_encodings = valid.size();
  return s;
}

}  // namespace kgen::transform
