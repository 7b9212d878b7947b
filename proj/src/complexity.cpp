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

#include "kgen/complexity.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "json.hpp"

#include "kgen/batch.hpp"
#include "kgen/error.hpp"
#include "kgen/vm.hpp"

namespace kgen::complexity {
namespace {

using vm::Opcode;

int lex_compare(std::uint64_t a, unsigned la, std::uint64_t b, unsigned lb) {
  unsigned m = std::min(la, lb);
  if (m != 0) {
    std::uint64_t pa = a >> (la - m);
    std::uint64_t pb = b >> (lb - m);
    if (pa != pb) return pa < pb ? -1 : 1;
  }
  return la < lb ? -1 : (la > lb ? 1 : 0);
}

Opcode opcode_at(std::uint64_t code, std::size_t count, std::size_t i) {
  return static_cast<Opcode>((code >> (3 * (count - 1 - i))) & 7u);
}

struct QuickProfile {
  bool fault = false;
  bool has_halt_or_drop = false;
  std::size_t arity = 0;
};

// Fault and arity straight from the program code; only emptiness of the
// output matters for operand faults.
QuickProfile quick_profile(std::uint64_t code, std::size_t count) {
  QuickProfile q;
  bool nonempty = false;
  for (std::size_t i = 0; i < count; ++i) {
    Opcode op = opcode_at(code, count, i);
    if (op == Opcode::kHalt) {
      q.has_halt_or_drop = true;
      break;
    }
    if (vm::reads_output(op) && !nonempty) {
      q.fault = true;
      return q;
    }
    if (op == Opcode::kInDrop) {
      q.has_halt_or_drop = true;
      ++q.arity;
    } else {
      if (op == Opcode::kInOut) ++q.arity;
      nonempty = true;
    }
  }
  return q;
}

void check_cap(std::size_t cap, std::size_t hard_limit) {
  if (hard_limit > kMaxHardLimit) {
    throw Error(ErrorCode::kCapExceeded,
                "hard limit " + std::to_string(hard_limit) + " above the supported maximum " +
                    std::to_string(kMaxHardLimit));
  }
  if (cap > hard_limit) {
    throw Error(ErrorCode::kCapExceeded,
                "cap " + std::to_string(cap) + " exceeds the hard limit " +
                    std::to_string(hard_limit) + "; raise the hard limit to at least " +
                    std::to_string(cap));
  }
}

void keep_min(DescriptionTable::Map& map, const BitString& artefact, const Description& d) {
  auto [it, inserted] = map.try_emplace(artefact, d);
  if (!inserted && description_less(d, it->second)) it->second = d;
}

struct Task {
  std::size_t count;      // instructions per program
  std::uint64_t begin;    // program codes [begin, end)
  std::uint64_t end;
};

void run_task(const Task& task, std::size_t cap, const kernels::KernelSet& kernels,
              DescriptionTable::Map& out) {
  const std::size_t program_bits = 3 * task.count;
  for (std::uint64_t code = task.begin; code < task.end; ++code) {
    QuickProfile q = quick_profile(code, task.count);
    // HALT and INDROP never appear in a shortest description: deleting them
    // keeps the output and strictly lowers the cost.
    if (q.fault || q.has_halt_or_drop) continue;
    std::size_t cost = program_bits + q.arity;
    if (cost > cap) continue;
    vm::Program program = vm::Program::decode(BitString::from_code(code, program_bits));
    Description d;
    d.k = static_cast<std::uint8_t>(cost);
    d.program_bits = static_cast<std::uint8_t>(program_bits);
    d.program_code = code;
    d.input_bits = static_cast<std::uint8_t>(q.arity);
    vm::for_each_output(
        program, 0, std::uint64_t{1} << q.arity,
        [&](std::uint64_t input, const BitString& artefact) {
          d.input_code = input;
          keep_min(out, artefact, d);
        },
        kernels);
  }
}

std::vector<Task> make_tasks(std::size_t cap) {
  std::vector<Task> tasks;
  for (std::size_t count = 0; 3 * count <= cap; ++count) {
    std::uint64_t total = std::uint64_t{1} << (3 * count);
    if (count <= 2) {
      tasks.push_back({count, 0, total});
      continue;
    }
    // One partition per leading instruction pair.
    std::uint64_t span = total >> 6;
    for (std::uint64_t prefix = 0; prefix < 64; ++prefix) {
      tasks.push_back({count, prefix * span, (prefix + 1) * span});
    }
  }
  return tasks;
}

}  // namespace

bool description_less(const Description& a, const Description& b) noexcept {
  if (a.k != b.k) return a.k < b.k;
  int c = lex_compare(a.program_code, a.program_bits, b.program_code, b.program_bits);
  if (c != 0) return c < 0;
  return lex_compare(a.input_code, a.input_bits, b.input_code, b.input_bits) < 0;
}

const Description* DescriptionTable::find(const BitString& artefact) const {
  return find(artefact, cap_);
}

const Description* DescriptionTable::find(const BitString& artefact, std::size_t cap) const {
  auto it = entries_.find(artefact);
  if (it == entries_.end() || it->second.k > cap) return nullptr;
  return &it->second;
}

std::vector<std::pair<BitString, Description>> DescriptionTable::sorted(std::size_t cap) const {
  std::vector<std::pair<BitString, Description>> out;
  out.reserve(entries_.size());
  for (const auto& [a, d] : entries_) {
    if (d.k <= cap) out.emplace_back(a, d);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.second.k != y.second.k) return x.second.k < y.second.k;
    return x.first < y.first;
  });
  return out;
}

std::vector<std::uint64_t> DescriptionTable::cumulative_artefact_counts() const {
  std::vector<std::uint64_t> counts(cap_ + 1, 0);
  for (const auto& [a, d] : entries_) ++counts[d.k];
  for (std::size_t l = 1; l < counts.size(); ++l) counts[l] += counts[l - 1];
  return counts;
}

DescriptionTable build_table(std::size_t cap, const BuildOptions& options) {
  check_cap(cap, options.hard_limit);
  const kernels::KernelSet& kernels =
      options.kernels ? *options.kernels : kernels::active_kernels();
  std::vector<Task> tasks = make_tasks(cap);
  std::vector<DescriptionTable::Map> partial(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      run_task(tasks[t], cap, kernels, partial[t]);
    }
  };
  std::size_t threads = std::clamp<std::size_t>(options.threads, 1, tasks.size());
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  // keep_min is a minimum under a total order, so merge order is irrelevant.
  DescriptionTable::Map merged = std::move(partial.back());
  partial.pop_back();
  for (auto& part : partial) {
    for (const auto& [a, d] : part) keep_min(merged, a, d);
    DescriptionTable::Map().swap(part);
  }
  return DescriptionTable(cap, std::move(merged));
}

std::shared_ptr<const DescriptionTable> shared_table(std::size_t cap,
                                                     const BuildOptions& options) {
  static std::mutex mutex;
  static std::shared_ptr<const DescriptionTable> cached;
  std::lock_guard lock(mutex);
  if (!cached || cached->cap() < cap) {
    cached = std::make_shared<const DescriptionTable>(build_table(cap, options));
  }
  return cached;
}

KResult k_exact(const BitString& artefact, const DescriptionTable& table, std::size_t cap) {
  if (cap > table.cap()) {
    throw Error(ErrorCode::kPrecondition, "table cap smaller than the requested cap");
  }
  KResult r;
  r.cap = cap;
  if (const Description* d = table.find(artefact, cap)) r.description = *d;
  return r;
}

KResult k_exact(const BitString& artefact, std::size_t cap, const BuildOptions& options) {
  check_cap(cap, options.hard_limit);
  return k_exact(artefact, *shared_table(cap, options), cap);
}

std::vector<std::uint64_t> cumulative_description_counts(std::size_t L,
                                                         std::size_t hard_limit) {
  check_cap(L, hard_limit);
  std::vector<std::uint64_t> counts(L + 1, 0);
  for (std::size_t count = 0; 3 * count <= L; ++count) {
    std::uint64_t total = std::uint64_t{1} << (3 * count);
    for (std::uint64_t code = 0; code < total; ++code) {
      QuickProfile q = quick_profile(code, count);
      if (q.fault) continue;
      std::size_t cost = 3 * count + q.arity;
      if (cost <= L) counts[cost] += std::uint64_t{1} << q.arity;
    }
  }
  for (std::size_t l = 1; l <= L; ++l) counts[l] += counts[l - 1];
  return counts;
}

std::uint64_t description_count(std::size_t L, std::size_t hard_limit) {
  return cumulative_description_counts(L, hard_limit).back();
}

std::string to_json_lines(const DescriptionTable& table) {
  std::string out;
  for (const auto& [artefact, d] : table.sorted()) {
    nlohmann::ordered_json j;
    j["artefact"] = artefact.to_string();
    j["k"] = d.k;
    j["program"] = d.program().to_string();
    j["input"] = d.input().to_string();
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace kgen::complexity
