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
#include <map>
#include <optional>
#include <string>
#include <vector>

// Deliberately naive models, written against std::string and sharing no code
// with the library. Tests compare the library against these.
namespace oracle {

// Runs a program given as 0/1 text on a 0/1 input. nullopt on any fault.
struct Run {
  std::string output;
  std::size_t consumed = 0;
};
std::optional<Run> run(const std::string& program, const std::string& input);

struct Witness {
  std::size_t k = 0;
  std::string program;
  std::string input;
};

// Tries every program of 0..cap/3 instructions with every input of every
// length, keeping the minimum by (k, program text, input text).
std::map<std::string, Witness> shortest_descriptions(std::size_t cap);

// Admissible (program, input) pairs with |p| + |i| <= L, counted one by one.
std::uint64_t count_descriptions(std::size_t L);

std::string binary(std::uint64_t value, std::size_t width);

}  // namespace oracle
