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
#include <memory>
#include <string>
#include <string_view>

#include "kgen/bitstring.hpp"

// Compression-based upper-bound proxies for K, for artefacts beyond the reach
// of exhaustive enumeration.
namespace kgen::complexity {

// A lossless, deterministic BitString -> BitString map plus a fixed additive
// overhead constant reported with every estimate.
class Compressor {
 public:
  explicit Compressor(std::size_t overhead = 0) : overhead_(overhead) {}
  virtual ~Compressor() = default;

  virtual std::string_view name() const = 0;
  virtual BitString compress(const BitString& data) const = 0;
  virtual BitString decompress(const BitString& packed) const = 0;

  std::size_t overhead() const noexcept { return overhead_; }

 private:
  std::size_t overhead_;
};

// Bit-level context mixing (hashed order-1..32 bit contexts plus a match
// model) driving a binary arithmetic coder. Incompressible input is stored
// verbatim, so |compress(a)| <= |a| except for the rare inputs that begin with
// the 12-bit escape marker.
class ContextMixingCompressor final : public Compressor {
 public:
  using Compressor::Compressor;
  std::string_view name() const override { return "cm"; }
  BitString compress(const BitString& data) const override;
  BitString decompress(const BitString& packed) const override;
};

// zlib raw DEFLATE (level 9) over the MSB-first packed bytes.
class DeflateCompressor final : public Compressor {
 public:
  using Compressor::Compressor;
  std::string_view name() const override { return "deflate"; }
  BitString compress(const BitString& data) const override;
  BitString decompress(const BitString& packed) const override;
};

// "cm" or "deflate"; kParameter otherwise.
std::unique_ptr<Compressor> make_compressor(std::string_view name, std::size_t overhead = 0);

// Always labeled as an estimate; never mixed with exact k.
struct Estimate {
  std::size_t bits = 0;             // compressed_bits + overhead
  std::size_t compressed_bits = 0;
  std::size_t overhead = 0;
  std::string compressor;
};

Estimate k_upper_estimate(const BitString& artefact, const Compressor& compressor);

// Normalized compression distance, clamped to [0, 1.2]. Both inputs must be
// nonempty (kPrecondition).
double ncd(const BitString& a, const BitString& b, const Compressor& compressor);

}  // namespace kgen::complexity
