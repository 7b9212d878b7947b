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

#include "kgen/compress.hpp"

#include <zlib.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "kgen/error.hpp"

namespace kgen::complexity {
namespace {

// Logistic squash/stretch on a 12-bit probability scale, integer only so the
// coded length is identical on every platform.
int squash(int d) {
  static constexpr int kTable[33] = {1,    2,    3,    6,    10,   16,   27,   45,   73,
                                     120,  194,  310,  488,  747,  1101, 1546, 2047, 2549,
                                     2994, 3348, 3607, 3785, 3901, 3975, 4022, 4050, 4068,
                                     4079, 4085, 4089, 4092, 4093, 4094};
  if (d > 2047) return 4095;
  if (d < -2047) return 1;
  int w = d & 127;
  d = (d >> 7) + 16;
  return (kTable[d] * (128 - w) + kTable[d + 1] * w + 64) >> 7;
}

const std::array<std::int16_t, 4096>& stretch_table() {
  static const std::array<std::int16_t, 4096> table = [] {
    std::array<std::int16_t, 4096> t{};
    int pi = 0;
    for (int x = -2047; x <= 2047; ++x) {
      int v = squash(x);
      for (int i = pi; i <= v; ++i) t[i] = static_cast<std::int16_t>(x);
      pi = v + 1;
    }
    for (int i = pi; i < 4096; ++i) t[i] = 2047;
    return t;
  }();
  return table;
}

int stretch(int p) { return stretch_table()[p]; }

constexpr std::array<unsigned, 11> kOrders = {1, 2, 3, 4, 6, 8, 12, 16, 20, 24, 32};
constexpr unsigned kTableBits = 14;
constexpr unsigned kMatchBits = 16;
constexpr std::size_t kInputs = kOrders.size() + 3;  // + order 0, match, bias
constexpr std::size_t kWeightSets = 8;

// Adaptive bit probability: Krichevsky-Trofimov while young, then a slowly
// moving average.
struct Counter {
  std::uint16_t p = 32768;
  std::uint8_t n = 0;

  int p12() const { return std::clamp(p >> 4, 1, 4095); }
  void update(int bit) {
    int target = bit ? 65535 : 0;
    p = static_cast<std::uint16_t>(p + (target - p) / (n + 2));
    if (n < 60) ++n;
  }
};

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdull;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ull;
  x ^= x >> 33;
  return x;
}

class Model {
 public:
  Model()
      : tables_(kOrders.size(), std::vector<Counter>(std::size_t{1} << kTableBits)),
        match_index_(std::size_t{1} << kMatchBits, 0) {
    for (auto& set : weights_) set.fill(1 << 14);
    select();
  }

  int predict() {
    int i = 0;
    for (Counter* c : current_) inputs_[i++] = stretch(c->p12());
    inputs_[i++] = stretch(order0_.p12());
    if (match_len_ > 0) {
      int s = stretch(match_counter().p12());
      inputs_[i++] = expected_bit() ? s : -s;
    } else {
      inputs_[i++] = 0;
    }
    inputs_[i++] = 256;
    const auto& w = weights_[weight_set_];
    std::int64_t dot = 0;
    for (std::size_t k = 0; k < kInputs; ++k) dot += std::int64_t{w[k]} * inputs_[k];
    int d = static_cast<int>(std::clamp<std::int64_t>(dot >> 16, -2047, 2047));
    pr_ = std::clamp(squash(d), 1, 4095);
    return pr_;
  }

  void update(int bit) {
    int err = ((bit << 12) - pr_) * 6;
    auto& w = weights_[weight_set_];
    for (std::size_t k = 0; k < kInputs; ++k) w[k] += (inputs_[k] * err) >> 10;
    for (Counter* c : current_) c->update(bit);
    order0_.update(bit);
    if (match_len_ > 0) {
      match_counter().update(expected_bit() == bit);
      if (expected_bit() == bit) {
        ++match_len_;
        ++match_ptr_;
      } else {
        match_len_ = 0;
      }
    }
    bits_.push_back(static_cast<std::uint8_t>(bit));
    history_ = (history_ << 1) | static_cast<std::uint64_t>(bit);
    if (bits_.size() >= kMatchBits) {
      std::uint32_t key = static_cast<std::uint32_t>(history_ & ((1u << kMatchBits) - 1));
      if (match_len_ == 0 && match_index_[key] != 0) {
        match_ptr_ = match_index_[key];
        match_len_ = 1;
      }
      match_index_[key] = static_cast<std::uint32_t>(bits_.size());
    }
    select();
  }

 private:
  int expected_bit() const { return bits_[match_ptr_]; }
  Counter& match_counter() {
    return match_counters_[std::min<std::size_t>(match_len_, 63) >> 2];
  }

  void select() {
    std::size_t seen = bits_.size();
    for (std::size_t o = 0; o < kOrders.size(); ++o) {
      unsigned order = kOrders[o];
      std::uint64_t ctx = order >= 64 ? history_ : history_ & ((std::uint64_t{1} << order) - 1);
      std::uint64_t h = mix64(ctx * 0x9e3779b97f4a7c15ull + order * 0x100000001b3ull +
                              std::min<std::size_t>(seen, order));
      current_[o] = &tables_[o][h >> (64 - kTableBits)];
    }
    weight_set_ = (match_len_ > 0 ? 4 : 0) + static_cast<std::size_t>(history_ & 3);
  }

  std::vector<std::vector<Counter>> tables_;
  std::array<Counter*, kOrders.size()> current_{};
  Counter order0_;
  std::array<Counter, 16> match_counters_{};
  std::vector<std::uint32_t> match_index_;
  std::size_t match_ptr_ = 0;
  std::size_t match_len_ = 0;
  std::vector<std::uint8_t> bits_;
  std::uint64_t history_ = 0;
  std::array<std::array<int, kInputs>, kWeightSets> weights_{};
  std::array<int, kInputs> inputs_{};
  std::size_t weight_set_ = 0;
  int pr_ = 2048;
};

// Carry-less binary arithmetic coder emitting single bits.
class Encoder {
 public:
  explicit Encoder(BitString& out) : out_(out) {}

  void encode(int bit, int p1) {
    std::uint32_t mid =
        x1_ + static_cast<std::uint32_t>((std::uint64_t{x2_ - x1_} * static_cast<unsigned>(p1)) >> 12);
    if (bit) {
      x2_ = mid;
    } else {
      x1_ = mid + 1;
    }
    while (((x1_ ^ x2_) & 0x80000000u) == 0) {
      out_.push_back(x2_ >> 31);
      x1_ <<= 1;
      x2_ = (x2_ << 1) | 1u;
    }
  }

  // 0x80000000 lies in [x1, x2] after normalization; x1 == 0 needs nothing.
  void flush() {
    if (x1_ != 0) out_.push_back(true);
  }

 private:
  BitString& out_;
  std::uint32_t x1_ = 0;
  std::uint32_t x2_ = 0xffffffffu;
};

class Decoder {
 public:
  Decoder(const BitString& in, std::size_t pos) : in_(in), pos_(pos) {
    for (int i = 0; i < 32; ++i) x_ = (x_ << 1) | next();
  }

  int decode(int p1) {
    std::uint32_t mid =
        x1_ + static_cast<std::uint32_t>((std::uint64_t{x2_ - x1_} * static_cast<unsigned>(p1)) >> 12);
    int bit = x_ <= mid;
    if (bit) {
      x2_ = mid;
    } else {
      x1_ = mid + 1;
    }
    while (((x1_ ^ x2_) & 0x80000000u) == 0) {
      x1_ <<= 1;
      x2_ = (x2_ << 1) | 1u;
      x_ = (x_ << 1) | next();
    }
    return bit;
  }

 private:
  std::uint32_t next() { return pos_ < in_.size() ? in_[pos_++] : 0u; }

  const BitString& in_;
  std::size_t pos_;
  std::uint32_t x1_ = 0;
  std::uint32_t x2_ = 0xffffffffu;
  std::uint32_t x_ = 0;
};

void put_gamma(BitString& out, std::uint64_t v) {
  int width = 64 - std::countl_zero(v);
  for (int i = 1; i < width; ++i) out.push_back(false);
  for (int i = width - 1; i >= 0; --i) out.push_back((v >> i) & 1u);
}

std::uint64_t get_gamma(const BitString& in, std::size_t& pos) {
  int zeros = 0;
  while (pos < in.size() && !in[pos]) {
    ++zeros;
    ++pos;
  }
  if (zeros > 40 || pos + static_cast<std::size_t>(zeros) + 1 > in.size()) {
    throw Error(ErrorCode::kEstimator, "corrupt length prefix");
  }
  std::uint64_t v = 0;
  for (int i = 0; i <= zeros; ++i) v = (v << 1) | in[pos++];
  return v;
}

const BitString& marker() {
  static const BitString m = BitString::parse("101101001110");
  return m;
}

bool starts_with_marker(const BitString& s) {
  const BitString& m = marker();
  if (s.size() < m.size()) return false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (s[i] != m[i]) return false;
  }
  return true;
}

BitString tail(const BitString& s, std::size_t from) {
  BitString out;
  out.reserve(s.size() - from);
  for (std::size_t i = from; i < s.size(); ++i) out.push_back(s[i]);
  return out;
}

std::vector<std::uint8_t> pack_bytes(const BitString& s) {
  std::vector<std::uint8_t> bytes((s.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) bytes[i >> 3] |= static_cast<std::uint8_t>(0x80u >> (i & 7));
  }
  return bytes;
}

BitString unpack_bytes(const std::uint8_t* data, std::size_t n, std::size_t bits) {
  if (bits > n * 8) throw Error(ErrorCode::kParse, "deflate stream shorter than its bit count");
  BitString out(bits);
  for (std::size_t i = 0; i < bits; ++i) out.set(i, (data[i >> 3] >> (7 - (i & 7))) & 1u);
  return out;
}

}  // namespace

BitString ContextMixingCompressor::compress(const BitString& data) const {
  BitString coded;
  put_gamma(coded, data.size() + 1);
  {
    Model model;
    Encoder enc(coded);
    for (std::size_t i = 0; i < data.size(); ++i) {
      int bit = data[i];
      enc.encode(bit, model.predict());
      model.update(bit);
    }
    enc.flush();
  }
  const BitString& m = marker();
  if (m.size() + 1 + coded.size() < data.size()) {
    BitString out = m;
    out.push_back(true);
    out.append(coded);
    return out;
  }
  if (starts_with_marker(data)) {
    BitString out = m;
    out.push_back(false);
    out.append(data);
    return out;
  }
  return data;
}

BitString ContextMixingCompressor::decompress(const BitString& packed) const {
  if (!starts_with_marker(packed)) return packed;
  std::size_t pos = marker().size();
  if (pos >= packed.size()) throw Error(ErrorCode::kEstimator, "truncated escape");
  if (!packed[pos]) return tail(packed, pos + 1);
  ++pos;
  std::uint64_t n = get_gamma(packed, pos) - 1;
  BitString out;
  out.reserve(static_cast<std::size_t>(n));
  Model model;
  Decoder dec(packed, pos);
  for (std::uint64_t i = 0; i < n; ++i) {
    int bit = dec.decode(model.predict());
    model.update(bit);
    out.push_back(bit);
  }
  return out;
}

BitString DeflateCompressor::compress(const BitString& data) const {
  if (data.empty()) return {};
  std::vector<std::uint8_t> in = pack_bytes(data);
  in.insert(in.begin(), static_cast<std::uint8_t>(data.size() & 7));
  z_stream zs{};
  if (deflateInit2(&zs, 9, Z_DEFLATED, -15, 9, Z_DEFAULT_STRATEGY) != Z_OK) {
    throw Error(ErrorCode::kEstimator, "deflateInit2 failed");
  }
  std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(in.size())));
  zs.next_in = in.data();
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = out.data();
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&zs, Z_FINISH);
  std::size_t produced = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(ErrorCode::kEstimator, "deflate failed");
  return unpack_bytes(out.data(), produced, produced * 8);
}

BitString DeflateCompressor::decompress(const BitString& packed) const {
  if (packed.empty()) return {};
  if (packed.size() % 8 != 0) throw Error(ErrorCode::kEstimator, "deflate stream not byte aligned");
  std::vector<std::uint8_t> in = pack_bytes(packed);
  z_stream zs{};
  if (inflateInit2(&zs, -15) != Z_OK) throw Error(ErrorCode::kEstimator, "inflateInit2 failed");
  std::vector<std::uint8_t> out;
  std::uint8_t chunk[4096];
  zs.next_in = in.data();
  zs.avail_in = static_cast<uInt>(in.size());
  int rc = Z_OK;
  while (rc == Z_OK) {
    zs.next_out = chunk;
    zs.avail_out = sizeof(chunk);
    rc = inflate(&zs, Z_NO_FLUSH);
    out.insert(out.end(), chunk, chunk + (sizeof(chunk) - zs.avail_out));
    if (rc == Z_BUF_ERROR && zs.avail_in == 0) break;
  }
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || out.empty()) throw Error(ErrorCode::kEstimator, "inflate failed");
  std::size_t rem = out[0];
  std::size_t bits = (out.size() - 1) * 8;
  if (rem != 0) bits -= 8 - rem;
  return unpack_bytes(out.data() + 1, out.size() - 1, bits);
}

std::unique_ptr<Compressor> make_compressor(std::string_view name, std::size_t overhead) {
  if (name == "cm") return std::make_unique<ContextMixingCompressor>(overhead);
  if (name == "deflate") return std::make_unique<DeflateCompressor>(overhead);
  throw Error(ErrorCode::kParameter,
              "unknown compressor '" + std::string(name) + "' (expected cm or deflate)");
}

Estimate k_upper_estimate(const BitString& artefact, const Compressor& compressor) {
  Estimate e;
  e.compressed_bits = compressor.compress(artefact).size();
  e.overhead = compressor.overhead();
  e.bits = e.compressed_bits + e.overhead;
  e.compressor = std::string(compressor.name());
  return e;
}

double ncd(const BitString& a, const BitString& b, const Compressor& compressor) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kPrecondition, "ncd requires nonempty inputs");
  }
  double ca = static_cast<double>(compressor.compress(a).size());
  double cb = static_cast<double>(compressor.compress(b).size());
  double cab = static_cast<double>(compressor.compress(concat(a, b)).size());
  double hi = std::max(ca, cb);
  if (hi == 0) return 0.0;
  double d = (cab - std::min(ca, cb)) / hi;
  return std::clamp(d, 0.0, 1.2);
}

}  // namespace kgen::complexity
