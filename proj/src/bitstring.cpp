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

#include "kgen/bitstring.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "kgen/error.hpp"

namespace kgen {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthOverflow: return "length-overflow";
    case ErrorCode::kValueOverflow: return "value-overflow";
    case ErrorCode::kInvalidLength: return "invalid-length";
    case ErrorCode::kCapExceeded: return "cap-exceeded";
    case ErrorCode::kArity: return "arity";
    case ErrorCode::kNonTotal: return "non-total-generator";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kNotIdeal: return "not-ideal";
    case ErrorCode::kDomainFault: return "domain-fault";
    case ErrorCode::kEstimator: return "estimator";
    case ErrorCode::kParse: return "parse";
  }
  return "unknown";
}

BitString::BitString(std::size_t size, bool value) : BitString() {
  resize(size);
  if (value) {
    std::fill_n(data(), word_count(size_), ~std::uint64_t{0});
    clear_tail();
  }
}

BitString::BitString(const BitString& other) : BitString() {
  grow_words(word_count(other.size_));
  size_ = other.size_;
  std::memcpy(data(), other.data(), word_count(size_) * sizeof(std::uint64_t));
}

BitString::BitString(BitString&& other) noexcept
    : size_(other.size_), capacity_(other.capacity_) {
  if (other.is_inline()) {
    inline_[0] = other.inline_[0];
    inline_[1] = other.inline_[1];
  } else {
    heap_ = other.heap_;
    other.capacity_ = kInlineWords;
    other.inline_[0] = other.inline_[1] = 0;
  }
  other.size_ = 0;
}

BitString& BitString::operator=(const BitString& other) {
  if (this != &other) {
    std::size_t words = word_count(other.size_);
    if (words > capacity_) grow_words(words);
    size_ = other.size_;
    std::memcpy(data(), other.data(), words * sizeof(std::uint64_t));
  }
  return *this;
}

BitString& BitString::operator=(BitString&& other) noexcept {
  if (this != &other) {
    if (!is_inline()) delete[] heap_;
    size_ = other.size_;
    capacity_ = other.capacity_;
    if (other.is_inline()) {
      inline_[0] = other.inline_[0];
      inline_[1] = other.inline_[1];
    } else {
      heap_ = other.heap_;
      other.capacity_ = kInlineWords;
      other.inline_[0] = other.inline_[1] = 0;
    }
    other.size_ = 0;
  }
  return *this;
}

BitString::~BitString() {
  if (!is_inline()) delete[] heap_;
}

void BitString::grow_words(std::size_t words) {
  if (words <= capacity_) return;
  std::size_t capacity = std::max<std::size_t>(words, 2 * capacity_);
  auto* fresh = new std::uint64_t[capacity]();
  std::memcpy(fresh, data(), word_count(size_) * sizeof(std::uint64_t));
  if (!is_inline()) delete[] heap_;
  heap_ = fresh;
  capacity_ = static_cast<std::uint32_t>(capacity);
}

void BitString::clear_tail() noexcept {
  std::size_t rem = size_ & 63;
  if (rem != 0) data()[size_ >> 6] &= ~std::uint64_t{0} << (64 - rem);
}

BitString BitString::parse(std::string_view text) {
  BitString out;
  out.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::kParse,
                  "expected only '0'/'1' characters, got '" + std::string(text) + "'");
    }
    out.push_back(c == '1');
  }
  return out;
}

BitString BitString::from_code(std::uint64_t code, std::size_t size) {
  if (size > 64) throw Error(ErrorCode::kValueOverflow, "code wider than 64 bits");
  BitString out(size);
  if (size != 0) out.data()[0] = code << (64 - size);
  return out;
}

bool BitString::at(std::size_t i) const {
  if (i >= size_) throw Error(ErrorCode::kPrecondition, "bit index out of range");
  return (*this)[i];
}

void BitString::reserve(std::size_t bits) { grow_words(word_count(bits)); }

void BitString::push_back(bool bit) {
  if ((size_ & 63) == 0) grow_words(word_count(size_ + 1));
  ++size_;
  set(size_ - 1, bit);
}

void BitString::resize(std::size_t size) {
  std::size_t old_words = word_count(size_);
  std::size_t new_words = word_count(size);
  grow_words(new_words);
  std::uint64_t* d = data();
  for (std::size_t w = old_words; w < new_words; ++w) d[w] = 0;
  size_ = static_cast<std::uint32_t>(size);
  clear_tail();
}

void BitString::append(const BitString& tail) {
  if (tail.size_ == 0) return;
  std::size_t offset = size_;
  std::size_t shift = offset & 63;
  BitString copy;
  const BitString* src = &tail;
  if (src == this) {
    copy = tail;
    src = &copy;
  }
  resize(offset + src->size_);
  std::uint64_t* d = data();
  const std::uint64_t* s = src->data();
  std::size_t base = offset >> 6;
  std::size_t n = word_count(src->size_);
  if (shift == 0) {
    std::memcpy(d + base, s, n * sizeof(std::uint64_t));
  } else {
    for (std::size_t w = 0; w < n; ++w) {
      d[base + w] |= s[w] >> shift;
      if (base + w + 1 < word_count(size_)) d[base + w + 1] |= s[w] << (64 - shift);
    }
  }
  clear_tail();
}

std::uint64_t BitString::to_unsigned() const {
  if (size_ > 64) {
    throw Error(ErrorCode::kValueOverflow, "string longer than 64 bits");
  }
  if (size_ == 0) return 0;
  return data()[0] >> (64 - size_);
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::size_t BitString::count_ones() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words()) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitString::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for (std::uint64_t w : words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ull;
  }
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

bool operator==(const BitString& a, const BitString& b) noexcept {
  if (a.size_ != b.size_) return false;
  auto wa = a.words();
  auto wb = b.words();
  return std::equal(wa.begin(), wa.end(), wb.begin());
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
  std::size_t common = std::min(a.size(), b.size());
  const std::uint64_t* da = a.data();
  const std::uint64_t* db = b.data();
  std::size_t full = common >> 6;
  for (std::size_t w = 0; w < full; ++w) {
    if (da[w] != db[w]) return da[w] <=> db[w];
  }
  std::size_t rem = common & 63;
  if (rem != 0) {
    std::uint64_t mask = ~std::uint64_t{0} << (64 - rem);
    std::uint64_t x = da[full] & mask;
    std::uint64_t y = db[full] & mask;
    if (x != y) return x <=> y;
  }
  return a.size() <=> b.size();
}

BitString concat(const BitString& a, const BitString& b) {
  BitString out(a);
  out.append(b);
  return out;
}

BitString pad_leading_zeros(const BitString& s, std::size_t m) {
  if (s.size() > m) {
    throw Error(ErrorCode::kLengthOverflow,
                "cannot pad a " + std::to_string(s.size()) + "-bit string to " +
                    std::to_string(m) + " bits");
  }
  BitString out(m - s.size());
  out.append(s);
  return out;
}

BitString from_unsigned(std::uint64_t value, std::size_t width) {
  if (width > 64 || (width < 64 && (value >> width) != 0)) {
    throw Error(ErrorCode::kValueOverflow,
                std::to_string(value) + " does not fit in " + std::to_string(width) +
                    " bits");
  }
  return BitString::from_code(value, width);
}

std::uint64_t to_unsigned(const BitString& s) { return s.to_unsigned(); }

Enumeration enumerate(std::size_t length, std::size_t cap) {
  if (length > cap) {
    throw Error(ErrorCode::kCapExceeded,
                "enumerating " + std::to_string(length) +
                    "-bit strings requires an enumeration cap of at least " +
                    std::to_string(length) + " (current cap " + std::to_string(cap) +
                    ")");
  }
  return Enumeration(length);
}

}  // namespace kgen
