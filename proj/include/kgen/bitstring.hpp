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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <span>
#include <string>
#include <string_view>

namespace kgen {

inline constexpr std::size_t kDefaultEnumerationCap = 24;

// A finite binary string. Bits are packed MSB-first into 64-bit words: bit i
// lives in word i / 64 at position 63 - i % 64, and bits past size() are zero.
// Strings of up to 128 bits are stored inline.
class BitString {
 public:
  static constexpr std::size_t kInlineWords = 2;

  BitString() noexcept : size_(0), capacity_(kInlineWords), inline_{0, 0} {}
  explicit BitString(std::size_t size, bool value = false);
  BitString(const BitString& other);
  BitString(BitString&& other) noexcept;
  BitString& operator=(const BitString& other);
  BitString& operator=(BitString&& other) noexcept;
  ~BitString();

  // Parses '0'/'1' text; any other character is a kParse error.
  static BitString parse(std::string_view text);
  static BitString zeros(std::size_t n) { return BitString(n, false); }
  static BitString ones(std::size_t n) { return BitString(n, true); }
  // Builds a string directly from the low `size` bits of `code`, MSB first.
  static BitString from_code(std::uint64_t code, std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool operator[](std::size_t i) const noexcept {
    return (data()[i >> 6] >> (63 - (i & 63))) & 1u;
  }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool value) noexcept {
    std::uint64_t mask = std::uint64_t{1} << (63 - (i & 63));
    if (value) {
      data()[i >> 6] |= mask;
    } else {
      data()[i >> 6] &= ~mask;
    }
  }

  void push_back(bool bit);
  void append(const BitString& tail);
  void reserve(std::size_t bits);
  // Shrinks or grows (with zeros) to `size` bits.
  void resize(std::size_t size);

  // Value of the string read as an unsigned big-endian integer (size <= 64).
  std::uint64_t to_unsigned() const;
  std::string to_string() const;

  std::span<const std::uint64_t> words() const noexcept {
    return {data(), word_count(size_)};
  }
  std::span<std::uint64_t> mutable_words() noexcept {
    return {data(), word_count(size_)};
  }
  std::size_t count_ones() const noexcept;

  std::size_t hash() const noexcept;

  friend bool operator==(const BitString& a, const BitString& b) noexcept;
  // Lexicographic order on the 0/1 text: a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const BitString& a,
                                          const BitString& b) noexcept;

  static constexpr std::size_t word_count(std::size_t bits) noexcept {
    return (bits + 63) / 64;
  }

 private:
  bool is_inline() const noexcept { return capacity_ <= kInlineWords; }
  std::uint64_t* data() noexcept { return is_inline() ? inline_ : heap_; }
  const std::uint64_t* data() const noexcept {
    return is_inline() ? inline_ : heap_;
  }
  void grow_words(std::size_t words);
  void clear_tail() noexcept;

  std::uint32_t size_;
  std::uint32_t capacity_;  // in words
  union {
    std::uint64_t inline_[kInlineWords];
    std::uint64_t* heap_;
  };
};

struct BitStringHash {
  std::size_t operator()(const BitString& s) const noexcept { return s.hash(); }
};

BitString concat(const BitString& a, const BitString& b);

// zeros(m - |s|) ++ s; kLengthOverflow when |s| > m.
BitString pad_leading_zeros(const BitString& s, std::size_t m);

// Fixed-width big-endian encoding; kValueOverflow when value >= 2^width.
BitString from_unsigned(std::uint64_t value, std::size_t width);
std::uint64_t to_unsigned(const BitString& s);

// All 2^length strings of one length in ascending unsigned order.
class Enumeration {
 public:
  class iterator {
   public:
    using value_type = BitString;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator() = default;
    iterator(std::uint64_t index, std::size_t length)
        : index_(index), length_(length) {}
    BitString operator*() const { return BitString::from_code(index_, length_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++index_;
      return copy;
    }
    bool operator==(const iterator& other) const { return index_ == other.index_; }

   private:
    std::uint64_t index_ = 0;
    std::size_t length_ = 0;
  };

  iterator begin() const { return {0, length_}; }
  iterator end() const { return {std::uint64_t{1} << length_, length_}; }
  std::uint64_t count() const { return std::uint64_t{1} << length_; }
  std::size_t length() const { return length_; }

 private:
  friend Enumeration enumerate(std::size_t, std::size_t);
  explicit Enumeration(std::size_t length) : length_(length) {}
  std::size_t length_;
};

// Refuses (kCapExceeded) when length > cap.
Enumeration enumerate(std::size_t length, std::size_t cap = kDefaultEnumerationCap);

}  // namespace kgen

template <>
struct std::hash<kgen::BitString> {
  std::size_t operator()(const kgen::BitString& s) const noexcept {
    return s.hash();
  }
};
