#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace interlace {

// Fixed-width bit vector over GF(2), bit i = coordinate i.
class BitVec {
 public:
  explicit BitVec(int bits = 0)
      : bits_(bits), words_((bits + 63) / 64, 0) {
    if (bits < 0) throw std::invalid_argument("negative bit width");
  }

  static BitVec unit(int bits, int i) {
    BitVec v(bits);
    v.set(i);
    return v;
  }

  // Lowercase little-endian hex: the numeric value of the mask with bit 0 as
  // the least significant bit. Parsing accepts any width that fits.
  static BitVec from_hex(int bits, std::string_view hex) {
    BitVec v(bits);
    if (hex.empty()) throw std::invalid_argument("empty hex mask");
    for (char c : hex) {
      int digit;
      if (c >= '0' && c <= '9') digit = c - '0';
      else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
      else throw std::invalid_argument("bad hex digit in mask");
      // shift left by 4 and add
      std::uint64_t carry = static_cast<std::uint64_t>(digit);
      for (auto& w : v.words_) {
        std::uint64_t next = w >> 60;
        w = (w << 4) | carry;
        carry = next;
      }
      if (carry) throw std::invalid_argument("hex mask wider than bit count");
    }
    v.check_tail();
    return v;
  }

  int bit_count() const { return bits_; }

  bool test(int i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set(int i, bool value = true) {
    check_index(i);
    if (value)
      words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  void flip(int i) {
    check_index(i);
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  BitVec& operator^=(const BitVec& other) {
    if (other.bits_ != bits_) throw std::invalid_argument("width mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  int popcount() const {
    int n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
  }

  // Index of the lowest set bit, -1 when zero.
  int lowest_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    return -1;
  }

  std::vector<int> set_bits() const {
    std::vector<int> out;
    for (int i = 0; i < bits_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  std::string to_hex() const {
    static const char* digits = "0123456789abcdef";
    int width = (bits_ + 3) / 4;
    if (width == 0) width = 1;
    std::string out(width, '0');
    for (int d = 0; d < width; ++d) {
      int nibble = static_cast<int>((words_[(d * 4) >> 6] >> ((d * 4) & 63)) & 0xf);
      out[width - 1 - d] = digits[nibble];
    }
    return out;
  }

  bool operator==(const BitVec& other) const = default;

  // Little-endian integer comparison; gives a deterministic total order.
  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.bits_ != b.bits_) return a.bits_ < b.bits_;
    for (std::size_t i = a.words_.size(); i-- > 0;)
      if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
    return false;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= bits_) throw std::out_of_range("bit index out of range");
  }
  void check_tail() const {
    if (bits_ % 64 == 0 || words_.empty()) return;
    std::uint64_t tail = words_.back() >> (bits_ % 64);
    if (tail) throw std::invalid_argument("hex mask wider than bit count");
  }

  int bits_;
  std::vector<std::uint64_t> words_;
};

// Incremental GF(2) row basis. Pivots are the lowest set bit of each stored
// row, so elimination proceeds in ascending column order.
class Gf2Basis {
 public:
  explicit Gf2Basis(int bits) : bits_(bits), by_pivot_(bits) {}

  // Residual of v after elimination by the stored rows.
  BitVec reduce(BitVec v) const {
    for (;;) {
      int p = v.lowest_set();
      if (p < 0 || by_pivot_[p].bit_count() == 0) return v;
      v ^= by_pivot_[p];
    }
  }

  bool contains(const BitVec& v) const { return reduce(v).none(); }

  // Inserts v if independent of the basis; returns whether the rank grew.
  bool insert(BitVec v) {
    v = reduce(std::move(v));
    int p = v.lowest_set();
    if (p < 0) return false;
    by_pivot_[p] = std::move(v);
    ++rank_;
    return true;
  }

  int rank() const { return rank_; }
  int bit_count() const { return bits_; }

 private:
  int bits_;
  std::vector<BitVec> by_pivot_;  // default-constructed (width 0) when empty
  int rank_ = 0;
};

}  // namespace interlace
