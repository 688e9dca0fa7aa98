#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "gtht/errors.hpp"

namespace gtht {

// Fixed-length bit vector packed into 64-bit words. Bits past size() are
// kept zero so that equality, popcount and cover tests can work wordwise.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(int n) : n_(n), w_((n + 63) / 64, 0) {
    if (n < 0) throw input_error("BitVector: negative length");
  }

  int size() const { return n_; }

  bool get(int i) const {
    check_index(i);
    return (w_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }

  void set(int i, bool v = true) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      w_[static_cast<std::size_t>(i) >> 6] |= mask;
    else
      w_[static_cast<std::size_t>(i) >> 6] &= ~mask;
  }

  void or_with(const BitVector& o) {
    check_same_length(o);
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
  }

  // True iff (this | o) == this, i.e. the support of o is contained in ours.
  bool covers(const BitVector& o) const {
    check_same_length(o);
    for (std::size_t k = 0; k < w_.size(); ++k)
      if ((w_[k] | o.w_[k]) != w_[k]) return false;
    return true;
  }

  int weight() const {
    int c = 0;
    for (std::uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  void clear() {
    for (auto& w : w_) w = 0;
  }

  std::span<const std::uint64_t> words() const { return w_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  void check_index(int i) const {
    if (i < 0 || i >= n_) throw input_error("BitVector: index out of range");
  }
  void check_same_length(const BitVector& o) const {
    if (o.n_ != n_) throw input_error("BitVector: length mismatch");
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace gtht
