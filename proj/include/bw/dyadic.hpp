#pragma once

#include <cstdint>
#include <string>

#include "bw/bigint.hpp"

namespace bw {

// Nonnegative dyadic rational num / 2^exp2. Partial sums of 2^{-sigma} terms
// live here exactly: denominators are always powers of two.
//
// Representation is not kept canonical during accumulation (appending a term
// with the current exponent is then an O(1) amortized increment); canonical
// form (odd numerator, or zero with exponent 0) is produced on demand.
class Dyadic {
 public:
  Dyadic() : num_(0), exp2_(0) {}
  explicit Dyadic(BigNat integer) : num_(std::move(integer)), exp2_(0) {}
  Dyadic(BigNat num, std::uint64_t exp2) : num_(std::move(num)), exp2_(exp2) { check(); }

  // 2^{-e}. e must be within the bit budget.
  static Dyadic pow2_inverse(const BigNat& e);

  const BigNat& numerator() const { return num_; }
  std::uint64_t exp2() const { return exp2_; }

  bool is_zero() const { return num_ == 0; }

  // this += count * 2^{-e}. Hot path: e == current exponent appends without
  // any shifting. Exponent only grows (series exponents are nondecreasing in
  // every caller); a smaller e is still handled correctly via rescale.
  void add_scaled_pow2_inverse(const BigNat& count, const BigNat& e);

  void add(const Dyadic& other);

  Dyadic canonical() const;

  bool operator==(const Dyadic& o) const;
  bool operator<(const Dyadic& o) const;

  // Decimal rendering "num/2^e" in canonical form ("3" when integral).
  std::string to_string() const;

 private:
  void check() const;

  BigNat num_;
  std::uint64_t exp2_;
};

}  // namespace bw
