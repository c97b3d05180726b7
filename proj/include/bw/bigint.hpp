#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "bw/errors.hpp"

namespace bw {

// Arbitrary-precision natural. Values are always >= 0; operations that could
// go negative clamp via explicit checks at the call site.
using BigNat = boost::multiprecision::cpp_int;

// Global bit budget for representable numbers. Any value whose bit length
// would exceed the budget is "unrepresentable" and the computation raises
// errc::index_unrepresentable instead of producing it. Default 2^20 bits.
inline constexpr std::uint64_t kDefaultBudgetBits = std::uint64_t(1) << 20;

std::uint64_t bigint_budget_bits();
void set_bigint_budget_bits(std::uint64_t bits);

// RAII override, used by tests that need temporarily enlarged budgets.
class BudgetOverride {
 public:
  explicit BudgetOverride(std::uint64_t bits);
  ~BudgetOverride();
  BudgetOverride(const BudgetOverride&) = delete;
  BudgetOverride& operator=(const BudgetOverride&) = delete;

 private:
  std::uint64_t saved_;
};

std::uint64_t bit_length(const BigNat& v);

// Raises index_unrepresentable if v's bit length exceeds the budget; returns v.
const BigNat& check_budget(const BigNat& v, const char* what);

// 2^e. Fails when e exceeds the budget (the result would need e+1 bits).
BigNat checked_pow2(const BigNat& e, const char* what);

BigNat checked_add(const BigNat& a, const BigNat& b, const char* what);
BigNat checked_mul(const BigNat& a, const BigNat& b, const char* what);

// Strict decimal parse (digits only, no sign). Raises errc::validation.
BigNat parse_bignat(const std::string& s, const char* what);
std::string to_decimal(const BigNat& v);

// Value of the first `count` bits (MSB-first) of `bits` as an integer.
// bits[0] is the most significant. O(count) regardless of magnitude.
BigNat bits_to_bignat(const std::vector<int>& bits);

}  // namespace bw
