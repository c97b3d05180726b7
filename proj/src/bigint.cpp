#include "bw/bigint.hpp"

#include <atomic>
#include <cctype>

namespace bw {

const char* errc_name(errc c) {
  switch (c) {
    case errc::validation: return "validation";
    case errc::stage_out_of_range: return "StageOutOfRange";
    case errc::index_unrepresentable: return "IndexUnrepresentable";
    case errc::seed_unevaluable: return "SeedUnevaluable";
    case errc::invalid_seed: return "InvalidSeed";
    case errc::window_too_small: return "WindowTooSmall";
    case errc::resolution_too_coarse: return "ResolutionTooCoarse";
    case errc::depth_too_large: return "DepthTooLarge";
    case errc::step_too_large: return "StepTooLarge";
    case errc::curves_too_close: return "CurvesTooClose";
    case errc::io_error: return "io";
    case errc::verification_failed: return "verification";
    case errc::internal: return "internal";
  }
  return "unknown";
}

namespace {
std::atomic<std::uint64_t> g_budget_bits{kDefaultBudgetBits};
}

std::uint64_t bigint_budget_bits() { return g_budget_bits.load(std::memory_order_relaxed); }

void set_bigint_budget_bits(std::uint64_t bits) {
  if (bits == 0) fail(errc::validation, "bit budget must be positive");
  g_budget_bits.store(bits, std::memory_order_relaxed);
}

BudgetOverride::BudgetOverride(std::uint64_t bits) : saved_(bigint_budget_bits()) {
  set_bigint_budget_bits(bits);
}

BudgetOverride::~BudgetOverride() { g_budget_bits.store(saved_, std::memory_order_relaxed); }

std::uint64_t bit_length(const BigNat& v) {
  if (v == 0) return 0;
  return static_cast<std::uint64_t>(boost::multiprecision::msb(v)) + 1;
}

const BigNat& check_budget(const BigNat& v, const char* what) {
  if (bit_length(v) > bigint_budget_bits())
    fail(errc::index_unrepresentable,
         std::string(what) + " needs " + std::to_string(bit_length(v)) + " bits, budget is " +
             std::to_string(bigint_budget_bits()));
  return v;
}

BigNat checked_pow2(const BigNat& e, const char* what) {
  if (e >= bigint_budget_bits())
    fail(errc::index_unrepresentable, std::string(what) + ": 2^" + to_decimal(e) +
                                          " exceeds the " +
                                          std::to_string(bigint_budget_bits()) + "-bit budget");
  BigNat r = BigNat(1) << static_cast<std::uint64_t>(e);
  return r;
}

BigNat checked_add(const BigNat& a, const BigNat& b, const char* what) {
  BigNat r = a + b;
  check_budget(r, what);
  return r;
}

BigNat checked_mul(const BigNat& a, const BigNat& b, const char* what) {
  // Cheap pre-check keeps pathological products from being materialized.
  if (a != 0 && b != 0 && bit_length(a) + bit_length(b) > bigint_budget_bits() + 1)
    fail(errc::index_unrepresentable, std::string(what) + ": product exceeds bit budget");
  BigNat r = a * b;
  check_budget(r, what);
  return r;
}

BigNat parse_bignat(const std::string& s, const char* what) {
  if (s.empty()) fail(errc::validation, std::string(what) + ": empty number");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail(errc::validation, std::string(what) + ": not a decimal natural: '" + s + "'");
  if (s.size() > 1 && s[0] == '0')
    fail(errc::validation, std::string(what) + ": leading zero in '" + s + "'");
  // ~3.33 bits per digit; reject clearly over-budget literals before parsing.
  if (s.size() > bigint_budget_bits() / 3 + 2)
    fail(errc::index_unrepresentable, std::string(what) + ": literal exceeds bit budget");
  BigNat v(s);
  check_budget(v, what);
  return v;
}

std::string to_decimal(const BigNat& v) { return v.str(); }

BigNat bits_to_bignat(const std::vector<int>& bits) {
  BigNat v = 0;
  std::uint64_t acc = 0;
  int nacc = 0;
  for (int b : bits) {
    acc = (acc << 1) | static_cast<std::uint64_t>(b & 1);
    if (++nacc == 64) {
      v <<= 64;
      v |= acc;
      acc = 0;
      nacc = 0;
    }
  }
  if (nacc > 0) {
    v <<= nacc;
    v |= acc;
  }
  return v;
}

}  // namespace bw
