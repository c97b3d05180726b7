#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "bw/bigint.hpp"
#include "bw/dyadic.hpp"

using bw::BigNat;
using bw::Dyadic;

namespace {

bw::errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const bw::error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return bw::errc::internal;
}

}  // namespace

TEST_CASE("bit_length counts positions of the top set bit") {
  CHECK(bw::bit_length(BigNat(0)) == 0);
  CHECK(bw::bit_length(BigNat(1)) == 1);
  CHECK(bw::bit_length(BigNat(2)) == 2);
  CHECK(bw::bit_length(BigNat(255)) == 8);
  CHECK(bw::bit_length(BigNat(256)) == 9);
  CHECK(bw::bit_length(BigNat(1) << 100) == 101);
}

TEST_CASE("checked_pow2 honors the bit budget exactly") {
  CHECK(bw::checked_pow2(BigNat(10), "t") == 1024);
  bw::BudgetOverride o(16);
  CHECK(bw::checked_pow2(BigNat(15), "t") == 32768);
  CHECK(thrown_code([] { bw::checked_pow2(BigNat(16), "t"); }) ==
        bw::errc::index_unrepresentable);
}

TEST_CASE("checked arithmetic raises instead of materializing over-budget values") {
  bw::BudgetOverride o(8);
  CHECK(bw::checked_add(BigNat(100), BigNat(155), "t") == 255);
  CHECK(thrown_code([] { bw::checked_add(BigNat(200), BigNat(56), "t"); }) ==
        bw::errc::index_unrepresentable);
  CHECK(bw::checked_mul(BigNat(15), BigNat(17), "t") == 255);
  CHECK(thrown_code([] { bw::checked_mul(BigNat(16), BigNat(16), "t"); }) ==
        bw::errc::index_unrepresentable);
}

TEST_CASE("budget override restores the previous budget on scope exit") {
  const std::uint64_t before = bw::bigint_budget_bits();
  {
    bw::BudgetOverride o(123);
    CHECK(bw::bigint_budget_bits() == 123);
  }
  CHECK(bw::bigint_budget_bits() == before);
  CHECK(thrown_code([] { bw::set_bigint_budget_bits(0); }) == bw::errc::validation);
}

TEST_CASE("parse_bignat accepts canonical decimals only") {
  CHECK(bw::parse_bignat("0", "t") == 0);
  CHECK(bw::parse_bignat("40", "t") == 40);
  const std::string big = "12345678901234567890123456789";
  CHECK(bw::to_decimal(bw::parse_bignat(big, "t")) == big);
  CHECK(thrown_code([] { bw::parse_bignat("", "t"); }) == bw::errc::validation);
  CHECK(thrown_code([] { bw::parse_bignat("12a", "t"); }) == bw::errc::validation);
  CHECK(thrown_code([] { bw::parse_bignat("012", "t"); }) == bw::errc::validation);
  CHECK(thrown_code([] { bw::parse_bignat("-3", "t"); }) == bw::errc::validation);
  bw::BudgetOverride o(8);
  CHECK(thrown_code([&] { bw::parse_bignat(big, "t"); }) == bw::errc::index_unrepresentable);
}

TEST_CASE("bits_to_bignat folds MSB-first bit vectors") {
  CHECK(bw::bits_to_bignat({}) == 0);
  CHECK(bw::bits_to_bignat({1, 0, 1}) == 5);
  std::vector<int> bits(70, 0);
  bits[0] = 1;   // 2^69
  bits[69] = 1;  // + 1
  CHECK(bw::bits_to_bignat(bits) == (BigNat(1) << 69) + 1);
}

TEST_CASE("dyadic accumulation appends on the hot path and rescales otherwise") {
  Dyadic d;
  CHECK(d.is_zero());
  d.add_scaled_pow2_inverse(BigNat(3), BigNat(2));  // 3/4
  CHECK(d.to_string() == "3/2^2");
  d.add_scaled_pow2_inverse(BigNat(1), BigNat(2));  // + 1/4 = 1
  CHECK(d.to_string() == "1");
  d.add_scaled_pow2_inverse(BigNat(1), BigNat(5));  // + 1/32
  CHECK(d.to_string() == "33/2^5");
  d.add_scaled_pow2_inverse(BigNat(1), BigNat(3));  // smaller exponent joins in place
  CHECK(d.to_string() == "37/2^5");
}

TEST_CASE("dyadic comparison is value-based across representations") {
  CHECK(Dyadic(BigNat(2), 1) == Dyadic(BigNat(1), 0));
  CHECK(Dyadic(BigNat(4), 2) == Dyadic(BigNat(1), 0));
  CHECK(Dyadic(BigNat(1), 2) < Dyadic(BigNat(3), 3));
  CHECK(!(Dyadic(BigNat(3), 3) < Dyadic(BigNat(1), 2)));
  CHECK(Dyadic(BigNat(12), 4).canonical().to_string() == "3/2^2");
  CHECK(Dyadic().to_string() == "0");
  CHECK(Dyadic(BigNat(7)).to_string() == "7");
}

TEST_CASE("dyadic exponents respect the bit budget") {
  bw::BudgetOverride o(64);
  CHECK(Dyadic::pow2_inverse(BigNat(64)).to_string() == "1/2^64");
  CHECK(thrown_code([] { (void)Dyadic::pow2_inverse(BigNat(65)); }) ==
        bw::errc::index_unrepresentable);
  Dyadic d;
  CHECK(thrown_code([&] { d.add_scaled_pow2_inverse(BigNat(1), BigNat(65)); }) ==
        bw::errc::index_unrepresentable);
}
