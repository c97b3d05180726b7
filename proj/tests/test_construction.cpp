#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "bw/construction.hpp"

using bw::BigNat;
using bw::IncreasingSequenceSpec;

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

IncreasingSequenceSpec identity_seed() { return IncreasingSequenceSpec::affine(BigNat(1), BigNat(0)); }

}  // namespace

TEST_CASE("seed validation rejects malformed sequences") {
  CHECK(thrown_code([] { IncreasingSequenceSpec::explicit_prefix({}); }) ==
        bw::errc::invalid_seed);
  CHECK(thrown_code([] { IncreasingSequenceSpec::explicit_prefix({BigNat(2), BigNat(2)}); }) ==
        bw::errc::invalid_seed);
  CHECK(thrown_code([] { IncreasingSequenceSpec::explicit_prefix({BigNat(0)}); }) ==
        bw::errc::invalid_seed);
  CHECK(thrown_code([] { IncreasingSequenceSpec::affine(BigNat(0), BigNat(3)); }) ==
        bw::errc::invalid_seed);
}

TEST_CASE("seed_term evaluates the three seed shapes") {
  auto p = IncreasingSequenceSpec::explicit_prefix({BigNat(1), BigNat(4), BigNat(9)});
  CHECK(bw::seed_term(p, BigNat(3)) == 9);
  CHECK(thrown_code([&] { bw::seed_term(p, BigNat(4)); }) == bw::errc::seed_unevaluable);
  CHECK(thrown_code([&] { bw::seed_term(p, BigNat(0)); }) == bw::errc::validation);

  auto a = IncreasingSequenceSpec::affine(BigNat(3), BigNat(1));
  CHECK(bw::seed_term(a, BigNat(1)) == 4);
  CHECK(bw::seed_term(a, BigNat(10)) == 31);

  auto r = IncreasingSequenceSpec::antichain(bw::RaySpec::all_ones());
  CHECK(bw::seed_term(r, BigNat(1)) == 1);
  CHECK(bw::seed_term(r, BigNat(2)) == 3);
  CHECK(bw::seed_term(r, BigNat(4)) == 15);
}

TEST_CASE("pow2 schedule for the identity seed reproduces the frozen values") {
  bw::Schedule s = bw::schedule(identity_seed(), BigNat(3));
  REQUIRE(s.entries.size() == 3);
  CHECK(s.gap_rule == "pow2");

  const auto& e1 = s.entries[0];
  CHECK(e1.n == 1);
  CHECK(e1.seed_start == 1);
  REQUIRE(e1.seed_end.has_value());
  CHECK(*e1.seed_end == 2);
  REQUIRE(e1.sigma.has_value());
  CHECK(*e1.sigma == 2);

  const auto& e2 = s.entries[1];
  CHECK(e2.n == 5);
  CHECK(e2.seed_start == 3);
  REQUIRE(e2.seed_end.has_value());
  CHECK(*e2.seed_end == 34);
  REQUIRE(e2.sigma.has_value());
  CHECK(*e2.sigma == 36);

  // n_3 = 2^36 + 5; its block length 2^{n_3} is far beyond the bit budget,
  // so the entry is truncated: range known, block content not.
  const auto& e3 = s.entries[2];
  CHECK(e3.n == (BigNat(1) << 36) + 5);
  CHECK(bw::to_decimal(e3.n) == "68719476741");
  CHECK(e3.seed_start == 35);
  CHECK(!e3.seed_end.has_value());
  CHECK(!e3.sigma.has_value());
}

TEST_CASE("the cursor is exhausted after a truncated entry") {
  bw::ScheduleCursor cur(identity_seed(), bw::GapRule::pow2());
  cur.next();
  cur.next();
  const auto& e3 = cur.next();
  CHECK(!e3.seed_end.has_value());
  CHECK(thrown_code([&] { cur.next(); }) == bw::errc::index_unrepresentable);
}

TEST_CASE("value-budget truncation keeps the range but drops sigma") {
  bw::BudgetOverride o(20);
  auto seed = IncreasingSequenceSpec::affine(BigNat(1) << 19, BigNat(0));
  bw::ScheduleCursor cur(seed, bw::GapRule::pow2());
  // Block 1 spans seed indices 1..2, but term 2 = 2^20 needs 21 bits.
  const auto& e1 = cur.next();
  CHECK(e1.n == 1);
  REQUIRE(e1.seed_end.has_value());
  CHECK(*e1.seed_end == 2);
  CHECK(!e1.sigma.has_value());
  CHECK(thrown_code([&] { cur.next(); }) == bw::errc::index_unrepresentable);
}

TEST_CASE("a short explicit seed fails with seed_unevaluable, not truncation") {
  auto seed = IncreasingSequenceSpec::explicit_prefix({BigNat(1), BigNat(2)});
  bw::ScheduleCursor cur(seed, bw::GapRule::pow2());
  const auto& e1 = cur.next();
  REQUIRE(e1.sigma.has_value());
  CHECK(*e1.sigma == 2);
  // Block 2 needs seed term 34 of a two-term seed.
  CHECK(thrown_code([&] { cur.next(); }) == bw::errc::seed_unevaluable);
}

TEST_CASE("injected sigma+1 gap rule stays enumerable") {
  bw::Schedule s = bw::schedule(identity_seed(), BigNat(4), bw::GapRule::sigma_plus_1());
  REQUIRE(s.entries.size() == 4);
  CHECK(s.entries[0].n == 1);
  CHECK(*s.entries[0].sigma == 2);
  CHECK(s.entries[1].n == 4);
  CHECK(s.entries[1].seed_start == 3);
  CHECK(*s.entries[1].seed_end == 18);
  CHECK(*s.entries[1].sigma == 20);
  CHECK(s.entries[2].n == 25);
  CHECK(s.entries[2].seed_start == 19);
  CHECK(*s.entries[2].seed_end == 33554450);
  CHECK(*s.entries[2].sigma == 33554470);
  CHECK(s.entries[3].n == 33554496);
}

TEST_CASE("schedule bounds are validated") {
  CHECK(thrown_code([] { bw::schedule(identity_seed(), BigNat(0)); }) == bw::errc::validation);
  CHECK(thrown_code([] { bw::schedule(identity_seed(), BigNat(2000000)); }) ==
        bw::errc::validation);
}

TEST_CASE("block ranges tile the seed indices consecutively") {
  auto seed = IncreasingSequenceSpec::affine(BigNat(2), BigNat(5));
  bw::Schedule s = bw::schedule(seed, BigNat(2));
  BigNat expect_start = 1;
  for (const auto& e : s.entries) {
    CHECK(e.seed_start == expect_start);
    REQUIRE(e.seed_end.has_value());
    CHECK(*e.seed_end - e.seed_start + 1 == bw::checked_pow2(e.n, "t"));
    expect_start = *e.seed_end + 1;
  }
}

TEST_CASE("antichain terms follow the heap numbering along the ray") {
  using bw::RaySpec;
  auto zeros = bw::antichain_terms(RaySpec::all_zeros(), 4);
  CHECK(zeros == std::vector<BigNat>{BigNat(1), BigNat(2), BigNat(4), BigNat(8)});
  auto ones = bw::antichain_terms(RaySpec::all_ones(), 4);
  CHECK(ones == std::vector<BigNat>{BigNat(1), BigNat(3), BigNat(7), BigNat(15)});
  auto mixed = bw::antichain_terms(RaySpec::all_ones({0}), 4);
  CHECK(mixed == std::vector<BigNat>{BigNat(1), BigNat(2), BigNat(5), BigNat(11)});

  bw::BudgetOverride o(16);
  CHECK(bw::antichain_terms(RaySpec::all_zeros(), 15).size() == 15);
  CHECK(thrown_code([] { bw::antichain_terms(RaySpec::all_zeros(), 16); }) ==
        bw::errc::index_unrepresentable);
}

TEST_CASE("common label count is the shared prefix length") {
  using bw::RaySpec;
  auto c = bw::antichain_common_count(RaySpec::all_zeros(), RaySpec::all_ones());
  CHECK(!c.infinite);
  CHECK(c.count == 1);

  auto deep = bw::antichain_common_count(RaySpec::all_ones({0, 1, 1}), RaySpec::all_ones());
  CHECK(!deep.infinite);
  CHECK(deep.count == 1);  // first bits differ already

  auto shared = bw::antichain_common_count(RaySpec::all_zeros({1, 1}), RaySpec::all_ones({1, 1, 0}));
  CHECK(!shared.infinite);
  CHECK(shared.count == 4);  // bits agree through depth 2, differ at index 3

  auto same = bw::antichain_common_count(RaySpec::all_ones({1}), RaySpec::all_ones({1, 1}));
  CHECK(same.infinite);
}
