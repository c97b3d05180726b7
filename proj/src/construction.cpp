#include "bw/construction.hpp"

namespace bw {

IncreasingSequenceSpec IncreasingSequenceSpec::explicit_prefix(std::vector<BigNat> terms) {
  IncreasingSequenceSpec s;
  s.kind = Kind::explicit_prefix;
  s.terms = std::move(terms);
  s.validate();
  return s;
}

IncreasingSequenceSpec IncreasingSequenceSpec::affine(BigNat a, BigNat b) {
  IncreasingSequenceSpec s;
  s.kind = Kind::affine;
  s.a = std::move(a);
  s.b = std::move(b);
  s.validate();
  return s;
}

IncreasingSequenceSpec IncreasingSequenceSpec::antichain(RaySpec ray) {
  IncreasingSequenceSpec s;
  s.kind = Kind::antichain_ray;
  s.ray = std::move(ray);
  s.validate();
  return s;
}

void IncreasingSequenceSpec::validate() const {
  switch (kind) {
    case Kind::explicit_prefix: {
      if (terms.empty()) fail(errc::invalid_seed, "explicit seed prefix is empty");
      if (terms[0] < 1) fail(errc::invalid_seed, "seed terms must be positive");
      for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i] <= terms[i - 1])
          fail(errc::invalid_seed, "seed not strictly increasing at position " +
                                       std::to_string(i + 1));
      break;
    }
    case Kind::affine:
      if (a < 1) fail(errc::invalid_seed, "affine seed needs slope a >= 1");
      break;
    case Kind::antichain_ray:
      ray.validate();
      break;
  }
}

BigNat seed_term(const IncreasingSequenceSpec& seed, const BigNat& i) {
  if (i < 1) fail(errc::validation, "seed indices are 1-based");
  switch (seed.kind) {
    case IncreasingSequenceSpec::Kind::explicit_prefix:
      if (i > seed.terms.size())
        fail(errc::seed_unevaluable, "seed has only " + std::to_string(seed.terms.size()) +
                                         " terms, index " + to_decimal(i) + " requested");
      return seed.terms[static_cast<std::size_t>(i - 1)];
    case IncreasingSequenceSpec::Kind::affine:
      return checked_add(checked_mul(seed.a, i, "seed term"), seed.b, "seed term");
    case IncreasingSequenceSpec::Kind::antichain_ray: {
      // Term i is the heap label at ray depth i-1: 2^{i-1} + ordinal of the
      // first i-1 bits. Needs i-1 bits, so i-1 must fit the budget.
      BigNat depth = i - 1;
      if (depth >= bigint_budget_bits())
        fail(errc::index_unrepresentable,
             "antichain term " + to_decimal(i) + " needs " + to_decimal(i) + " bits");
      std::uint64_t d = static_cast<std::uint64_t>(depth);
      BigNat label = checked_pow2(depth, "antichain term");
      label |= bits_to_bignat(seed.ray.bits_upto(d));
      return label;
    }
  }
  fail(errc::internal, "unhandled seed kind");
}

GapRule GapRule::pow2() {
  return GapRule{"pow2", [](const BigNat& sigma) { return checked_pow2(sigma, "schedule gap"); }};
}

GapRule GapRule::sigma_plus_1() {
  return GapRule{"sigma_plus_1",
                 [](const BigNat& sigma) { return checked_add(sigma, BigNat(1), "schedule gap"); }};
}

ScheduleCursor::ScheduleCursor(const IncreasingSequenceSpec& seed, const GapRule& gap)
    : seed_(seed), gap_(gap) {
  seed_.validate();
  if (!gap_.fn) fail(errc::validation, "schedule needs a gap rule");
}

const ScheduleEntry& ScheduleCursor::next() {
  if (exhausted_)
    fail(errc::index_unrepresentable,
         "schedule beyond block " + to_decimal(entry_.j) + " exceeds the bit budget");
  ScheduleEntry e;
  if (!started_) {
    e.j = 1;
    e.n = 1;
  } else {
    e.j = entry_.j + 1;
    // sigma is present here: a truncated entry marks the cursor exhausted.
    e.n = checked_add(gap_.fn(*entry_.sigma), entry_.n, "schedule stage");
  }
  e.seed_start = next_start_;
  // Block j consumes 2^{n_j} consecutive seed terms; its maximum is the last
  // one since the seed increases strictly. A block whose range or maximum
  // blows the bit budget is reported truncated and ends the schedule.
  try {
    BigNat len = checked_pow2(e.n, "block length");
    e.seed_end = checked_add(e.seed_start, len - 1, "seed range end");
  } catch (const error& err) {
    if (err.code() != errc::index_unrepresentable) throw;
    exhausted_ = true;
  }
  if (e.seed_end) {
    try {
      BigNat w = seed_term(seed_, *e.seed_end);
      BigNat prev_sigma = started_ ? *entry_.sigma : BigNat(0);
      e.sigma = checked_add(prev_sigma, w, "sigma");
      next_start_ = *e.seed_end + 1;
    } catch (const error& err) {
      if (err.code() != errc::index_unrepresentable) throw;
      exhausted_ = true;
    }
  }
  started_ = true;
  entry_ = std::move(e);
  return entry_;
}

Schedule schedule(const IncreasingSequenceSpec& seed, const BigNat& j_max) {
  return schedule(seed, j_max, GapRule::pow2());
}

Schedule schedule(const IncreasingSequenceSpec& seed, const BigNat& j_max, const GapRule& gap) {
  if (j_max < 1) fail(errc::validation, "j_max must be >= 1");
  if (j_max > 1000000) fail(errc::validation, "j_max too large to materialize");
  Schedule s;
  s.gap_rule = gap.name;
  ScheduleCursor cur(seed, gap);
  for (BigNat j = 1; j <= j_max; ++j) s.entries.push_back(cur.next());
  return s;
}

std::vector<BigNat> antichain_terms(const RaySpec& ray, std::uint64_t count) {
  ray.validate();
  if (count >= bigint_budget_bits())
    fail(errc::index_unrepresentable, "antichain term " + std::to_string(count) +
                                          " exceeds the bit budget");
  std::vector<BigNat> out;
  out.reserve(static_cast<std::size_t>(count));
  BigNat label = 1;
  for (std::uint64_t k = 0; k < count; ++k) {
    if (k > 0) {
      label <<= 1;
      label += ray.bit_at(k - 1);
    }
    out.push_back(label);
  }
  return out;
}

CommonCount antichain_common_count(const RaySpec& a, const RaySpec& b) {
  std::optional<std::uint64_t> d = ray_divergence_depth(a, b);
  if (!d) return CommonCount{true, BigNat(0)};
  // Labels encode the full root path, so distinct vertices get distinct
  // labels; the shared values are exactly the shared-prefix vertices.
  return CommonCount{false, BigNat(*d) + 1};
}

}  // namespace bw
