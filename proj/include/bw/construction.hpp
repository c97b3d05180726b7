#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bw/bigint.hpp"
#include "bw/rays.hpp"

namespace bw {

// Strictly increasing sequence of positive naturals, the seed the staged
// construction consumes. Three shapes: a finite explicit prefix (queries past
// the end raise seed_unevaluable), an affine progression a*i + b with a >= 1,
// and the label sequence read off a descending ray of the numbered tree.
struct IncreasingSequenceSpec {
  enum class Kind { explicit_prefix, affine, antichain_ray };
  Kind kind = Kind::affine;

  std::vector<BigNat> terms;  // explicit_prefix
  BigNat a = 1, b = 0;        // affine
  RaySpec ray;                // antichain_ray

  static IncreasingSequenceSpec explicit_prefix(std::vector<BigNat> terms);
  static IncreasingSequenceSpec affine(BigNat a, BigNat b);
  static IncreasingSequenceSpec antichain(RaySpec ray);

  void validate() const;  // raises invalid_seed
};

// Term s_i, 1-based. Raises seed_unevaluable past an explicit prefix and
// index_unrepresentable when the value would blow the bit budget.
BigNat seed_term(const IncreasingSequenceSpec& seed, const BigNat& i);

// n_{j+1} = gap(sigma at n_j) + n_j. The staged construction uses gap = 2^sigma,
// which makes every sigma-run contribute exactly 1 to the criterion series;
// small injectable rules keep brute-force oracles within enumerable range.
struct GapRule {
  std::string name;
  std::function<BigNat(const BigNat&)> fn;

  static GapRule pow2();
  static GapRule sigma_plus_1();  // test/oracle rule
};

// One scheduled (Bing-block) stage. Block j sits at stage n, consumes the
// consecutive seed indices [seed_start, seed_end], and sigma is the cumulative
// per-stage maximum through stage n. seed_end is empty when the block length
// 2^n exceeds the bit budget, sigma additionally when the block maximum does;
// a truncated entry is always the last one producible for its seed.
struct ScheduleEntry {
  BigNat j;
  BigNat n;
  std::optional<BigNat> sigma;
  BigNat seed_start;
  std::optional<BigNat> seed_end;
};

struct Schedule {
  std::string gap_rule;
  std::vector<ScheduleEntry> entries;
};

// Streams schedule entries one block at a time. next() after a truncated
// entry (empty seed_end) raises index_unrepresentable.
class ScheduleCursor {
 public:
  ScheduleCursor(const IncreasingSequenceSpec& seed, const GapRule& gap);

  const ScheduleEntry& next();
  const ScheduleEntry& current() const { return entry_; }

 private:
  const IncreasingSequenceSpec& seed_;
  const GapRule& gap_;
  ScheduleEntry entry_;
  BigNat next_start_ = 1;
  bool exhausted_ = false;
  bool started_ = false;
};

Schedule schedule(const IncreasingSequenceSpec& seed, const BigNat& j_max);
Schedule schedule(const IncreasingSequenceSpec& seed, const BigNat& j_max, const GapRule& gap);

// Heap numbering of the infinite binary tree along a ray: root gets 1, the
// child along bit b of a node labeled L gets 2L + b. Terms are strictly
// increasing, and the label determines the full path from the root.
std::vector<BigNat> antichain_terms(const RaySpec& ray, std::uint64_t count);

struct CommonCount {
  bool infinite = false;
  BigNat count;  // meaningful when !infinite
};

// Number of common label values of two rays: the shared-prefix vertices
// (divergence depth + 1), or infinite for equal rays.
CommonCount antichain_common_count(const RaySpec& a, const RaySpec& b);

}  // namespace bw
