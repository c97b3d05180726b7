#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bw/cantor_criterion.hpp"
#include "bw/construction.hpp"
#include "bw/defining_tree.hpp"

namespace bw {

// Sparse presentation of a sequence indexed by the naturals: value 0 at every
// position outside the support. Position 0 is never in the support (every
// label sequence along a ray starts with the root's 0).
struct SupportEntry {
  BigNat position;
  BigNat value;
};

struct SupportedSequence {
  std::vector<SupportEntry> support;  // positions strictly increasing, >= 1; values > 0

  void validate() const;
  BigNat value_at(const BigNat& position) const;
};

// Labels along a ray for stages 0..depth, the leading stage-0 zero included.
std::vector<BigNat> whitehead_prefix(const DefiningSequenceSpec& spec, const RaySpec& ray,
                                     std::uint64_t depth);

// The same prefix in sparse form.
SupportedSequence whitehead_prefix_support(const DefiningSequenceSpec& spec, const RaySpec& ray,
                                           std::uint64_t depth);

// Replayable evidence that two rays' label sequences have different tails:
// at `stage` (the first scheduled stage past the divergence depth) and at
// every scheduled stage after it the rays occupy distinct nodes, so they
// receive distinct terms of the strictly increasing seed.
struct TailWitness {
  std::uint64_t divergence_depth = 0;  // first bit position where the rays differ
  BigNat block;                        // block number j of the cited stage
  BigNat stage;                        // n_j, first scheduled stage > divergence_depth
  std::string reason;                  // "value-mismatch" | "support-misalignment"
  // The two labels at `stage`, recorded when evaluable within the bit budget.
  std::optional<BigNat> label_a;
  std::optional<BigNat> label_b;
};

struct TailVerdict {
  enum class Kind { equal, distinct, refuted_up_to, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<TailWitness> witness;  // distinct
  std::uint64_t max_offset = 0;        // refuted_up_to
  std::uint64_t depth = 0;             // refuted_up_to
  std::string note;
};

const char* tail_verdict_name(TailVerdict::Kind kind);

// Symbolic tail comparison for two rays of one staged construction. Equal iff
// the rays are equal. Otherwise Distinct: both label sequences have support
// exactly {n_j}, whose gaps 2^sigma strictly increase (checked on the entries
// traversed), so any tail alignment forces offset zero; at offset zero every
// scheduled stage past the divergence depth assigns the rays distinct seed
// terms. Purely structural: no big-number label evaluation is required,
// though small witness labels are recorded for replay.
TailVerdict tails_equal_cs(const IncreasingSequenceSpec& seed, const RaySpec& a, const RaySpec& b);

// Finite-window refutation for arbitrary sparse prefixes defined through
// `depth`. For each offset delta in [-max_offset, max_offset] the windows are
// aligned at the origin and compared over every position where both sides are
// defined; RefutedUpTo requires a visible mismatch at every offset,
// Inconclusive otherwise. Finite data can refute tail equality, never confirm
// it. Raises window_too_small when depth < 2*max_offset + 2.
TailVerdict refute_tail_equality(const SupportedSequence& a, const SupportedSequence& b,
                                 std::uint64_t max_offset, std::uint64_t depth);

// How many values two seeds share. Affine pairs are decided exactly by the
// linear congruence on their residues; ray pairs by shared-prefix counting;
// anything else by enumeration below a value bound, which can only ever
// report what it saw.
struct CommonTermsResult {
  enum class Kind { finite, infinite_terms, unknown_up_to };
  Kind kind = Kind::unknown_up_to;
  BigNat count;  // finite: exact count; unknown_up_to: matches found below bound
  BigNat bound;  // unknown_up_to only
  std::string description;
};

const char* common_terms_kind_name(CommonTermsResult::Kind kind);

CommonTermsResult common_terms(const IncreasingSequenceSpec& s, const IncreasingSequenceSpec& t);
CommonTermsResult common_terms(const IncreasingSequenceSpec& s, const IncreasingSequenceSpec& t,
                               const BigNat& enumeration_bound);

// Certificate that the two seeds' constructions are inequivalently embedded,
// issued exactly when the common-term count is provably finite. Absence of a
// certificate is never a claim of equivalence.
struct InequivalenceCertificate {
  bool certified = false;
  CommonTermsResult common;
  std::string note;
};

InequivalenceCertificate inequivalence_certificate(const IncreasingSequenceSpec& a,
                                                   const IncreasingSequenceSpec& b);

// Evidence bundle for a seed's construction over supplied ray pairs: every
// pair of distinct rays must come back Distinct (anything else is an internal
// error), equal-ray pairs are flagged as naming one point twice, and the
// divergence verdict for the seed's criterion series rides along.
struct RigidityPair {
  RaySpec a;
  RaySpec b;
  bool same_point = false;
  TailVerdict verdict;
};

struct RigidityReport {
  DivergenceVerdict divergence;
  std::vector<RigidityPair> pairs;
  std::uint64_t distinct_pair_count = 0;
  std::uint64_t same_point_count = 0;
};

RigidityReport rigidity_report(const IncreasingSequenceSpec& seed,
                               const std::vector<std::pair<RaySpec, RaySpec>>& sample_pairs);

}  // namespace bw
