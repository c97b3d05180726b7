#pragma once

#include <optional>
#include <string>

#include "bw/defining_tree.hpp"
#include "bw/dyadic.hpp"

namespace bw {

// Exact state of the criterion series after stage i: sigma_i (cumulative sum
// of per-stage label maxima) and sum_{t=1..i} 2^{-sigma_t} as a dyadic.
struct SeriesState {
  BigNat stage;
  BigNat sigma;
  Dyadic partial_sum;
};

// Divergence of the criterion series is only ever certified through a
// recognized structural rule; finite evidence alone yields partial_only and
// anything else stays unknown. Reason codes:
//   "cs-block-lemma":        every sigma-run of a pow2-gap staged construction
//                            has length 2^sigma, so each block contributes
//                            exactly 1 and partial sums are unbounded.
//   "eventually-zero-labels": all labels vanish beyond a known stage, sigma
//                            stabilizes, terms are eventually a positive
//                            constant.
//   "explicit-bound":        caller-supplied certificate (accepted on the
//                            wire, never produced by divergence_report).
struct DivergenceVerdict {
  enum class Kind { diverges_certified, partial_only, unknown };
  Kind kind = Kind::unknown;
  std::string reason;               // certification rule code
  std::optional<SeriesState> state; // partial_only: exact state at the horizon
  std::string note;
};

// Exact series state at stage i. Blockwise for staged constructions (cost is
// the number of blocks reaching stage i, never i); per-stage for explicit
// specs. Raises the spec's own errors when i crosses an evaluation horizon or
// the bit budget.
SeriesState series_state(const DefiningSequenceSpec& spec, const BigNat& i);

DivergenceVerdict divergence_report(const DefiningSequenceSpec& spec);

}  // namespace bw
