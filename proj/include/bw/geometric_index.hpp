#pragma once

#include <string>
#include <vector>

#include "bw/bigint.hpp"

namespace bw {

// The two model constructions a torus can receive.
enum class LinkKind { bing, whitehead };

const char* link_kind_name(LinkKind kind);

// Chain of constructions from an outer torus down to an inner stage. Empty
// chain = identity nesting (parallel boundaries).
using IndexedNesting = std::vector<LinkKind>;

// Minimal meridional-disk intersection count of one model construction in its
// parent torus: 2 for both kinds.
BigNat link_index(LinkKind kind);

// Index of the innermost stage in the outermost torus: the product of the
// per-level indices; 1 for the empty chain.
BigNat compose_index(const IndexedNesting& chain);

// Index of the stage-`inner` union inside one stage-`outer` torus of any
// labeled-tree construction: every level in between contributes a factor 2.
// Requires outer <= inner.
BigNat stage_index(const BigNat& outer_stage, const BigNat& inner_stage);

// Parity bookkeeping for two tori of individual indices a, b inside a parent:
// when both are null-homologous (index 0), the pair's joint index must be
// even; any other individual indices impose no parity constraint here.
bool parity_admissible(const BigNat& index_a, const BigNat& index_b, const BigNat& pair_index);

}  // namespace bw
