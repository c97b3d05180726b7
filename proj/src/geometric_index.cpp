#include "bw/geometric_index.hpp"

namespace bw {

const char* link_kind_name(LinkKind kind) {
  switch (kind) {
    case LinkKind::bing: return "Bing";
    case LinkKind::whitehead: return "Whitehead";
  }
  return "?";
}

BigNat link_index(LinkKind kind) {
  switch (kind) {
    case LinkKind::bing: return 2;
    case LinkKind::whitehead: return 2;
  }
  fail(errc::internal, "unhandled link kind");
}

BigNat compose_index(const IndexedNesting& chain) {
  BigNat idx = 1;
  for (LinkKind k : chain) idx = checked_mul(idx, link_index(k), "geometric index");
  return idx;
}

BigNat stage_index(const BigNat& outer_stage, const BigNat& inner_stage) {
  if (inner_stage < outer_stage)
    fail(errc::validation, "inner stage " + to_decimal(inner_stage) + " precedes outer stage " +
                               to_decimal(outer_stage));
  return checked_pow2(inner_stage - outer_stage, "stage index");
}

bool parity_admissible(const BigNat& index_a, const BigNat& index_b, const BigNat& pair_index) {
  if (index_a != 0 || index_b != 0) return true;
  return pair_index % 2 == 0;
}

}  // namespace bw
