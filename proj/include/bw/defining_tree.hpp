#pragma once

#include <optional>
#include <vector>

#include "bw/construction.hpp"
#include "bw/rays.hpp"

namespace bw {

// Labels of one tree stage. Three shapes: the literal label list (2^i values),
// the all-zero stage, or a scheduled Bing-block stage whose 2^i labels are the
// seed terms [seed_start, seed_end] in address order.
struct StageLabeling {
  enum class Kind { explicit_labels, all_zeros, bing_block };
  BigNat stage;
  Kind kind = Kind::all_zeros;
  std::vector<BigNat> labels;  // explicit_labels
  BigNat block;                // bing_block
  BigNat seed_start;
  BigNat seed_end;
};

// Per-stage label sequence m_1, m_2, ... with every node of stage i carrying
// m_i. `list` is knowledge up to a horizon; `prefix_then_zero` is total.
struct MSpec {
  enum class Kind { list, constant, prefix_then_zero };
  Kind kind = Kind::list;
  std::vector<BigNat> terms;
  BigNat value;

  void validate() const;
  // m_i; nullopt when the sequence is only known up to a horizon (list kind).
  std::optional<BigNat> at(const BigNat& i) const;
};

// A labeled binary tree presented one of three ways. Stage 0 is always the
// single root with label 0.
struct DefiningSequenceSpec {
  enum class Kind { explicit_stages, cs_family, standard_bw };
  Kind kind = Kind::explicit_stages;

  // explicit_stages: stages[i] = the 2^i labels of stage i, i <= depth.
  std::vector<std::vector<BigNat>> stages;

  // cs_family: staged construction from a seed. gap is pow2 for the real
  // construction; injectable for oracles.
  IncreasingSequenceSpec seed;
  GapRule gap;

  // standard_bw
  MSpec m;

  static DefiningSequenceSpec explicit_stages_spec(std::vector<std::vector<BigNat>> stages);
  static DefiningSequenceSpec standard_bw_spec(MSpec m);

  void validate() const;
};

DefiningSequenceSpec cs_spec(IncreasingSequenceSpec seed);
DefiningSequenceSpec cs_spec_with_gap(IncreasingSequenceSpec seed, GapRule gap);

StageLabeling stage_labels(const DefiningSequenceSpec& spec, const BigNat& i);

BigNat label_at(const DefiningSequenceSpec& spec, const NodeAddress& addr);

}  // namespace bw
