#include "bw/defining_tree.hpp"

#include <algorithm>
#include <numeric>

namespace bw {

// --- addresses ---------------------------------------------------------------

NodeAddress NodeAddress::child(int bit) const {
  if (bit != 0 && bit != 1) fail(errc::validation, "child bit must be 0 or 1");
  NodeAddress c{bits};
  c.bits.push_back(bit);
  return c;
}

std::pair<NodeAddress, NodeAddress> NodeAddress::children() const {
  return {child(0), child(1)};
}

std::string NodeAddress::to_string() const {
  if (bits.empty()) return "root";
  std::string s;
  s.reserve(bits.size());
  for (int b : bits) s.push_back(b ? '1' : '0');
  return s;
}

NodeAddress address_from_bits(std::vector<int> bits) {
  for (int b : bits)
    if (b != 0 && b != 1) fail(errc::validation, "address bits must be 0 or 1");
  return NodeAddress{std::move(bits)};
}

// --- rays --------------------------------------------------------------------

namespace {
constexpr std::size_t kMaxPrefixBits = std::size_t(1) << 20;
constexpr std::size_t kMaxPatternBits = std::size_t(1) << 16;

void check_bits(const std::vector<int>& v, const char* what) {
  for (int b : v)
    if (b != 0 && b != 1) fail(errc::validation, std::string(what) + " bits must be 0 or 1");
}
}  // namespace

RaySpec RaySpec::all_zeros(std::vector<int> prefix) {
  return periodic(std::move(prefix), {0});
}

RaySpec RaySpec::all_ones(std::vector<int> prefix) {
  return periodic(std::move(prefix), {1});
}

RaySpec RaySpec::periodic(std::vector<int> prefix, std::vector<int> pattern) {
  RaySpec r{std::move(prefix), std::move(pattern)};
  r.validate();
  return r;
}

void RaySpec::validate() const {
  if (pattern.empty()) fail(errc::validation, "ray pattern must be nonempty");
  if (prefix.size() > kMaxPrefixBits || pattern.size() > kMaxPatternBits)
    fail(errc::validation, "ray prefix/pattern too long");
  check_bits(prefix, "ray prefix");
  check_bits(pattern, "ray pattern");
}

int RaySpec::bit_at(std::uint64_t k) const {
  if (k < prefix.size()) return prefix[static_cast<std::size_t>(k)];
  return pattern[static_cast<std::size_t>((k - prefix.size()) % pattern.size())];
}

std::vector<int> RaySpec::bits_upto(std::uint64_t count) const {
  if (count > kMaxPrefixBits * 2)
    fail(errc::index_unrepresentable, "ray expansion too long to materialize");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t k = 0; k < count; ++k) out.push_back(bit_at(k));
  return out;
}

NodeAddress RaySpec::node_at(std::uint64_t depth) const {
  return NodeAddress{bits_upto(depth)};
}

RaySpec RaySpec::normalized() const {
  validate();
  RaySpec r = *this;
  // Reduce the pattern to its primitive period.
  for (std::size_t d = 1; d <= r.pattern.size() / 2; ++d) {
    if (r.pattern.size() % d != 0) continue;
    bool rep = true;
    for (std::size_t k = d; k < r.pattern.size() && rep; ++k)
      rep = r.pattern[k] == r.pattern[k % d];
    if (rep) {
      r.pattern.resize(d);
      break;
    }
  }
  // Absorb prefix bits that already agree with the cycle, keeping the phase.
  while (!r.prefix.empty() && r.prefix.back() == r.pattern.back()) {
    r.prefix.pop_back();
    std::rotate(r.pattern.rbegin(), r.pattern.rbegin() + 1, r.pattern.rend());
  }
  return r;
}

std::string RaySpec::to_string() const {
  std::string s;
  for (int b : prefix) s.push_back(b ? '1' : '0');
  s.push_back('/');
  for (int b : pattern) s.push_back(b ? '1' : '0');
  return s;
}

bool rays_equal(const RaySpec& a, const RaySpec& b) {
  RaySpec na = a.normalized(), nb = b.normalized();
  return na.prefix == nb.prefix && na.pattern == nb.pattern;
}

std::optional<std::uint64_t> ray_divergence_depth(const RaySpec& a, const RaySpec& b) {
  RaySpec na = a.normalized(), nb = b.normalized();
  if (na.prefix == nb.prefix && na.pattern == nb.pattern) return std::nullopt;
  // Distinct eventually periodic streams must differ before
  // max(preperiods) + lcm(periods).
  std::uint64_t bound = std::max(na.prefix.size(), nb.prefix.size()) +
                        std::lcm<std::uint64_t>(na.pattern.size(), nb.pattern.size());
  for (std::uint64_t k = 0; k < bound; ++k)
    if (na.bit_at(k) != nb.bit_at(k)) return k;
  fail(errc::internal, "normal forms differ but streams agree through the decision bound");
}

// --- labeled defining sequences ---------------------------------------------

void DefiningSequenceSpec::validate() const {
  switch (kind) {
    case Kind::explicit_stages: {
      if (stages.empty()) fail(errc::validation, "explicit spec needs at least stage 0");
      if (stages[0].size() != 1 || stages[0][0] != 0)
        fail(errc::validation, "stage 0 must consist of the single root label 0");
      BigNat want = 1;
      for (std::size_t i = 0; i < stages.size(); ++i) {
        if (i > 0) {
          want = checked_mul(want, BigNat(2), "stage width");
          if (want > (BigNat(1) << 20))
            fail(errc::validation, "explicit spec too deep to materialize");
        }
        if (BigNat(stages[i].size()) != want)
          fail(errc::validation, "stage " + std::to_string(i) + " must have 2^" +
                                     std::to_string(i) + " labels");
      }
      break;
    }
    case Kind::cs_family:
      seed.validate();
      if (!gap.fn) fail(errc::validation, "cs spec needs a gap rule");
      break;
    case Kind::standard_bw:
      m.validate();
      break;
  }
}

void MSpec::validate() const {
  switch (kind) {
    case Kind::list:
    case Kind::prefix_then_zero:
      break;
    case Kind::constant:
      break;
  }
}

std::optional<BigNat> MSpec::at(const BigNat& i) const {
  if (i == 0) return BigNat(0);
  switch (kind) {
    case Kind::list:
      if (i <= terms.size()) return terms[static_cast<std::size_t>(i - 1)];
      return std::nullopt;
    case Kind::prefix_then_zero:
      if (i <= terms.size()) return terms[static_cast<std::size_t>(i - 1)];
      return BigNat(0);
    case Kind::constant:
      return value;
  }
  return std::nullopt;
}

DefiningSequenceSpec DefiningSequenceSpec::explicit_stages_spec(
    std::vector<std::vector<BigNat>> stages) {
  DefiningSequenceSpec s;
  s.kind = Kind::explicit_stages;
  s.stages = std::move(stages);
  s.validate();
  return s;
}

DefiningSequenceSpec DefiningSequenceSpec::standard_bw_spec(MSpec m) {
  DefiningSequenceSpec s;
  s.kind = Kind::standard_bw;
  s.m = std::move(m);
  s.validate();
  return s;
}

DefiningSequenceSpec cs_spec(IncreasingSequenceSpec seed) {
  DefiningSequenceSpec s;
  s.kind = DefiningSequenceSpec::Kind::cs_family;
  s.seed = std::move(seed);
  s.gap = GapRule::pow2();
  s.validate();
  return s;
}

DefiningSequenceSpec cs_spec_with_gap(IncreasingSequenceSpec seed, GapRule gap) {
  DefiningSequenceSpec s;
  s.kind = DefiningSequenceSpec::Kind::cs_family;
  s.seed = std::move(seed);
  s.gap = std::move(gap);
  s.validate();
  return s;
}

namespace {

StageLabeling all_zeros_stage(BigNat stage) {
  StageLabeling l;
  l.stage = std::move(stage);
  l.kind = StageLabeling::Kind::all_zeros;
  return l;
}

}  // namespace

StageLabeling stage_labels(const DefiningSequenceSpec& spec, const BigNat& i) {
  spec.validate();
  switch (spec.kind) {
    case DefiningSequenceSpec::Kind::explicit_stages: {
      if (i >= spec.stages.size())
        fail(errc::stage_out_of_range,
             "stage " + to_decimal(i) + " beyond explicit depth " +
                 std::to_string(spec.stages.size() - 1));
      StageLabeling l;
      l.stage = i;
      l.kind = StageLabeling::Kind::explicit_labels;
      l.labels = spec.stages[static_cast<std::size_t>(i)];
      return l;
    }
    case DefiningSequenceSpec::Kind::cs_family: {
      if (i == 0) return all_zeros_stage(i);
      ScheduleCursor cur(spec.seed, spec.gap);
      while (true) {
        const ScheduleEntry& e = cur.next();
        if (e.n == i) {
          if (!e.seed_end)
            fail(errc::index_unrepresentable,
                 "seed range endpoint for block " + to_decimal(e.j) + " exceeds the bit budget");
          StageLabeling l;
          l.stage = i;
          l.kind = StageLabeling::Kind::bing_block;
          l.block = e.j;
          l.seed_start = e.seed_start;
          l.seed_end = *e.seed_end;
          return l;
        }
        if (e.n > i) return all_zeros_stage(i);
        if (!e.seed_end)
          fail(errc::index_unrepresentable,
               "cannot classify stage " + to_decimal(i) + ": schedule beyond block " +
                   to_decimal(e.j) + " exceeds the bit budget");
      }
    }
    case DefiningSequenceSpec::Kind::standard_bw: {
      if (i == 0) return all_zeros_stage(i);
      std::optional<BigNat> mi = spec.m.at(i);
      if (!mi)
        fail(errc::seed_unevaluable,
             "m-sequence has no term " + to_decimal(i) + " (finite list)");
      if (*mi == 0) return all_zeros_stage(i);
      if (i > 20)
        fail(errc::index_unrepresentable,
             "stage " + to_decimal(i) + " would materialize 2^" + to_decimal(i) + " labels");
      StageLabeling l;
      l.stage = i;
      l.kind = StageLabeling::Kind::explicit_labels;
      l.labels.assign(std::size_t(1) << static_cast<unsigned>(i), *mi);
      return l;
    }
  }
  fail(errc::internal, "unhandled spec kind");
}

BigNat label_at(const DefiningSequenceSpec& spec, const NodeAddress& addr) {
  spec.validate();
  const std::uint64_t d = addr.depth();
  switch (spec.kind) {
    case DefiningSequenceSpec::Kind::explicit_stages: {
      if (d >= spec.stages.size())
        fail(errc::stage_out_of_range, "address depth " + std::to_string(d) +
                                           " beyond explicit depth " +
                                           std::to_string(spec.stages.size() - 1));
      return spec.stages[static_cast<std::size_t>(d)][static_cast<std::size_t>(addr.ordinal())];
    }
    case DefiningSequenceSpec::Kind::cs_family: {
      if (d == 0) return 0;
      StageLabeling l = stage_labels(spec, BigNat(d));
      if (l.kind == StageLabeling::Kind::all_zeros) return 0;
      return seed_term(spec.seed, checked_add(l.seed_start, addr.ordinal(), "seed index"));
    }
    case DefiningSequenceSpec::Kind::standard_bw: {
      std::optional<BigNat> mi = spec.m.at(BigNat(d));
      if (!mi) fail(errc::seed_unevaluable, "m-sequence has no term " + std::to_string(d));
      return *mi;
    }
  }
  fail(errc::internal, "unhandled spec kind");
}

}  // namespace bw
