#include "bw/sequence_logic.hpp"

#include <algorithm>

#include <boost/multiprecision/cpp_int.hpp>

namespace bw {

void SupportedSequence::validate() const {
  const BigNat* prev = nullptr;
  for (const SupportEntry& e : support) {
    if (e.position < 1) fail(errc::validation, "support position 0 is reserved for the leading zero");
    if (e.value < 1) fail(errc::validation, "support values must be positive");
    if (prev && !(*prev < e.position))
      fail(errc::validation, "support positions must strictly increase");
    prev = &e.position;
  }
}

BigNat SupportedSequence::value_at(const BigNat& position) const {
  auto it = std::lower_bound(
      support.begin(), support.end(), position,
      [](const SupportEntry& e, const BigNat& p) { return e.position < p; });
  if (it != support.end() && it->position == position) return it->value;
  return 0;
}

std::vector<BigNat> whitehead_prefix(const DefiningSequenceSpec& spec, const RaySpec& ray,
                                     std::uint64_t depth) {
  spec.validate();
  ray.validate();
  std::vector<BigNat> out;
  out.reserve(depth + 1);
  for (std::uint64_t t = 0; t <= depth; ++t) out.push_back(label_at(spec, ray.node_at(t)));
  return out;
}

SupportedSequence whitehead_prefix_support(const DefiningSequenceSpec& spec, const RaySpec& ray,
                                           std::uint64_t depth) {
  std::vector<BigNat> vals = whitehead_prefix(spec, ray, depth);
  SupportedSequence s;
  for (std::uint64_t t = 1; t <= depth; ++t)
    if (vals[t] != 0) s.support.push_back({BigNat(t), vals[t]});
  return s;
}

const char* tail_verdict_name(TailVerdict::Kind kind) {
  switch (kind) {
    case TailVerdict::Kind::equal: return "Equal";
    case TailVerdict::Kind::distinct: return "Distinct";
    case TailVerdict::Kind::refuted_up_to: return "RefutedUpTo";
    case TailVerdict::Kind::inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

// Ceiling on stages whose 2^n node ordinals we bother to evaluate for witness
// replay labels; beyond it the witness stays structural.
const BigNat kWitnessLabelStageCap = BigNat(1) << 14;

}  // namespace

TailVerdict tails_equal_cs(const IncreasingSequenceSpec& seed, const RaySpec& a, const RaySpec& b) {
  seed.validate();
  a.validate();
  b.validate();
  TailVerdict v;
  std::optional<std::uint64_t> d = ray_divergence_depth(a, b);
  if (!d) {
    v.kind = TailVerdict::Kind::equal;
    v.note = "identical rays carry identical label sequences";
    return v;
  }
  // Nodes at stage t are fixed by the first t bits: the rays agree through
  // stage *d and occupy distinct nodes at every stage > *d.
  GapRule gap = GapRule::pow2();
  ScheduleCursor cur(seed, gap);
  BigNat prev_n = 0;
  BigNat prev_gap = 0;
  while (true) {
    const ScheduleEntry& e = cur.next();
    if (prev_n != 0) {
      BigNat g = e.n - prev_n;
      if (g <= prev_gap)
        fail(errc::internal, "scheduled gaps must strictly increase (offset-zero argument)");
      prev_gap = g;
    }
    prev_n = e.n;
    if (e.n <= *d) continue;
    TailWitness w;
    w.divergence_depth = *d;
    w.block = e.j;
    w.stage = e.n;
    w.reason = "value-mismatch";
    if (e.seed_end && e.n <= kWitnessLabelStageCap) {
      try {
        DefiningSequenceSpec spec = cs_spec(seed);
        const auto stage = static_cast<std::uint64_t>(e.n);
        w.label_a = label_at(spec, a.node_at(stage));
        w.label_b = label_at(spec, b.node_at(stage));
        if (*w.label_a == *w.label_b)
          fail(errc::internal, "distinct nodes of a scheduled stage drew equal seed terms");
      } catch (const error& err) {
        if (err.code() != errc::seed_unevaluable && err.code() != errc::index_unrepresentable)
          throw;
        w.label_a.reset();
        w.label_b.reset();
      }
    }
    v.kind = TailVerdict::Kind::distinct;
    v.witness = std::move(w);
    v.note =
        "both sequences have support {n_j} with strictly increasing gaps, forcing tail offset "
        "zero; every scheduled stage past the divergence depth assigns the rays distinct terms "
        "of the strictly increasing seed";
    return v;
  }
}

TailVerdict refute_tail_equality(const SupportedSequence& a, const SupportedSequence& b,
                                 std::uint64_t max_offset, std::uint64_t depth) {
  a.validate();
  b.validate();
  if (depth < 2 * max_offset + 2)
    fail(errc::window_too_small,
         "window depth " + std::to_string(depth) + " below required " +
             std::to_string(2 * max_offset + 2) + " for offset bound " +
             std::to_string(max_offset));
  TailVerdict v;
  v.max_offset = max_offset;
  v.depth = depth;
  std::vector<std::int64_t> surviving;
  for (std::int64_t delta = -static_cast<std::int64_t>(max_offset);
       delta <= static_cast<std::int64_t>(max_offset); ++delta) {
    // a(k) against b(k + delta), over every k with both positions in [0, depth].
    const std::uint64_t k_lo = delta < 0 ? static_cast<std::uint64_t>(-delta) : 0;
    const std::uint64_t k_hi = depth - (delta > 0 ? static_cast<std::uint64_t>(delta) : 0);
    bool mismatch = false;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
      if (a.value_at(BigNat(k)) != b.value_at(BigNat(k) + delta)) {
        mismatch = true;
        break;
      }
    }
    if (!mismatch) surviving.push_back(delta);
  }
  if (surviving.empty()) {
    v.kind = TailVerdict::Kind::refuted_up_to;
    v.note = "every offset within the window exhibits a mismatch";
  } else {
    v.kind = TailVerdict::Kind::inconclusive;
    std::string offs;
    for (std::int64_t delta : surviving) {
      if (!offs.empty()) offs += ", ";
      offs += std::to_string(delta);
    }
    v.note = "offset(s) " + offs + " survive the window; finite data cannot confirm tail equality";
  }
  return v;
}

const char* common_terms_kind_name(CommonTermsResult::Kind kind) {
  switch (kind) {
    case CommonTermsResult::Kind::finite: return "Finite";
    case CommonTermsResult::Kind::infinite_terms: return "Infinite";
    case CommonTermsResult::Kind::unknown_up_to: return "UnknownUpTo";
  }
  return "?";
}

namespace {

// Terms of `seed` with value <= bound, in order.
std::vector<BigNat> values_up_to(const IncreasingSequenceSpec& seed, const BigNat& bound) {
  std::vector<BigNat> out;
  BigNat i = 1;
  while (true) {
    BigNat v;
    try {
      v = seed_term(seed, i);
    } catch (const error& err) {
      if (err.code() == errc::seed_unevaluable || err.code() == errc::index_unrepresentable) break;
      throw;
    }
    if (v > bound) break;
    out.push_back(std::move(v));
    ++i;
  }
  return out;
}

// Whether `value` occurs among the seed's evaluable terms.
bool seed_contains(const IncreasingSequenceSpec& seed, const BigNat& value) {
  switch (seed.kind) {
    case IncreasingSequenceSpec::Kind::affine:
      return value >= seed.a + seed.b && (value - seed.b) % seed.a == 0;
    case IncreasingSequenceSpec::Kind::explicit_prefix:
      return std::binary_search(seed.terms.begin(), seed.terms.end(), value);
    case IncreasingSequenceSpec::Kind::antichain_ray: {
      BigNat i = 1;
      while (true) {
        BigNat v;
        try {
          v = seed_term(seed, i);
        } catch (const error& err) {
          if (err.code() == errc::index_unrepresentable) return false;
          throw;
        }
        if (v == value) return true;
        if (v > value) return false;
        ++i;
      }
    }
  }
  return false;
}

// For mixed and explicit pairs, enumerate the side whose candidate list below
// the bound is cheapest and membership-test the other.
const IncreasingSequenceSpec& enumeration_side(const IncreasingSequenceSpec& s,
                                               const IncreasingSequenceSpec& t, bool& swapped) {
  using K = IncreasingSequenceSpec::Kind;
  auto rank = [](const IncreasingSequenceSpec& x) {
    switch (x.kind) {
      case K::antichain_ray: return 0;  // logarithmically many terms below any bound
      case K::explicit_prefix: return 1;
      case K::affine: return 2;
    }
    return 3;
  };
  swapped = rank(t) < rank(s);
  return swapped ? t : s;
}

}  // namespace

CommonTermsResult common_terms(const IncreasingSequenceSpec& s, const IncreasingSequenceSpec& t,
                               const BigNat& enumeration_bound) {
  s.validate();
  t.validate();
  using K = IncreasingSequenceSpec::Kind;
  CommonTermsResult r;
  if (s.kind == K::affine && t.kind == K::affine) {
    // {a*i + b : i >= 1} meets {c*j + d : j >= 1} iff b == d (mod gcd(a, c));
    // a common value repeats with period lcm(a, c), so soluble means infinite.
    BigNat g = boost::multiprecision::gcd(s.a, t.a);
    BigNat diff = s.b > t.b ? s.b - t.b : t.b - s.b;
    if (diff % g == 0) {
      r.kind = CommonTermsResult::Kind::infinite_terms;
      r.description = "congruence soluble: common values form a full residue class modulo lcm(" +
                      to_decimal(s.a) + ", " + to_decimal(t.a) + ")";
    } else {
      r.kind = CommonTermsResult::Kind::finite;
      r.count = 0;
      r.description = "congruence insoluble: residues " + to_decimal(s.b % g) + " and " +
                      to_decimal(t.b % g) + " differ modulo gcd " + to_decimal(g);
    }
    return r;
  }
  if (s.kind == K::antichain_ray && t.kind == K::antichain_ray) {
    CommonCount c = antichain_common_count(s.ray, t.ray);
    if (c.infinite) {
      r.kind = CommonTermsResult::Kind::infinite_terms;
      r.description = "equal rays share every term";
    } else {
      r.kind = CommonTermsResult::Kind::finite;
      r.count = c.count;
      r.description = "rays share exactly the labels of their common prefix";
    }
    return r;
  }
  bool swapped = false;
  const IncreasingSequenceSpec& enumerate = enumeration_side(s, t, swapped);
  const IncreasingSequenceSpec& other = swapped ? s : t;
  BigNat found = 0;
  for (const BigNat& v : values_up_to(enumerate, enumeration_bound))
    if (seed_contains(other, v)) ++found;
  r.kind = CommonTermsResult::Kind::unknown_up_to;
  r.count = found;
  r.bound = enumeration_bound;
  r.description = "bounded scan only; matches beyond the bound remain possible";
  return r;
}

CommonTermsResult common_terms(const IncreasingSequenceSpec& s, const IncreasingSequenceSpec& t) {
  return common_terms(s, t, BigNat(1000000));
}

InequivalenceCertificate inequivalence_certificate(const IncreasingSequenceSpec& a,
                                                   const IncreasingSequenceSpec& b) {
  InequivalenceCertificate c;
  c.common = common_terms(a, b);
  switch (c.common.kind) {
    case CommonTermsResult::Kind::finite:
      c.certified = true;
      c.note = "the seeds share exactly " + to_decimal(c.common.count) +
               " value(s); finitely many common terms certify inequivalent embeddings";
      break;
    case CommonTermsResult::Kind::infinite_terms:
      c.certified = false;
      c.note = "the seeds share infinitely many values; no certificate, and no equivalence "
               "claim either";
      break;
    case CommonTermsResult::Kind::unknown_up_to:
      c.certified = false;
      c.note = "common-term count undecided below bound " + to_decimal(c.common.bound) +
               "; no certificate, and no equivalence claim either";
      break;
  }
  return c;
}

RigidityReport rigidity_report(const IncreasingSequenceSpec& seed,
                               const std::vector<std::pair<RaySpec, RaySpec>>& sample_pairs) {
  seed.validate();
  RigidityReport r;
  r.divergence = divergence_report(cs_spec(seed));
  r.pairs.reserve(sample_pairs.size());
  for (const auto& [ra, rb] : sample_pairs) {
    RigidityPair p;
    p.a = ra;
    p.b = rb;
    p.verdict = tails_equal_cs(seed, ra, rb);
    if (p.verdict.kind == TailVerdict::Kind::equal) {
      p.same_point = true;
      ++r.same_point_count;
    } else if (p.verdict.kind == TailVerdict::Kind::distinct) {
      ++r.distinct_pair_count;
    } else {
      fail(errc::internal, "tail comparison returned neither Equal nor Distinct");
    }
    r.pairs.push_back(std::move(p));
  }
  return r;
}

}  // namespace bw
