#include "bw/cantor_criterion.hpp"

#include <algorithm>

namespace bw {

namespace {

// Largest stage n_next such that stages [n_j, n_next - 1] share sigma = S_j.
// nullopt means the next scheduled stage is beyond every representable index.
std::optional<BigNat> next_scheduled_stage(const GapRule& gap, const BigNat& n,
                                           const BigNat& sigma) {
  try {
    return checked_add(gap.fn(sigma), n, "schedule stage");
  } catch (const error& err) {
    if (err.code() != errc::index_unrepresentable) throw;
    return std::nullopt;
  }
}

SeriesState series_state_cs(const DefiningSequenceSpec& spec, const BigNat& i) {
  SeriesState st;
  st.stage = i;
  st.sigma = 0;
  if (i == 0) return st;
  check_budget(i, "series stage");
  ScheduleCursor cur(spec.seed, spec.gap);
  // Runs [n_j, n_{j+1} - 1] partition the stages from 1 on; the run at sigma
  // S_j contributes count * 2^{-S_j}. Entries are fetched lazily so a horizon
  // just past stage i is never touched.
  const ScheduleEntry* e = &cur.next();
  while (true) {
    if (e->n > i) break;  // unreachable for i >= 1 (n_1 = 1); guards i < n_1
    if (!e->sigma)
      fail(errc::index_unrepresentable,
           "sigma at stage " + to_decimal(e->n) + " exceeds the bit budget");
    std::optional<BigNat> n_next = next_scheduled_stage(spec.gap, e->n, *e->sigma);
    BigNat run_end = (n_next && *n_next - 1 < i) ? *n_next - 1 : i;
    BigNat count = run_end - e->n + 1;
    st.partial_sum.add_scaled_pow2_inverse(count, *e->sigma);
    st.sigma = *e->sigma;
    if (!n_next || *n_next > i) break;
    e = &cur.next();
  }
  return st;
}

SeriesState series_state_explicit(const DefiningSequenceSpec& spec, const BigNat& i) {
  if (i >= spec.stages.size())
    fail(errc::stage_out_of_range, "series stage " + to_decimal(i) + " beyond explicit depth " +
                                       std::to_string(spec.stages.size() - 1));
  SeriesState st;
  st.stage = i;
  st.sigma = 0;
  for (std::size_t t = 1; t <= static_cast<std::size_t>(i); ++t) {
    const auto& labels = spec.stages[t];
    BigNat w = *std::max_element(labels.begin(), labels.end());
    st.sigma = checked_add(st.sigma, w, "sigma");
    st.partial_sum.add_scaled_pow2_inverse(BigNat(1), st.sigma);
  }
  return st;
}

SeriesState series_state_standard(const DefiningSequenceSpec& spec, const BigNat& i) {
  SeriesState st;
  st.stage = i;
  st.sigma = 0;
  if (i == 0) return st;
  switch (spec.m.kind) {
    case MSpec::Kind::list:
    case MSpec::Kind::prefix_then_zero: {
      BigNat horizon = spec.m.terms.size();
      BigNat upto = i < horizon ? i : horizon;
      for (BigNat t = 1; t <= upto; ++t) {
        st.sigma = checked_add(st.sigma, *spec.m.at(t), "sigma");
        st.partial_sum.add_scaled_pow2_inverse(BigNat(1), st.sigma);
      }
      if (i > horizon) {
        if (spec.m.kind == MSpec::Kind::list)
          fail(errc::seed_unevaluable, "m-sequence known only through stage " +
                                           to_decimal(horizon) + ", stage " + to_decimal(i) +
                                           " requested");
        st.partial_sum.add_scaled_pow2_inverse(i - horizon, st.sigma);
      }
      return st;
    }
    case MSpec::Kind::constant: {
      const BigNat& c = spec.m.value;
      if (c == 0) {
        st.partial_sum = Dyadic(i);
        return st;
      }
      // sum_{t=1..i} 2^{-ct} = ((2^{ci} - 1)/(2^c - 1)) / 2^{ci}, exactly.
      BigNat ci = checked_mul(c, i, "sigma");
      st.sigma = ci;
      BigNat num = (checked_pow2(ci, "series denominator") - 1) / (checked_pow2(c, "m") - 1);
      st.partial_sum = Dyadic(num, static_cast<std::uint64_t>(ci));
      return st;
    }
  }
  fail(errc::internal, "unhandled m kind");
}

}  // namespace

SeriesState series_state(const DefiningSequenceSpec& spec, const BigNat& i) {
  spec.validate();
  switch (spec.kind) {
    case DefiningSequenceSpec::Kind::cs_family: return series_state_cs(spec, i);
    case DefiningSequenceSpec::Kind::explicit_stages: return series_state_explicit(spec, i);
    case DefiningSequenceSpec::Kind::standard_bw: return series_state_standard(spec, i);
  }
  fail(errc::internal, "unhandled spec kind");
}

DivergenceVerdict divergence_report(const DefiningSequenceSpec& spec) {
  spec.validate();
  DivergenceVerdict v;
  switch (spec.kind) {
    case DefiningSequenceSpec::Kind::cs_family: {
      if (spec.gap.name != "pow2") {
        v.kind = DivergenceVerdict::Kind::unknown;
        v.note = "non-standard gap rule '" + spec.gap.name +
                 "': the block-contribution identity does not apply";
        return v;
      }
      if (spec.seed.kind == IncreasingSequenceSpec::Kind::explicit_prefix) {
        // Finitely many seed terms determine only finitely many blocks; report
        // the exact state at the last stage whose sigma is known.
        ScheduleCursor cur(spec.seed, spec.gap);
        BigNat horizon = 0;
        while (true) {
          try {
            const ScheduleEntry& e = cur.next();
            if (!e.sigma) break;
            std::optional<BigNat> n_next = next_scheduled_stage(spec.gap, e.n, *e.sigma);
            if (!n_next) break;
            horizon = *n_next - 1;
          } catch (const error& err) {
            if (err.code() != errc::seed_unevaluable &&
                err.code() != errc::index_unrepresentable)
              throw;
            break;
          }
        }
        v.kind = DivergenceVerdict::Kind::partial_only;
        v.state = series_state(spec, horizon);
        v.note = "seed known only as a finite prefix";
        return v;
      }
      v.kind = DivergenceVerdict::Kind::diverges_certified;
      v.reason = "cs-block-lemma";
      v.note = "every sigma-run has length 2^sigma, so each block adds exactly 1";
      return v;
    }
    case DefiningSequenceSpec::Kind::explicit_stages: {
      v.kind = DivergenceVerdict::Kind::partial_only;
      v.state = series_state(spec, BigNat(spec.stages.size() - 1));
      v.note = "labels known only through the explicit depth";
      return v;
    }
    case DefiningSequenceSpec::Kind::standard_bw: {
      switch (spec.m.kind) {
        case MSpec::Kind::list: {
          v.kind = DivergenceVerdict::Kind::partial_only;
          v.state = series_state(spec, BigNat(spec.m.terms.size()));
          v.note = "m-sequence known only through a finite horizon";
          return v;
        }
        case MSpec::Kind::prefix_then_zero: {
          v.kind = DivergenceVerdict::Kind::diverges_certified;
          v.reason = "eventually-zero-labels";
          v.note = "sigma stabilizes beyond stage " + std::to_string(spec.m.terms.size()) +
                   "; terms are eventually a positive constant";
          return v;
        }
        case MSpec::Kind::constant: {
          if (spec.m.value == 0) {
            v.kind = DivergenceVerdict::Kind::diverges_certified;
            v.reason = "eventually-zero-labels";
            v.note = "all labels zero; every term equals 1";
            return v;
          }
          v.kind = DivergenceVerdict::Kind::unknown;
          v.note = "constant positive labels: sigma_i = c*i and the series sums to at most "
                   "1/(2^c - 1); the divergence criterion is not satisfied, and it is "
                   "sufficient-only, so no verdict follows";
          return v;
        }
      }
      fail(errc::internal, "unhandled m kind");
    }
  }
  fail(errc::internal, "unhandled spec kind");
}

}  // namespace bw
