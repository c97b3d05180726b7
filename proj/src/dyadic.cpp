#include "bw/dyadic.hpp"

namespace bw {

void Dyadic::check() const {
  check_budget(num_, "dyadic numerator");
  if (exp2_ > bigint_budget_bits())
    fail(errc::index_unrepresentable, "dyadic exponent exceeds bit budget");
}

Dyadic Dyadic::pow2_inverse(const BigNat& e) {
  if (e > bigint_budget_bits())
    fail(errc::index_unrepresentable, "2^-" + to_decimal(e) + " exceeds bit budget");
  return Dyadic(BigNat(1), static_cast<std::uint64_t>(e));
}

void Dyadic::add_scaled_pow2_inverse(const BigNat& count, const BigNat& e) {
  if (e > bigint_budget_bits())
    fail(errc::index_unrepresentable, "series exponent " + to_decimal(e) + " exceeds bit budget");
  const auto ee = static_cast<std::uint64_t>(e);
  if (ee > exp2_) {
    num_ <<= (ee - exp2_);
    exp2_ = ee;
    check_budget(num_, "dyadic numerator");
    num_ += count;
  } else {
    num_ += count << (exp2_ - ee);
  }
  check_budget(num_, "dyadic numerator");
}

void Dyadic::add(const Dyadic& other) { add_scaled_pow2_inverse(other.num_, BigNat(other.exp2_)); }

Dyadic Dyadic::canonical() const {
  if (num_ == 0) return Dyadic();
  std::uint64_t tz = static_cast<std::uint64_t>(boost::multiprecision::lsb(num_));
  if (tz > exp2_) tz = exp2_;
  Dyadic r;
  r.num_ = num_ >> tz;
  r.exp2_ = exp2_ - tz;
  return r;
}

bool Dyadic::operator==(const Dyadic& o) const {
  if (exp2_ == o.exp2_) return num_ == o.num_;
  if (exp2_ > o.exp2_) return num_ == o.num_ << (exp2_ - o.exp2_);
  return num_ << (o.exp2_ - exp2_) == o.num_;
}

bool Dyadic::operator<(const Dyadic& o) const {
  if (exp2_ == o.exp2_) return num_ < o.num_;
  if (exp2_ > o.exp2_) return num_ < o.num_ << (exp2_ - o.exp2_);
  return num_ << (o.exp2_ - exp2_) < o.num_;
}

std::string Dyadic::to_string() const {
  Dyadic c = canonical();
  if (c.exp2_ == 0) return to_decimal(c.num_);
  return to_decimal(c.num_) + "/2^" + std::to_string(c.exp2_);
}

}  // namespace bw
