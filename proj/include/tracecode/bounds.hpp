#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tracecode/rational.hpp"

namespace tracecode {

using BigInt = boost::multiprecision::cpp_int;

// Exact binomial coefficient binom(v+u, u) for big v, moderate u.
BigInt binomial_shifted(const BigInt& v, std::uint64_t u);

// |C| <= binom(k ceil((n-lover)/(lmin-lover)) + q^lmin, q^lmin).
BigInt code_size_upper_bound(std::size_t n, std::size_t k, std::size_t lmin,
                             std::size_t lover, std::uint32_t q);

// (1 - 1/a) / (1 - gamma), the leading rate term; the logarithmic
// correction is not modeled.
double rate_upper_bound_single(Rational a, Rational gamma);

// log_q of a positive big integer, accurate to double precision.
double log_q_bigint(const BigInt& v, std::uint32_t q);

// |X_{n,k}| = binom(k + q^n - 1, k), exact when feasible.
BigInt channel_size_exact(std::size_t n, std::size_t k, std::uint32_t q);

struct ChannelLogSize {
  double value = 0.0;       // log_q |X_{n,k}|, exact or leading term
  bool exact = false;
  double envelope_lo = 0.0;  // valid bounds around the leading term
  double envelope_hi = 0.0;
};
ChannelLogSize channel_log_size(std::size_t n, std::size_t k, std::uint32_t q);

struct ZeroRateThreshold {
  double threshold = 0.0;      // log_q(nk)
  double rate_one_ell = 0.0;   // log(nk) + 3 loglog(nk) + 12
};
ZeroRateThreshold zero_rate_threshold(std::size_t n, std::size_t k,
                                      std::uint32_t q);

enum class ZeroRateVerdict { vanishing, rate_one, indeterminate };
ZeroRateVerdict applies_zero_rate(std::size_t ell, std::size_t n,
                                  std::size_t k, std::uint32_t q);

struct RateRow {
  std::size_t ell = 0;
  std::optional<double> rate_index;
  std::optional<double> rate_overlap;
  double upper_bound = 0.0;
};
std::vector<RateRow> rate_comparison_table(std::size_t n, std::size_t k,
                                           std::size_t ell_lo,
                                           std::size_t ell_hi,
                                           std::uint32_t q);

}  // namespace tracecode
