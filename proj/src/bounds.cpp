#include "tracecode/bounds.hpp"

#include <cmath>

#include "tracecode/kernels.hpp"
#include "tracecode/multi_strand.hpp"

namespace tracecode {

namespace {

double logq_real(double v, std::uint32_t q) {
  return std::log(v) / std::log(static_cast<double>(q));
}

}  // namespace

BigInt binomial_shifted(const BigInt& v, std::uint64_t u) {
  if (u > (1ull << 22))
    throw budget_exceeded_error("binomial too large for the exact path");
  BigInt res = 1;
  for (std::uint64_t i = 1; i <= u; ++i) {
    res *= v + i;
    res /= i;
  }
  return res;
}

BigInt code_size_upper_bound(std::size_t n, std::size_t k, std::size_t lmin,
                             std::size_t lover, std::uint32_t q) {
  if (q < 2) throw parameter_error("alphabet size must be at least 2");
  if (lmin <= lover)
    throw parameter_error("bound requires lmin > lover");
  if (n < lmin) throw parameter_error("bound requires n >= lmin");
  const std::uint64_t segments =
      (static_cast<std::uint64_t>(n) - lover + (lmin - lover) - 1) /
      (lmin - lover);
  const std::uint64_t u = static_cast<std::uint64_t>(k) * segments;
  const BigInt v = boost::multiprecision::pow(
      BigInt(q), static_cast<unsigned>(lmin));
  return binomial_shifted(v, u);
}

double rate_upper_bound_single(Rational a, Rational gamma) {
  if (!(Rational(1, 1) < a)) throw parameter_error("bound requires a > 1");
  if (gamma.num < 0 || !(gamma <= Rational(a.den, a.num)))
    throw parameter_error("bound requires 0 <= gamma <= 1/a");
  const double av = a.value();
  const double gv = gamma.value();
  return (1.0 - 1.0 / av) / (1.0 - gv);
}

double log_q_bigint(const BigInt& v, std::uint32_t q) {
  if (v <= 0) throw parameter_error("logarithm of a non-positive value");
  const std::size_t bits = boost::multiprecision::msb(v);
  double log2v;
  if (bits < 63) {
    log2v = std::log2(static_cast<double>(v.convert_to<std::uint64_t>()));
  } else {
    const BigInt top = v >> (bits - 62);
    log2v = std::log2(top.convert_to<double>()) +
            static_cast<double>(bits - 62);
  }
  return log2v / std::log2(static_cast<double>(q));
}

BigInt channel_size_exact(std::size_t n, std::size_t k, std::uint32_t q) {
  const double bits = static_cast<double>(n) * std::log2(static_cast<double>(q));
  if (bits > 4096 || k > (1u << 20))
    throw budget_exceeded_error("channel size too large for the exact path");
  const BigInt qn = boost::multiprecision::pow(
      BigInt(q), static_cast<unsigned>(n));
  return binomial_shifted(qn - 1, k);
}

ChannelLogSize channel_log_size(std::size_t n, std::size_t k,
                                std::uint32_t q) {
  if (n < 1 || k < 1) throw parameter_error("n and k must be positive");
  ChannelLogSize out;
  const double kd = static_cast<double>(k);
  const double nd = static_cast<double>(n);
  const double log_e = 1.0 / std::log(static_cast<double>(q));
  const double leading = kd * (nd - logq_real(kd, q) + log_e);
  // From (k/e)^k <= k! <= e sqrt(k) (k/e)^k.
  const double lo = leading - logq_real(std::exp(1.0) * std::sqrt(kd), q);
  const double qn_log2 = nd * std::log2(static_cast<double>(q));
  const double hi =
      leading + (qn_log2 > 60 ? kd * (kd / std::pow(2.0, qn_log2)) * log_e
                              : kd * logq_real(1.0 + kd / std::pow(2.0, qn_log2),
                                               q));
  out.envelope_lo = lo;
  out.envelope_hi = hi;
  try {
    out.value = log_q_bigint(channel_size_exact(n, k, q), q);
    out.exact = true;
  } catch (const budget_exceeded_error&) {
    out.value = leading;
    out.exact = false;
  }
  return out;
}

ZeroRateThreshold zero_rate_threshold(std::size_t n, std::size_t k,
                                      std::uint32_t q) {
  if (n < 1 || k < 1 || n * k < 2)
    throw parameter_error("threshold requires nk >= 2");
  ZeroRateThreshold out;
  const double nk = static_cast<double>(n) * static_cast<double>(k);
  out.threshold = logq_real(nk, q);
  out.rate_one_ell = out.threshold + 3.0 * logq_real(out.threshold, q) + 12.0;
  return out;
}

ZeroRateVerdict applies_zero_rate(std::size_t ell, std::size_t n,
                                  std::size_t k, std::uint32_t q) {
  const ZeroRateThreshold th = zero_rate_threshold(n, k, q);
  const double e = static_cast<double>(ell);
  if (e < th.threshold) return ZeroRateVerdict::vanishing;
  if (e >= th.rate_one_ell) return ZeroRateVerdict::rate_one;
  return ZeroRateVerdict::indeterminate;
}

namespace {

// log_q binom(u + v, u) with v = q^ell, Stirling-stable for huge v.
double log_q_binom_window(std::uint64_t u, std::size_t ell, std::uint32_t q) {
  const double lnq = std::log(static_cast<double>(q));
  const double ln_v = static_cast<double>(ell) * lnq;
  const double ud = static_cast<double>(u);
  if (ln_v > 700.0) {
    // v dwarfs everything: ln binom ~= u (ln v - ln u + 1) - 0.5 ln(2 pi u).
    const double ln_binom = ud * (ln_v - std::log(ud) + 1.0) -
                            0.5 * std::log(2.0 * M_PI * ud);
    return ln_binom / lnq;
  }
  const double v = std::exp(ln_v);
  const double ln_binom = v * std::log1p(ud / v) +
                          ud * std::log((ud + v) / ud) +
                          0.5 * std::log((ud + v) / (2.0 * M_PI * ud * v));
  return ln_binom / lnq;
}

}  // namespace

std::vector<RateRow> rate_comparison_table(std::size_t n, std::size_t k,
                                           std::size_t ell_lo,
                                           std::size_t ell_hi,
                                           std::uint32_t q) {
  if (ell_lo > ell_hi) throw parameter_error("empty ell range");
  const double log_e = 1.0 / std::log(static_cast<double>(q));
  const double channel = static_cast<double>(k) *
                         (static_cast<double>(n) -
                          logq_real(static_cast<double>(k), q) + log_e);
  std::vector<RateRow> rows(ell_hi - ell_lo + 1);
  kernels::for_each_index(rows.size(), [&](std::size_t i) {
    const std::size_t ell = ell_lo + i;
    RateRow row;
    row.ell = ell;
    const RateBound a = rate_index_based(n, k, ell, q);
    const RateBound b = rate_overlap_based(n, k, ell, q);
    if (a.applicable) row.rate_index = a.value;
    if (b.applicable) row.rate_overlap = b.value;
    const std::uint64_t u =
        static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k);
    row.upper_bound =
        std::min(1.0, log_q_binom_window(u, ell, q) / channel);
    rows[i] = row;
  });
  return rows;
}

}  // namespace tracecode
