#include "tracecode/multi_strand.hpp"

#include <algorithm>
#include <cmath>

#include "tracecode/reconstruct.hpp"
#include "tracecode/rll.hpp"
#include "tracecode/trace.hpp"

namespace tracecode {

MultiStrandParams MultiStrandParams::make(std::uint32_t q, std::size_t n,
                                          std::size_t k, std::size_t ell,
                                          MsScheme scheme, bool unsafe) {
  if (q < 2) throw parameter_error("alphabet size must be at least 2");
  if (k < 1) throw parameter_error("strand count must be positive");
  if (ell < 1 || ell >= n) throw parameter_error("ell must satisfy 1 <= ell < n");

  MultiStrandParams p;
  p.q = q;
  p.n = n;
  p.k = k;
  p.ell = ell;
  p.scheme = scheme;
  p.unsafe = unsafe;

  if (scheme == MsScheme::index) {
    p.index_len = k == 1 ? 0 : ceil_log(k, q);
    if (ell <= p.index_len)
      throw parameter_error("ell too small for the index prefix");
    if (n <= p.index_len)
      throw parameter_error("n too small for the index prefix");
    p.ell_rf = ell - p.index_len;
    p.n_prime = (n - p.index_len) * k;
  } else {
    p.ell_rf = ell;
    if (n * k <= (k - 1) * ell)
      throw parameter_error("n' would be non-positive");
    p.n_prime = n * k - (k - 1) * ell;
  }
  if (p.ell_rf > p.n_prime)
    throw parameter_error("repeat-free order exceeds n'");

  const std::size_t log_np = ceil_log(p.n_prime, q);
  const std::size_t t_min = q == 2 ? 6 : 5;
  std::size_t t = p.ell_rf > log_np ? (p.ell_rf - log_np) / 3 : 0;
  t = std::min<std::size_t>(t, 15);
  t = std::max(t, t_min);
  p.rf = RfParams::make(q, p.n_prime, std::min(p.ell_rf, p.n_prime), t, unsafe);
  return p;
}

StrandMultiset ms_encode(const QaryString& x, const MultiStrandParams& p) {
  if (x.q() != p.q) throw parameter_error("alphabet mismatch");
  if (x.size() != p.rf.m)
    throw parameter_error("message length must equal m = " +
                          std::to_string(p.rf.m));
  const QaryString y = rf_encode(x, p.rf);
  std::vector<QaryString> strands;
  if (p.scheme == MsScheme::index) {
    const std::size_t body = p.n - p.index_len;
    for (std::size_t i = 0; i < p.k; ++i) {
      QaryString strand(p.q);
      std::uint64_t v = i;
      std::vector<Symbol> digits(p.index_len, 0);
      for (std::size_t d = p.index_len; d-- > 0;) {
        digits[d] = static_cast<Symbol>(v % p.q);
        v /= p.q;
      }
      for (Symbol s : digits) strand.push_back(s);
      strand.append(y.substr(i * body, body));
      strands.push_back(std::move(strand));
    }
  } else {
    for (std::size_t i = 0; i < p.k; ++i)
      strands.push_back(y.substr(i * (p.n - p.ell), p.n));
  }
  StrandMultiset out(p.q, std::move(strands));
  if (!out.all_distinct())
    throw postcondition_error("encoded strands are not pairwise distinct");
  return out;
}

namespace {

std::uint64_t prefix_value(const QaryString& s, std::size_t len,
                           std::uint32_t q) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < len; ++i) v = v * q + s[i];
  return v;
}

}  // namespace

QaryString ms_decode(const ProfileVector& profile, const MultiStrandParams& p) {
  if (profile.q != p.q) throw parameter_error("alphabet mismatch");
  if (profile.ell != p.ell + 1)
    throw parameter_error("profile must carry (ell+1)-windows");

  StrippedTrace trace;
  trace.q = p.q;
  for (const auto& [window, count] : profile.counts)
    for (std::uint64_t c = 0; c < count; ++c) trace.segments.push_back(window);

  const StrandMultiset s = reconstruct_multiset(
      trace, TraceParams(p.ell + 1, p.ell), p.n, p.k);

  QaryString y(p.q);
  if (p.scheme == MsScheme::index) {
    std::vector<const QaryString*> ordered(p.k, nullptr);
    for (const QaryString& strand : s.strands()) {
      const std::uint64_t idx = prefix_value(strand, p.index_len, p.q);
      if (idx >= p.k) throw decode_error("strand index out of range");
      if (ordered[idx] != nullptr)
        throw decode_error("duplicate strand index; index gap elsewhere");
      ordered[idx] = &strand;
    }
    for (std::size_t i = 0; i < p.k; ++i) {
      if (ordered[i] == nullptr) throw decode_error("missing strand index");
      y.append(ordered[i]->substr(p.index_len, p.n - p.index_len));
    }
  } else {
    // Chain strands by matching ell-suffix to ell-prefix; unique under the
    // repeat-free guarantee.
    const auto& strands = s.strands();
    std::vector<bool> used(strands.size(), false);
    std::size_t head = strands.size();
    for (std::size_t i = 0; i < strands.size(); ++i) {
      const QaryString pre = strands[i].prefix(p.ell);
      bool is_successor = false;
      for (std::size_t j = 0; j < strands.size(); ++j) {
        if (j == i) continue;
        if (strands[j].suffix(p.ell) == pre) {
          is_successor = true;
          break;
        }
      }
      if (!is_successor) {
        if (head != strands.size())
          throw decode_error("several chain heads; corrupted input");
        head = i;
      }
    }
    if (head == strands.size())
      throw decode_error("no chain head; corrupted input");
    std::size_t cur = head;
    used[head] = true;
    y.append(strands[head]);
    for (std::size_t step = 1; step < p.k; ++step) {
      const QaryString suf = strands[cur].suffix(p.ell);
      std::size_t next = strands.size();
      for (std::size_t j = 0; j < strands.size(); ++j) {
        if (used[j]) continue;
        if (strands[j].prefix(p.ell) == suf) {
          if (next != strands.size())
            throw decode_error("chain ambiguity; corrupted input");
          next = j;
        }
      }
      if (next == strands.size())
        throw decode_error("chain breaks; corrupted input");
      used[next] = true;
      y.append(strands[next].substr(p.ell, p.n - p.ell));
      cur = next;
    }
  }
  if (y.size() != p.n_prime)
    throw decode_error("reassembled string has wrong length");
  return rf_decode(y, p.rf);
}

namespace {

double logq(double v, std::uint32_t q) {
  return std::log(v) / std::log(static_cast<double>(q));
}

double rf_regime_term(double f, std::uint32_t q) {
  const double e = std::floor(f / 3.0);
  if (q == 2) return std::pow(2.0, 5.0 - e);
  return std::pow(static_cast<double>(q), 4.0 - e) /
         (static_cast<double>(q) - 2.0);
}

}  // namespace

RateBound rate_index_based(std::size_t n, std::size_t k, std::size_t ell,
                           std::uint32_t q) {
  RateBound out;
  const double nk = static_cast<double>(n) * static_cast<double>(k);
  const double f = static_cast<double>(ell) - logq(nk, q) -
                   logq(static_cast<double>(k), q);
  const double denom = static_cast<double>(n) - logq(static_cast<double>(k), q);
  const double log_e = 1.0 / std::log(static_cast<double>(q));
  // Tighter logarithmic-order regime first.
  const double inner = 1.0 - logq(static_cast<double>(k), q) /
                                 static_cast<double>(n);
  if (inner > 0 && f >= logq(nk, q) + 2.0 + 2.0 * logq(inner, q)) {
    out.applicable = true;
    out.regime = 2;
    out.value = 1.0 - log_e / denom;
    return out;
  }
  if (f >= 3.0 * logq(logq(nk, q), q) + 12.0) {
    out.applicable = true;
    out.regime = 1;
    out.value = 1.0 - rf_regime_term(f, q) - log_e / denom;
  }
  return out;
}

RateBound rate_overlap_based(std::size_t n, std::size_t k, std::size_t ell,
                             std::uint32_t q) {
  RateBound out;
  const double nk = static_cast<double>(n) * static_cast<double>(k);
  const double f = static_cast<double>(ell) - logq(nk, q);
  const double denom = static_cast<double>(n) - logq(static_cast<double>(k), q);
  const double cost = (logq(static_cast<double>(n), q) + f) / denom;
  const double inner =
      1.0 - (1.0 - 1.0 / static_cast<double>(k)) *
                static_cast<double>(ell) / static_cast<double>(n);
  if (inner > 0 && f >= logq(nk, q) + 2.0 + 2.0 * logq(inner, q)) {
    out.applicable = true;
    out.regime = 2;
    out.value = 1.0 - cost;
    return out;
  }
  if (f >= 3.0 * logq(logq(nk, q), q) + 12.0) {
    out.applicable = true;
    out.regime = 1;
    out.value = 1.0 - rf_regime_term(f, q) - cost;
  }
  return out;
}

}  // namespace tracecode
