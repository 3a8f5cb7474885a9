#include "tracecode/construction1.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <span>
#include <sstream>
#include <unordered_map>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "tracecode/debruijn.hpp"
#include "tracecode/kernels.hpp"
#include "tracecode/rll.hpp"

namespace tracecode {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_int;

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  if (const char* env = std::getenv(name)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

// Smallest M with M >= (num/den) * log_q(n), decided exactly over integers.
std::size_t ceil_mul_log(Rational a, std::size_t n, std::uint32_t q) {
  if (!a.positive()) throw parameter_error("coefficient must be positive");
  const double est = a.value() * std::log2(static_cast<double>(n)) /
                     std::log2(static_cast<double>(q));
  const long long lo = std::max(0ll, static_cast<long long>(est) - 3);
  const cpp_int n_pow = boost::multiprecision::pow(
      cpp_int(n), static_cast<unsigned>(a.num));
  for (long long m = lo;; ++m) {
    const cpp_int q_pow = boost::multiprecision::pow(
        cpp_int(q), static_cast<unsigned>(m * a.den));
    if (q_pow >= n_pow) return static_cast<std::size_t>(m);
  }
}

std::size_t ceil_rational_times(Rational g, std::size_t v) {
  if (!g.positive()) throw parameter_error("coefficient must be positive");
  const long long num = g.num * static_cast<long long>(v);
  return static_cast<std::size_t>((num + g.den - 1) / g.den);
}

BigFloat log_base_q(BigFloat v, std::uint32_t q) {
  return boost::multiprecision::log(v) /
         boost::multiprecision::log(BigFloat(q));
}

long long guarded_ceil(const BigFloat& v) {
  const BigFloat c = boost::multiprecision::ceil(v);
  if (boost::multiprecision::abs(v - boost::multiprecision::round(v)) <
      BigFloat("1e-35"))
    throw parameter_error("parameter ceiling is numerically ambiguous");
  return static_cast<long long>(c);
}

std::vector<std::size_t> equal_partition(std::size_t total,
                                         std::size_t parts) {
  // Non-overlapping segments of equal lengths: ceil for the first
  // total mod parts, floor for the rest.
  std::vector<std::size_t> out(parts, parts == 0 ? 0 : total / parts);
  for (std::size_t h = 0; h < total % parts; ++h) ++out[h];
  return out;
}

}  // namespace

RfParams Construction1Params::rf_params(std::size_t strand) const {
  const std::size_t content =
      strand < hi_strands ? content_hi : content_lo;
  const std::size_t ell = strand < hi_strands ? rf_ell_hi : rf_ell_lo;
  return RfParams::make(q, content, ell, rf_t, /*unsafe=*/true);
}

std::string Construction1Params::report() const {
  std::ostringstream os;
  os << "q=" << q << "\n"
     << "n=" << n << "\n"
     << "a=" << a.str() << "\n"
     << "gamma=" << gamma.str() << "\n"
     << "eps=" << eps.str() << "\n"
     << "f=" << f << "\n"
     << "lmin=" << lmin << "\n"
     << "lover=" << lover << "\n"
     << "I=" << index_bits << "\n"
     << "F=" << index_chunks << "\n"
     << "r=" << block_overhead << "\n"
     << "ell=" << ell_consecutive << "\n"
     << "J=" << blocks_per_strand << "\n"
     << "strands=" << strand_count << "\n"
     << "N_hi=" << content_hi << " x" << hi_strands << "\n"
     << "N_lo=" << content_lo << " x" << (strand_count - hi_strands) << "\n"
     << "rf_t=" << rf_t << "\n"
     << "rf_ell_hi=" << rf_ell_hi << "\n"
     << "rf_ell_lo=" << rf_ell_lo << "\n"
     << "m_hi=" << m_hi << "\n"
     << "m_lo=" << m_lo << "\n"
     << "m_total=" << m_total << "\n"
     << "rate=" << (n ? static_cast<double>(m_total) / static_cast<double>(n)
                      : 0.0)
     << "\n";
  for (const std::string& v : violations) os << "violated=" << v << "\n";
  for (const std::string& v : notes) os << "note=" << v << "\n";
  return os.str();
}

Construction1Params c1_derive(std::uint32_t q, std::size_t n, Rational a,
                              Rational gamma, Rational eps, std::size_t f,
                              bool unsafe) {
  if (q < 2) throw parameter_error("alphabet size must be at least 2");
  if (n < 4) throw parameter_error("n too small");
  if (!a.positive() || !gamma.positive())
    throw parameter_error("a and gamma must be positive");
  if (eps.num < 0) throw parameter_error("eps must be non-negative");
  if (f < 1) throw parameter_error("f must be positive");

  Construction1Params p;
  p.q = q;
  p.n = n;
  p.a = a;
  p.gamma = gamma;
  p.eps = eps;
  p.f = f;
  p.unsafe = unsafe;

  p.lmin = ceil_mul_log(a, n, q);
  if (p.lmin < 1 || p.lmin > n)
    throw parameter_error("lmin = ceil(a log n) out of range");
  p.lover = ceil_rational_times(gamma, p.lmin);
  if (p.lover > p.lmin) throw parameter_error("lover exceeds lmin");

  // Regime conditions of the rate analysis.
  if (!(Rational(1, 1) < a)) p.violations.push_back("a <= 1");
  if (!(gamma <= Rational(a.den, a.num)))
    p.violations.push_back("gamma > 1/a");

  // Index bit length: ceil(((1 - gamma a)/(1 - gamma)) log n
  //                        + (log n)^{1/2 + eps}), clamped at zero.
  const BigFloat logn = log_base_q(BigFloat(n), q);
  const BigFloat ga =
      BigFloat(gamma.num) / BigFloat(gamma.den) * BigFloat(a.num) /
      BigFloat(a.den);
  const BigFloat g = BigFloat(gamma.num) / BigFloat(gamma.den);
  if (g >= 1) throw parameter_error("gamma must be below 1");
  const BigFloat lead = (1 - ga) / (1 - g) * logn;
  const BigFloat power = boost::multiprecision::pow(
      logn, BigFloat("0.5") + BigFloat(eps.num) / BigFloat(eps.den));
  const long long raw_index_bits = guarded_ceil(lead + power);
  if (raw_index_bits < 0) {
    p.index_bits = 0;
    p.notes.push_back("index length clamped to zero (degenerate single strand)");
  } else {
    p.index_bits = static_cast<std::size_t>(raw_index_bits);
  }
  if (p.index_bits * std::log2(static_cast<double>(q)) > 26.0)
    throw parameter_error("q^I exceeds the supported strand count");

  p.index_chunks = p.index_bits == 0 ? 0 : (p.index_bits + f - 1) / f;
  p.block_overhead = p.index_bits + 2 * p.index_chunks + f + 4;

  p.strand_count = 1;
  for (std::size_t i = 0; i < p.index_bits; ++i) p.strand_count *= q;
  p.hi_strands = n % p.strand_count;

  p.blocks_per_strand =
      (n + p.strand_count * p.lmin - 1) / (p.strand_count * p.lmin);
  const std::size_t jr = p.blocks_per_strand * p.block_overhead;
  const std::size_t hi_raw = (n + p.strand_count - 1) / p.strand_count;
  const std::size_t lo_raw = n / p.strand_count;
  if (lo_raw <= jr)
    throw parameter_error(
        "N_i would be non-positive: ceil(n/q^I) <= ceil(n/(q^I lmin)) r");
  p.content_hi = hi_raw - jr;
  p.content_lo = lo_raw - jr;

  // Consecutive-symbol guarantee for lover-windows.
  {
    const long long A = static_cast<long long>(p.lover) -
                        2 * static_cast<long long>(f) - 6;
    if (p.index_chunks == 0) {
      p.ell_consecutive = A;
    } else if (p.lmin <= p.block_overhead ||
               (p.lmin - p.block_overhead) / p.index_chunks == 0) {
      p.ell_consecutive = 0;
      p.violations.push_back("consecutive-run denominator undefined");
    } else {
      const long long D = static_cast<long long>(
          (p.lmin - p.block_overhead) / p.index_chunks);
      // ceil(A D / (D + f + 2)) for positive A.
      const long long den = D + static_cast<long long>(f) + 2;
      p.ell_consecutive =
          A <= 0 ? A : (A * D + den - 1) / den;
    }
    if (p.ell_consecutive <= 0)
      p.violations.push_back("guaranteed consecutive run is non-positive");
  }

  // Underlying repeat-free encoder.
  p.rf_t = f + 1;
  const auto rf_setup = [&](std::size_t content, std::size_t& ell_out,
                            std::size_t& m_out) {
    const std::size_t structural =
        std::min(content, ceil_log(content, q) + 3 * p.rf_t);
    ell_out = structural;
    RfParams rf = RfParams::make(q, content, structural, p.rf_t, true);
    for (const std::string& v : rf.violations) {
      const std::string tagged = "rf: " + v;
      if (std::find(p.violations.begin(), p.violations.end(), tagged) ==
          p.violations.end())
        p.violations.push_back(tagged);
    }
    m_out = rf.m;
  };
  rf_setup(p.content_lo, p.rf_ell_lo, p.m_lo);
  if (p.hi_strands > 0)
    rf_setup(p.content_hi, p.rf_ell_hi, p.m_hi);
  else {
    p.rf_ell_hi = p.rf_ell_lo;
    p.m_hi = p.m_lo;
  }
  p.m_total = p.hi_strands * p.m_hi +
              (p.strand_count - p.hi_strands) * p.m_lo;

  // Sanity: the grid tiles n exactly.
  const std::size_t total =
      p.hi_strands * (p.content_hi + jr) +
      (p.strand_count - p.hi_strands) * (p.content_lo + jr);
  if (total != n)
    throw parameter_error("derived block grid does not tile n");

  // Side conditions of the rate theorem.
  {
    const std::size_t ll_lo = ceil_log(
        std::max<std::size_t>(ceil_log(p.content_lo, q), 1), q);
    if (f < ll_lo + 5)
      p.violations.push_back("f below ceil(loglog N_i) + 5");
    if (p.ell_consecutive <=
        3 * static_cast<long long>(f) +
            static_cast<long long>(ceil_log(p.content_lo, q)))
      p.violations.push_back("ell not above ceil(log N_i) + 3 f");
    const BigFloat loglogn = log_base_q(logn, q);
    if (BigFloat(f) < loglogn + 4)
      p.violations.push_back("f below loglog n + 4");
    if (BigFloat(f) > logn) p.violations.push_back("f above log n");
    // eps >= max{log f / loglog n, 1 - log f / loglog n} - 0.5 is only a
    // closing remark of the rate proof; report it as a note.
    const BigFloat ratio = log_base_q(BigFloat(f), q) / loglogn;
    const BigFloat other = 1 - ratio;
    const BigFloat need = (ratio > other ? ratio : other) - BigFloat("0.5");
    if (BigFloat(eps.num) / BigFloat(eps.den) < need) {
      std::ostringstream os;
      os << "eps below the rate-proof remark threshold "
         << static_cast<double>(need);
      p.notes.push_back(os.str());
    }
  }

  if (!unsafe && !p.violations.empty()) {
    std::string msg = "construction parameters outside the regime:";
    for (const std::string& v : p.violations) msg += " [" + v + "]";
    throw parameter_error(msg);
  }
  return p;
}

EncodedIndex c1_encode_index(std::uint64_t index,
                             const Construction1Params& p) {
  if (index >= p.strand_count)
    throw parameter_error("index out of range");
  EncodedIndex out;
  out.index = index;
  if (p.index_bits == 0) return out;
  std::vector<Symbol> digits(p.index_bits, 0);
  std::uint64_t v = index;
  for (std::size_t d = p.index_bits; d-- > 0;) {
    digits[d] = static_cast<Symbol>(v % p.q);
    v /= p.q;
  }
  const std::vector<std::size_t> sizes =
      equal_partition(p.index_bits, p.index_chunks);
  std::size_t at = 0;
  for (std::size_t h = 0; h < p.index_chunks; ++h) {
    QaryString seg(p.q);
    seg.push_back(1);
    for (std::size_t i = 0; i < sizes[h]; ++i) seg.push_back(digits[at++]);
    seg.push_back(1);
    out.segments.push_back(std::move(seg));
  }
  return out;
}

namespace {

// Position arithmetic over the encoded grid. Strand i occupies
// [start(i), start(i)+len(i)), split into J blocks; each block is a
// synchronization marker followed by F chunks y^(h) . 1 c^(h) 1.
struct Grid {
  const Construction1Params& p;
  std::size_t len_hi, len_lo;

  explicit Grid(const Construction1Params& params)
      : p(params),
        len_hi(params.content_hi +
               params.blocks_per_strand * params.block_overhead),
        len_lo(params.content_lo +
               params.blocks_per_strand * params.block_overhead) {}

  std::size_t strand_start(std::size_t i) const {
    return i < p.hi_strands
               ? i * len_hi
               : p.hi_strands * len_hi + (i - p.hi_strands) * len_lo;
  }
  std::size_t strand_len(std::size_t i) const {
    return i < p.hi_strands ? len_hi : len_lo;
  }
  std::size_t strand_of(std::size_t pos) const {
    if (pos < p.hi_strands * len_hi) return pos / len_hi;
    return p.hi_strands + (pos - p.hi_strands * len_hi) / len_lo;
  }

  std::size_t content_of(std::size_t i) const {
    return i < p.hi_strands ? p.content_hi : p.content_lo;
  }

  // y-part length of block j within strand i.
  std::size_t part_len(std::size_t i, std::size_t j) const {
    const std::size_t content = content_of(i);
    const std::size_t J = p.blocks_per_strand;
    return content / J + (j < content % J ? 1 : 0);
  }
  std::size_t block_len(std::size_t i, std::size_t j) const {
    return part_len(i, j) + p.block_overhead;
  }
  std::size_t block_start(std::size_t i, std::size_t j) const {
    const std::size_t content = content_of(i);
    const std::size_t J = p.blocks_per_strand;
    const std::size_t lo = content / J;
    const std::size_t mod = content % J;
    const std::size_t hi_blocks = std::min(j, mod);
    return hi_blocks * (lo + 1 + p.block_overhead) +
           (j - hi_blocks) * (lo + p.block_overhead);
  }

  bool is_block_boundary(std::size_t pos) const {
    const std::size_t i = strand_of(pos);
    const std::size_t rel = pos - strand_start(i);
    const std::size_t content = content_of(i);
    const std::size_t J = p.blocks_per_strand;
    const std::size_t lo = content / J;
    const std::size_t mod = content % J;
    const std::size_t hi_len = lo + 1 + p.block_overhead;
    const std::size_t lo_len = lo + p.block_overhead;
    if (rel < mod * hi_len) return rel % hi_len == 0;
    return (rel - mod * hi_len) % lo_len == 0;
  }

  // y index (within the strand) carried at absolute position pos, or npos
  // for skeleton symbols.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

std::vector<Symbol> strand_marker(const Construction1Params& p, bool start) {
  std::vector<Symbol> m;
  m.push_back(1);
  m.insert(m.end(), p.f + 1, 0);
  m.push_back(start ? 1 : 0);
  m.push_back(1);
  return m;
}

}  // namespace

QaryString c1_encode(const QaryString& x, const Construction1Params& p) {
  if (x.q() != p.q) throw parameter_error("alphabet mismatch");
  if (x.size() != p.m_total)
    throw parameter_error("message length must equal m_total = " +
                          std::to_string(p.m_total));

  // Warm the de Bruijn tail cache before the parallel per-strand encodes.
  {
    RfParams warm = p.rf_params(p.strand_count - 1);
    debruijn_tail(warm.n, warm.s, warm.t, warm.q);
    if (p.hi_strands > 0) {
      warm = p.rf_params(0);
      debruijn_tail(warm.n, warm.s, warm.t, warm.q);
    }
  }

  std::vector<std::size_t> offsets(p.strand_count + 1, 0);
  for (std::size_t i = 0; i < p.strand_count; ++i)
    offsets[i + 1] = offsets[i] + p.message_len(i);

  std::vector<std::vector<Symbol>> ys(p.strand_count);
  std::vector<std::string> failures(p.strand_count);
  kernels::for_each_index(p.strand_count, [&](std::size_t i) {
    try {
      const QaryString xi = x.substr(offsets[i], p.message_len(i));
      ys[i] = rf_encode(xi, p.rf_params(i)).symbols();
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (const std::string& f : failures)
    if (!f.empty()) throw postcondition_error("strand encoding failed: " + f);

  std::vector<Symbol> z;
  z.reserve(p.n);
  for (std::size_t i = 0; i < p.strand_count; ++i) {
    const EncodedIndex idx = c1_encode_index(i, p);
    const std::vector<std::size_t> parts =
        equal_partition(ys[i].size(), p.blocks_per_strand);
    std::size_t at = 0;
    for (std::size_t j = 0; j < p.blocks_per_strand; ++j) {
      const std::vector<Symbol> marker = strand_marker(p, j == 0);
      z.insert(z.end(), marker.begin(), marker.end());
      if (p.index_chunks == 0) {
        for (std::size_t u = 0; u < parts[j]; ++u) z.push_back(ys[i][at++]);
        continue;
      }
      const std::vector<std::size_t> sub =
          equal_partition(parts[j], p.index_chunks);
      for (std::size_t h = 0; h < p.index_chunks; ++h) {
        for (std::size_t u = 0; u < sub[h]; ++u) z.push_back(ys[i][at++]);
        const auto& seg = idx.segments[h].symbols();
        z.insert(z.end(), seg.begin(), seg.end());
      }
    }
    if (at != ys[i].size())
      throw postcondition_error("strand content mis-partitioned");
  }
  if (z.size() != p.n)
    throw postcondition_error("encoded length does not equal n");

  QaryString out(p.q, std::move(z));
  if (!c1_validate_structure(out, p))
    throw postcondition_error("encoded skeleton failed validation");
  return out;
}

namespace {

struct ZeroRun {
  std::size_t start = 0;
  std::size_t len = 0;
  bool at_begin = false;
  bool at_end = false;
};

std::vector<ZeroRun> zero_runs(std::span<const Symbol> s) {
  std::vector<ZeroRun> runs;
  std::size_t run = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == 0) {
      ++run;
      continue;
    }
    if (run > 0)
      runs.push_back({i - run, run, i == run, i == s.size()});
    run = 0;
  }
  return runs;
}

struct MarkerHit {
  // Start offset of the marker word (may be negative for a head split).
  long long start = 0;
  int b = -1;  // -1 when the b symbol is not visible
  bool complete = false;
};

// Locates synchronization markers 1 0^{f+1} b 1 inside a read segment via
// its zero-runs. Throws decode_error on structure that no codeword window
// can produce.
std::vector<MarkerHit> locate_markers(std::span<const Symbol> seg,
                                      const Construction1Params& p) {
  const std::size_t fz = p.f + 1;  // zeros of a strand-start marker
  std::vector<MarkerHit> hits;
  for (const ZeroRun& r : zero_runs(seg)) {
    if (!r.at_begin && !r.at_end) {
      if (r.len == fz) {
        // 1 0^{f+1} 1 1
        if (r.start == 0) throw decode_error("marker run misses leading one");
        if (seg[r.start - 1] != 1)
          throw decode_error("marker run not introduced by one");
        MarkerHit h;
        h.start = static_cast<long long>(r.start) - 1;
        h.b = 1;
        if (r.start + r.len + 1 < seg.size()) {
          if (seg[r.start + r.len + 1] != 1)
            throw decode_error("strand-start marker misses closing one");
          h.complete = true;
        }
        hits.push_back(h);
      } else if (r.len == fz + 1) {
        // 1 0^{f+1} 0 1
        if (r.start == 0) throw decode_error("marker run misses leading one");
        if (seg[r.start - 1] != 1)
          throw decode_error("marker run not introduced by one");
        MarkerHit h;
        h.start = static_cast<long long>(r.start) - 1;
        h.b = 0;
        h.complete = r.start + r.len < seg.size();
        hits.push_back(h);
      } else if (r.len > fz + 1) {
        throw decode_error("zero-run longer than any marker");
      }
      continue;
    }
    if (r.len >= fz) {
      // Truncated marker zeros at a segment edge.
      if (r.len > fz + 1) throw decode_error("zero-run longer than any marker");
      MarkerHit h;
      if (r.at_begin) {
        // The marker started before the segment.
        h.start = -1;
        if (r.len == fz) {
          if (r.start + r.len < seg.size()) h.b = seg[r.start + r.len];
          h.complete = false;
          // b visible only when the next symbol exists; handled loosely.
        } else {
          h.b = 0;
        }
      } else {
        h.start = static_cast<long long>(r.start) - 1;
        h.b = -1;
      }
      hits.push_back(h);
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const MarkerHit& a, const MarkerHit& b) {
              return a.start < b.start;
            });
  return hits;
}

// Digits read for the segment's own strand (rel 0) and the next (rel 1).
struct DigitBoard {
  std::vector<int> rel0, rel1;

  explicit DigitBoard(std::size_t bits)
      : rel0(bits, -1), rel1(bits, -1) {}

  void set(int rel, std::size_t d, Symbol v) {
    std::vector<int>& board = rel == 0 ? rel0 : rel1;
    if (board[d] != -1 && board[d] != static_cast<int>(v))
      throw decode_error("index digits disagree between blocks");
    board[d] = static_cast<int>(v);
  }
};

// Reads the index chunks of the block between two known boundaries.
// `begin` is the offset just after the marker; part sizes derive from the
// block's y length.
void read_block_chunks(std::span<const Symbol> seg,
                       const Construction1Params& p, long long content_begin,
                       std::size_t y_len, int rel, DigitBoard& board) {
  if (p.index_chunks == 0) return;
  if (rel > 1 || rel < 0) return;
  const std::vector<std::size_t> sub = equal_partition(y_len, p.index_chunks);
  const std::vector<std::size_t> digit_sizes =
      equal_partition(p.index_bits, p.index_chunks);
  long long at = content_begin;
  std::size_t digit = 0;
  for (std::size_t h = 0; h < p.index_chunks; ++h) {
    at += static_cast<long long>(sub[h]);
    // Framed chunk: 1 c^(h) 1.
    const long long frame_open = at;
    const long long frame_close = at + 1 + static_cast<long long>(digit_sizes[h]);
    if (frame_open >= 0 && frame_open < static_cast<long long>(seg.size()) &&
        seg[static_cast<std::size_t>(frame_open)] != 1)
      throw decode_error("index chunk misses opening one");
    if (frame_close >= 0 && frame_close < static_cast<long long>(seg.size()) &&
        seg[static_cast<std::size_t>(frame_close)] != 1)
      throw decode_error("index chunk misses closing one");
    for (std::size_t d = 0; d < digit_sizes[h]; ++d) {
      const long long pos = at + 1 + static_cast<long long>(d);
      if (pos >= 0 && pos < static_cast<long long>(seg.size()))
        board.set(rel, digit + d, seg[static_cast<std::size_t>(pos)]);
    }
    digit += digit_sizes[h];
    at = frame_close + 1;
  }
}

std::uint64_t digits_value(const std::vector<int>& digits, std::size_t from,
                           std::size_t to, std::uint32_t q) {
  std::uint64_t v = 0;
  for (std::size_t d = from; d < to; ++d)
    v = v * q + static_cast<std::uint64_t>(digits[d]);
  return v;
}

std::uint64_t pow_u64(std::uint32_t q, std::size_t e) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= q;
  return v;
}

}  // namespace

SegmentIndexInfo c1_extract_index(const QaryString& segment,
                                  const Construction1Params& p) {
  const std::span<const Symbol> seg(segment.symbols());
  SegmentIndexInfo info;

  // Head detection: a complete strand-start marker right at the segment
  // start.
  if (seg.size() >= p.f + 4 && seg[0] == 1 && seg[p.f + 2] == 1 &&
      seg[p.f + 3] == 1) {
    bool zeros = true;
    for (std::size_t i = 1; i <= p.f + 1; ++i)
      if (seg[i] != 0) {
        zeros = false;
        break;
      }
    info.starts_with_strand_marker = zeros;
  }

  if (p.index_bits == 0) {
    info.index = 0;
    for (const MarkerHit& h : locate_markers(seg, p))
      if (h.complete && h.start >= 0) {
        info.marker_offset = static_cast<std::size_t>(h.start);
        break;
      }
    return info;
  }

  const std::vector<MarkerHit> hits = locate_markers(seg, p);
  if (hits.empty())
    throw decode_error("segment shows no marker trace; cannot extract index");
  for (const MarkerHit& h : hits)
    if (h.complete && h.start >= 0 && !info.marker_offset)
      info.marker_offset = static_cast<std::size_t>(h.start);

  // Candidate y-part lengths over the whole grid.
  std::vector<std::size_t> y_candidates;
  {
    const std::size_t J = p.blocks_per_strand;
    for (std::size_t content : {p.content_hi, p.content_lo}) {
      for (std::size_t v : {content / J, content / J + (content % J ? 1 : 0)})
        if (std::find(y_candidates.begin(), y_candidates.end(), v) ==
            y_candidates.end())
          y_candidates.push_back(v);
    }
  }

  DigitBoard board(p.index_bits);
  const std::size_t marker_len = p.f + 4;

  // rel = strand of the block, counted from the segment's own strand. A
  // strand-start marker with b = 1 advances it, unless it sits at offset 0
  // (the segment then simply begins at a strand start).
  int rel = 0;
  // Leading partial block (content before the first marker): its chunks
  // sit at negative-relative positions from hits[0]; try candidate part
  // lengths and keep reads that exactly one candidate admits.
  {
    const MarkerHit& first = hits.front();
    if (first.start > 0) {
      std::vector<DigitBoard> experiments;
      for (std::size_t y : y_candidates) {
        const long long begin =
            first.start - static_cast<long long>(y + 2 * p.index_chunks +
                                                  p.index_bits);
        DigitBoard b(p.index_bits);
        try {
          read_block_chunks(seg, p, begin, y, 0, b);
          experiments.push_back(std::move(b));
        } catch (const decode_error&) {
        }
      }
      if (experiments.size() == 1) {
        for (std::size_t d = 0; d < p.index_bits; ++d)
          if (experiments[0].rel0[d] != -1)
            board.set(0, d, static_cast<Symbol>(experiments[0].rel0[d]));
      }
      // Ambiguous candidates: skip these reads, interior blocks decide.
    }
  }

  for (std::size_t hidx = 0; hidx < hits.size(); ++hidx) {
    const MarkerHit& m = hits[hidx];
    if (m.start > 0 || (m.start == 0 && m.complete)) {
      if (m.b == 1 && m.start > 0) ++rel;
      if (m.b == -1) break;  // cannot tell the strand of what follows
    } else if (m.start < 0) {
      // Head-split marker: if its b is unknown we cannot count it; the
      // leading block was already rel 0 in either case.
      if (m.b == 1) {
        // Segment begins inside a strand-start marker: everything visible
        // belongs to the started strand.
      }
    }
    // Block following this marker: bounded by the next marker when
    // visible, otherwise by candidate part lengths.
    const long long content_begin =
        m.start + static_cast<long long>(marker_len);
    if (content_begin >= static_cast<long long>(seg.size())) break;
    if (hidx + 1 < hits.size()) {
      const long long next = hits[hidx + 1].start;
      const long long block_span = next - content_begin;
      const long long y_len =
          block_span -
          static_cast<long long>(2 * p.index_chunks + p.index_bits);
      if (y_len < 0) throw decode_error("blocks too close together");
      read_block_chunks(seg, p, content_begin,
                        static_cast<std::size_t>(y_len), rel, board);
    } else {
      std::vector<DigitBoard> experiments;
      for (std::size_t y : y_candidates) {
        DigitBoard b(p.index_bits);
        try {
          read_block_chunks(seg, p, content_begin, y, 0, b);
          experiments.push_back(std::move(b));
        } catch (const decode_error&) {
        }
      }
      if (experiments.size() == 1 && rel <= 1) {
        for (std::size_t d = 0; d < p.index_bits; ++d)
          if (experiments[0].rel0[d] != -1)
            board.set(rel, d, static_cast<Symbol>(experiments[0].rel0[d]));
      }
    }
  }

  // Assemble the index of the segment's own strand.
  bool complete0 = true;
  for (int d : board.rel0)
    if (d == -1) complete0 = false;
  if (complete0) {
    info.index = digits_value(board.rel0, 0, p.index_bits, p.q);
    if (info.index >= p.strand_count)
      throw decode_error("extracted index out of range");
    return info;
  }

  // Combine a known low-digit suffix of c_i with high digits of c_{i+1}.
  std::size_t suffix_from = p.index_bits;
  while (suffix_from > 0 && board.rel0[suffix_from - 1] != -1) --suffix_from;
  for (std::size_t d = 0; d < suffix_from; ++d)
    if (board.rel0[d] != -1)
      throw decode_error("index digits known only in fragments");
  std::size_t prefix_to = 0;
  while (prefix_to < p.index_bits && board.rel1[prefix_to] != -1) ++prefix_to;
  if (prefix_to < suffix_from)
    throw decode_error("index digits incomplete after combining strands");

  bool all_max = suffix_from < p.index_bits;
  for (std::size_t d = suffix_from; d < p.index_bits; ++d)
    if (board.rel0[d] != static_cast<int>(p.q - 1)) all_max = false;
  const std::uint64_t low =
      digits_value(board.rel0, suffix_from, p.index_bits, p.q);
  std::uint64_t high = digits_value(board.rel1, 0, suffix_from, p.q);
  if (all_max) {
    if (high == 0) throw decode_error("successor index underflows");
    high -= 1;
  }
  info.index = high * pow_u64(p.q, p.index_bits - suffix_from) + low;
  if (info.index >= p.strand_count)
    throw decode_error("extracted index out of range");
  return info;
}

bool c1_validate_structure(const QaryString& z, const Construction1Params& p) {
  if (z.size() != p.n || z.q() != p.q) return false;
  const Grid grid(p);
  const std::span<const Symbol> s(z.symbols());
  std::size_t pos = 0;
  for (std::size_t i = 0; i < p.strand_count; ++i) {
    const EncodedIndex idx = c1_encode_index(i, p);
    for (std::size_t j = 0; j < p.blocks_per_strand; ++j) {
      const std::vector<Symbol> marker = strand_marker(p, j == 0);
      for (std::size_t u = 0; u < marker.size(); ++u)
        if (s[pos + u] != marker[u]) return false;
      pos += marker.size();
      const std::size_t y_len = grid.part_len(i, j);
      if (p.index_chunks == 0) {
        pos += y_len;
        continue;
      }
      const std::vector<std::size_t> sub =
          equal_partition(y_len, p.index_chunks);
      for (std::size_t h = 0; h < p.index_chunks; ++h) {
        pos += sub[h];
        const auto& segsym = idx.segments[h].symbols();
        for (std::size_t u = 0; u < segsym.size(); ++u)
          if (s[pos + u] != segsym[u]) return false;
        pos += segsym.size();
      }
    }
  }
  if (pos != p.n) return false;

  // Zero-runs of length >= f+1 appear only as marker runs.
  std::size_t run = 0;
  std::size_t markers_seen = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == 0) {
      ++run;
      continue;
    }
    if (run >= p.f + 1) {
      if (run > p.f + 2) return false;
      const std::size_t start = i - run;
      if (start == 0 || s[start - 1] != 1) return false;
      if (!grid.is_block_boundary(start - 1)) return false;
      ++markers_seen;
    }
    run = 0;
  }
  return markers_seen == p.strand_count * p.blocks_per_strand;
}

std::size_t c1_strand_marker_census(const QaryString& z,
                                    const Construction1Params& p) {
  // Occurrences of 1 0^{f+1} 1 1.
  const std::span<const Symbol> s(z.symbols());
  const std::vector<Symbol> pat = strand_marker(p, true);
  std::size_t count = 0;
  for (std::size_t pos = 0; pos + pat.size() <= s.size(); ++pos) {
    bool hit = true;
    for (std::size_t u = 0; u < pat.size(); ++u)
      if (s[pos + u] != pat[u]) {
        hit = false;
        break;
      }
    if (hit) ++count;
  }
  return count;
}

bool c1_index_scan(const QaryString& z, const Construction1Params& p) {
  if (z.size() != p.n) return false;
  const Grid grid(p);
  const std::size_t windows = p.n - p.lmin + 1;
  const std::size_t bad = kernels::first_failure(windows, [&](std::size_t pos) {
    try {
      const QaryString w = z.substr(pos, p.lmin);
      const SegmentIndexInfo info = c1_extract_index(w, p);
      return info.index == grid.strand_of(pos);
    } catch (const std::exception&) {
      return false;
    }
  });
  return bad == windows;
}

bool c1_consecutive_scan(const QaryString& z, const Construction1Params& p) {
  if (z.size() != p.n) return false;
  const long long need = p.ell_consecutive;
  if (need <= 0) return true;
  const Grid grid(p);

  // Global y-index per position, npos for skeleton symbols.
  std::vector<std::size_t> y_index(p.n, Grid::npos);
  {
    std::size_t pos = 0;
    std::size_t y_global = 0;
    for (std::size_t i = 0; i < p.strand_count; ++i) {
      for (std::size_t j = 0; j < p.blocks_per_strand; ++j) {
        pos += p.f + 4;
        const std::size_t y_len = grid.part_len(i, j);
        if (p.index_chunks == 0) {
          for (std::size_t u = 0; u < y_len; ++u) y_index[pos++] = y_global++;
          continue;
        }
        const std::vector<std::size_t> sub =
            equal_partition(y_len, p.index_chunks);
        const std::vector<std::size_t> digit_sizes =
            equal_partition(p.index_bits, p.index_chunks);
        for (std::size_t h = 0; h < p.index_chunks; ++h) {
          for (std::size_t u = 0; u < sub[h]; ++u) y_index[pos++] = y_global++;
          pos += digit_sizes[h] + 2;
        }
      }
    }
  }

  const std::size_t windows = p.n - p.lover + 1;
  const std::size_t bad = kernels::first_failure(windows, [&](std::size_t w) {
    // Longest run of consecutive y indices fully covered by the window.
    long long best = 0, cur = 0;
    std::size_t prev = Grid::npos;
    for (std::size_t pos = w; pos < w + p.lover; ++pos) {
      const std::size_t yi = y_index[pos];
      if (yi == Grid::npos) continue;
      cur = (prev != Grid::npos && yi == prev + 1) ? cur + 1 : 1;
      prev = yi;
      best = std::max(best, cur);
    }
    return best >= need;
  });
  return bad == windows;
}

std::uint64_t c1_decode_budget() {
  static const std::uint64_t v =
      env_budget("TRACECODE_DECODE_BUDGET", 1000000ull);
  return v;
}

namespace {

// Depth-first assembly of z from the trace segments: each placement must
// respect the channel constraints, match the already-built prefix and
// agree with the strand its extracted index names. A completed assembly is
// accepted only if every strand re-encodes to the assembled content.
struct TraceAssembler {
  const Construction1Params& p;
  const Grid grid;
  std::vector<QaryString> segments;     // deduplicated contents
  std::vector<std::size_t> remaining;   // multiplicities
  std::vector<SegmentIndexInfo> info;   // per distinct content
  std::uint64_t budget;

  std::vector<Symbol> r;
  std::size_t last_start = 0;
  std::size_t prev_end = 0;

  explicit TraceAssembler(const Construction1Params& params)
      : p(params), grid(params), budget(c1_decode_budget()) {}

  bool landed_match(const QaryString& seg, std::size_t pos) const {
    const auto& sym = seg.symbols();
    const std::size_t landed = std::min(sym.size(), r.size() - pos);
    for (std::size_t i = 0; i < landed; ++i)
      if (r[pos + i] != sym[i]) return false;
    return true;
  }

  std::optional<QaryString> search(std::size_t placed_count,
                                   std::size_t total_count) {
    if (budget-- == 0)
      throw budget_exceeded_error("trace decoding budget exceeded");
    if (placed_count == total_count) {
      if (r.size() != p.n || prev_end != p.n) return std::nullopt;
      return finish();
    }
    // Next start in (last_start, prev_end - lover].
    if (prev_end < p.lover) return std::nullopt;
    const std::size_t hi = prev_end - p.lover;
    for (std::size_t pos = last_start + 1; pos <= hi; ++pos) {
      if (pos + p.lover > r.size()) break;
      for (std::size_t g = 0; g < segments.size(); ++g) {
        if (remaining[g] == 0) continue;
        const QaryString& seg = segments[g];
        if (pos + seg.size() > p.n) continue;
        if (p.index_bits > 0 && grid.strand_of(pos) != info[g].index)
          continue;
        if (info[g].marker_offset &&
            !grid.is_block_boundary(pos + *info[g].marker_offset))
          continue;
        if (!landed_match(seg, pos)) continue;

        const std::size_t save_size = r.size();
        const std::size_t save_start = last_start;
        const std::size_t save_prev = prev_end;
        for (std::size_t i = r.size() - pos; i < seg.size(); ++i)
          r.push_back(seg[i]);
        last_start = pos;
        prev_end = pos + seg.size();
        --remaining[g];
        auto result = search(placed_count + 1, total_count);
        if (result) return result;
        ++remaining[g];
        r.resize(save_size);
        last_start = save_start;
        prev_end = save_prev;
      }
    }
    return std::nullopt;
  }

  // Validates the skeleton of the assembled string, peels the strand
  // contents, decodes and re-encodes them.
  std::optional<QaryString> finish() {
    QaryString z(p.q, r);
    if (!c1_validate_structure(z, p)) return std::nullopt;
    QaryString x(p.q);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < p.strand_count; ++i) {
      std::vector<Symbol> y;
      y.reserve(p.content_len(i));
      for (std::size_t j = 0; j < p.blocks_per_strand; ++j) {
        pos += p.f + 4;
        const std::size_t y_len = grid.part_len(i, j);
        if (p.index_chunks == 0) {
          for (std::size_t u = 0; u < y_len; ++u) y.push_back(r[pos++]);
          continue;
        }
        const std::vector<std::size_t> sub =
            equal_partition(y_len, p.index_chunks);
        const std::vector<std::size_t> digit_sizes =
            equal_partition(p.index_bits, p.index_chunks);
        for (std::size_t h = 0; h < p.index_chunks; ++h) {
          for (std::size_t u = 0; u < sub[h]; ++u) y.push_back(r[pos++]);
          pos += digit_sizes[h] + 2;
        }
      }
      const RfParams rf = p.rf_params(i);
      QaryString yi(p.q, std::move(y));
      QaryString xi(p.q);
      try {
        xi = rf_decode(yi, rf);
        if (rf_encode(xi, rf) != yi) return std::nullopt;
      } catch (const error&) {
        return std::nullopt;
      }
      x.append(xi);
    }
    if (x.size() != p.m_total) return std::nullopt;
    return x;
  }
};

}  // namespace

QaryString c1_decode(const StrippedTrace& t, const Construction1Params& p) {
  if (t.q != p.q) throw parameter_error("alphabet mismatch");
  if (t.segments.empty()) throw parameter_error("empty trace");
  for (const QaryString& s : t.segments)
    if (s.size() < p.lmin)
      throw decode_error("trace segment shorter than lmin");

  TraceAssembler assembler(p);
  // Deduplicate identical segments; multiplicity drives the search.
  std::map<QaryString, std::size_t> groups;
  for (const QaryString& s : t.segments) ++groups[s];
  std::size_t total = 0;
  for (auto& [content, count] : groups) {
    assembler.segments.push_back(content);
    assembler.remaining.push_back(count);
    try {
      assembler.info.push_back(c1_extract_index(content, p));
    } catch (const decode_error& e) {
      throw decode_error(std::string("index extraction failed: ") + e.what());
    }
    total += count;
  }

  // The head segment covers position 0: a strand-start marker at offset 0
  // and index 0.
  std::vector<std::size_t> heads;
  for (std::size_t g = 0; g < assembler.segments.size(); ++g)
    if (assembler.info[g].starts_with_strand_marker &&
        assembler.info[g].index == 0)
      heads.push_back(g);
  if (heads.empty()) throw decode_error("no segment can start the codeword");

  for (std::size_t g : heads) {
    assembler.r = assembler.segments[g].symbols();
    assembler.last_start = 0;
    assembler.prev_end = assembler.segments[g].size();
    --assembler.remaining[g];
    auto result = assembler.search(1, total);
    if (result) return *result;
    ++assembler.remaining[g];
  }
  throw decode_error("no consistent assembly of the trace segments");
}

}  // namespace tracecode
