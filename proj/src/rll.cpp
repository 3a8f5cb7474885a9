#include "tracecode/rll.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include <boost/multiprecision/cpp_int.hpp>

namespace tracecode {

namespace {

constexpr std::uint64_t kSaturate = 1ull << 62;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return (s < a || s > kSaturate) ? kSaturate : s;
}

std::uint64_t sat_mul_small(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturate / b) return kSaturate;
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = sat_mul_small(out, base);
  return out;
}

// First location of a zero-run of length s at or after `from`, or npos.
std::size_t find_zero_run(const std::vector<Symbol>& v, std::size_t s,
                          std::size_t from) {
  std::size_t run = 0;
  std::size_t start = from;
  // Runs straddling `from` start earlier; rewind to cover them.
  while (start > 0 && v[start - 1] == 0) --start;
  for (std::size_t i = start; i < v.size(); ++i) {
    run = (v[i] == 0) ? run + 1 : 0;
    if (run == s) return i + 1 - s;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

std::size_t ceil_log(std::uint64_t value, std::uint32_t q) {
  if (value < 1) throw parameter_error("ceil_log requires value >= 1");
  std::size_t L = 0;
  std::uint64_t p = 1;
  while (p < value) {
    p = sat_mul_small(p, q);
    ++L;
  }
  return L;
}

RllParams RllParams::make(std::uint32_t q, std::size_t s) {
  if (q <= 2)
    throw parameter_error(
        "block RLL encoder requires q > 2; use the binary variant");
  if (s < 2) throw parameter_error("run limit s must be at least 2");
  const std::uint64_t locs = sat_mul_small(checked_pow(q, s - 1), q - 2);
  if (locs >= kSaturate) throw parameter_error("q^{s-1}(q-2) too large");
  RllParams p;
  p.q = q;
  p.s = s;
  p.block_len = static_cast<std::size_t>(locs + s - 1);
  return p;
}

namespace {

// One block: cut out leftmost zero s-runs, recording each location index
// over s symbols with the last drawn from {2..q-1}; emit
// content' . 1 . index_1 ... index_r (one redundant symbol).
void encode_block_qary(std::vector<Symbol>& block, const RllParams& p) {
  const std::size_t s = p.s;
  const std::uint64_t lo_span = checked_pow(p.q, s - 1);
  std::vector<Symbol> units;
  std::size_t from = 0;
  for (;;) {
    const std::size_t j = find_zero_run(block, s, from);
    if (j == static_cast<std::size_t>(-1)) break;
    block.erase(block.begin() + static_cast<long>(j),
                block.begin() + static_cast<long>(j + s));
    const std::uint64_t loc = j;
    for (std::size_t d = 0; d < s - 1; ++d)
      units.push_back(static_cast<Symbol>((loc / checked_pow(p.q, d)) % p.q));
    units.push_back(static_cast<Symbol>(2 + loc / lo_span));
    from = j;
  }
  block.push_back(1);
  block.insert(block.end(), units.begin(), units.end());
}

std::vector<Symbol> decode_block_qary(std::vector<Symbol> block,
                                      const RllParams& p) {
  const std::size_t s = p.s;
  const std::uint64_t lo_span = checked_pow(p.q, s - 1);
  std::vector<std::uint64_t> locations;  // reverse-chronological
  while (!block.empty() && block.back() >= 2) {
    if (block.size() < s + 1) throw decode_error("rll block truncated");
    std::uint64_t loc =
        static_cast<std::uint64_t>(block.back() - 2) * lo_span;
    for (std::size_t d = 0; d < s - 1; ++d)
      loc += static_cast<std::uint64_t>(block[block.size() - s + d]) *
             checked_pow(p.q, d);
    block.resize(block.size() - s);
    locations.push_back(loc);
  }
  if (block.empty() || block.back() != 1)
    throw decode_error("rll block separator missing");
  block.pop_back();
  for (std::uint64_t loc : locations) {
    if (loc > block.size()) throw decode_error("rll run index out of range");
    block.insert(block.begin() + static_cast<long>(loc), s, 0);
  }
  return block;
}

}  // namespace

QaryString rll_encode(const QaryString& x, const RllParams& p) {
  if (x.q() != p.q) throw parameter_error("alphabet mismatch");
  if (x.empty()) throw parameter_error("rll_encode requires |x| >= 1");
  QaryString out(p.q);
  const auto& sym = x.symbols();
  for (std::size_t pos = 0; pos < sym.size(); pos += p.block_len) {
    const std::size_t len = std::min(p.block_len, sym.size() - pos);
    std::vector<Symbol> block(sym.begin() + static_cast<long>(pos),
                              sym.begin() + static_cast<long>(pos + len));
    encode_block_qary(block, p);
    for (Symbol v : block) out.push_back(v);
  }
  return out;
}

QaryString rll_decode(const QaryString& y, const RllParams& p) {
  if (y.q() != p.q) throw parameter_error("alphabet mismatch");
  if (y.empty()) return QaryString(p.q);
  // Each encoded block is one symbol longer than its content.
  const std::size_t enc_block = p.block_len + 1;
  const std::size_t blocks = (y.size() + enc_block - 1) / enc_block;
  QaryString out(p.q);
  const auto& sym = y.symbols();
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t pos = b * enc_block;
    const std::size_t len = std::min(enc_block, sym.size() - pos);
    if (len < 1) throw decode_error("rll codeword framing broken");
    std::vector<Symbol> block(sym.begin() + static_cast<long>(pos),
                              sym.begin() + static_cast<long>(pos + len));
    for (Symbol v : decode_block_qary(std::move(block), p)) out.push_back(v);
  }
  return out;
}

namespace {

// Exact counts of binary run-limited words and the rank/unrank tables for
// the chunked binary encoder. completions[len][run] counts length-len words
// that keep the total zero-run below s given `run` zeros already pending.
struct BinaryRllTable {
  std::size_t s = 0;
  std::size_t chunk = 0;  // W: content bits per chunk
  std::vector<std::vector<boost::multiprecision::cpp_int>> completions;

  const boost::multiprecision::cpp_int& count(std::size_t len,
                                              std::size_t run) const {
    return completions[len][run];
  }
};

const BinaryRllTable& binary_rll_table(std::size_t s) {
  static std::map<std::size_t, BinaryRllTable> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;

  using boost::multiprecision::cpp_int;
  BinaryRllTable table;
  table.s = s;
  // Find the largest W with |RLL_s(W+1)| >= 2^W. The ratio
  // |RLL_s(m+1)|/2^m strictly decreases, so chunks shorter than W stay
  // admissible automatically.
  const std::size_t cap = (std::size_t{1} << s) * 2 + 4;
  table.completions.assign(1, std::vector<cpp_int>(s, 1));
  std::size_t best = 0;
  for (std::size_t len = 1; len <= cap + 2; ++len) {
    std::vector<cpp_int> row(s);
    for (std::size_t run = 0; run < s; ++run) {
      row[run] = table.completions[len - 1][0];
      if (run + 1 < s) row[run] += table.completions[len - 1][run + 1];
    }
    table.completions.push_back(std::move(row));
    if (len >= 2) {
      const std::size_t w = len - 1;
      if (table.completions[len][0] >= (cpp_int(1) << w)) best = w;
    }
  }
  table.chunk = best;
  return cache.emplace(s, std::move(table)).first->second;
}

}  // namespace

std::size_t rll_binary_block_len(std::size_t s) {
  if (s < 3) throw parameter_error("binary RLL encoder requires s >= 3");
  if (s > 12)
    throw parameter_error("binary RLL run limit above 12 is unsupported");
  return binary_rll_table(s).chunk;
}

QaryString rll_encode_binary(const QaryString& x, std::size_t s) {
  if (x.q() != 2) throw parameter_error("binary RLL encoder requires q = 2");
  if (x.empty()) throw parameter_error("rll_encode_binary requires |x| >= 1");
  const std::size_t chunk = rll_binary_block_len(s);
  const BinaryRllTable& table = binary_rll_table(s);
  using boost::multiprecision::cpp_int;
  QaryString out(2);
  const auto& sym = x.symbols();
  for (std::size_t pos = 0; pos < sym.size(); pos += chunk) {
    const std::size_t w = std::min(chunk, sym.size() - pos);
    cpp_int value = 0;
    for (std::size_t i = 0; i < w; ++i) value = (value << 1) | sym[pos + i];
    // Emit 1 . unrank(value) over RLL_s(w+1); the leading 1 keeps runs
    // from spanning chunk boundaries.
    out.push_back(1);
    std::size_t run = 0;
    for (std::size_t emitted = 0; emitted < w + 1; ++emitted) {
      const std::size_t left = w - emitted;  // symbols after this one
      if (run + 1 < s && value < table.count(left, run + 1)) {
        out.push_back(0);
        ++run;
      } else {
        if (run + 1 < s) value -= table.count(left, run + 1);
        out.push_back(1);
        run = 0;
      }
    }
  }
  return out;
}

QaryString rll_decode_binary(const QaryString& y, std::size_t s) {
  if (y.q() != 2) throw parameter_error("binary RLL decoder requires q = 2");
  if (y.empty()) return QaryString(2);
  const std::size_t chunk = rll_binary_block_len(s);
  const BinaryRllTable& table = binary_rll_table(s);
  using boost::multiprecision::cpp_int;
  const std::size_t enc_chunk = chunk + 2;
  const std::size_t blocks = (y.size() + enc_chunk - 1) / enc_chunk;
  QaryString out(2);
  const auto& sym = y.symbols();
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t pos = b * enc_chunk;
    const std::size_t len = std::min(enc_chunk, sym.size() - pos);
    if (len < 3) throw decode_error("rll binary codeword framing broken");
    const std::size_t w = len - 2;
    if (sym[pos] != 1) throw decode_error("rll binary chunk guard missing");
    cpp_int value = 0;
    std::size_t run = 0;
    for (std::size_t i = 0; i < w + 1; ++i) {
      const std::size_t left = w - i;
      const Symbol bit = sym[pos + 1 + i];
      if (bit == 0) {
        ++run;
        if (run >= s) throw decode_error("rll binary codeword violates limit");
      } else {
        if (run + 1 < s) value += table.count(left, run + 1);
        run = 0;
      }
    }
    if (value >= (cpp_int(1) << w))
      throw decode_error("rll binary chunk rank out of range");
    for (std::size_t i = w; i-- > 0;)
      out.push_back(static_cast<Symbol>(boost::multiprecision::bit_test(value, i) ? 1 : 0));
  }
  return out;
}

double rll_redundancy_lower_bound(std::size_t n, std::size_t s,
                                  std::uint32_t q) {
  if (q < 2) throw parameter_error("alphabet size must be at least 2");
  if (n <= 2 * s)
    throw parameter_error("redundancy lower bound requires n > 2s");
  const double logq_e = 1.0 / std::log(static_cast<double>(q));
  const double frac = 1.0 - 1.0 / static_cast<double>(q);
  return 0.5 * logq_e * frac * frac *
         (static_cast<double>(n) - 2.0 * static_cast<double>(s)) /
         std::pow(static_cast<double>(q), static_cast<double>(s));
}

RllIndexer::RllIndexer(std::uint32_t q, std::size_t run_limit,
                       std::size_t length)
    : q_(q), run_limit_(run_limit), length_(length) {
  if (q < 2) throw parameter_error("alphabet size must be at least 2");
  if (run_limit < 1) throw parameter_error("run limit must be positive");
  table_.assign(length_ + 1, std::vector<std::uint64_t>(run_limit_, 0));
  for (std::size_t r = 0; r < run_limit_; ++r) table_[0][r] = 1;
  for (std::size_t len = 1; len <= length_; ++len) {
    for (std::size_t r = 0; r < run_limit_; ++r) {
      std::uint64_t total =
          sat_mul_small(q_ - 1, table_[len - 1][0]);  // nonzero symbol
      if (r + 1 < run_limit_) total = sat_add(total, table_[len - 1][r + 1]);
      table_[len][r] = total;
    }
  }
}

std::uint64_t RllIndexer::completions(std::size_t len, std::size_t run) const {
  return run < run_limit_ ? table_[len][run] : 0;
}

std::uint64_t RllIndexer::capacity() const { return table_[length_][0]; }

QaryString RllIndexer::encode(std::uint64_t rank) const {
  if (rank >= capacity()) throw parameter_error("rll index rank out of range");
  QaryString out(q_);
  std::size_t run = 0;
  for (std::size_t pos = 0; pos < length_; ++pos) {
    const std::size_t left = length_ - pos - 1;
    const std::uint64_t with_zero =
        run + 1 < run_limit_ ? completions(left, run + 1) : 0;
    if (rank < with_zero) {
      out.push_back(0);
      ++run;
      continue;
    }
    rank -= with_zero;
    const std::uint64_t per_symbol = completions(left, 0);
    const std::uint64_t d = rank / per_symbol;
    out.push_back(static_cast<Symbol>(1 + d));
    rank -= d * per_symbol;
    run = 0;
  }
  return out;
}

std::uint64_t RllIndexer::decode(const QaryString& word) const {
  if (word.q() != q_ || word.size() != length_)
    throw decode_error("rll index word has wrong shape");
  std::uint64_t rank = 0;
  std::size_t run = 0;
  for (std::size_t pos = 0; pos < length_; ++pos) {
    const std::size_t left = length_ - pos - 1;
    const Symbol s = word[pos];
    if (s == 0) {
      ++run;
      if (run >= run_limit_) throw decode_error("rll index word violates limit");
      continue;
    }
    rank = sat_add(rank, run + 1 < run_limit_ ? completions(left, run + 1) : 0);
    rank = sat_add(rank, sat_mul_small(s - 1, completions(left, 0)));
    run = 0;
  }
  return rank;
}

std::size_t rll_index_length(std::uint64_t n_range, std::uint32_t q) {
  return ceil_log(n_range, q) + 1;
}

QaryString rll_index(std::uint64_t i, std::uint64_t n_range, std::size_t t,
                     std::uint32_t q) {
  if (t < 4) throw parameter_error("rll_index requires t >= 4");
  if (i >= n_range) throw parameter_error("rll_index argument out of range");
  RllIndexer idx(q, t - 3, rll_index_length(n_range, q));
  if (idx.capacity() < n_range)
    throw parameter_error("RLL_{t-3}(N) too small to index [n]");
  return idx.encode(i);
}

std::uint64_t rll_index_decode(const QaryString& w, std::uint64_t n_range,
                               std::size_t t, std::uint32_t q) {
  if (t < 4) throw parameter_error("rll_index requires t >= 4");
  RllIndexer idx(q, t - 3, rll_index_length(n_range, q));
  const std::uint64_t i = idx.decode(w);
  if (i >= n_range) throw decode_error("rll index decodes out of range");
  return i;
}

}  // namespace tracecode
