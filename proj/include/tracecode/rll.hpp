#pragma once

#include <cstdint>

#include "tracecode/strings.hpp"

namespace tracecode {

// Block encoder into RLL_s: zero-runs of length s are cut out and an index
// of the cut location is appended, one redundant symbol per block.
struct RllParams {
  std::uint32_t q = 3;
  std::size_t s = 2;
  std::size_t block_len = 0;  // q^{s-1}(q-2) + s - 1

  static RllParams make(std::uint32_t q, std::size_t s);
};

QaryString rll_encode(const QaryString& x, const RllParams& p);
QaryString rll_decode(const QaryString& y, const RllParams& p);

// Binary variant: each W-bit chunk is ranked and re-expanded as
// 1 . unrank(RLL_s(W+1)), two redundant bits per chunk. W is the largest
// chunk length whose RLL count still covers 2^W; it exceeds 2^{s-1}, so
// total redundancy is at most 2*ceil(2n/2^s). Requires 3 <= s <= 12.
std::size_t rll_binary_block_len(std::size_t s);
QaryString rll_encode_binary(const QaryString& x, std::size_t s);
QaryString rll_decode_binary(const QaryString& y, std::size_t s);

// red(RLL_s(n)) >= (log_q(e)/2) (1-1/q)^2 (n-2s)/q^s.
double rll_redundancy_lower_bound(std::size_t n, std::size_t s,
                                  std::uint32_t q);

// Fixed-length injective indexing into RLL_k(N) by lexicographic
// rank/unrank over the standard run-length counting table.
class RllIndexer {
 public:
  RllIndexer(std::uint32_t q, std::size_t run_limit, std::size_t length);

  std::uint32_t q() const { return q_; }
  std::size_t length() const { return length_; }
  // Number of admissible words, saturated at 2^63.
  std::uint64_t capacity() const;

  QaryString encode(std::uint64_t rank) const;
  std::uint64_t decode(const QaryString& word) const;

 private:
  // completions[len][run]: words of the given remaining length whose
  // concatenation after `run` trailing zeros stays run-limited; saturating.
  std::uint64_t completions(std::size_t len, std::size_t run) const;

  std::uint32_t q_;
  std::size_t run_limit_;
  std::size_t length_;
  std::vector<std::vector<std::uint64_t>> table_;
};

// h : [n_range] -> RLL_{t-3}(N) with N = ceil(log_q n_range) + 1, used by
// the repeat-free elimination stage.
QaryString rll_index(std::uint64_t i, std::uint64_t n_range, std::size_t t,
                     std::uint32_t q);
std::uint64_t rll_index_decode(const QaryString& w, std::uint64_t n_range,
                               std::size_t t, std::uint32_t q);
std::size_t rll_index_length(std::uint64_t n_range, std::uint32_t q);

// Smallest L with q^L >= value (value >= 1).
std::size_t ceil_log(std::uint64_t value, std::uint32_t q);

}  // namespace tracecode
