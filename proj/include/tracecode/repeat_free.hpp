#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tracecode/strings.hpp"

namespace tracecode {

// Parameters of the repeat-free encoder into RF_ell(n) /\ RLL_t(n).
struct RfParams {
  std::uint32_t q = 2;
  std::size_t n = 0;    // output length
  std::size_t ell = 0;  // repeat-free order
  std::size_t t = 0;    // run-length parameter
  bool unsafe = false;

  // Derived.
  std::size_t log_n = 0;      // ceil(log_q n)
  std::size_t s = 0;          // elimination window: log_n + t + 2
  std::size_t index_len = 0;  // log_n + 1
  std::size_t m = 0;          // message length of the concrete pipeline

  // Violated regime inequalities; empty when the parameters satisfy the
  // full hypothesis. Construction refuses them unless unsafe is set, and
  // output predicates are asserted either way.
  std::vector<std::string> violations;

  static RfParams make(std::uint32_t q, std::size_t n, std::size_t ell,
                       std::size_t t, bool unsafe = false);
  // Preset with ell = ceil(log n) + 10 ceil(loglog n) + 10 and the run
  // limit capped at 4 ceil(loglog n) + 2.
  static RfParams lemma5_preset(std::uint32_t q, std::size_t n,
                                bool unsafe = false);
};

struct RfEncodeStats {
  std::size_t eliminations = 0;
  std::size_t stage1_redundancy = 0;  // (n - t - 1) - m
};

QaryString rf_encode(const QaryString& x, const RfParams& p,
                     RfEncodeStats* stats = nullptr);
QaryString rf_decode(const QaryString& z, const RfParams& p);

}  // namespace tracecode
