#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tracecode/strings.hpp"

namespace tracecode {

// Channel constraints: minimum segment length and minimum overlap of
// consecutive segments.
struct TraceParams {
  std::size_t lmin = 1;
  std::size_t lover = 0;

  TraceParams(std::size_t lmin_, std::size_t lover_)
      : lmin(lmin_), lover(lover_) {
    if (lmin < 1 || lover > lmin)
      throw parameter_error("trace parameters require lmin >= lover >= 0, lmin >= 1");
  }
};

// Ground-truth placement carried as testing metadata only; decoders get a
// stripped view and can never read it.
struct Placement {
  std::size_t strand = 0;
  std::size_t location = 0;
  bool operator==(const Placement&) const = default;
};

struct TraceSegment {
  QaryString content;
  std::optional<Placement> placement;
};

struct Trace {
  std::vector<TraceSegment> segments;

  std::size_t size() const { return segments.size(); }

  // Multiset equality: sorted contents, placements ignored.
  std::vector<QaryString> canonical_contents() const;
  bool same_multiset(const Trace& other) const {
    return canonical_contents() == other.canonical_contents();
  }
};

// The placement-free view handed to all decoding code.
struct StrippedTrace {
  std::uint32_t q = 2;
  std::vector<QaryString> segments;

  static StrippedTrace of(const Trace& t);
};

// Default search budgets; overridable through the environment
// (TRACECODE_VALIDATE_BUDGET, TRACECODE_ENUM_BUDGET).
std::uint64_t validate_budget();
std::uint64_t enumerate_budget();

// The trace of lmin-windows at step lmin-lover, last window forced to the
// suffix. Requires lmin > lover.
Trace canonical_trace(const QaryString& x, TraceParams p);

// Greedy left-to-right random cutting: next start uniform in the legal
// window, next length uniform in its legal range. Valid by construction,
// deterministic for a fixed seed, not uniform over all traces.
Trace random_trace(const QaryString& x, TraceParams p, std::uint64_t seed);

enum class TraceMode { canonical, random };
Trace trace_of_multiset(const StrandMultiset& s, TraceParams p, TraceMode mode,
                        std::uint64_t seed = 0);

// True iff some assignment of ascending locations makes T a complete
// (lmin, lover)-trace of x. Uses placements when every segment carries one,
// otherwise a backtracking search over the multiset.
bool validate_trace(const QaryString& x, const Trace& t, TraceParams p);

// All distinct trace multisets of x, canonicalized and sorted.
std::vector<Trace> enumerate_traces(const QaryString& x, TraceParams p);

}  // namespace tracecode
