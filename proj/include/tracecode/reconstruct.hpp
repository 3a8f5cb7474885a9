#pragma once

#include "tracecode/strings.hpp"
#include "tracecode/trace.hpp"

namespace tracecode {

// Reassembles x from any (lmin, lover)-trace of a source in RF_lover(n):
// each segment's lover-prefix occurs at a unique position of the already
// assembled prefix, so merging is forced. Raises ambiguity_error when a
// merge is contradictory and incomplete_trace_error when segments cannot
// be chained (both indicate the repeat-free precondition fails).
QaryString reconstruct_from_trace(const StrippedTrace& t, TraceParams p);

// Corollary for S in RF_lover(n, k): k chains are grown in parallel from
// the k segments whose prefixes locate nowhere else.
StrandMultiset reconstruct_multiset(const StrippedTrace& t, TraceParams p,
                                    std::size_t n, std::size_t k);

}  // namespace tracecode
