#pragma once

#include <cstdint>
#include <functional>

#include "tracecode/strings.hpp"

namespace tracecode {

// Streams the lexicographically least de Bruijn sequence of order s over
// [q] (length q^s): periodic reductions of necklaces concatenated in
// lexicographic order.
void debruijn_stream(std::uint32_t q, std::size_t s,
                     const std::function<void(Symbol)>& sink);

// Materializes the whole sequence. Guarded by a symbol budget
// (TRACECODE_DEBRUIJN_BUDGET, default 2^32 for streaming, 2^26 for
// materializing).
QaryString debruijn_sequence(std::uint32_t q, std::size_t s);

// The n-suffix of the order-s sequence. Streams with an n-symbol ring
// buffer, so memory stays O(n). The result is s-repeat-free by
// construction; the (t-2)-run-length postcondition is checked and a
// postcondition_error reports parameters outside the usable regime.
// Results are cached per (q, s, n).
QaryString debruijn_tail(std::size_t n, std::size_t s, std::size_t t,
                         std::uint32_t q);

std::uint64_t debruijn_stream_budget();

}  // namespace tracecode
