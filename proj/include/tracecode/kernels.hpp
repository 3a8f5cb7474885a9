#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace tracecode {
class QaryString;
}

// Data-parallel inner loops used by the predicates, the window-scan
// verifiers and the encoders. Every kernel has a serial reference
// implementation and an OpenMP one; the unqualified name dispatches on
// parallel_enabled(). tools/bench_kernels compares the two.
namespace tracecode::kernels {

bool parallel_enabled();
void set_parallel(bool enabled);
int max_threads();

// True iff all length-ell windows (step 1) over all given strands are
// pairwise distinct, i.e. the joint profile has multiplicity one everywhere.
bool all_windows_distinct_serial(std::span<const QaryString> strands,
                                 std::size_t ell);
bool all_windows_distinct_parallel(std::span<const QaryString> strands,
                                   std::size_t ell);
bool all_windows_distinct(std::span<const QaryString> strands,
                          std::size_t ell);

// Index of the first i in [count] with pred(i) == false, or count if none.
// pred must be safe to call concurrently.
std::size_t first_failure_serial(std::size_t count,
                                 const std::function<bool(std::size_t)>& pred);
std::size_t first_failure_parallel(std::size_t count,
                                   const std::function<bool(std::size_t)>& pred);
std::size_t first_failure(std::size_t count,
                          const std::function<bool(std::size_t)>& pred);

// Runs fn(i) for every i in [count]; fn must be thread-safe and write only
// to per-index slots.
void for_each_index_serial(std::size_t count,
                           const std::function<void(std::size_t)>& fn);
void for_each_index_parallel(std::size_t count,
                             const std::function<void(std::size_t)>& fn);
void for_each_index(std::size_t count,
                    const std::function<void(std::size_t)>& fn);

// Polynomial window hashes, one per window start, shared by the kernels
// and the reconstruction code.
std::vector<std::uint64_t> window_hashes(const QaryString& x, std::size_t ell);

}  // namespace tracecode::kernels
