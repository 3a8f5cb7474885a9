#include "tracecode/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tracecode/strings.hpp"

namespace tracecode::kernels {

namespace {

bool initial_parallel() {
  if (const char* env = std::getenv("TRACECODE_SERIAL"))
    if (env[0] == '1') return false;
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

std::atomic<bool> g_parallel{initial_parallel()};

constexpr std::uint64_t kHashBase = 0x100000001b3ull;

}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel(bool enabled) {
  g_parallel.store(enabled, std::memory_order_relaxed);
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::uint64_t> window_hashes(const QaryString& x, std::size_t ell) {
  const std::size_t n = x.size();
  if (ell == 0 || ell > n) return {};
  std::vector<std::uint64_t> hashes(n - ell + 1);
  // Rolling polynomial hash mod 2^64; all comparisons verify content on
  // hash equality, so collisions cost time, not correctness.
  std::uint64_t pow = 1;
  for (std::size_t i = 0; i + 1 < ell; ++i) pow *= kHashBase;
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < ell; ++i) h = h * kHashBase + (x[i] + 1);
  hashes[0] = h;
  for (std::size_t p = 1; p + ell <= n; ++p) {
    h -= pow * (x[p - 1] + 1);
    h = h * kHashBase + (x[p + ell - 1] + 1);
    hashes[p] = h;
  }
  return hashes;
}

namespace {

struct WindowRef {
  std::uint64_t hash;
  std::uint32_t strand;
  std::uint32_t pos;
};

bool windows_equal(std::span<const QaryString> strands, const WindowRef& a,
                   const WindowRef& b, std::size_t ell) {
  const QaryString& xa = strands[a.strand];
  const QaryString& xb = strands[b.strand];
  for (std::size_t i = 0; i < ell; ++i)
    if (xa[a.pos + i] != xb[b.pos + i]) return false;
  return true;
}

bool distinct_from_refs(std::span<const QaryString> strands,
                        std::vector<WindowRef>& refs, std::size_t ell) {
  std::sort(refs.begin(), refs.end(), [](const WindowRef& a, const WindowRef& b) {
    return std::tie(a.hash, a.strand, a.pos) < std::tie(b.hash, b.strand, b.pos);
  });
  for (std::size_t i = 0; i + 1 < refs.size(); ++i) {
    if (refs[i].hash != refs[i + 1].hash) continue;
    // Equal hashes are verified pairwise within the run.
    for (std::size_t j = i + 1; j < refs.size() && refs[j].hash == refs[i].hash;
         ++j) {
      if (windows_equal(strands, refs[i], refs[j], ell)) return false;
    }
  }
  return true;
}

std::vector<WindowRef> make_refs_serial(std::span<const QaryString> strands,
                                        std::size_t ell) {
  std::vector<WindowRef> refs;
  for (std::size_t s = 0; s < strands.size(); ++s) {
    auto hashes = window_hashes(strands[s], ell);
    for (std::size_t p = 0; p < hashes.size(); ++p)
      refs.push_back({hashes[p], static_cast<std::uint32_t>(s),
                      static_cast<std::uint32_t>(p)});
  }
  return refs;
}

}  // namespace

bool all_windows_distinct_serial(std::span<const QaryString> strands,
                                 std::size_t ell) {
  auto refs = make_refs_serial(strands, ell);
  return distinct_from_refs(strands, refs, ell);
}

bool all_windows_distinct_parallel(std::span<const QaryString> strands,
                                   std::size_t ell) {
#ifndef _OPENMP
  return all_windows_distinct_serial(strands, ell);
#else
  std::vector<std::size_t> offsets(strands.size() + 1, 0);
  for (std::size_t s = 0; s < strands.size(); ++s) {
    const std::size_t cnt =
        strands[s].size() >= ell ? strands[s].size() - ell + 1 : 0;
    offsets[s + 1] = offsets[s] + cnt;
  }
  std::vector<WindowRef> refs(offsets.back());
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < static_cast<long>(strands.size()); ++s) {
    auto hashes = window_hashes(strands[static_cast<std::size_t>(s)], ell);
    std::size_t base = offsets[static_cast<std::size_t>(s)];
    for (std::size_t p = 0; p < hashes.size(); ++p)
      refs[base + p] = {hashes[p], static_cast<std::uint32_t>(s),
                        static_cast<std::uint32_t>(p)};
  }
  return distinct_from_refs(strands, refs, ell);
#endif
}

bool all_windows_distinct(std::span<const QaryString> strands,
                          std::size_t ell) {
  return parallel_enabled() ? all_windows_distinct_parallel(strands, ell)
                            : all_windows_distinct_serial(strands, ell);
}

std::size_t first_failure_serial(std::size_t count,
                                 const std::function<bool(std::size_t)>& pred) {
  for (std::size_t i = 0; i < count; ++i)
    if (!pred(i)) return i;
  return count;
}

std::size_t first_failure_parallel(
    std::size_t count, const std::function<bool(std::size_t)>& pred) {
#ifndef _OPENMP
  return first_failure_serial(count, pred);
#else
  std::atomic<std::size_t> failure{count};
#pragma omp parallel for schedule(dynamic, 256)
  for (long i = 0; i < static_cast<long>(count); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (idx >= failure.load(std::memory_order_relaxed)) continue;
    if (!pred(idx)) {
      std::size_t cur = failure.load(std::memory_order_relaxed);
      while (idx < cur &&
             !failure.compare_exchange_weak(cur, idx, std::memory_order_relaxed)) {
      }
    }
  }
  return failure.load();
#endif
}

std::size_t first_failure(std::size_t count,
                          const std::function<bool(std::size_t)>& pred) {
  return parallel_enabled() ? first_failure_parallel(count, pred)
                            : first_failure_serial(count, pred);
}

void for_each_index_serial(std::size_t count,
                           const std::function<void(std::size_t)>& fn) {
  for (std::size_t i = 0; i < count; ++i) fn(i);
}

void for_each_index_parallel(std::size_t count,
                             const std::function<void(std::size_t)>& fn) {
#ifndef _OPENMP
  for_each_index_serial(count, fn);
#else
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(count); ++i)
    fn(static_cast<std::size_t>(i));
#endif
}

void for_each_index(std::size_t count,
                    const std::function<void(std::size_t)>& fn) {
  if (parallel_enabled())
    for_each_index_parallel(count, fn);
  else
    for_each_index_serial(count, fn);
}

}  // namespace tracecode::kernels
