#include "tracecode/debruijn.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <tuple>

namespace tracecode {

namespace {

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  if (const char* env = std::getenv(name)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

// q^s, or 0 on overflow past 2^63.
std::uint64_t pow_checked(std::uint32_t q, std::size_t s) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < s; ++i) {
    if (out > (1ull << 62) / q) return 0;
    out *= q;
  }
  return out;
}

struct Fkm {
  std::uint32_t q;
  std::size_t s;
  const std::function<void(Symbol)>& sink;
  std::vector<Symbol> a;

  void run() {
    a.assign(s + 1, 0);
    gen(1, 1);
  }

  void gen(std::size_t t, std::size_t p) {
    if (t > s) {
      if (s % p == 0)
        for (std::size_t i = 1; i <= p; ++i) sink(a[i]);
      return;
    }
    a[t] = a[t - p];
    gen(t + 1, p);
    for (Symbol j = a[t - p] + 1; j < q; ++j) {
      a[t] = j;
      gen(t + 1, t);
    }
  }
};

}  // namespace

std::uint64_t debruijn_stream_budget() {
  static const std::uint64_t v =
      env_budget("TRACECODE_DEBRUIJN_BUDGET", 1ull << 32);
  return v;
}

void debruijn_stream(std::uint32_t q, std::size_t s,
                     const std::function<void(Symbol)>& sink) {
  if (q < 2) throw parameter_error("alphabet size must be at least 2");
  if (s < 1) throw parameter_error("de Bruijn order must be at least 1");
  const std::uint64_t len = pow_checked(q, s);
  if (len == 0 || len > debruijn_stream_budget())
    throw budget_exceeded_error("de Bruijn sequence length exceeds budget");
  Fkm{q, s, sink, {}}.run();
}

QaryString debruijn_sequence(std::uint32_t q, std::size_t s) {
  const std::uint64_t len = pow_checked(q, s);
  const std::uint64_t materialize_budget =
      env_budget("TRACECODE_DEBRUIJN_BUDGET", 1ull << 26);
  if (len == 0 || len > materialize_budget)
    throw budget_exceeded_error(
        "de Bruijn sequence too long to materialize under budget");
  QaryString out(q);
  debruijn_stream(q, s, [&out](Symbol v) { out.push_back(v); });
  return out;
}

QaryString debruijn_tail(std::size_t n, std::size_t s, std::size_t t,
                         std::uint32_t q) {
  if (t < 3) throw parameter_error("debruijn_tail requires t >= 3");
  const std::uint64_t len = pow_checked(q, s);
  if (len == 0) throw parameter_error("q^s overflows the streaming range");
  if (n == 0 || n > len)
    throw parameter_error("tail length must be in [1, q^s]");

  static std::map<std::tuple<std::uint32_t, std::size_t, std::size_t>,
                  QaryString>
      cache;
  static std::mutex mutex;
  QaryString tail(q);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({q, s, n});
    if (it != cache.end()) tail = it->second;
  }
  if (tail.empty()) {
    std::vector<Symbol> ring(n, 0);
    std::uint64_t written = 0;
    debruijn_stream(q, s, [&](Symbol v) {
      ring[static_cast<std::size_t>(written % n)] = v;
      ++written;
    });
    std::vector<Symbol> ordered(n);
    for (std::size_t i = 0; i < n; ++i)
      ordered[i] = ring[static_cast<std::size_t>((written + i) % n)];
    tail = QaryString(q, std::move(ordered));
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(std::make_tuple(q, s, n), tail);
  }

  // Any substring of the de Bruijn sequence has distinct s-windows, so only
  // the run-length side can fail at small scales.
  if (!is_rll(tail, t - 2))
    throw postcondition_error(
        "de Bruijn tail is not (t-2)-run-length-limited for these parameters");
  return tail;
}

}  // namespace tracecode
