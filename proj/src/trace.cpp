#include "tracecode/trace.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "tracecode/rng.hpp"

namespace tracecode {

std::vector<QaryString> Trace::canonical_contents() const {
  std::vector<QaryString> out;
  out.reserve(segments.size());
  for (const TraceSegment& s : segments) out.push_back(s.content);
  std::sort(out.begin(), out.end());
  return out;
}

StrippedTrace StrippedTrace::of(const Trace& t) {
  StrippedTrace out;
  if (t.segments.empty()) throw parameter_error("empty trace");
  out.q = t.segments.front().content.q();
  for (const TraceSegment& s : t.segments) {
    if (s.content.q() != out.q)
      throw parameter_error("trace segments over mixed alphabets");
    out.segments.push_back(s.content);
  }
  return out;
}

namespace {

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  if (const char* env = std::getenv(name)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

}  // namespace

std::uint64_t validate_budget() {
  static const std::uint64_t v =
      env_budget("TRACECODE_VALIDATE_BUDGET", 1000000ull);
  return v;
}

std::uint64_t enumerate_budget() {
  static const std::uint64_t v =
      env_budget("TRACECODE_ENUM_BUDGET", 10000000ull);
  return v;
}

Trace canonical_trace(const QaryString& x, TraceParams p) {
  if (x.size() < p.lmin)
    throw parameter_error("canonical trace requires |x| >= lmin");
  if (p.lmin == p.lover)
    throw parameter_error("canonical trace undefined for lmin == lover");
  Trace t;
  for (std::size_t loc :
       window_locations(x.size(), p.lmin, p.lmin - p.lover)) {
    t.segments.push_back({x.substr(loc, p.lmin), Placement{0, loc}});
  }
  return t;
}

Trace random_trace(const QaryString& x, TraceParams p, std::uint64_t seed) {
  const std::size_t n = x.size();
  if (n < p.lmin) throw parameter_error("random trace requires |x| >= lmin");
  if (p.lmin == p.lover && n != p.lmin)
    throw parameter_error("lmin == lover admits no multi-segment cuts");
  std::mt19937_64 rng(seed);
  Trace t;
  std::size_t start = 0;
  std::size_t len = static_cast<std::size_t>(uniform_in(rng, p.lmin, n));
  t.segments.push_back({x.substr(0, len), Placement{0, 0}});
  while (start + len < n) {
    // Next start in (start, end - lover], clamped so a segment still fits.
    const std::size_t lo = start + 1;
    const std::size_t hi = std::min(start + len - p.lover, n - p.lmin);
    const std::size_t next = static_cast<std::size_t>(uniform_in(rng, lo, hi));
    const std::size_t next_len =
        static_cast<std::size_t>(uniform_in(rng, p.lmin, n - next));
    t.segments.push_back({x.substr(next, next_len), Placement{0, next}});
    start = next;
    len = next_len;
  }
  return t;
}

Trace trace_of_multiset(const StrandMultiset& s, TraceParams p, TraceMode mode,
                        std::uint64_t seed) {
  Trace out;
  for (std::size_t i = 0; i < s.k(); ++i) {
    Trace per = mode == TraceMode::canonical
                    ? canonical_trace(s.strands()[i], p)
                    : random_trace(s.strands()[i], p,
                                   seed * 0x9e3779b97f4a7c15ull + i);
    for (TraceSegment& seg : per.segments) {
      seg.placement->strand = i;
      out.segments.push_back(std::move(seg));
    }
  }
  return out;
}

namespace {

// Direct check of the definition against explicitly placed segments.
bool check_placed(const QaryString& x, std::vector<const TraceSegment*> segs,
                  TraceParams p) {
  const std::size_t n = x.size();
  std::sort(segs.begin(), segs.end(),
            [](const TraceSegment* a, const TraceSegment* b) {
              return a->placement->location < b->placement->location;
            });
  if (segs.empty()) return false;
  std::size_t prev_start = 0, prev_end = 0;
  for (std::size_t j = 0; j < segs.size(); ++j) {
    const std::size_t loc = segs[j]->placement->location;
    const std::size_t len = segs[j]->content.size();
    if (len < p.lmin || loc + len > n) return false;
    for (std::size_t i = 0; i < len; ++i)
      if (x[loc + i] != segs[j]->content[i]) return false;
    if (j == 0) {
      if (loc != 0) return false;
    } else {
      if (loc <= prev_start) return false;                 // ascending starts
      if (loc >= prev_end) return false;                   // completeness
      if (prev_end - loc < p.lover) return false;          // overlap
    }
    prev_start = loc;
    prev_end = loc + len;
  }
  return prev_end == n;
}

struct ValidateSearch {
  const QaryString& x;
  TraceParams p;
  std::vector<QaryString> contents;              // distinct, sorted
  std::vector<std::size_t> remaining;            // multiplicity left
  std::vector<std::vector<std::size_t>> occ;     // occurrences of each content
  std::uint64_t budget;

  bool run() {
    // First segment must sit at location 0.
    for (std::size_t c = 0; c < contents.size(); ++c) {
      if (remaining[c] == 0) continue;
      if (!std::binary_search(occ[c].begin(), occ[c].end(), std::size_t{0}))
        continue;
      --remaining[c];
      if (rec(0, contents[c].size(), count_remaining())) return true;
      ++remaining[c];
    }
    return false;
  }

  std::size_t count_remaining() const {
    std::size_t total = 0;
    for (std::size_t r : remaining) total += r;
    return total;
  }

  bool rec(std::size_t prev_start, std::size_t prev_end, std::size_t left) {
    if (budget-- == 0)
      throw budget_exceeded_error("validate_trace search budget exceeded");
    if (left == 0) return prev_end == x.size();
    for (std::size_t c = 0; c < contents.size(); ++c) {
      if (remaining[c] == 0) continue;
      const std::size_t len = contents[c].size();
      for (std::size_t loc : occ[c]) {
        if (loc <= prev_start) continue;
        if (loc >= prev_end || prev_end - loc < p.lover) continue;
        if (loc + len > x.size()) continue;
        --remaining[c];
        if (rec(loc, loc + len, left - 1)) return true;
        ++remaining[c];
      }
    }
    return false;
  }
};

std::vector<std::size_t> occurrences(const QaryString& x,
                                     const QaryString& pat) {
  std::vector<std::size_t> out;
  if (pat.size() > x.size()) return out;
  for (std::size_t p = 0; p + pat.size() <= x.size(); ++p) {
    bool match = true;
    for (std::size_t i = 0; i < pat.size(); ++i)
      if (x[p + i] != pat[i]) {
        match = false;
        break;
      }
    if (match) out.push_back(p);
  }
  return out;
}

}  // namespace

bool validate_trace(const QaryString& x, const Trace& t, TraceParams p) {
  if (t.segments.empty()) return false;
  for (const TraceSegment& s : t.segments)
    if (s.content.q() != x.q())
      throw parameter_error("trace alphabet mismatch");

  bool all_placed = true;
  for (const TraceSegment& s : t.segments)
    if (!s.placement || s.placement->strand != 0) {
      all_placed = false;
      break;
    }
  if (all_placed) {
    std::vector<const TraceSegment*> segs;
    for (const TraceSegment& s : t.segments) segs.push_back(&s);
    return check_placed(x, std::move(segs), p);
  }

  // Multiset backtracking over candidate locations.
  std::map<QaryString, std::size_t> counts;
  for (const TraceSegment& s : t.segments) {
    if (s.content.size() < p.lmin) return false;
    ++counts[s.content];
  }
  ValidateSearch search{x, p, {}, {}, {}, validate_budget()};
  for (auto& [content, count] : counts) {
    search.occ.push_back(occurrences(x, content));
    if (search.occ.back().empty()) return false;
    search.contents.push_back(content);
    search.remaining.push_back(count);
  }
  return search.run();
}

namespace {

struct EnumerateSearch {
  const QaryString& x;
  TraceParams p;
  std::uint64_t budget;
  std::set<std::vector<QaryString>> results;
  std::vector<QaryString> current;

  void rec(std::size_t prev_start, std::size_t prev_end) {
    if (budget-- == 0)
      throw budget_exceeded_error("enumerate_traces budget exceeded");
    const std::size_t n = x.size();
    if (prev_end == n) {
      std::vector<QaryString> key = current;
      std::sort(key.begin(), key.end());
      results.insert(std::move(key));
    }
    if (prev_end < p.lover) return;
    const std::size_t hi_overlap = prev_end - p.lover;
    if (n < p.lmin) return;
    const std::size_t hi = std::min(hi_overlap, n - p.lmin);
    for (std::size_t start = prev_start + 1; start <= hi; ++start) {
      for (std::size_t len = p.lmin; start + len <= n; ++len) {
        current.push_back(x.substr(start, len));
        rec(start, start + len);
        current.pop_back();
      }
    }
  }
};

}  // namespace

std::vector<Trace> enumerate_traces(const QaryString& x, TraceParams p) {
  if (x.size() < p.lmin)
    throw parameter_error("enumerate_traces requires |x| >= lmin");
  EnumerateSearch search{x, p, enumerate_budget(), {}, {}};
  for (std::size_t len = p.lmin; len <= x.size(); ++len) {
    search.current.push_back(x.substr(0, len));
    search.rec(0, len);
    search.current.pop_back();
  }
  std::vector<Trace> out;
  for (const std::vector<QaryString>& contents : search.results) {
    Trace t;
    for (const QaryString& c : contents) t.segments.push_back({c, std::nullopt});
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace tracecode
