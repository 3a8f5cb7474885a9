#include "tracecode/reconstruct.hpp"

#include <algorithm>
#include <unordered_map>

namespace tracecode {

namespace {

std::uint64_t span_hash(const std::vector<Symbol>& v, std::size_t pos,
                        std::size_t len) {
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < len; ++i)
    h = h * 0x100000001b3ull + (v[pos + i] + 1);
  return h;
}

struct Assembler {
  const std::vector<QaryString>& segments;
  std::size_t lover;

  std::vector<bool> consumed;
  // prefix hash of each pending segment -> segment ids
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> pending;
  std::vector<std::vector<Symbol>> chains;
  std::vector<std::size_t> scanned;  // next window position per chain

  explicit Assembler(const std::vector<QaryString>& segs, std::size_t lover_)
      : segments(segs), lover(lover_), consumed(segs.size(), false) {}

  // Segments whose lover-prefix occurs nowhere else (in any segment at a
  // positive offset, nor in another segment at offset zero) start chains.
  std::vector<std::size_t> find_heads() const {
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>>
        occ;
    for (std::size_t id = 0; id < segments.size(); ++id) {
      const auto& sym = segments[id].symbols();
      for (std::size_t pos = 0; pos + lover <= sym.size(); ++pos)
        occ[span_hash(sym, pos, lover)].push_back({id, pos});
    }
    std::vector<std::size_t> heads;
    for (std::size_t id = 0; id < segments.size(); ++id) {
      const auto& sym = segments[id].symbols();
      const std::uint64_t h = span_hash(sym, 0, lover);
      bool unique = true;
      for (const auto& [oid, opos] : occ[h]) {
        if (oid == id && opos == 0) continue;
        const auto& osym = segments[oid].symbols();
        bool equal = true;
        for (std::size_t i = 0; i < lover; ++i)
          if (osym[opos + i] != sym[i]) {
            equal = false;
            break;
          }
        if (equal) {
          unique = false;
          break;
        }
      }
      if (unique) heads.push_back(id);
    }
    return heads;
  }

  void start_chain(std::size_t head) {
    consumed[head] = true;
    chains.push_back(segments[head].symbols());
    scanned.push_back(0);
  }

  void index_pending() {
    for (std::size_t id = 0; id < segments.size(); ++id) {
      if (consumed[id]) continue;
      pending[span_hash(segments[id].symbols(), 0, lover)].push_back(id);
    }
  }

  // Places pending segments against chain c until no new window matches.
  bool grow(std::size_t c) {
    bool progress = false;
    auto& r = chains[c];
    while (scanned[c] + lover <= r.size()) {
      const std::size_t pos = scanned[c]++;
      const std::uint64_t h = span_hash(r, pos, lover);
      auto it = pending.find(h);
      if (it == pending.end()) continue;
      auto& bucket = it->second;
      for (std::size_t bi = 0; bi < bucket.size();) {
        const std::size_t id = bucket[bi];
        if (consumed[id]) {
          bucket.erase(bucket.begin() + static_cast<long>(bi));
          continue;
        }
        const auto& seg = segments[id].symbols();
        bool prefix_ok = true;
        for (std::size_t i = 0; i < lover; ++i)
          if (r[pos + i] != seg[i]) {
            prefix_ok = false;
            break;
          }
        if (!prefix_ok) {
          ++bi;
          continue;
        }
        // The landed part of the segment must agree with the chain; a
        // located prefix with a contradictory continuation breaks the
        // repeat-free guarantee.
        const std::size_t landed = std::min(seg.size(), r.size() - pos);
        for (std::size_t i = lover; i < landed; ++i)
          if (r[pos + i] != seg[i])
            throw ambiguity_error(
                "segment locates at a position with contradictory overlap");
        for (std::size_t i = landed; i < seg.size(); ++i) r.push_back(seg[i]);
        consumed[id] = true;
        bucket.erase(bucket.begin() + static_cast<long>(bi));
        progress = true;
      }
      if (bucket.empty()) pending.erase(it);
    }
    return progress;
  }

  void run() {
    index_pending();
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t c = 0; c < chains.size(); ++c)
        if (grow(c)) progress = true;
    }
    if (std::find(consumed.begin(), consumed.end(), false) != consumed.end())
      throw incomplete_trace_error(
          "segments left over after all chains stalled");
  }
};

void check_inputs(const StrippedTrace& t, TraceParams p) {
  if (p.lover < 1)
    throw parameter_error("reconstruction requires lover >= 1");
  if (t.segments.empty()) throw parameter_error("empty trace");
  for (const QaryString& s : t.segments) {
    if (s.size() < p.lmin)
      throw parameter_error("trace segment shorter than lmin");
  }
}

}  // namespace

QaryString reconstruct_from_trace(const StrippedTrace& t, TraceParams p) {
  check_inputs(t, p);
  Assembler a(t.segments, p.lover);
  const std::vector<std::size_t> heads = a.find_heads();
  if (heads.empty())
    throw incomplete_trace_error("no segment qualifies as the prefix");
  if (heads.size() > 1)
    throw ambiguity_error("several segments qualify as the prefix");
  a.start_chain(heads.front());
  a.run();
  return QaryString(t.q, std::move(a.chains.front()));
}

StrandMultiset reconstruct_multiset(const StrippedTrace& t, TraceParams p,
                                    std::size_t n, std::size_t k) {
  check_inputs(t, p);
  if (k < 1) throw parameter_error("strand count must be positive");
  Assembler a(t.segments, p.lover);
  const std::vector<std::size_t> heads = a.find_heads();
  if (heads.size() < k)
    throw incomplete_trace_error("fewer chain heads than strands");
  if (heads.size() > k)
    throw ambiguity_error("more chain heads than strands");
  for (std::size_t h : heads) a.start_chain(h);
  a.run();
  std::vector<QaryString> strands;
  for (auto& chain : a.chains) {
    if (chain.size() != n)
      throw decode_error("reconstructed strand has wrong length");
    strands.emplace_back(t.q, std::move(chain));
  }
  return StrandMultiset(t.q, std::move(strands));
}

}  // namespace tracecode
