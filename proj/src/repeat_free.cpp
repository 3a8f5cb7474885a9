#include "tracecode/repeat_free.hpp"

#include <algorithm>
#include <unordered_map>

#include "tracecode/debruijn.hpp"
#include "tracecode/kernels.hpp"
#include "tracecode/rll.hpp"

namespace tracecode {

namespace {

// ceil(log_q ceil(log_q n)), the loglog used by the regime bounds.
std::size_t ceil_loglog(std::size_t n, std::uint32_t q) {
  const std::size_t l = ceil_log(n, q);
  return ceil_log(std::max<std::size_t>(l, 1), q);
}

std::size_t stage1_encoded_len(std::size_t m, std::uint32_t q, std::size_t s) {
  if (m == 0) return 0;
  if (q == 2) {
    const std::size_t w = rll_binary_block_len(s);
    return m + 2 * ((m + w - 1) / w);
  }
  const RllParams rp = RllParams::make(q, s);
  return m + (m + rp.block_len - 1) / rp.block_len;
}

// Largest m whose stage-1 encoding fits in `target` symbols.
std::size_t stage1_message_len(std::size_t target, std::uint32_t q,
                               std::size_t s) {
  std::size_t lo = 0, hi = target;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (stage1_encoded_len(mid, q, s) <= target)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

std::vector<Symbol> marker_word(std::size_t zeros) {
  std::vector<Symbol> m(zeros + 2, 0);
  m.front() = 1;
  m.back() = 1;
  return m;
}

std::size_t find_last(const std::vector<Symbol>& hay,
                      const std::vector<Symbol>& needle) {
  if (needle.size() > hay.size()) return static_cast<std::size_t>(-1);
  for (std::size_t p = hay.size() - needle.size() + 1; p-- > 0;) {
    bool hit = true;
    for (std::size_t i = 0; i < needle.size(); ++i)
      if (hay[p + i] != needle[i]) {
        hit = false;
        break;
      }
    if (hit) return p;
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

RfParams RfParams::make(std::uint32_t q, std::size_t n, std::size_t ell,
                        std::size_t t, bool unsafe) {
  if (q < 2) throw parameter_error("alphabet size must be at least 2");
  RfParams p;
  p.q = q;
  p.n = n;
  p.ell = ell;
  p.t = t;
  p.unsafe = unsafe;

  // Mechanical requirements, enforced in any mode.
  const std::size_t t_min = q == 2 ? 6 : 5;
  if (t < t_min)
    throw parameter_error("run-length parameter too small for the encoder");
  if (q == 2 && t > 15)
    throw parameter_error("run-length parameter above 15 is unsupported");
  if (n < t + 2) throw parameter_error("output length too small");
  if (ell < 1 || ell > n) throw parameter_error("repeat-free order out of range");

  p.log_n = ceil_log(n, q);
  p.s = p.log_n + t + 2;
  p.index_len = p.log_n + 1;
  {
    RllIndexer idx(q, t - 3, p.index_len);
    if (idx.capacity() < n)
      throw parameter_error("RLL_{t-3}(ceil(log n)+1) cannot index [n]");
  }
  p.m = stage1_message_len(n - t - 1, q, t - 3);
  if (p.m < 1) throw parameter_error("no message symbols left at this n, t");

  // Regime hypothesis; violations are fatal unless unsafe.
  const std::size_t ll = ceil_loglog(n, q);
  const std::size_t t_lower = ll + (q == 2 ? 5 : 4);
  if (t < t_lower)
    p.violations.push_back("t below ceil(loglog n) + " +
                           std::to_string(q == 2 ? 5 : 4));
  if (ell < 3 * t + p.log_n)
    p.violations.push_back("ell below 3t + ceil(log n)");
  if (!unsafe && !p.violations.empty()) {
    std::string msg = "repeat-free parameter regime violated:";
    for (const std::string& v : p.violations) msg += " [" + v + "]";
    throw parameter_error(msg);
  }
  return p;
}

RfParams RfParams::lemma5_preset(std::uint32_t q, std::size_t n, bool unsafe) {
  const std::size_t log_n = ceil_log(n, q);
  const std::size_t ll = ceil_loglog(n, q);
  const std::size_t s_prime = log_n + 10 * ll + 10;
  const std::size_t s_dprime = 4 * ll + 2;
  // The preset targets RF_{s'} /\ RLL_{s''}; the encoder's own run limit is
  // clamped to its admissible range, which only strengthens the RLL side.
  std::size_t t = std::min(s_dprime, (s_prime - log_n) / 3);
  t = std::max<std::size_t>(t, q == 2 ? 6 : 5);
  t = std::min<std::size_t>(t, 15);
  return make(q, n, std::min(s_prime, n), t, unsafe);
}

namespace {

struct WindowIndex {
  // hash -> positions of first occurrences of distinct contents
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> map;

  void clear() { map.clear(); }
};

std::uint64_t hash_window(const std::vector<Symbol>& w, std::size_t pos,
                          std::size_t len) {
  std::uint64_t h = 0;
  for (std::size_t i = 0; i < len; ++i) h = h * 0x100000001b3ull + (w[pos + i] + 1);
  return h;
}

bool window_eq(const std::vector<Symbol>& w, std::size_t a, std::size_t b,
               std::size_t len) {
  for (std::size_t i = 0; i < len; ++i)
    if (w[a + i] != w[b + i]) return false;
  return true;
}

// Elimination stage: repeatedly find the minimal j with an earlier equal
// s-window at i and replace w[j..j+s) by 1 0^{t-3} 1 h(i) 1, shrinking the
// string by one per step.
void eliminate_repeats(std::vector<Symbol>& w, const RfParams& p,
                       RfEncodeStats* stats) {
  const std::size_t s = p.s;
  const std::vector<Symbol> marker = marker_word(p.t - 3);
  std::size_t guard = w.size() + 2;
  std::size_t scan_from = 0;
  WindowIndex index;
  bool index_valid = false;
  std::size_t indexed_to = 0;  // windows with start < indexed_to are in map

  while (w.size() >= s) {
    if (guard-- == 0)
      throw postcondition_error("elimination did not terminate");
    if (!index_valid) {
      index.clear();
      indexed_to = 0;
      index_valid = true;
    }
    std::size_t hit_j = static_cast<std::size_t>(-1);
    std::size_t hit_i = 0;
    for (std::size_t j = std::max(scan_from, indexed_to);
         j + s <= w.size(); ++j) {
      const std::uint64_t h = hash_window(w, j, s);
      auto it = index.map.find(h);
      bool found = false;
      if (it != index.map.end()) {
        for (std::size_t cand : it->second) {
          if (window_eq(w, cand, j, s)) {
            hit_j = j;
            hit_i = cand;
            found = true;
            break;
          }
        }
        if (!found) it->second.push_back(j);
      } else {
        index.map.emplace(h, std::vector<std::size_t>{j});
      }
      indexed_to = j + 1;
      if (found) break;
    }
    if (hit_j == static_cast<std::size_t>(-1)) break;

    const QaryString h_word = rll_index(hit_i, p.n, p.t, p.q);
    std::vector<Symbol> repl = marker;
    repl.insert(repl.end(), h_word.symbols().begin(), h_word.symbols().end());
    repl.push_back(1);
    if (repl.size() != s - 1)
      throw postcondition_error("replacement word has unexpected length");

    const std::size_t before = w.size();
    w.erase(w.begin() + static_cast<long>(hit_j),
            w.begin() + static_cast<long>(hit_j + s));
    w.insert(w.begin() + static_cast<long>(hit_j), repl.begin(), repl.end());
    if (w.size() + 1 != before)
      throw postcondition_error("elimination step did not shrink by one");
    if (stats) ++stats->eliminations;

    // The decoder peels replacements right to left, so the newest marker
    // must be the rightmost one.
    if (find_last(w, marker) != hit_j)
      throw postcondition_error("rightmost-marker invariant broken");

    scan_from = hit_j >= s - 1 ? hit_j - (s - 1) : 0;
    index_valid = false;
  }
}

std::vector<Symbol> expansion_prefix(const RfParams& p, std::size_t len) {
  // w' = v_0 1 0^{t-2} 1 v_1 ... with |v_i| = s; only a prefix is needed.
  const QaryString v = debruijn_tail(p.n, p.s, p.t, p.q);
  const std::vector<Symbol> marker = marker_word(p.t - 2);
  std::vector<Symbol> out;
  std::size_t taken = 0;
  while (out.size() < len && taken < v.size()) {
    const std::size_t chunk = std::min(p.s, v.size() - taken);
    for (std::size_t i = 0; i < chunk; ++i) out.push_back(v[taken + i]);
    taken += chunk;
    if (taken < v.size()) out.insert(out.end(), marker.begin(), marker.end());
  }
  if (out.size() < len)
    throw postcondition_error("expansion string too short for this n");
  out.resize(len);
  return out;
}

}  // namespace

QaryString rf_encode(const QaryString& x, const RfParams& p,
                     RfEncodeStats* stats) {
  if (x.q() != p.q) throw parameter_error("alphabet mismatch");
  if (x.size() != p.m)
    throw parameter_error("message length must equal m = " +
                          std::to_string(p.m));
  const std::size_t stage1_len = p.n - p.t - 1;

  // Stage 1: run-length limited encoding, padded with ones to fixed length.
  QaryString y = p.q == 2 ? rll_encode_binary(x, p.t - 3)
                          : rll_encode(x, RllParams::make(p.q, p.t - 3));
  if (y.size() > stage1_len)
    throw postcondition_error("stage-1 encoding exceeded its budget");
  std::vector<Symbol> w = y.symbols();
  w.resize(stage1_len, 1);
  if (stats) stats->stage1_redundancy = stage1_len - p.m;

  // Stages 2-3: eliminate repeated s-windows.
  eliminate_repeats(w, p, stats);

  // Stages 4-5: bridge marker and expansion tail, then cut to length n.
  std::vector<Symbol> z = w;
  const std::vector<Symbol> bridge = marker_word(p.t - 1);
  z.insert(z.end(), bridge.begin(), bridge.end());
  if (z.size() > p.n)
    throw postcondition_error("bridge exceeds output length");
  const std::size_t tail_len = p.n - z.size();
  if (tail_len > 0) {
    const std::vector<Symbol> wp = expansion_prefix(p, tail_len);
    z.insert(z.end(), wp.begin(), wp.end());
  }

  QaryString out(p.q, std::move(z));
  if (!is_rll(out, p.t))
    throw postcondition_error("encoder output is not t-run-length-limited");
  if (!is_repeat_free(out, p.ell))
    throw postcondition_error("encoder output is not ell-repeat-free");
  return out;
}

QaryString rf_decode(const QaryString& z, const RfParams& p) {
  if (z.q() != p.q) throw parameter_error("alphabet mismatch");
  if (z.size() != p.n) throw decode_error("codeword length mismatch");

  // The bridge 1 0^{t-1} 1 holds the unique zero-run of length t-1.
  std::size_t bridge_zeros = static_cast<std::size_t>(-1);
  std::size_t run = 0;
  std::size_t found = 0;
  for (std::size_t i = 0; i <= z.size(); ++i) {
    if (i < z.size() && z[i] == 0) {
      ++run;
      continue;
    }
    if (run >= p.t) throw decode_error("codeword violates the run-length limit");
    if (run == p.t - 1) {
      bridge_zeros = i - run;
      ++found;
    }
    run = 0;
  }
  if (found != 1) throw decode_error("bridge marker not unique");
  if (bridge_zeros == 0) throw decode_error("bridge marker at position zero");
  std::vector<Symbol> w(z.symbols().begin(),
                        z.symbols().begin() +
                            static_cast<long>(bridge_zeros - 1));

  // Undo eliminations right to left.
  const std::vector<Symbol> marker = marker_word(p.t - 3);
  std::size_t guard = p.n + 2;
  for (;;) {
    if (guard-- == 0) throw decode_error("marker undo did not terminate");
    const std::size_t pos = find_last(w, marker);
    if (pos == static_cast<std::size_t>(-1)) break;
    const std::size_t idx_start = pos + p.t - 1;
    if (idx_start + p.index_len + 1 > w.size())
      throw decode_error("marker structure truncated");
    if (w[idx_start + p.index_len] != 1)
      throw decode_error("marker structure missing trailing one");
    QaryString h(p.q,
                 std::vector<Symbol>(
                     w.begin() + static_cast<long>(idx_start),
                     w.begin() + static_cast<long>(idx_start + p.index_len)));
    const std::uint64_t i = rll_index_decode(h, p.n, p.t, p.q);
    if (i >= pos) throw decode_error("marker points at a non-earlier window");

    // Remove the replacement word, then re-insert the source window; the
    // copy may overlap its own insertion point.
    w.erase(w.begin() + static_cast<long>(pos),
            w.begin() + static_cast<long>(pos + p.s - 1));
    std::vector<Symbol> restored(p.s);
    for (std::size_t u = 0; u < p.s; ++u) {
      const std::size_t src = static_cast<std::size_t>(i) + u;
      restored[u] = src < pos ? w[src] : restored[src - pos];
    }
    w.insert(w.begin() + static_cast<long>(pos), restored.begin(),
             restored.end());
  }

  const std::size_t stage1_len = p.n - p.t - 1;
  if (w.size() != stage1_len)
    throw decode_error("decoded stage-1 text has wrong length");
  const std::size_t enc_len = stage1_encoded_len(p.m, p.q, p.t - 3);
  for (std::size_t i = enc_len; i < w.size(); ++i)
    if (w[i] != 1) throw decode_error("stage-1 padding corrupted");
  w.resize(enc_len);
  QaryString y(p.q, std::move(w));
  QaryString x = p.q == 2 ? rll_decode_binary(y, p.t - 3)
                          : rll_decode(y, RllParams::make(p.q, p.t - 3));
  if (x.size() != p.m) throw decode_error("decoded message has wrong length");
  return x;
}

}  // namespace tracecode
