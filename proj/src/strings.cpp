#include "tracecode/strings.hpp"

#include <algorithm>

#include "tracecode/kernels.hpp"

namespace tracecode {

QaryString QaryString::substr(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos)
    throw parameter_error("substring out of range");
  return QaryString(
      q_, std::vector<Symbol>(symbols_.begin() + static_cast<long>(pos),
                              symbols_.begin() + static_cast<long>(pos + len)));
}

std::strong_ordering QaryString::operator<=>(const QaryString& other) const {
  if (auto c = q_ <=> other.q_; c != 0) return c;
  const std::size_t common = std::min(size(), other.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (auto c = symbols_[i] <=> other.symbols_[i]; c != 0) return c;
  }
  return size() <=> other.size();
}

namespace {

char digit_char(Symbol s) {
  return s < 10 ? static_cast<char>('0' + s) : static_cast<char>('a' + s - 10);
}

Symbol digit_value(char c) {
  if (c >= '0' && c <= '9') return static_cast<Symbol>(c - '0');
  if (c >= 'a' && c <= 'z') return static_cast<Symbol>(c - 'a' + 10);
  if (c >= 'A' && c <= 'Z') return static_cast<Symbol>(c - 'A' + 10);
  throw parameter_error(std::string("invalid symbol character '") + c + "'");
}

}  // namespace

std::string QaryString::to_string() const {
  if (q_ > 36)
    throw parameter_error("text format supports alphabets up to q=36");
  std::string out;
  out.reserve(size());
  for (Symbol s : symbols_) out.push_back(digit_char(s));
  return out;
}

QaryString QaryString::parse(std::uint32_t q, const std::string& text) {
  if (q > 36) throw parameter_error("text format supports alphabets up to q=36");
  QaryString out(q);
  for (char c : text) out.push_back(digit_value(c));
  return out;
}

StrandMultiset::StrandMultiset(std::uint32_t q, std::vector<QaryString> strands)
    : q_(q), strands_(std::move(strands)) {
  if (q_ < 2) throw parameter_error("alphabet size must be at least 2");
  if (!strands_.empty()) {
    n_ = strands_.front().size();
    for (const QaryString& s : strands_) {
      if (s.q() != q_) throw parameter_error("strand alphabet mismatch");
      if (s.size() != n_)
        throw parameter_error("all strands must have the common length n");
    }
  }
  std::sort(strands_.begin(), strands_.end());
}

bool StrandMultiset::all_distinct() const {
  return std::adjacent_find(strands_.begin(), strands_.end()) ==
         strands_.end();
}

std::vector<std::size_t> window_locations(std::size_t n, std::size_t ell,
                                          std::size_t step) {
  if (ell == 0 || ell > n) throw parameter_error("window length out of range");
  if (step < 1 || step > ell) throw parameter_error("window step out of range");
  std::vector<std::size_t> locs;
  const std::size_t last = n - ell;
  for (std::size_t p = 0; p < last; p += step) locs.push_back(p);
  locs.push_back(last);
  return locs;
}

std::vector<QaryString> windows(const QaryString& x, std::size_t ell,
                                std::size_t step) {
  std::vector<QaryString> out;
  for (std::size_t p : window_locations(x.size(), ell, step))
    out.push_back(x.substr(p, ell));
  return out;
}

ProfileVector profile(const QaryString& x, std::size_t ell) {
  if (ell == 0 || ell > x.size())
    throw parameter_error("profile window length out of range");
  ProfileVector pv;
  pv.q = x.q();
  pv.ell = ell;
  for (std::size_t p = 0; p + ell <= x.size(); ++p)
    ++pv.counts[x.substr(p, ell)];
  return pv;
}

ProfileVector profile_of_multiset(const StrandMultiset& s, std::size_t ell) {
  if (s.k() == 0) throw parameter_error("profile of an empty multiset");
  ProfileVector pv;
  pv.q = s.q();
  pv.ell = ell;
  for (const QaryString& x : s.strands()) {
    if (ell > x.size())
      throw parameter_error("profile window length out of range");
    for (std::size_t p = 0; p + ell <= x.size(); ++p)
      ++pv.counts[x.substr(p, ell)];
  }
  return pv;
}

bool is_repeat_free(const QaryString& x, std::size_t ell) {
  if (ell == 0 || ell > x.size())
    throw parameter_error("repeat-free order out of range");
  return kernels::all_windows_distinct({&x, 1}, ell);
}

bool is_multistrand_repeat_free(const StrandMultiset& s, std::size_t ell) {
  if (s.k() == 0 || ell == 0 || ell > s.n())
    throw parameter_error("repeat-free order out of range");
  return kernels::all_windows_distinct(
      {s.strands().data(), s.strands().size()}, ell);
}

bool is_rll(const QaryString& x, std::size_t s) {
  if (s < 1) throw parameter_error("run length limit must be positive");
  return longest_zero_run(x) < s;
}

std::size_t longest_zero_run(const QaryString& x) {
  std::size_t best = 0, run = 0;
  for (Symbol s : x.symbols()) {
    run = (s == Alphabet::zero) ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

}  // namespace tracecode
