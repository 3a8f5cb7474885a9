#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tracecode/errors.hpp"

namespace tracecode {

using Symbol = std::uint32_t;

// Alphabet [q] = {0, ..., q-1} with the identified elements 0 and 1.
struct Alphabet {
  std::uint32_t q = 2;

  static constexpr Symbol zero = 0;
  static constexpr Symbol one = 1;

  explicit Alphabet(std::uint32_t q_) : q(q_) {
    if (q < 2) throw parameter_error("alphabet size must be at least 2");
  }
  Alphabet() = default;

  bool operator==(const Alphabet&) const = default;
};

// A finite string over [q]. Plain symbol storage, value semantics.
class QaryString {
 public:
  QaryString() = default;
  explicit QaryString(std::uint32_t q) : q_(q) { check_q(); }
  QaryString(std::uint32_t q, std::vector<Symbol> symbols)
      : q_(q), symbols_(std::move(symbols)) {
    check_q();
    for (Symbol s : symbols_) check_symbol(s);
  }
  QaryString(std::uint32_t q, std::size_t count, Symbol fill)
      : q_(q), symbols_(count, fill) {
    check_q();
    check_symbol(fill);
  }

  std::uint32_t q() const { return q_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  void push_back(Symbol s) {
    check_symbol(s);
    symbols_.push_back(s);
  }
  void append(const QaryString& other) {
    check_same_alphabet(other);
    symbols_.insert(symbols_.end(), other.symbols_.begin(),
                    other.symbols_.end());
  }

  QaryString substr(std::size_t pos, std::size_t len) const;
  QaryString prefix(std::size_t len) const { return substr(0, len); }
  QaryString suffix(std::size_t len) const {
    if (len > size()) throw parameter_error("suffix longer than string");
    return substr(size() - len, len);
  }

  friend QaryString operator+(const QaryString& a, const QaryString& b) {
    QaryString out = a;
    out.append(b);
    return out;
  }

  bool operator==(const QaryString& other) const {
    return q_ == other.q_ && symbols_ == other.symbols_;
  }
  // Lexicographic with the natural integer order on symbols; shorter
  // strings compare before their extensions.
  std::strong_ordering operator<=>(const QaryString& other) const;

  // Digits 0-9 then a-z, so q <= 36 for text round-trips.
  std::string to_string() const;
  static QaryString parse(std::uint32_t q, const std::string& text);

  void check_same_alphabet(const QaryString& other) const {
    if (q_ != other.q_) throw parameter_error("alphabet size mismatch");
  }

 private:
  void check_q() const {
    if (q_ < 2) throw parameter_error("alphabet size must be at least 2");
  }
  void check_symbol(Symbol s) const {
    if (s >= q_) throw parameter_error("symbol out of alphabet range");
  }

  std::uint32_t q_ = 2;
  std::vector<Symbol> symbols_;
};

struct QaryStringHash {
  std::size_t operator()(const QaryString& x) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Symbol s : x.symbols()) {
      h ^= s;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ x.q());
  }
};

// S = {{x_1, ..., x_k}}: a multiset of k strings of common length n.
// Strand order is non-semantic; the canonical form is sorted.
class StrandMultiset {
 public:
  StrandMultiset() = default;
  StrandMultiset(std::uint32_t q, std::vector<QaryString> strands);

  std::uint32_t q() const { return q_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return strands_.size(); }
  const std::vector<QaryString>& strands() const { return strands_; }

  bool operator==(const StrandMultiset& other) const {
    return q_ == other.q_ && strands_ == other.strands_;
  }

  // All strands pairwise distinct, i.e. membership in X*_{n,k}.
  bool all_distinct() const;

 private:
  std::uint32_t q_ = 2;
  std::size_t n_ = 0;
  std::vector<QaryString> strands_;
};

// Sparse counts of length-ell windows.
struct ProfileVector {
  std::uint32_t q = 2;
  std::size_t ell = 0;
  std::map<QaryString, std::uint64_t> counts;

  std::uint64_t total_mass() const {
    std::uint64_t total = 0;
    for (const auto& [w, c] : counts) total += c;
    return total;
  }
  bool operator==(const ProfileVector&) const = default;
};

// Window start locations 0, step, 2*step, ... with the last window forced
// to location n-ell (a longer final overlap when step does not divide).
std::vector<std::size_t> window_locations(std::size_t n, std::size_t ell,
                                          std::size_t step);
std::vector<QaryString> windows(const QaryString& x, std::size_t ell,
                                std::size_t step);

ProfileVector profile(const QaryString& x, std::size_t ell);
ProfileVector profile_of_multiset(const StrandMultiset& s, std::size_t ell);

bool is_repeat_free(const QaryString& x, std::size_t ell);
bool is_multistrand_repeat_free(const StrandMultiset& s, std::size_t ell);

// No run of s consecutive zeros.
bool is_rll(const QaryString& x, std::size_t s);
std::size_t longest_zero_run(const QaryString& x);

}  // namespace tracecode
