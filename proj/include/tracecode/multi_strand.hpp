#pragma once

#include <cstdint>
#include <optional>

#include "tracecode/repeat_free.hpp"
#include "tracecode/strings.hpp"

namespace tracecode {

enum class MsScheme { index, overlap };

// Multi-strand codes decodable from the (ell+1)-profile of the multiset.
struct MultiStrandParams {
  std::uint32_t q = 2;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t ell = 0;
  MsScheme scheme = MsScheme::index;
  bool unsafe = false;

  std::size_t index_len = 0;  // ceil(log_q k); 0 in the overlap scheme
  std::size_t ell_rf = 0;     // repeat-free order of the inner encoder
  std::size_t n_prime = 0;
  RfParams rf;

  static MultiStrandParams make(std::uint32_t q, std::size_t n, std::size_t k,
                                std::size_t ell, MsScheme scheme,
                                bool unsafe = false);
};

StrandMultiset ms_encode(const QaryString& x, const MultiStrandParams& p);
QaryString ms_decode(const ProfileVector& profile, const MultiStrandParams& p);

// Lower bounds on the achievable rate (leading terms; vanishing terms
// dropped and reported as not modeled).
struct RateBound {
  bool applicable = false;
  double value = 0.0;
  int regime = 0;  // 1: repeat-free encoder bound, 2: logarithmic-order bound
};
RateBound rate_index_based(std::size_t n, std::size_t k, std::size_t ell,
                           std::uint32_t q);
RateBound rate_overlap_based(std::size_t n, std::size_t k, std::size_t ell,
                             std::uint32_t q);

}  // namespace tracecode
