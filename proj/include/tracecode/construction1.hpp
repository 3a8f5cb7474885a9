#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tracecode/rational.hpp"
#include "tracecode/repeat_free.hpp"
#include "tracecode/strings.hpp"
#include "tracecode/trace.hpp"

namespace tracecode {

// All derived quantities of the single-strand trace-code construction.
struct Construction1Params {
  std::uint32_t q = 2;
  std::size_t n = 0;
  Rational a, gamma, eps;
  std::size_t f = 0;
  bool unsafe = false;

  std::size_t lmin = 0;   // ceil(a log n)
  std::size_t lover = 0;  // ceil(gamma lmin)
  std::size_t index_bits = 0;        // I, clamped at 0
  std::size_t index_chunks = 0;      // F = ceil(I/f), 0 when I = 0
  std::size_t block_overhead = 0;    // r = I + 2F + f + 4
  long long ell_consecutive = 0;     // guaranteed consecutive y-run length
  std::size_t blocks_per_strand = 0;  // J = ceil(n / (q^I lmin))
  std::size_t strand_count = 0;       // q^I
  std::size_t hi_strands = 0;         // n mod q^I strands get the longer N_i
  std::size_t content_hi = 0, content_lo = 0;  // N_i
  std::size_t rf_t = 0;                        // f + 1
  std::size_t rf_ell_hi = 0, rf_ell_lo = 0;
  std::size_t m_hi = 0, m_lo = 0;
  std::size_t m_total = 0;

  std::vector<std::string> violations;  // fatal unless unsafe
  std::vector<std::string> notes;       // reported, never fatal

  std::size_t content_len(std::size_t strand) const {
    return strand < hi_strands ? content_hi : content_lo;
  }
  std::size_t message_len(std::size_t strand) const {
    return strand < hi_strands ? m_hi : m_lo;
  }
  std::size_t strand_len(std::size_t strand) const {
    return content_len(strand) + blocks_per_strand * block_overhead;
  }
  RfParams rf_params(std::size_t strand) const;

  // Key=value block for reproducible reports.
  std::string report() const;
};

Construction1Params c1_derive(std::uint32_t q, std::size_t n, Rational a,
                              Rational gamma, Rational eps, std::size_t f,
                              bool unsafe = false);

// Definition of the encoded index: F framed segments 1 c^(h) 1 whose middle
// parts concatenate to the I-digit expansion of i.
struct EncodedIndex {
  std::uint64_t index = 0;
  std::vector<QaryString> segments;
};
EncodedIndex c1_encode_index(std::uint64_t index,
                             const Construction1Params& p);

QaryString c1_encode(const QaryString& x, const Construction1Params& p);
QaryString c1_decode(const StrippedTrace& t, const Construction1Params& p);

// Index extracted from one read segment, plus the anchor used to filter
// candidate placements during decoding.
struct SegmentIndexInfo {
  std::uint64_t index = 0;
  bool starts_with_strand_marker = false;  // complete 1 0^{f+1} 1 1 at offset 0
  std::optional<std::size_t> marker_offset;  // any complete marker
};
SegmentIndexInfo c1_extract_index(const QaryString& segment,
                                  const Construction1Params& p);

// Window-scan verifiers (the data-parallel kernels behind the acceptance
// invariants). Serial reference versions live beside the dispatching ones.
bool c1_index_scan(const QaryString& z, const Construction1Params& p);
bool c1_consecutive_scan(const QaryString& z, const Construction1Params& p);
std::size_t c1_strand_marker_census(const QaryString& z,
                                    const Construction1Params& p);
// Checks the whole skeleton: markers, index framing, zero-run placement.
bool c1_validate_structure(const QaryString& z, const Construction1Params& p);

std::uint64_t c1_decode_budget();

}  // namespace tracecode
