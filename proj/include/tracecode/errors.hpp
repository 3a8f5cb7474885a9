#pragma once

#include <stdexcept>
#include <string>

namespace tracecode {

// Error taxonomy shared by all modules. The CLI maps parameter_error to
// exit code 2 and the decode/validation family to exit code 3.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Preconditions and malformed parameters.
class parameter_error : public error {
 public:
  using error::error;
};

// Malformed codewords, failed inversions, corrupted channel outputs.
class decode_error : public error {
 public:
  using error::error;
};

// Reconstruction found several inconsistent continuations; the repeat-free
// precondition on the source does not hold.
class ambiguity_error : public decode_error {
 public:
  using decode_error::decode_error;
};

// Reconstruction ran out of segments before covering the source.
class incomplete_trace_error : public decode_error {
 public:
  using decode_error::decode_error;
};

// A search (trace validation, enumeration, decoding) exceeded its node
// budget. Distinct from a negative verdict.
class budget_exceeded_error : public error {
 public:
  using error::error;
};

// A runtime postcondition check failed; parameters are outside the regime
// the construction needs and the failure is reported instead of ignored.
class postcondition_error : public error {
 public:
  using error::error;
};

}  // namespace tracecode
