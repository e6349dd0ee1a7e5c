#pragma once

#include <stdexcept>
#include <string>

namespace cdperc {

// Invalid value at construction or call site (m = 0 alphabet, s <= 0, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Index outside a container of known size.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// An operation would read past the stored prefix of a sequence. Finite
// prefixes stand in for infinite streams; running off the end fails loudly,
// never extends implicitly.
struct SequenceExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive-search oracle asked for more than it is willing to enumerate.
struct OracleLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The scanned prefix holds too few pattern occurrences to decide the event.
struct InsufficientOccurrences : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionFailed : std::logic_error {
  using std::logic_error::logic_error;
};

// Power-law fit over fewer than two usable points.
struct DegenerateFit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cdperc
