#pragma once

#include <stdexcept>
#include <string>

namespace cbglue {

// Input data is structurally invalid: bad ids, ranges, or malformed values.
struct ValidationError : std::invalid_argument {
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Sizes or ranks disagree between otherwise valid objects.
struct DimensionError : ValidationError {
  explicit DimensionError(const std::string& what) : ValidationError(what) {}
};

// The request is well-formed but outside what this build implements.
struct UnsupportedError : std::invalid_argument {
  explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

// An internal invariant or a certificate failed to revalidate. Callers are
// expected to treat this as a bug in the library, never as bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace cbglue
