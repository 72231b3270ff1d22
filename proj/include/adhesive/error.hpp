#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace adhesive {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A property that the theory guarantees failed on a concrete instance.
// Raised instead of returning a silently wrong construction; it means the
// input was outside the hypotheses of the construction (or corrupt).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

inline std::string join_lines(const std::vector<std::string>& lines,
                              const std::string& sep = "; ") {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += sep;
    out += lines[i];
  }
  return out;
}

}  // namespace adhesive
