#pragma once

#include <stdexcept>
#include <string>

namespace nnrank {

// Malformed input: bad shapes, dimension mismatches, unparsable files.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A moment basis would exceed the configured dimension cap.
class SizeLimitError : public std::length_error {
 public:
  explicit SizeLimitError(const std::string& what) : std::length_error(what) {}
};

// The conic solver could not produce a usable iterate.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nnrank
