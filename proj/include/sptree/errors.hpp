#pragma once

#include <stdexcept>
#include <string>

namespace sptree {

/// Malformed or inconsistent input data (bad JSON, invalid scheme, ...).
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A configured limit was exceeded (depth cap, ordinal exponent cap, ...).
struct bound_error : std::runtime_error {
  explicit bound_error(const std::string& what) : std::runtime_error(what) {}
};

/// File could not be read or written.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sptree
