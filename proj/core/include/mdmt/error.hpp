#pragma once

#include <stdexcept>
#include <string>

namespace mdmt {

// Malformed or out-of-contract input (bad ids, bad parameters, bad files).
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// Filesystem failures.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Full enumeration produced more sequences than allowed.
class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mdmt
