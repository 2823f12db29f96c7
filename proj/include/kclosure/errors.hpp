#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kclosure {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (degree mismatch, bad orders, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Cycle-notation syntax error; position is a 0-based character offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string &what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured resource cap would be exceeded.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string &what, std::uint64_t required,
              std::uint64_t limit)
      : Error(what + ": requires " + std::to_string(required) +
              ", cap is " + std::to_string(limit)),
        required_(required),
        limit_(limit) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

namespace detail {

/// a * b, throwing CapExceeded on 64-bit overflow.
inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b,
                                 const char *what = "64-bit product") {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r))
    throw CapExceeded(what, UINT64_MAX, UINT64_MAX);
  return r;
}

}  // namespace detail

}  // namespace kclosure
