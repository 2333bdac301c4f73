#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace illumine {

// Base class for every failure raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-domain argument or malformed configuration value.
class ParamError : public Error {
 public:
  using Error::Error;
};

// PNG stream could not be parsed. byte_offset() is the position in the
// input buffer where parsing failed.
class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

// Well-formed PNG that uses features outside the 8-bit gray/RGB contract
// (16-bit samples, palettes, interlacing, ...).
class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

// Iterative minimizer produced a non-finite objective value.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what + " (iteration " + std::to_string(iteration) + ")"),
        iteration_(iteration) {}
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

// Interpolation factor outside the unit interval.
class ConstraintError : public Error {
 public:
  using Error::Error;
};

}  // namespace illumine
