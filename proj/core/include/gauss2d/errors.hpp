#pragma once

#include <stdexcept>
#include <string>

namespace gauss2d {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (e.g. a UQ8 input outside [0, 1]).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Unsupported configuration: a sigma whose 2*sigma^2 is not a power of two,
// a latency outside the supported range, an empty kernel geometry.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Normalising a kernel whose samples are all zero.
class DegenerateKernelError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatchError : public Error {
 public:
  using Error::Error;
};

class ImageFormatError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gauss2d
