#pragma once

#include <stdexcept>
#include <string>

#include "diffhom/var.hpp"

namespace diffhom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnmappedVariable : public Error {
 public:
  explicit UnmappedVariable(VarId v)
      : Error("unmapped variable " + to_string(v)), var(v) {}
  VarId var;
};

class UnsupportedVariable : public Error {
 public:
  explicit UnsupportedVariable(VarId v)
      : Error("unsupported variable " + to_string(v)), var(v) {}
  VarId var;
};

class NonSquare : public Error {
 public:
  NonSquare() : Error("matrix is not square") {}
};

class NotLinear : public Error {
 public:
  explicit NotLinear(VarId v)
      : Error("polynomial has degree > 1 in " + to_string(v)), var(v) {}
  VarId var;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// Raised when a computation would exceed a configured size cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class InvalidComposition : public Error {
 public:
  using Error::Error;
};

class InvalidIndex : public Error {
 public:
  using Error::Error;
};

// A structural fact that must hold (e.g. a generator is nonzero) did not.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace diffhom
