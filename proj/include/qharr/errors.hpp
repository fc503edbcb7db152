#pragma once

#include <stdexcept>
#include <string>

namespace qharr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class ZeroRow : public Error {
 public:
  ZeroRow() : Error("zero coefficient row does not define a hyperplane") {}
};

class ParallelHyperplane : public Error {
 public:
  ParallelHyperplane() : Error("parallel hyperplane") {}
};

class IndexOutOfRange : public Error {
 public:
  explicit IndexOutOfRange(std::string const& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(std::string const& what) : Error(what) {}
};

class UnknownCatalog : public Error {
 public:
  explicit UnknownCatalog(std::string const& name)
      : Error("unknown catalog arrangement '" + name + "'") {}
};

class SizeGuardExceeded : public Error {
 public:
  explicit SizeGuardExceeded(std::string const& what) : Error(what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(std::string const& what) : Error("internal error: " + what) {}
};

class AmbiguousExponent : public Error {
 public:
  explicit AmbiguousExponent(std::string const& what)
      : Error("ambiguous exponent: " + what) {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(std::string const& what) : Error("non-convergence: " + what) {}
};

class SamplingFailure : public Error {
 public:
  explicit SamplingFailure(std::string const& what) : Error("sampling failure: " + what) {}
};

}  // namespace qharr
