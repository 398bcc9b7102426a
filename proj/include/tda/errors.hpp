#pragma once

#include <stdexcept>
#include <string>

namespace tda {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedSimplex : public Error {
 public:
  using Error::Error;
};

class InvalidMetric : public Error {
 public:
  using Error::Error;
};

class NonlinearNerve : public Error {
 public:
  using Error::Error;
};

class InvalidFiltration : public Error {
 public:
  using Error::Error;
};

class NonSimplicialMap : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidCosheaf : public Error {
 public:
  using Error::Error;
};

class CoverGranularity : public Error {
 public:
  using Error::Error;
};

/// Raised when a multiplicity comes out negative: a rank computation is wrong.
class InconsistentDecomposition : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tda
