#pragma once

#include <stdexcept>
#include <string>

namespace orbitile {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two enclosures still overlap at the configured bit budget.
class IndeterminateComparison : public Error {
 public:
  using Error::Error;
};

// An offset (c, d) puts a tile boundary exactly on a boundary of the other tiling.
class DegenerateOffset : public Error {
 public:
  using Error::Error;
};

class WindowTooNarrow : public Error {
 public:
  using Error::Error;
};

class NotPrimitive : public Error {
 public:
  using Error::Error;
};

class NotExpansive : public Error {
 public:
  using Error::Error;
};

class UnknownLetter : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class BadParameters : public Error {
 public:
  using Error::Error;
};

class BoundaryVertex : public Error {
 public:
  using Error::Error;
};

class BoundaryEdge : public Error {
 public:
  using Error::Error;
};

class InconsistentCycle : public Error {
 public:
  using Error::Error;
};

}  // namespace orbitile
