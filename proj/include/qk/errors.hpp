#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qk {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (tables, descriptors, Gauss codes, JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configured search or enumeration budget was exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would produce more elements than its cap.
class CapExceeded : public BudgetExceeded {
 public:
  using BudgetExceeded::BudgetExceeded;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidElement : public Error {
 public:
  using Error::Error;
};

class InvalidHomomorphism : public Error {
 public:
  using Error::Error;
};

class NotAutomorphism : public Error {
 public:
  using Error::Error;
};

class NotLatin : public Error {
 public:
  using Error::Error;
};

class NotConnected : public Error {
 public:
  using Error::Error;
};

class NotClosedUnderConjugation : public Error {
 public:
  using Error::Error;
};

class SubgroupNotFixed : public Error {
 public:
  using Error::Error;
};

class InvalidGroup : public Error {
 public:
  using Error::Error;
};

class InvalidCocycle : public Error {
 public:
  using Error::Error;
};

class NotUniform : public Error {
 public:
  using Error::Error;
};

class NotCompatible : public Error {
 public:
  using Error::Error;
};

class NotHomomorphism : public Error {
 public:
  using Error::Error;
};

class NotSurjective : public Error {
 public:
  using Error::Error;
};

class MalformedCode : public ParseError {
 public:
  using ParseError::ParseError;
};

class InconsistentSigns : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A table failed one of the quandle axioms. `x`, `y`, `z` is the
/// lexicographically smallest witness (unused coordinates repeat x).
class QuandleAxiomError : public Error {
 public:
  enum class Kind { NotLeftQuasigroup, NotLeftDistributive, NotIdempotent };

  QuandleAxiomError(Kind kind, std::uint32_t x, std::uint32_t y, std::uint32_t z);

  Kind kind() const { return kind_; }
  std::uint32_t x() const { return x_; }
  std::uint32_t y() const { return y_; }
  std::uint32_t z() const { return z_; }

 private:
  Kind kind_;
  std::uint32_t x_, y_, z_;
};

const char* to_string(QuandleAxiomError::Kind kind);

}  // namespace qk
