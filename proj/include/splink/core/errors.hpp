#pragma once

#include <stdexcept>
#include <string>

namespace splink {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed numbers, JSON or linkage records.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A linkage that violates a structural invariant (loop, negative length, ...).
class InvalidLinkage : public Error {
 public:
  using Error::Error;
};

/// The underlying graph is not connected.
class DisconnectedGraph : public Error {
 public:
  DisconnectedGraph() : Error("disconnected graph") {}
};

/// The graph is not series-parallel for any choice of terminals.
class NotSeriesParallel : public Error {
 public:
  explicit NotSeriesParallel(const std::string& what = "not series-parallel")
      : Error(what) {}
};

/// The graph is series-parallel, but not with the requested terminal pair.
class InvalidTerminals : public Error {
 public:
  using Error::Error;
};

/// No realisation exists (e.g. a positive-length loop after contraction).
class Unrealisable : public Error {
 public:
  using Error::Error;
};

/// A requested value lies outside the feasible set.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. nabla of a one-edge path).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive check exceeded its work budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace splink
