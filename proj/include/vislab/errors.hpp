#pragma once

#include <stdexcept>
#include <string>

namespace vislab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// f mod p has total degree < 1, or < 2 where a theorem needs "degree bigger than one".
class DegenerateReduction : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class BoxTooLarge : public Error {
 public:
  using Error::Error;
};

class IdenticallyZero : public Error {
 public:
  using Error::Error;
};

class ConstantPolynomial : public Error {
 public:
  using Error::Error;
};

class EmptyPlan : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace vislab
