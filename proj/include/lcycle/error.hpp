#ifndef LCYCLE_ERROR_HPP
#define LCYCLE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lcycle {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point fell outside the strip (a,b) x R.
class DomainExceeded : public Error {
 public:
  DomainExceeded(double x, double a, double b)
      : Error("x = " + std::to_string(x) + " outside domain (" + std::to_string(a) + ", " +
              std::to_string(b) + ")"),
        x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// A time-reparametrization factor was found to be non-positive.
class NonPositiveFactor : public Error {
 public:
  NonPositiveFactor(const std::string& which, double at, double value)
      : Error(which + " is non-positive at " + std::to_string(at) + " (value " +
              std::to_string(value) + ")"),
        at_(at),
        value_(value) {}
  double at() const noexcept { return at_; }
  double value() const noexcept { return value_; }

 private:
  double at_;
  double value_;
};

class MissingCurves : public Error {
 public:
  MissingCurves() : Error("system declares no non-trivial zero curves psi1/psi2") {}
};

class NotSpecialForm : public Error {
 public:
  NotSpecialForm() : Error("F is not of the form x (x - psi1(y)) (x - psi2(y))") {}
};

class InvalidSystem : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NoBracket : public Error {
 public:
  NoBracket(double x, double lo, double hi)
      : Error("no sign change of phi(y) - F(x,y) for x = " + std::to_string(x) + " on y in [" +
              std::to_string(lo) + ", " + std::to_string(hi) + "]"),
        lo_(lo),
        hi_(hi) {}
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

class StepUnderflow : public Error {
 public:
  explicit StepUnderflow(double t) : Error("step size underflow at t = " + std::to_string(t)) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(long steps)
      : Error("step budget of " + std::to_string(steps) + " exhausted") {}
};

class NoReturn : public Error {
 public:
  explicit NoReturn(const std::string& why) : Error("no return to section: " + why) {}
};

class LostBracket : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  explicit NotClosed(double gap)
      : Error("trajectory does not close (gap " + std::to_string(gap) + ")"), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

class WrongCrossingCount : public Error {
 public:
  using Error::Error;
};

class NonPositiveParam : public Error {
 public:
  using Error::Error;
};

}  // namespace lcycle

#endif  // LCYCLE_ERROR_HPP
