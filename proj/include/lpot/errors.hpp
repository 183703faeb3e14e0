#pragma once

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lpot {

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A kernel was evaluated on its diagonal.
class CoincidentPoints : public Error {
 public:
  CoincidentPoints() : Error("kernel evaluated at coincident points") {}
};

/// Push-forward integrability condition Re E(G) > 0 fails at a null-set face.
class IntegrabilityViolation : public Error {
 public:
  IntegrabilityViolation(std::string face, double real_part)
      : Error("integrability violated at face " + face + ": Re E = " + std::to_string(real_part) +
              " is not > 0"),
        face_(std::move(face)),
        real_part_(real_part) {}

  const std::string& face() const noexcept { return face_; }
  double real_part() const noexcept { return real_part_; }

 private:
  std::string face_;
  double real_part_;
};

/// The integrand of a layer operator does not decay fast enough at infinity.
class NonIntegrable : public Error {
 public:
  explicit NonIntegrable(const std::string& what) : Error(what) {}
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(double value, double achieved, double requested)
      : Error(message(value, achieved, requested)),
        value_(value),
        achieved_(achieved),
        requested_(requested) {}

  double value() const noexcept { return value_; }
  double achieved_error() const noexcept { return achieved_; }
  double requested_error() const noexcept { return requested_; }

 private:
  static std::string message(double value, double achieved, double requested) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << "quadrature tolerance not met: value " << value
       << ", achieved error " << achieved << " > requested " << requested;
    return os.str();
  }

  double value_;
  double achieved_;
  double requested_;
};

class IllConditionedFit : public Error {
 public:
  explicit IllConditionedFit(double condition)
      : Error("asymptotic fit is ill-conditioned: condition number " + std::to_string(condition)),
        condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

class JumpFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed index-set literal or serialized document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpot
