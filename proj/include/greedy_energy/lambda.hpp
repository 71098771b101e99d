#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace greedy {

/// Asymptotic regime of the exponent. The boundaries 1 and 2 are compared
/// exactly.
enum class Regime { below_one, one, one_to_two, two, above_two };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::below_one: return "0<lambda<1";
    case Regime::one: return "lambda=1";
    case Regime::one_to_two: return "1<lambda<2";
    case Regime::two: return "lambda=2";
    case Regime::above_two: return "lambda>2";
  }
  return "?";
}

/// Energy exponent, always strictly positive and finite.
class Lambda {
 public:
  explicit Lambda(double value) : value_(value) {
    if (!std::isfinite(value) || !(value > 0.0)) {
      throw std::domain_error("lambda must be a positive finite number, got " +
                              std::to_string(value));
    }
  }

  double value() const noexcept { return value_; }

  Regime regime() const noexcept {
    if (value_ < 1.0) return Regime::below_one;
    if (value_ == 1.0) return Regime::one;
    if (value_ < 2.0) return Regime::one_to_two;
    if (value_ == 2.0) return Regime::two;
    return Regime::above_two;
  }

  friend bool operator==(Lambda, Lambda) = default;

 private:
  double value_;
};

namespace detail {

inline void require_below_two(Lambda lambda, const char* what) {
  if (!(lambda.value() < 2.0)) {
    throw std::domain_error(std::string(what) + ": requires 0 < lambda < 2, got " +
                            std::to_string(lambda.value()));
  }
}

inline void require_at_most_two(Lambda lambda, const char* what) {
  if (!(lambda.value() <= 2.0)) {
    throw std::domain_error(std::string(what) + ": requires 0 < lambda <= 2, got " +
                            std::to_string(lambda.value()));
  }
}

}  // namespace detail
}  // namespace greedy
