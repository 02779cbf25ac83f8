#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numbers>
#include <string>

#include "ehf/errors.hpp"

namespace ehf {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Pole/zero proximity threshold in natural units.
inline constexpr double kProximityEps = 1e-8;

// Result of a numerical integral or sum.
struct Evaluation {
  Complex value{};
  double abs_err = 0.0;  // quadrature error plus truncation bound
  long nodes_used = 0;
  long terms_used = 0;
};

// An element of Z/2: stored as twice its value so that half-integer
// discrete labels keep exact integer arithmetic.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(std::int64_t twice) { return HalfInt(Twice{}, twice); }
  constexpr HalfInt(int value) : twice_(2 * static_cast<std::int64_t>(value)) {}  // NOLINT

  constexpr std::int64_t twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * static_cast<double>(twice_); }

  // Exact integer value; throws DomainError for a proper half-integer.
  std::int64_t as_integer() const {
    if (!is_integer())
      throw DomainError("half-integer label where an integer is required: " + std::to_string(value()));
    return twice_ / 2;
  }

  constexpr HalfInt operator-() const { return HalfInt(Twice{}, -twice_); }
  constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
  constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt(Twice{}, a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt(Twice{}, a.twice_ - b.twice_); }
  friend constexpr bool operator==(HalfInt a, HalfInt b) = default;

  static constexpr HalfInt half() { return HalfInt(Twice{}, 1); }

 private:
  struct Twice {};
  constexpr HalfInt(Twice, std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

// (-1)^k for integer k.
inline constexpr int parity_sign(std::int64_t k) { return (k % 2 == 0) ? 1 : -1; }

inline double rel_diff(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace ehf
