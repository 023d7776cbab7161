#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace fusionmod {

// Exact element a + b*sqrt(5) of the real quadratic field Q(sqrt5).
class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long n) : a_(n), b_(0) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(mpq_class a, mpq_class b);

  // (u + v*sqrt5) / 2
  static QuadNumber from_halves(long u, long v);
  // d = 2 + sqrt5, the dimension of rho in the Haagerup-Izumi rings
  static QuadNumber d();
  // (1 + sqrt5) / 2
  static QuadNumber phi();

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }

  QuadNumber operator-() const;
  QuadNumber& operator+=(const QuadNumber& y);
  QuadNumber& operator-=(const QuadNumber& y);
  QuadNumber& operator*=(const QuadNumber& y);
  QuadNumber& operator/=(const QuadNumber& y);  // throws Error on division by zero

  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }

  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  // Orders by real value.
  friend std::strong_ordering operator<=>(const QuadNumber& x, const QuadNumber& y);

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  int sign() const;
  QuadNumber conj() const { return QuadNumber(a_, -b_); }
  mpq_class norm() const { return a_ * a_ - 5 * b_ * b_; }
  double to_double() const;
  // 2a and 2b are integers
  bool on_half_lattice() const;
  // 2a and 2b are integers of equal parity, i.e. an element of Z[phi]
  bool is_integral() const;
  // u = 2a, v = 2b
  std::pair<mpq_class, mpq_class> halves() const { return {2 * a_, 2 * b_}; }

  // "(u+v*sqrt5)/2"
  std::string to_string() const;
  static QuadNumber parse(std::string_view text);  // throws Error
  // "p+qd" with d = 2+sqrt5, e.g. "3+3d", "1/2+1/2d"
  std::string to_d_string() const;

 private:
  mpq_class a_{0};
  mpq_class b_{0};
};

int compare_sign(const QuadNumber& x);

// Any y in Q(sqrt5) with y*y = x and y >= 0.
std::optional<QuadNumber> field_sqrt(const QuadNumber& x);

// As field_sqrt, restricted to the half-integer lattice.
std::optional<QuadNumber> sqrt_in_field(const QuadNumber& x);

inline constexpr double kDefaultRecognitionTolerance = 1e-9;
inline constexpr long kDefaultRecognitionBound = 1000000;

// Lattice point (u+v*sqrt5)/2 with |u|,|v| <= bound within tol of value. Among all hits
// the one of least height max(|u|,|v|) wins; a tie at least height throws Error.
std::optional<QuadNumber> recognize_float(double value, double tol = kDefaultRecognitionTolerance,
                                          long bound = kDefaultRecognitionBound);

}  // namespace fusionmod
