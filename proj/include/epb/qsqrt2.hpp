#pragma once

// Exact arithmetic in Q(sqrt 2): numbers (a + b sqrt2) / d with integer a, b
// and d > 0, kept in lowest terms.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace epb {

using BigInt = boost::multiprecision::cpp_int;

class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(long long integer) : a_(integer) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(BigInt a, BigInt b, BigInt d);

  static QSqrt2 rational(BigInt num, BigInt den) { return QSqrt2(std::move(num), 0, std::move(den)); }
  static QSqrt2 sqrt2() { return QSqrt2(0, 1, 1); }

  const BigInt& a() const { return a_; }
  const BigInt& b() const { return b_; }
  const BigInt& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  int sign() const;

  QSqrt2 conjugate() const { return QSqrt2(a_, -b_, d_); }
  QSqrt2 operator-() const { return QSqrt2(-a_, -b_, d_); }
  friend QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y);
  friend QSqrt2 operator-(const QSqrt2& x, const QSqrt2& y) { return x + (-y); }
  friend QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y);
  friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y);
  QSqrt2& operator+=(const QSqrt2& y) { return *this = *this + y; }
  QSqrt2& operator-=(const QSqrt2& y) { return *this = *this - y; }
  QSqrt2& operator*=(const QSqrt2& y) { return *this = *this * y; }

  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_; }
  friend bool operator<(const QSqrt2& x, const QSqrt2& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QSqrt2& x, const QSqrt2& y) { return y < x; }
  friend bool operator<=(const QSqrt2& x, const QSqrt2& y) { return !(y < x); }

  // Square root of a rational r when r = k^2 or r = 2 k^2 for rational k >= 0.
  // Throws kNotRepresentable otherwise.
  static QSqrt2 sqrt(const QSqrt2& r);

  double to_double() const;
  // Correctly rounded fixed-point rendering with `places` decimals.
  std::string decimal(int places) const;
  // "(2 + sqrt(2))/8", "-4", "1/4", "sqrt(2)".
  std::string to_string() const;

 private:
  void normalize();

  BigInt a_ = 0;
  BigInt b_ = 0;
  BigInt d_ = 1;
};

// c0 + c1 x + c2 x^2 over Q(sqrt 2).
class QuadPoly {
 public:
  QuadPoly() = default;
  QuadPoly(QSqrt2 c0, QSqrt2 c1, QSqrt2 c2) : c_{std::move(c0), std::move(c1), std::move(c2)} {}
  static QuadPoly constant(QSqrt2 c) { return {std::move(c), 0, 0}; }
  static QuadPoly variable() { return {0, 1, 0}; }

  const QSqrt2& coefficient(int k) const { return c_[k]; }
  int degree() const;

  friend QuadPoly operator+(const QuadPoly& x, const QuadPoly& y);
  friend QuadPoly operator-(const QuadPoly& x, const QuadPoly& y);
  friend QuadPoly operator*(const QSqrt2& s, const QuadPoly& x);
  // Throws kOutOfRange when the product has degree above 2.
  friend QuadPoly operator*(const QuadPoly& x, const QuadPoly& y);
  QuadPoly& operator+=(const QuadPoly& y) { return *this = *this + y; }
  friend bool operator==(const QuadPoly& x, const QuadPoly& y) {
    return x.c_[0] == y.c_[0] && x.c_[1] == y.c_[1] && x.c_[2] == y.c_[2];
  }

  QSqrt2 evaluate(const QSqrt2& x) const;
  // Divides rational coefficients by their content (positive gcd of the
  // numerators over the lcm of denominators), keeping the leading sign.
  QuadPoly primitive() const;
  // Real roots in ascending order; throws kNotRepresentable when the
  // discriminant has no square root in Q(sqrt 2).
  std::vector<QSqrt2> roots() const;

  std::string to_string(const std::string& var) const;  // "32p^2 - 16p + 1"

 private:
  QSqrt2 c_[3] = {0, 0, 0};
};

}  // namespace epb
