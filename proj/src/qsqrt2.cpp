#include "epb/qsqrt2.hpp"

#include <algorithm>
#include <cmath>

#include "epb/error.hpp"

namespace epb {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

BigInt gcd_big(BigInt x, BigInt y) {
  x = abs_big(x);
  y = abs_big(y);
  while (y != 0) {
    BigInt t = x % y;
    x = std::move(y);
    y = std::move(t);
  }
  return x;
}

BigInt floor_div(const BigInt& num, const BigInt& den) {  // den > 0
  BigInt q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

BigInt isqrt(const BigInt& x) { return boost::multiprecision::sqrt(x); }

}  // namespace

QSqrt2::QSqrt2(BigInt a, BigInt b, BigInt d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) { normalize(); }

void QSqrt2::normalize() {
  if (d_ == 0) throw Error(ErrorCode::kOutOfRange, "zero denominator in Q(sqrt2) number");
  if (d_ < 0) {
    a_ = -a_;
    b_ = -b_;
    d_ = -d_;
  }
  BigInt g = gcd_big(gcd_big(a_, b_), d_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    d_ /= g;
  }
}

int QSqrt2::sign() const {
  const int sa = a_ > 0 ? 1 : (a_ < 0 ? -1 : 0);
  const int sb = b_ > 0 ? 1 : (b_ < 0 ? -1 : 0);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the larger of a^2 and 2 b^2 wins. They are never equal
  // because sqrt 2 is irrational.
  return (a_ * a_ > 2 * b_ * b_) ? sa : sb;
}

QSqrt2 operator+(const QSqrt2& x, const QSqrt2& y) {
  return QSqrt2(x.a_ * y.d_ + y.a_ * x.d_, x.b_ * y.d_ + y.b_ * x.d_, x.d_ * y.d_);
}

QSqrt2 operator*(const QSqrt2& x, const QSqrt2& y) {
  return QSqrt2(x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_ * y.d_);
}

QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y) {
  const BigInt norm = y.a_ * y.a_ - 2 * y.b_ * y.b_;
  if (norm == 0) throw Error(ErrorCode::kOutOfRange, "division by zero in Q(sqrt2)");
  // 1 / ((a + b sqrt2)/d) = d (a - b sqrt2) / (a^2 - 2 b^2)
  return x * QSqrt2(y.d_ * y.a_, -y.d_ * y.b_, norm);
}

QSqrt2 QSqrt2::sqrt(const QSqrt2& r) {
  if (!r.is_rational() || r.a_ < 0) {
    throw Error(ErrorCode::kNotRepresentable, "sqrt(" + r.to_string() + ") is not in Q(sqrt2)");
  }
  // r = a/d = (a d)/d^2
  const BigInt prod = r.a_ * r.d_;
  BigInt k = isqrt(prod);
  if (k * k == prod) return QSqrt2(k, 0, r.d_);
  if (prod % 2 == 0) {
    k = isqrt(prod / 2);
    if (k * k == prod / 2) return QSqrt2(0, k, r.d_);
  }
  throw Error(ErrorCode::kNotRepresentable, "sqrt(" + r.to_string() + ") is not in Q(sqrt2)");
}

double QSqrt2::to_double() const {
  const long double a = a_.convert_to<long double>();
  const long double b = b_.convert_to<long double>();
  const long double d = d_.convert_to<long double>();
  return static_cast<double>((a + b * std::sqrt(2.0L)) / d);
}

std::string QSqrt2::decimal(int places) const {
  if (places < 0) places = 0;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  // Round |v| half away from zero: the rendering is floor(|v| * 10^places + 1/2) / 10^places.
  const bool negative = sign() < 0;
  const QSqrt2 w = (negative ? -*this : *this) * QSqrt2(scale, 0, 1) + QSqrt2(1, 0, 2);
  // b sqrt2 lies strictly between two integers s and s+1 (or equals 0).
  BigInt s = isqrt(2 * w.b_ * w.b_);
  if (w.b_ < 0) s = -s - 1;
  BigInt n = floor_div(w.a_ + s, w.d_);
  while (QSqrt2(n + 1, 0, 1) <= w) ++n;
  while (w < QSqrt2(n, 0, 1)) --n;

  const BigInt mag = abs_big(n);
  std::string digits = BigInt(mag / scale).str();
  if (places > 0) {
    std::string frac = BigInt(mag % scale).str();
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    digits += "." + frac;
  }
  return (negative && n != 0 ? "-" : "") + digits;
}

std::string QSqrt2::to_string() const {
  auto surd = [](const BigInt& b) {
    const BigInt m = abs_big(b);
    return m == 1 ? std::string("sqrt(2)") : m.str() + "*sqrt(2)";
  };
  std::string num;
  bool compound = false;
  if (b_ == 0) {
    num = a_.str();
  } else if (a_ == 0) {
    num = (b_ < 0 ? "-" : "") + surd(b_);
  } else {
    num = a_.str() + (b_ < 0 ? " - " : " + ") + surd(b_);
    compound = true;
  }
  if (d_ == 1) return num;
  return (compound ? "(" + num + ")" : num) + "/" + d_.str();
}

// ---------------------------------------------------------------------------

int QuadPoly::degree() const {
  for (int k = 2; k >= 0; --k) {
    if (c_[k].sign() != 0) return k;
  }
  return -1;
}

QuadPoly operator+(const QuadPoly& x, const QuadPoly& y) {
  return {x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2]};
}

QuadPoly operator-(const QuadPoly& x, const QuadPoly& y) {
  return {x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2]};
}

QuadPoly operator*(const QSqrt2& s, const QuadPoly& x) { return {s * x.c_[0], s * x.c_[1], s * x.c_[2]}; }

QuadPoly operator*(const QuadPoly& x, const QuadPoly& y) {
  QSqrt2 r[5] = {0, 0, 0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r[i + j] += x.c_[i] * y.c_[j];
  }
  if (r[3].sign() != 0 || r[4].sign() != 0) {
    throw Error(ErrorCode::kOutOfRange, "polynomial product exceeds degree 2");
  }
  return {r[0], r[1], r[2]};
}

QSqrt2 QuadPoly::evaluate(const QSqrt2& x) const { return c_[0] + x * (c_[1] + x * c_[2]); }

QuadPoly QuadPoly::primitive() const {
  for (const auto& c : c_) {
    if (!c.is_rational()) return *this;
  }
  BigInt lcm = 1;
  for (const auto& c : c_) lcm = lcm / gcd_big(lcm, c.d()) * c.d();
  BigInt nums[3];
  BigInt g = 0;
  for (int k = 0; k < 3; ++k) {
    nums[k] = c_[k].a() * (lcm / c_[k].d());
    g = gcd_big(g, nums[k]);
  }
  if (g == 0) return *this;
  return {QSqrt2(nums[0] / g, 0, 1), QSqrt2(nums[1] / g, 0, 1), QSqrt2(nums[2] / g, 0, 1)};
}

std::vector<QSqrt2> QuadPoly::roots() const {
  switch (degree()) {
    case 2: {
      const QSqrt2 disc = c_[1] * c_[1] - QSqrt2(4) * c_[2] * c_[0];
      if (disc.sign() < 0) return {};
      const QSqrt2 root = QSqrt2::sqrt(disc);
      const QSqrt2 denom = QSqrt2(2) * c_[2];
      std::vector<QSqrt2> out{(-c_[1] - root) / denom, (-c_[1] + root) / denom};
      std::sort(out.begin(), out.end());
      if (out[0] == out[1]) out.pop_back();
      return out;
    }
    case 1: return {-c_[0] / c_[1]};
    default: return {};
  }
}

std::string QuadPoly::to_string(const std::string& var) const {
  std::string out;
  for (int k = 2; k >= 0; --k) {
    const QSqrt2& c = c_[k];
    if (c.sign() == 0) continue;
    const bool negative = c.sign() < 0;
    const QSqrt2 mag = negative ? -c : c;
    std::string coeff;
    const bool integer = mag.is_rational() && mag.d() == 1;
    if (k == 0) {
      coeff = mag.to_string();
    } else if (integer) {
      coeff = mag.a() == 1 ? "" : mag.a().str();
    } else {
      coeff = "(" + mag.to_string() + ")";
    }
    const std::string term = coeff + (k == 2 ? var + "^2" : (k == 1 ? var : ""));
    if (out.empty()) {
      out = (negative ? "-" : "") + term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace epb
