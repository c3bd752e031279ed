#pragma once

#include "qforge/numeric.hpp"
#include "qforge/square_class.hpp"

namespace qf {

// Element a + b*sqrt(d) of Q(sqrt d), d squarefree, d != 0, 1. Elements with
// b = 0 coerce freely between extensions, so rational constants mix with any
// d without ceremony.
struct QuadExt {
  Rational a = 0;
  Rational b = 0;
  Integer d = 1;  // d == 1 only allowed when b == 0 (pure rational)

  QuadExt() = default;
  QuadExt(Rational a_, Rational b_, Integer d_)
      : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {
    normalize();
  }
  explicit QuadExt(Rational r) : a(std::move(r)) {}
  explicit QuadExt(long n) : a(n) {}

  bool is_rational() const { return b == 0; }

  void normalize() {
    if (b == 0) {
      d = 1;
    } else if (d == 0 || d == 1) {
      raise(Errc::InvalidArgument, "QuadExt requires d != 0, 1");
    }
  }
};

inline void check_compatible(const QuadExt& x, const QuadExt& y) {
  if (!x.is_rational() && !y.is_rational() && x.d != y.d)
    raise(Errc::InvalidArgument, "mixed quadratic extensions");
}

inline Integer ext_of(const QuadExt& x, const QuadExt& y) {
  return x.is_rational() ? y.d : x.d;
}

inline bool operator==(const QuadExt& x, const QuadExt& y) {
  return x.a == y.a && x.b == y.b && (x.b == 0 || x.d == y.d);
}

inline QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  check_compatible(x, y);
  return QuadExt(x.a + y.a, x.b + y.b, ext_of(x, y));
}

inline QuadExt operator-(const QuadExt& x, const QuadExt& y) {
  check_compatible(x, y);
  return QuadExt(x.a - y.a, x.b - y.b, ext_of(x, y));
}

inline QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a, -x.b, x.d); }

inline QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  check_compatible(x, y);
  Integer d = ext_of(x, y);
  return QuadExt(x.a * y.a + x.b * y.b * Rational(d), x.a * y.b + x.b * y.a, d);
}

inline QuadExt conjugate(const QuadExt& x) { return QuadExt(x.a, -x.b, x.d); }

inline Rational norm(const QuadExt& x) { return x.a * x.a - x.b * x.b * Rational(x.d); }

inline QuadExt operator/(const QuadExt& x, const QuadExt& y) {
  check_compatible(x, y);
  if (y.a == 0 && y.b == 0) raise(Errc::InvalidArgument, "division by zero");
  Rational n = norm(y);
  QuadExt t = x * conjugate(y);
  return QuadExt(t.a / n, t.b / n, ext_of(x, y));
}

inline QuadExt quad_lift(const Rational& r) { return QuadExt(r); }

}  // namespace qf
