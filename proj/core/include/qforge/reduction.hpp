#pragma once

#include <functional>

#include "qforge/curve.hpp"

namespace qf {

struct FpPointHash {
  size_t operator()(const CurvePoint<FpElement>& pt) const {
    if (pt.inf) return 0x9e3779b97f4a7c15ull;
    return std::hash<u64>()(pt.x.value * 0x100000001b3ull ^ pt.y.value);
  }
};

inline bool good_reduction(const SplitCurve<Rational>& c, const FpField& f) {
  auto e1 = f.reduce_rational(c.e1);
  auto e2 = f.reduce_rational(c.e2);
  auto e3 = f.reduce_rational(c.e3);
  if (!e1 || !e2 || !e3) return false;
  return *e1 != *e2 && *e1 != *e3 && *e2 != *e3;
}

inline SplitCurve<FpElement> reduce_curve(const SplitCurve<Rational>& c,
                                          const FpField& f) {
  auto e1 = f.reduce_rational(c.e1);
  auto e2 = f.reduce_rational(c.e2);
  auto e3 = f.reduce_rational(c.e3);
  if (!e1 || !e2 || !e3 || *e1 == *e2 || *e1 == *e3 || *e2 == *e3)
    raise(Errc::BadReduction, "curve has bad reduction at p");
  return SplitCurve<FpElement>(fp(*e1, f.p()), fp(*e2, f.p()), fp(*e3, f.p()));
}

// Coordinatewise reduction of a rational point; the reduced point is checked
// against the reduced curve.
inline CurvePoint<FpElement> reduce_point(const SplitCurve<Rational>& c,
                                          const CurvePoint<Rational>& pt,
                                          const FpField& f) {
  SplitCurve<FpElement> cp = reduce_curve(c, f);
  if (pt.inf) return CurvePoint<FpElement>::infinity();
  if (!on_curve(c, pt)) raise(Errc::NotOnCurve, "reduce_point: not on curve");
  auto x = f.reduce_rational(pt.x);
  auto y = f.reduce_rational(pt.y);
  if (!x || !y)
    raise(Errc::BadPrimeForPoint, "p divides a coordinate denominator");
  CurvePoint<FpElement> out =
      CurvePoint<FpElement>::affine(fp(*x, f.p()), fp(*y, f.p()));
  if (!on_curve(cp, out)) raise(Errc::InternalError, "reduction left the curve");
  return out;
}

}  // namespace qf
