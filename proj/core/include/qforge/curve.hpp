#pragma once

#include "qforge/field.hpp"

namespace qf {

// y^2 = (x - e1)(x - e2)(x - e3) with distinct roots: a split Weierstrass
// model, full 2-torsion rational by construction.
template <FieldElement F>
struct SplitCurve {
  F e1, e2, e3;

  SplitCurve(F a, F b, F c) : e1(std::move(a)), e2(std::move(b)), e3(std::move(c)) {
    if (e1 == e2 || e1 == e3 || e2 == e3)
      raise(Errc::InvalidArgument, "split curve requires distinct roots");
  }

  // x^3 + a2 x^2 + a1 x + a0
  F a2() const { return -(e1 + e2 + e3); }
  F a1() const { return e1 * e2 + e1 * e3 + e2 * e3; }
  F a0() const { return -(e1 * e2 * e3); }

  F rhs(const F& x) const { return (x - e1) * (x - e2) * (x - e3); }
};

template <FieldElement F>
struct CurvePoint {
  bool inf = true;
  F x{}, y{};

  static CurvePoint infinity() { return CurvePoint{}; }
  static CurvePoint affine(F x, F y) {
    return CurvePoint{false, std::move(x), std::move(y)};
  }

  bool operator==(const CurvePoint& o) const {
    if (inf || o.inf) return inf == o.inf;
    return x == o.x && y == o.y;
  }
};

template <FieldElement F>
bool on_curve(const SplitCurve<F>& c, const CurvePoint<F>& pt) {
  if (pt.inf) return true;
  return pt.y * pt.y == c.rhs(pt.x);
}

template <FieldElement F>
CurvePoint<F> neg(const CurvePoint<F>& pt) {
  if (pt.inf) return pt;
  return CurvePoint<F>::affine(pt.x, -pt.y);
}

// Chord-tangent addition; callers guarantee membership.
template <FieldElement F>
CurvePoint<F> add_unchecked(const SplitCurve<F>& c, const CurvePoint<F>& pp,
                            const CurvePoint<F>& qq) {
  using Ops = FieldOps<F>;
  if (pp.inf) return qq;
  if (qq.inf) return pp;
  if (pp.x == qq.x) {
    if (!(pp.y == qq.y) || Ops::is_zero(pp.y)) return CurvePoint<F>::infinity();
    // tangent: lambda = (3x^2 + 2*a2*x + a1) / 2y
    F two = Ops::from_int(pp.x, 2);
    F three = Ops::from_int(pp.x, 3);
    F lam = (three * pp.x * pp.x + two * c.a2() * pp.x + c.a1()) / (two * pp.y);
    F x3 = lam * lam - c.a2() - pp.x - qq.x;
    F y3 = lam * (pp.x - x3) - pp.y;
    return CurvePoint<F>::affine(std::move(x3), std::move(y3));
  }
  F lam = (qq.y - pp.y) / (qq.x - pp.x);
  F x3 = lam * lam - c.a2() - pp.x - qq.x;
  F y3 = lam * (pp.x - x3) - pp.y;
  return CurvePoint<F>::affine(std::move(x3), std::move(y3));
}

template <FieldElement F>
CurvePoint<F> add(const SplitCurve<F>& c, const CurvePoint<F>& pp,
                  const CurvePoint<F>& qq) {
  if (!on_curve(c, pp) || !on_curve(c, qq))
    raise(Errc::NotOnCurve, "add: operand not on curve");
  return add_unchecked(c, pp, qq);
}

template <FieldElement F>
CurvePoint<F> scalar_mul_unchecked(const SplitCurve<F>& c, const Integer& n,
                                   const CurvePoint<F>& pt) {
  Integer k = abs(n);
  CurvePoint<F> acc = CurvePoint<F>::infinity();
  CurvePoint<F> base = n < 0 ? neg(pt) : pt;
  size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  if (k == 0) return acc;
  for (size_t i = bits; i-- > 0;) {
    acc = add_unchecked(c, acc, acc);
    if (mpz_tstbit(k.get_mpz_t(), i)) acc = add_unchecked(c, acc, base);
  }
  return acc;
}

template <FieldElement F>
CurvePoint<F> scalar_mul(const SplitCurve<F>& c, const Integer& n,
                         const CurvePoint<F>& pt) {
  if (!on_curve(c, pt)) raise(Errc::NotOnCurve, "scalar_mul: point not on curve");
  return scalar_mul_unchecked(c, n, pt);
}

template <FieldElement F>
CurvePoint<F> scalar_mul(const SplitCurve<F>& c, long n, const CurvePoint<F>& pt) {
  return scalar_mul(c, Integer(n), pt);
}

// Lifts between Q and Q(sqrt d) for the trace machinery.
inline SplitCurve<QuadExt> lift_curve(const SplitCurve<Rational>& c) {
  return SplitCurve<QuadExt>(QuadExt(c.e1), QuadExt(c.e2), QuadExt(c.e3));
}

inline CurvePoint<QuadExt> lift_point(const CurvePoint<Rational>& pt) {
  if (pt.inf) return CurvePoint<QuadExt>::infinity();
  return CurvePoint<QuadExt>::affine(QuadExt(pt.x), QuadExt(pt.y));
}

// Galois conjugation sigma: a + b sqrt(d) -> a - b sqrt(d), coordinatewise.
inline CurvePoint<QuadExt> conjugate_point(const CurvePoint<QuadExt>& pt) {
  if (pt.inf) return pt;
  return CurvePoint<QuadExt>::affine(conjugate(pt.x), conjugate(pt.y));
}

// Tr(P) = P + sigma(P); Galois invariance forces a rational result, which is
// verified rather than assumed.
inline CurvePoint<Rational> trace_point(const SplitCurve<Rational>& c,
                                        const CurvePoint<QuadExt>& pt) {
  SplitCurve<QuadExt> cl = lift_curve(c);
  if (!on_curve(cl, pt)) raise(Errc::NotOnCurve, "trace_point: not on curve");
  CurvePoint<QuadExt> sum = add_unchecked(cl, pt, conjugate_point(pt));
  if (sum.inf) return CurvePoint<Rational>::infinity();
  if (!sum.x.is_rational() || !sum.y.is_rational())
    raise(Errc::InternalError, "trace is not Galois invariant");
  CurvePoint<Rational> out = CurvePoint<Rational>::affine(sum.x.a, sum.y.a);
  if (!on_curve(c, out)) raise(Errc::InternalError, "trace left the curve");
  return out;
}

}  // namespace qf
