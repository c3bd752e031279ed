#pragma once

#include <array>
#include <optional>

#include "qforge/curve.hpp"

namespace qf {

// Where a quartic came from: the split curve, the base point (x0, y0) used
// for the coordinate change, and the translated roots e_i' = e_i - x0.
// Keeping this around makes the point maps total.
template <FieldElement F>
struct QuarticProvenance {
  SplitCurve<F> source;
  F x0, y0;
  std::array<F, 3> shifted_roots;
};

// v^2 = (u + c0)(u + c1)(u + c2)(u + c3), monic and squarefree.
template <FieldElement F>
struct QuarticCurve {
  std::array<F, 4> c;
  std::optional<QuarticProvenance<F>> provenance;

  explicit QuarticCurve(std::array<F, 4> cs,
                        std::optional<QuarticProvenance<F>> prov = std::nullopt)
      : c(std::move(cs)), provenance(std::move(prov)) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (c[i] == c[j])
          raise(Errc::InvalidArgument, "quartic requires distinct constants");
  }

  F f(const F& u) const {
    return (u + c[0]) * (u + c[1]) * (u + c[2]) * (u + c[3]);
  }
};

template <FieldElement F>
struct QuarticPoint {
  F u, v;
};

template <FieldElement F>
bool on_quartic(const QuarticCurve<F>& q, const QuarticPoint<F>& pt) {
  return pt.v * pt.v == q.f(pt.u);
}

// Coordinate change from the split model through a base point (x0, y0),
// y0 != 0: translate so x0 = 0 (then y0^2 = -e1'e2'e3'), and set c0 = 0,
// c_i = 1/e_i'.
template <FieldElement F>
QuarticCurve<F> to_quartic(const SplitCurve<F>& curve, const CurvePoint<F>& p0) {
  using Ops = FieldOps<F>;
  if (!on_curve(curve, p0) || p0.inf)
    raise(Errc::NotOnCurve, "to_quartic: base point not an affine curve point");
  if (Ops::is_zero(p0.y))
    raise(Errc::TwoTorsionBasePoint, "to_quartic: base point has order 2");
  std::array<F, 3> shifted{curve.e1 - p0.x, curve.e2 - p0.x, curve.e3 - p0.x};
  for (const F& r : shifted)
    if (Ops::is_zero(r))
      raise(Errc::SingularTranslate, "to_quartic: a root collides with x0");
  F one = Ops::one(p0.x);
  std::array<F, 4> c{Ops::zero(p0.x), one / shifted[0], one / shifted[1],
                     one / shifted[2]};
  return QuarticCurve<F>(std::move(c),
                         QuarticProvenance<F>{curve, p0.x, p0.y, shifted});
}

// u = -1/x', v = y / (y0 x'^2) on translated coordinates x' = x - x0.
template <FieldElement F>
QuarticPoint<F> weierstrass_to_quartic_point(const QuarticCurve<F>& q,
                                             const CurvePoint<F>& pt) {
  using Ops = FieldOps<F>;
  if (!q.provenance)
    raise(Errc::InvalidArgument, "quartic has no source curve attached");
  const auto& prov = *q.provenance;
  if (pt.inf || !on_curve(prov.source, pt))
    raise(Errc::NotOnCurve, "point map: not an affine point of the source");
  F xs = pt.x - prov.x0;
  if (Ops::is_zero(xs))
    raise(Errc::MapsToInfinity, "point map: base-point fiber maps to infinity");
  F u = -(Ops::one(xs) / xs);
  F v = pt.y / (prov.y0 * xs * xs);
  return QuarticPoint<F>{std::move(u), std::move(v)};
}

template <FieldElement F>
CurvePoint<F> quartic_to_weierstrass_point(const QuarticCurve<F>& q,
                                           const QuarticPoint<F>& pt) {
  using Ops = FieldOps<F>;
  if (!q.provenance)
    raise(Errc::InvalidArgument, "quartic has no source curve attached");
  const auto& prov = *q.provenance;
  if (!on_quartic(q, pt)) raise(Errc::NotOnCurve, "point map: not on quartic");
  if (Ops::is_zero(pt.u))
    raise(Errc::MapsToBasePointPair, "point map: u = 0 is the base-point pair");
  F xs = -(Ops::one(pt.u) / pt.u);
  F x = xs + prov.x0;
  F y = pt.v * prov.y0 * xs * xs;
  CurvePoint<F> out = CurvePoint<F>::affine(std::move(x), std::move(y));
  if (!on_curve(prov.source, out))
    raise(Errc::InternalError, "point map left the curve");
  return out;
}

// The maps above for points over Q(sqrt d) on a quartic with rational data.
inline QuarticCurve<QuadExt> lift_quartic(const QuarticCurve<Rational>& q) {
  std::array<QuadExt, 4> c{QuadExt(q.c[0]), QuadExt(q.c[1]), QuadExt(q.c[2]),
                           QuadExt(q.c[3])};
  std::optional<QuarticProvenance<QuadExt>> prov;
  if (q.provenance) {
    const auto& p = *q.provenance;
    prov = QuarticProvenance<QuadExt>{
        lift_curve(p.source), QuadExt(p.x0), QuadExt(p.y0),
        {QuadExt(p.shifted_roots[0]), QuadExt(p.shifted_roots[1]),
         QuadExt(p.shifted_roots[2])}};
  }
  return QuarticCurve<QuadExt>(std::move(c), std::move(prov));
}

}  // namespace qf
