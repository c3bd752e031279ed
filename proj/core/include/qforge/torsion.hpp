#pragma once

#include <vector>

#include "qforge/curve.hpp"

namespace qf {

// Integral model Y^2 = (X - E1)(X - E2)(X - E3) obtained from a rational
// split curve by (x, y) -> (mu^2 x, mu^3 y).
struct IntegralModel {
  Integer scale;  // mu
  Integer r1, r2, r3;
  Integer disc_cubic;  // [(E1-E2)(E1-E3)(E2-E3)]^2
};

IntegralModel integral_model(const SplitCurve<Rational>& c);

// Full torsion subgroup over Q via Lutz-Nagell candidates plus rigorous
// order verification; always contains the four 2-torsion points.
std::vector<CurvePoint<Rational>> torsion_subgroup_q(const SplitCurve<Rational>& c);

bool is_torsion(const SplitCurve<Rational>& c, const CurvePoint<Rational>& pt);

// Classical full-2-torsion descent criterion: an affine P with y != 0 lies
// in 2C(Q) iff every x(P) - e_i is a rational square.
bool is_double(const SplitCurve<Rational>& c, const CurvePoint<Rational>& pt);

// All rational Q with 2Q = P (empty when P is not a double). Exact; used as
// the cross-check oracle for is_double.
std::vector<CurvePoint<Rational>> halvings(const SplitCurve<Rational>& c,
                                           const CurvePoint<Rational>& pt);

}  // namespace qf
