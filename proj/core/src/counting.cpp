#include "qforge/counting.hpp"

namespace qf {

namespace {

void check_good_reduction(const SplitCurve<FpElement>& c) {
  if (c.e1 == c.e2 || c.e1 == c.e3 || c.e2 == c.e3)
    raise(Errc::BadReduction, "roots collide mod p");
}

}  // namespace

u64 count_points(const SplitCurve<FpElement>& c) {
  check_good_reduction(c);
  const u64 p = c.e1.p;
  FpField f(p);
  SquareTable squares(f);
  u64 e1 = c.e1.value, e2 = c.e2.value, e3 = c.e3.value;
  u64 n = 1;  // infinity
  for (u64 x = 0; x < p; ++x) {
    u64 rhs = f.mul(f.mul(f.sub(x, e1), f.sub(x, e2)), f.sub(x, e3));
    if (rhs == 0)
      n += 1;
    else if (squares.is_qr(rhs))
      n += 2;
  }
  if (!hasse_bound_ok(n, p)) raise(Errc::InternalError, "Hasse bound violated");
  return n;
}

std::vector<CurvePoint<FpElement>> enumerate_points(const SplitCurve<FpElement>& c) {
  check_good_reduction(c);
  const u64 p = c.e1.p;
  FpField f(p);
  SqrtTable roots(f);
  u64 e1 = c.e1.value, e2 = c.e2.value, e3 = c.e3.value;
  std::vector<CurvePoint<FpElement>> pts;
  pts.push_back(CurvePoint<FpElement>::infinity());
  for (u64 x = 0; x < p; ++x) {
    u64 rhs = f.mul(f.mul(f.sub(x, e1), f.sub(x, e2)), f.sub(x, e3));
    if (!roots.has_root(rhs)) continue;
    u64 y = roots.root(rhs);
    pts.push_back(CurvePoint<FpElement>::affine(fp(x, p), fp(y, p)));
    if (y != 0) pts.push_back(CurvePoint<FpElement>::affine(fp(x, p), fp(p - y, p)));
  }
  return pts;
}

}  // namespace qf
