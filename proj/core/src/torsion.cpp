#include "qforge/torsion.hpp"

#include <algorithm>
#include <set>

#include "qforge/factor.hpp"
#include "qforge/square_class.hpp"

namespace qf {

namespace {

Integer lcm3(const Integer& a, const Integer& b, const Integer& c) {
  Integer ab, out;
  mpz_lcm(ab.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_lcm(out.get_mpz_t(), ab.get_mpz_t(), c.get_mpz_t());
  return out;
}

// Candidate filter on the integral model: integer coordinates and
// (Y = 0 or Y^2 | 16 * disc). 16*disc is the discriminant of the Weierstrass
// equation, a safe superset of the textbook cubic-discriminant bound.
struct LutzNagellFilter {
  const IntegralModel& m;
  Integer bound;

  explicit LutzNagellFilter(const IntegralModel& model)
      : m(model), bound(16 * model.disc_cubic) {}

  bool admits(const CurvePoint<Rational>& pt) const {
    if (pt.inf) return true;
    Rational xs = pt.x * Rational(m.scale * m.scale);
    Rational ys = pt.y * Rational(m.scale * m.scale * m.scale);
    if (den(xs) != 1 || den(ys) != 1) return false;
    if (ys == 0) return true;
    return mpz_divisible_p(bound.get_mpz_t(), Integer(num(ys) * num(ys)).get_mpz_t());
  }
};

std::vector<Integer> monic_cubic_integer_roots(const Integer& a2, const Integer& a1,
                                               const Integer& a0) {
  std::vector<Integer> roots;
  auto is_root = [&](const Integer& x) {
    return ((x + a2) * x + a1) * x + a0 == 0;
  };
  if (a0 == 0) {
    roots.push_back(0);
    // remaining quadratic x^2 + a2 x + a1
    Integer disc = a2 * a2 - 4 * a1;
    if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
      if ((s - a2) % 2 == 0) {
        roots.push_back((-a2 + s) / 2);
        roots.push_back((-a2 - s) / 2);
      }
    }
  } else {
    for (const Integer& d : divisors(a0)) {
      if (is_root(d)) roots.push_back(d);
      if (is_root(-d)) roots.push_back(-d);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

struct PointLess {
  bool operator()(const CurvePoint<Rational>& a, const CurvePoint<Rational>& b) const {
    if (a.inf != b.inf) return a.inf < b.inf;
    if (a.inf) return false;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

}  // namespace

IntegralModel integral_model(const SplitCurve<Rational>& c) {
  Integer mu = lcm3(den(c.e1), den(c.e2), den(c.e3));
  IntegralModel m;
  m.scale = mu;
  Rational s(mu * mu);
  m.r1 = num(Rational(c.e1 * s));
  m.r2 = num(Rational(c.e2 * s));
  m.r3 = num(Rational(c.e3 * s));
  Integer d = (m.r1 - m.r2) * (m.r1 - m.r3) * (m.r2 - m.r3);
  m.disc_cubic = d * d;
  return m;
}

std::vector<CurvePoint<Rational>> torsion_subgroup_q(const SplitCurve<Rational>& c) {
  IntegralModel m = integral_model(c);
  Integer a2 = -(m.r1 + m.r2 + m.r3);
  Integer a1 = m.r1 * m.r2 + m.r1 * m.r3 + m.r2 * m.r3;
  Integer a0 = -(m.r1 * m.r2 * m.r3);

  std::set<CurvePoint<Rational>, PointLess> candidates;
  candidates.insert(CurvePoint<Rational>::infinity());
  Rational sx = make_rational(Integer(1), m.scale * m.scale);
  Rational sy = make_rational(Integer(1), m.scale * m.scale * m.scale);
  auto add_candidate = [&](const Integer& X, const Integer& Y) {
    candidates.insert(CurvePoint<Rational>::affine(Rational(X) * sx, Rational(Y) * sy));
  };

  // Y = 0: the 2-torsion fiber (roots are rational by construction).
  for (const Integer& r : {m.r1, m.r2, m.r3}) add_candidate(r, 0);

  // Y != 0 with Y^2 | 16*disc. The bound is the square of
  // 4|r1-r2||r1-r3||r2-r3|, so Y^2 | bound is exactly Y | sqrt(bound).
  Integer root_bound;
  mpz_sqrt(root_bound.get_mpz_t(), Integer(16 * m.disc_cubic).get_mpz_t());
  for (const Integer& y : divisors(root_bound)) {
    for (const Integer& x : monic_cubic_integer_roots(a2, a1, a0 - y * y)) {
      add_candidate(x, y);
      add_candidate(x, -y);
    }
  }

  // Keep exactly the candidates of finite order. A torsion point's multiples
  // all satisfy the Lutz-Nagell conditions, so iterating inside the candidate
  // set either reaches infinity / revisits (torsion) or escapes (infinite
  // order).
  std::vector<CurvePoint<Rational>> torsion;
  for (const auto& pt : candidates) {
    if (!on_curve(c, pt)) continue;
    if (is_torsion(c, pt)) torsion.push_back(pt);
  }
  std::sort(torsion.begin(), torsion.end(), PointLess{});
  return torsion;
}

bool is_torsion(const SplitCurve<Rational>& c, const CurvePoint<Rational>& pt) {
  if (pt.inf) return true;
  if (!on_curve(c, pt)) raise(Errc::NotOnCurve, "is_torsion: point not on curve");
  IntegralModel m = integral_model(c);
  LutzNagellFilter filter(m);
  std::set<CurvePoint<Rational>, PointLess> seen;
  CurvePoint<Rational> acc = pt;
  while (true) {
    if (acc.inf) return true;
    if (!filter.admits(acc)) return false;
    if (!seen.insert(acc).second) return true;  // cycle without infinity
    acc = add_unchecked(c, acc, pt);
  }
}

bool is_double(const SplitCurve<Rational>& c, const CurvePoint<Rational>& pt) {
  if (pt.inf) raise(Errc::InvalidArgument, "is_double: affine point required");
  if (!on_curve(c, pt)) raise(Errc::NotOnCurve, "is_double: point not on curve");
  if (pt.y == 0) raise(Errc::TwoTorsionInput, "is_double: 2-torsion input");
  for (const Rational& e : {c.e1, c.e2, c.e3}) {
    Rational t = pt.x - e;
    if (t == 0 || !is_rational_square(t)) return false;
  }
  return true;
}

std::vector<CurvePoint<Rational>> halvings(const SplitCurve<Rational>& c,
                                           const CurvePoint<Rational>& pt) {
  std::vector<CurvePoint<Rational>> out;
  if (pt.inf || pt.y == 0) return out;
  std::array<Rational, 3> diff{pt.x - c.e1, pt.x - c.e2, pt.x - c.e3};
  std::array<Rational, 3> root;
  for (int i = 0; i < 3; ++i) {
    if (diff[i] == 0 || !is_rational_square(diff[i])) return out;
    root[i] = rational_sqrt_class(diff[i]).s;
  }
  // x(Q) = x(P) + t2 t3 + t1 t3 + t1 t2 over sign choices t_i = +/- root_i;
  // each candidate is confirmed by exact doubling.
  for (int mask = 0; mask < 8; ++mask) {
    std::array<Rational, 3> t;
    for (int i = 0; i < 3; ++i) t[i] = (mask >> i) & 1 ? -root[i] : root[i];
    Rational xq = pt.x + t[1] * t[2] + t[0] * t[2] + t[0] * t[1];
    Rational rhs = c.rhs(xq);
    if (!is_rational_square(rhs)) continue;  // zero rhs gives a 2-torsion Q
    Rational yq = rational_sqrt_class(rhs).s;
    for (const Rational& y : {yq, Rational(-yq)}) {
      CurvePoint<Rational> q = CurvePoint<Rational>::affine(xq, y);
      if (add_unchecked(c, q, q) == pt) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end(), PointLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qf
