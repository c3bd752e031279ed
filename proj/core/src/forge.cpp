#include "qforge/forge.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

namespace qf {

namespace {

// Bounded uniform draw that does not depend on std::uniform_int_distribution
// (whose output is implementation-defined); keeps seeded runs reproducible.
u64 uniform_u64(std::mt19937_64& rng, u64 n) {
  u64 lim = ~0ull - ~0ull % n;
  u64 x;
  do {
    x = rng();
  } while (x >= lim);
  return x % n;
}

long uniform_range(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(uniform_u64(rng, static_cast<u64>(hi - lo + 1)));
}

}  // namespace

ForgeResult line_to_point(const QuarticCurve<Rational>& q,
                          const ColoringSpec<Rational>& spec,
                          const CombinatorialLine& line) {
  if (!line_monochromatic(spec, line))
    raise(Errc::InvalidArgument, "line_to_point: line is not monochromatic");
  Rational s_w = spec.s_w(line);
  Rational u = (spec.l() + spec.r_v(line)) / s_w;
  Rational fu = q.f(u);
  if (fu == 0)
    raise(Errc::TwoTorsionHit, "line_to_point: u collides with a root of f");
  SqrtClass root = rational_sqrt_class(fu);

  ForgeResult out;
  out.line = line;
  out.u = u;
  out.d = root.d;
  out.v_scale = root.s;
  out.l = spec.l();
  out.b = spec.b();

  if (q.provenance) {
    // Map (u, v) to the source Weierstrass model and trace down to Q.
    // v = s sqrt(d): rational when d = 1, otherwise a pure sqrt(d) multiple.
    const SplitCurve<Rational>& source = q.provenance->source;
    if (root.d == 1) {
      QuarticPoint<Rational> qp{u, root.s};
      CurvePoint<Rational> w = quartic_to_weierstrass_point(q, qp);
      out.traced = trace_point(source, lift_point(w));
    } else {
      QuarticCurve<QuadExt> ql = lift_quartic(q);
      QuadExt v(Rational(0), root.s, root.d);
      QuarticPoint<QuadExt> qp{QuadExt(u), v};
      CurvePoint<QuadExt> w = quartic_to_weierstrass_point(ql, qp);
      out.traced = trace_point(source, w);
    }
  }
  return out;
}

FpForgeResult line_to_point(const QuarticCurve<FpElement>& q,
                            const ColoringSpec<FpElement>& spec,
                            const CombinatorialLine& line) {
  if (!line_monochromatic(spec, line))
    raise(Errc::InvalidArgument, "line_to_point: line is not monochromatic");
  FpElement s_w = spec.s_w(line);
  FpElement u = (spec.l() + spec.r_v(line)) / s_w;
  FpElement fu = q.f(u);
  if (fu.value == 0)
    raise(Errc::TwoTorsionHit, "line_to_point: u collides with a root of f");
  // product of four same-class values over s_w^4: always a residue
  FpElement v = fp_sqrt(fu);
  return FpForgeResult{line, u, v};
}

ForgeOutcome forge(const SplitCurve<Rational>& curve, const CurvePoint<Rational>& p0,
                   const ForgeBudget& budget, u64 seed) {
  if (budget.n_max < 1 || budget.n_max > 20)
    raise(Errc::InvalidArgument, "forge: n_max must be in [1, 20]");
  if (budget.coeff_bound < 1)
    raise(Errc::InvalidArgument, "forge: coeff_bound must be positive");
  QuarticCurve<Rational> q = to_quartic(curve, p0);
  ForgeOutcome out;
  std::mt19937_64 rng(splitmix64(seed));
  std::unordered_set<std::string> seen_u;

  for (u64 restart = 0; restart < budget.restarts; ++restart) {
    ++out.stats.restarts_used;
    // Iterative deepening: small N dominates the schedule, larger N appears
    // as the restart index grows; the offset window for l widens so the
    // finitely many degenerate choices wash out.
    size_t n = 1 + restart % budget.n_max;
    if (line_count(n) > budget.line_cap)
      n = 1 + restart % std::min<size_t>(4, budget.n_max);
    long window = 4 + static_cast<long>(restart / 256);

    std::vector<Rational> b;
    b.reserve(n);
    for (size_t j = 0; j < n; ++j) {
      long v = 0;
      while (v == 0) v = uniform_range(rng, -budget.coeff_bound, budget.coeff_bound);
      b.emplace_back(v);
    }
    Rational l(uniform_range(rng, -window, window));
    std::optional<ColoringSpec<Rational>> spec;
    try {
      spec.emplace(l, std::move(b), q.c);
    } catch (const Error&) {
      ++out.stats.degenerate_skips;  // subsequence-sum rejection
      continue;
    }

    std::optional<CombinatorialLine> hit;
    enumerate_lines(n, [&](const CombinatorialLine& line) {
      ++out.stats.lines_scanned;
      if (line_monochromatic(*spec, line)) {
        hit = line;
        return false;
      }
      return true;
    });
    if (!hit) continue;
    ++out.stats.monochromatic_hits;

    try {
      ForgeResult r = line_to_point(q, *spec, *hit);
      if (seen_u.insert(rational_str(r.u)).second) out.results.push_back(std::move(r));
    } catch (const Error& e) {
      if (e.code() == Errc::TwoTorsionHit) {
        ++out.stats.degenerate_skips;
        continue;
      }
      throw;
    }
  }
  return out;
}

std::vector<ScanRow> scan_linear_family(const QuarticCurve<Rational>& q,
                                        const std::vector<LinearFormQ>& forms,
                                        long t_min, long t_max,
                                        const Integer& designated_d) {
  for (const auto& f : forms)
    if (f.a == 0) raise(Errc::InvalidArgument, "scan: form must be non-constant");
  std::vector<ScanRow> rows;
  for (long t = t_min; t <= t_max; ++t) {
    ScanRow row{Rational(t), {}, {}};
    for (size_t i = 0; i < forms.size(); ++i) {
      Rational u = forms[i].a * Rational(t) + forms[i].b;
      Rational fu = q.f(u);
      Integer d = fu == 0 ? Integer(0) : squarefree_part(fu).rep;
      if (d == 0 || d == 1 || d == designated_d) row.hits.push_back(i);
      row.evals.push_back(ScanEval{i, std::move(d)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<FpScanRow> scan_linear_family(const QuarticCurve<FpElement>& q,
                                          const std::vector<LinearFormFp>& forms,
                                          u64 t_min, u64 t_max) {
  if (q.c[0].p == 0) raise(Errc::InvalidArgument, "scan: quartic not over F_p");
  FpField f(q.c[0].p);
  for (const auto& fm : forms)
    if (fm.a % f.p() == 0)
      raise(Errc::InvalidArgument, "scan: form must be non-constant");
  SquareTable squares(f);
  std::vector<FpScanRow> rows;
  for (u64 t = t_min; t <= t_max && t < f.p(); ++t) {
    FpScanRow row{t, {}};
    for (size_t i = 0; i < forms.size(); ++i) {
      u64 u = f.add(f.mul(forms[i].a % f.p(), t), forms[i].b % f.p());
      FpElement fu = q.f(fp(u, f.p()));
      if (fu.value == 0 || squares.is_qr(fu.value)) row.hits.push_back(i);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qf
