// Acceptance suite: runs every toolkit-level criterion end to end and prints
// one pass/fail line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qforge/certify.hpp"
#include "qforge/counting.hpp"
#include "qforge/density.hpp"
#include "qforge/factor.hpp"
#include "qforge/forge.hpp"
#include "qforge/json_io.hpp"
#include "qforge/torsion.hpp"
#include "schema_check.hpp"

using namespace qf;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  int id = 0;
  std::string label;
  bool pass = true;
  std::string detail;
  double limit_s = 0;  // 0 = no stated runtime bound
  double elapsed_s = 0;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

void run(int id, const std::string& label, double limit_s,
         const std::function<void(Criterion&)>& body) {
  Criterion c;
  c.id = id;
  c.label = label;
  c.limit_s = limit_s;
  auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  c.elapsed_s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (c.limit_s > 0 && c.elapsed_s > c.limit_s) {
    c.pass = false;
    c.detail += (c.detail.empty() ? "" : "; ") + std::string("runtime ") +
                std::to_string(c.elapsed_s) + "s exceeds " +
                std::to_string(c.limit_s) + "s";
  }
  if (!c.pass) ++failures;
  std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", c.pass ? "PASS" : "FAIL",
              c.id, c.label.c_str(), c.elapsed_s, c.detail.empty() ? "" : " -- ",
              c.detail.c_str());
  std::fflush(stdout);
}

u64 draw(std::mt19937_64& rng, u64 n) {
  u64 lim = ~0ull - ~0ull % n;
  u64 x;
  do {
    x = rng();
  } while (x >= lim);
  return x % n;
}

SplitCurve<Rational> curve25() {
  return SplitCurve<Rational>(Rational(0), Rational(5), Rational(-5));
}

CurvePoint<Rational> gen25() {
  return CurvePoint<Rational>::affine(Rational(-4), Rational(6));
}

QuarticCurve<Rational> regression_quartic() {
  return parse_quartic("0,1/4,1/9,-1");
}

// 1. Group-law correctness: exhaustive identity/inverse and sampled-or-
// exhaustive associativity over every split curve mod p in {7, 11, 13, 17}.
void criterion1(Criterion& c) {
  std::mt19937_64 rng(0xACC0001);
  u64 curves = 0, triples = 0;
  for (u64 p : {7ull, 11ull, 13ull, 17ull}) {
    for (u64 e1 = 0; e1 < p; ++e1)
      for (u64 e2 = e1 + 1; e2 < p; ++e2)
        for (u64 e3 = e2 + 1; e3 < p; ++e3) {
          SplitCurve<FpElement> curve(fp(e1, p), fp(e2, p), fp(e3, p));
          auto pts = enumerate_points(curve);
          ++curves;
          for (const auto& a : pts) {
            c.expect(add_unchecked(curve, a, CurvePoint<FpElement>::infinity()) == a,
                     "identity failed");
            c.expect(add_unchecked(curve, a, neg(a)).inf, "inverse failed");
          }
          u64 cube = pts.size() * pts.size() * pts.size();
          if (cube <= 10000) {
            for (const auto& a : pts)
              for (const auto& b : pts)
                for (const auto& d : pts) {
                  ++triples;
                  bool ok = add_unchecked(curve, add_unchecked(curve, a, b), d) ==
                            add_unchecked(curve, a, add_unchecked(curve, b, d));
                  ok = ok && add_unchecked(curve, a, b) == add_unchecked(curve, b, a);
                  c.expect(ok, "associativity failed");
                  if (!ok) return;
                }
          } else {
            for (int it = 0; it < 10000; ++it) {
              const auto& a = pts[draw(rng, pts.size())];
              const auto& b = pts[draw(rng, pts.size())];
              const auto& d = pts[draw(rng, pts.size())];
              ++triples;
              bool ok = add_unchecked(curve, add_unchecked(curve, a, b), d) ==
                        add_unchecked(curve, a, add_unchecked(curve, b, d));
              ok = ok && add_unchecked(curve, a, b) == add_unchecked(curve, b, a);
              c.expect(ok, "associativity failed");
              if (!ok) return;
            }
          }
        }
  }
  std::ostringstream os;
  os << curves << " curves, " << triples << " triples";
  c.detail = os.str();
}

// 2. Model round trip over the y^2 = x(x-5t^2)(x+5t^2) family.
void criterion2(Criterion& c) {
  std::mt19937_64 rng(0xACC0002);
  auto base = curve25();
  auto p0 = gen25();
  std::vector<CurvePoint<Rational>> pool;
  auto torsion = torsion_subgroup_q(base);
  for (int n = 1; n <= 12; ++n) {
    auto pn = scalar_mul(base, n, p0);
    for (const auto& t : torsion) {
      auto q = add(base, pn, t);
      if (!q.inf) pool.push_back(q);
      auto nq = neg(q);
      if (!nq.inf) pool.push_back(nq);
    }
  }
  u64 done = 0;
  while (done < 1000) {
    long lam = 1 + static_cast<long>(draw(rng, 5));
    Rational l2(lam * lam), l3(static_cast<long>(lam) * lam * lam);
    SplitCurve<Rational> curve(Rational(0), Rational(5) * l2, Rational(-5) * l2);
    CurvePoint<Rational> sp0 = CurvePoint<Rational>::affine(p0.x * l2, p0.y * l3);
    auto q = to_quartic(curve, sp0);
    const auto& src = pool[draw(rng, pool.size())];
    CurvePoint<Rational> pt = CurvePoint<Rational>::affine(src.x * l2, src.y * l3);
    if (pt.x == sp0.x) continue;  // base-point fiber is off the map's domain
    auto qp = weierstrass_to_quartic_point(q, pt);
    c.expect(qp.v * qp.v == q.f(qp.u), "quartic identity failed");
    auto back = quartic_to_weierstrass_point(q, qp);
    c.expect(back == pt, "round trip not identical");
    ++done;
    if (!c.pass) return;
  }
  c.detail = std::to_string(done) + " points";
}

// 3. Coordinate-change identity suite: 100 random instances plus the
// regression case.
void criterion3(Criterion& c) {
  std::mt19937_64 rng(0xACC0003);
  auto reg = to_quartic(curve25(), gen25());
  c.expect(reg.c[0] == 0 && reg.c[1] == make_rational(1, 4) &&
               reg.c[2] == make_rational(1, 9) && reg.c[3] == Rational(-1),
           "regression c mismatch");
  auto rnd_rational = [&](long m) {
    long n = -m + static_cast<long>(draw(rng, 2 * static_cast<u64>(m) + 1));
    long d = 1 + static_cast<long>(draw(rng, static_cast<u64>(m)));
    return make_rational(n, d);
  };
  int made = 0;
  while (made < 100) {
    Rational x0 = rnd_rational(20);
    Rational y0 = rnd_rational(20);
    Rational e1 = rnd_rational(20);
    Rational e2 = rnd_rational(20);
    if (y0 == 0 || e1 == 0 || e2 == 0 || e1 == e2) continue;
    Rational e3 = -(y0 * y0) / (e1 * e2);
    if (e3 == 0 || e3 == e1 || e3 == e2) continue;
    SplitCurve<Rational> curve(e1 + x0, e2 + x0, e3 + x0);
    auto base = CurvePoint<Rational>::affine(x0, y0);
    if (!on_curve(curve, base)) {
      c.expect(false, "constructed base point off curve");
      return;
    }
    auto q = to_quartic(curve, base);
    const auto& prov = *q.provenance;
    c.expect(prov.y0 * prov.y0 == -(prov.shifted_roots[0] * prov.shifted_roots[1] *
                                    prov.shifted_roots[2]),
             "y0^2 = -e1'e2'e3' failed");
    for (int j = 0; j < 3; ++j)
      c.expect(q.c[j + 1] * prov.shifted_roots[j] == Rational(1), "c_i != 1/e_i'");
    if (!c.pass) return;
    ++made;
  }
  c.detail = "100 random instances + regression";
}

// 4. Monochromatic-line engine over F_p.
void criterion4(Criterion& c) {
  std::mt19937_64 rng(0xACC0004);
  auto primes = primes_in_range(100, 10000);
  std::vector<u64> sample;
  for (int i = 0; i < 50; ++i) sample.push_back(primes[draw(rng, primes.size())]);

  auto random_spec = [&](u64 p, size_t n) {
    while (true) {
      try {
        std::array<FpElement, 4> cs;
        std::set<u64> used;
        for (int i = 0; i < 4; ++i) {
          u64 v;
          do {
            v = draw(rng, p);
          } while (used.count(v));
          used.insert(v);
          cs[i] = fp(v, p);
        }
        std::vector<FpElement> b;
        for (size_t j = 0; j < n; ++j) b.push_back(fp(1 + draw(rng, p - 1), p));
        return ColoringSpec<FpElement>(fp(draw(rng, p), p), std::move(b),
                                       std::move(cs));
      } catch (const Error&) {
      }
    }
  };

  u64 succ = 0, total = 0, matched = 0;
  for (u64 p : sample) {
    // success-rate instance, N in [4, 10]
    size_t n = 4 + draw(rng, 7);
    auto spec = random_spec(p, n);
    ++total;
    auto line = find_monochromatic_line(spec);
    if (line) {
      ++succ;
      QuarticCurve<FpElement> q(spec.c());
      auto r = line_to_point(q, spec, *line);
      c.expect(r.v * r.v == q.f(r.u), "v^2 = f(u) failed");
    }

    // oracle-match instance, N in [1, 6]
    size_t n2 = 1 + draw(rng, 6);
    auto spec2 = random_spec(p, n2);
    std::optional<CombinatorialLine> expect;
    enumerate_lines(n2, [&](const CombinatorialLine& l) {
      auto vals = line_values(spec2, l);
      std::optional<Residuosity> first;
      for (const auto& v : vals) {
        if (v.value == 0) return true;
        auto cls = fp_square_class(v);
        if (!first)
          first = cls;
        else if (!(cls == *first))
          return true;
      }
      expect = l;
      return false;
    });
    auto got = find_monochromatic_line(spec2);
    bool same = got.has_value() == expect.has_value() &&
                (!got || (got->v == expect->v && got->w == expect->w));
    if (same) ++matched;
    c.expect(same, "exhaustive oracle mismatch at p=" + std::to_string(p));
  }
  c.expect(succ * 100 >= total * 95,
           "success rate " + std::to_string(succ) + "/" + std::to_string(total));
  std::ostringstream os;
  os << succ << "/" << total << " found, " << matched << "/" << total
     << " oracle-matched";
  c.detail = os.str();
}

// 5. Multiquadratic density sweep with the epsilon and Weil bounds.
void criterion5(Criterion& c) {
  std::mt19937_64 rng(0xACC0005);
  auto q = regression_quartic();
  u64 instances = 0;
  u64 eps_failures = 0;
  std::string first_counterexample;
  for (u64 p : primes_in_range(100, 5000)) {
    FpField f(p);
    auto fbar = reduce_quartic(q, f);
    // root sets of composed forms must differ; equal sets collapse the
    // multiquadratic cover and void the stated deviation constant
    auto root_set = [&](const LinearFormFp& fm) {
      std::set<u64> roots;
      for (const auto& ci : fbar.c) {
        u64 rhs = f.sub(f.neg(ci.value), fm.b % p);
        roots.insert(f.div(rhs, fm.a % p));
      }
      return roots;
    };
    for (size_t n : {1u, 2u, 3u}) {
      for (int set_i = 0; set_i < 10; ++set_i) {
        std::vector<LinearFormFp> forms;
        std::vector<std::set<u64>> seen;
        while (forms.size() < n) {
          LinearFormFp fm{1 + draw(rng, p - 1), draw(rng, p)};
          auto roots = root_set(fm);
          bool dup = false;
          for (const auto& s : seen) dup = dup || s == roots;
          if (dup) continue;
          seen.push_back(std::move(roots));
          forms.push_back(fm);
        }
        auto rep = multiquadratic_count(fbar, forms);
        ++instances;
        if (!rep.pass) {
          ++eps_failures;
          if (first_counterexample.empty()) {
            std::ostringstream os;
            os << "count " << rep.count << " <= eps*p = "
               << rational_str(rep.epsilon_bound) << " at p=" << p << " n=" << n
               << " forms";
            for (const auto& fm : forms) os << " (" << fm.a << "," << fm.b << ")";
            first_counterexample = os.str();
          }
        }
        if (!rep.weil_ok) {
          c.expect(false, "Weil deviation at p=" + std::to_string(p));
          return;
        }
      }
    }
  }
  // The epsilon lower bound holds only for p large enough; at the small end
  // of the sweep with n = 3 the count fluctuates below p/16 on real
  // instances, so this check reports the exact counterexample when it fires.
  c.expect(eps_failures == 0,
           std::to_string(eps_failures) + " instances below the eps bound; " +
               "first: " + first_counterexample);
  std::ostringstream os;
  os << instances << " instances, Weil bound clean";
  c.detail += (c.detail.empty() ? "" : "; ") + os.str();
}

// 6. mE index: |2E(F_p)| = |E(F_p)| / 4 on full-2-torsion reductions.
void criterion6(Criterion& c) {
  std::mt19937_64 rng(0xACC0006);
  auto primes = primes_in_range(29, 1500);
  int done = 0;
  while (done < 20) {
    u64 p = primes[draw(rng, primes.size())];
    u64 e1 = draw(rng, p), e2 = draw(rng, p), e3 = draw(rng, p);
    if (e1 == e2 || e1 == e3 || e2 == e3) continue;
    SplitCurve<FpElement> curve(fp(e1, p), fp(e2, p), fp(e3, p));
    MSubgroup me(curve, 2);
    c.expect(me.size() * 4 == me.group_order(), "|2E| != |E|/4");
    if (!c.pass) return;
    ++done;
  }
  c.detail = "20 instances";
}

// 7. Avoidance witnesses with exhaustive re-verification.
void criterion7(Criterion& c) {
  std::mt19937_64 rng(0xACC0007);
  auto q = regression_quartic();
  u64 found = 0, total = 0;
  for (u64 p : primes_in_range(200, 2000)) {
    FpField f(p);
    auto fbar = reduce_quartic(q, f);
    QuarticGroup group(fbar);
    std::vector<std::vector<LinearFormFp>> sigmas;
    for (int j = 0; j < 2; ++j) {
      std::vector<LinearFormFp> s;
      for (int i = 0; i < 2; ++i)
        s.push_back(LinearFormFp{1 + draw(rng, p - 1), draw(rng, p)});
      sigmas.push_back(std::move(s));
    }
    ++total;
    auto w = avoidance_search(group, sigmas, 2, 4000, rng());
    if (!w) continue;
    // independent exhaustive re-verification; a false witness fails the run
    MSubgroup me(group.weierstrass(), 2);
    auto [ok, checked] = avoidance_verify(group, sigmas, me, w->u_tuple);
    c.expect(ok, "false witness at p=" + std::to_string(p));
    c.expect(checked == w->checked_tuples, "tuple count mismatch");
    if (!c.pass) return;
    ++found;
  }
  c.expect(found * 10 >= total * 8,
           "witness rate " + std::to_string(found) + "/" + std::to_string(total));
  c.detail = std::to_string(found) + "/" + std::to_string(total) + " witnesses";
}

// 8. Trace descent over full forge runs.
void criterion8(Criterion& c) {
  ForgeBudget budget;
  budget.restarts = 10000;
  auto out = forge(curve25(), gen25(), budget, 0xACC0008);
  for (const auto& r : out.results) {
    c.expect(r.traced.has_value(), "missing trace");
    if (r.traced) c.expect(on_curve(curve25(), *r.traced), "trace off curve");
  }
  // companion run on a curve where the pipeline demonstrably produces
  // points, so the 100% claim is exercised non-vacuously
  SplitCurve<Rational> eng(make_rational(1, 6), make_rational(1, 16),
                           make_rational(-2, 3));
  auto p0 = CurvePoint<Rational>::affine(Rational(0), make_rational(1, 12));
  ForgeBudget small;
  small.restarts = 2000;
  auto out2 = forge(eng, p0, small, 0xACC0008);
  c.expect(!out2.results.empty(), "engineered companion produced nothing");
  for (const auto& r : out2.results) {
    c.expect(r.traced.has_value() && on_curve(eng, *r.traced),
             "companion trace invalid");
  }
  std::ostringstream os;
  os << out.results.size() << " traces on x^3-25x (10^4 restarts), "
     << out2.results.size() << " on the engineered curve; all rational";
  c.detail = os.str();
}

// 9. Certifier soundness.
void criterion9(Criterion& c) {
  auto curve = curve25();
  auto p = gen25();
  auto p2 = scalar_mul(curve, 2, p);

  auto cert1 = certify(curve, {p, p2});
  c.expect(cert1.verdict == Verdict::RelationFound &&
               cert1.relation == std::vector<Integer>{Integer(2), Integer(-1)},
           "{P,2P} planted relation missed");

  auto cert2 = certify(curve, {p, p2, add(curve, p, p2)});
  c.expect(cert2.verdict == Verdict::RelationFound &&
               cert2.relation ==
                   std::vector<Integer>{Integer(1), Integer(1), Integer(-1)},
           "{P,Q,P+Q} planted relation missed");

  auto cert3 = certify(curve, {p});
  c.expect(cert3.verdict == Verdict::Independent && cert3.b_certified == 10000,
           "single generator not Independent(10^4)");

  // cross-validation against exhaustive enumeration inside E(F_101)
  SplitCurve<FpElement> cf(fp(0, 101), fp(1, 101), fp(100, 101));
  auto pts = enumerate_points(cf);
  std::mt19937_64 rng(0xACC0009);
  for (int it = 0; it < 6; ++it) {
    const auto& a = pts[1 + draw(rng, pts.size() - 1)];
    const auto& b = pts[1 + draw(rng, pts.size() - 1)];
    const long bound = 5;
    auto res = relation_search_mod_p(cf, {a, b}, bound, it);
    std::vector<std::vector<Integer>> expect;
    for (long x = -bound; x <= bound; ++x)
      for (long y = -bound; y <= bound; ++y) {
        if (x == 0 && y == 0) continue;
        if (add_unchecked(cf, scalar_mul_unchecked(cf, Integer(x), a),
                          scalar_mul_unchecked(cf, Integer(y), b))
                .inf)
          expect.push_back({Integer(x), Integer(y)});
      }
    std::sort(expect.begin(), expect.end());
    c.expect(res.relations == expect, "relation set != exhaustive enumeration");
  }
  c.detail = "planted relations, Independent(10^4), F_101 cross-check";
}

// 10. End-to-end growth pipeline with a schema-valid report.
void criterion10(Criterion& c) {
  ForgeBudget budget;
  CertifyOptions opts;
  opts.bound = 500;
  auto rep = rank_growth_report(curve25(), gen25(), {2000, 10000}, budget, opts,
                                0xACC000A);
  bool reached = !rep.independent.empty();
  bool documented_empty = rep.outcome == "empty_forge" &&
                          rep.forge_stats.restarts_used >= 12000 &&
                          rep.forge_stats.lines_scanned > 0;
  c.expect(reached || documented_empty,
           "neither an independent point nor a documented empty forge");
  Json payload = growth_report_json(rep);
  std::string why;
  c.expect(qtest::schema_valid(payload, "growth_payload.schema.json", &why),
           "schema: " + why);

  // the engineered curve exercises the reach-size->=1 arm of the criterion
  SplitCurve<Rational> eng(make_rational(1, 6), make_rational(1, 16),
                           make_rational(-2, 3));
  auto p0 = CurvePoint<Rational>::affine(Rational(0), make_rational(1, 12));
  auto rep2 = rank_growth_report(eng, p0, {400, 1200}, budget, opts, 0xACC000B);
  c.expect(rep2.outcome == "independent_point" &&
               rep2.rows.back().independent_size >= 1,
           "engineered curve did not certify an independent forged point");
  c.expect(qtest::schema_valid(growth_report_json(rep2),
                               "growth_payload.schema.json", &why),
           "schema (engineered): " + why);
  c.detail = "x^3-25x outcome: " + rep.outcome +
             "; engineered outcome: " + rep2.outcome;
}

}  // namespace

int main() {
  std::printf("acceptance suite (toolkit-level criteria)\n");
  run(1, "group law exhaustive over F_p in {7,11,13,17}", 10, criterion1);
  run(2, "model round trip, 1000 points on the x^3-25x family", 5, criterion2);
  run(3, "coordinate-change identities, 100 random (curve, P0)", 0, criterion3);
  run(4, "monochromatic-line engine over F_p, 50 primes", 60, criterion4);
  run(5, "multiquadratic density sweep p in [100,5000], n in {1,2,3}", 120,
      criterion5);
  run(6, "mE index |2E| = |E|/4, 20 instances", 0, criterion6);
  run(7, "avoidance witnesses k=2, m=2, n=2 over [200,2000]", 0, criterion7);
  run(8, "trace descent over forge runs", 0, criterion8);
  run(9, "certifier soundness", 60, criterion9);
  run(10, "end-to-end growth report", 0, criterion10);
  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures;
}
