#include "qforge/density.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "qforge/factor.hpp"

namespace qf {

namespace {

u64 uniform_u64(std::mt19937_64& rng, u64 n) {
  u64 lim = ~0ull - ~0ull % n;
  u64 x;
  do {
    x = rng();
  } while (x >= lim);
  return x % n;
}

Rational pow2_rational(size_t n) {
  Integer d = 1;
  mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), n);
  return make_rational(Integer(1), d);
}

}  // namespace

QuarticCurve<FpElement> reduce_quartic(const QuarticCurve<Rational>& q,
                                       const FpField& f) {
  std::array<FpElement, 4> c;
  for (int i = 0; i < 4; ++i) {
    auto r = f.reduce_rational(q.c[i]);
    if (!r) raise(Errc::BadReductionF, "quartic constant has p in denominator");
    c[i] = fp(*r, f.p());
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (c[i] == c[j])
        raise(Errc::BadReductionF, "f-bar is not squarefree mod p");
  return QuarticCurve<FpElement>(c);
}

DensityReport multiquadratic_count(const QuarticCurve<FpElement>& fbar,
                                   const std::vector<LinearFormFp>& forms) {
  const u64 p = fbar.c[0].p;
  FpField f(p);
  std::vector<LinearFormFp> fs;
  for (const auto& fm : forms) {
    LinearFormFp g{fm.a % p, fm.b % p};
    if (g.a == 0) raise(Errc::InvalidArgument, "form must be non-constant mod p");
    if (std::find_if(fs.begin(), fs.end(), [&](const LinearFormFp& h) {
          return h.a == g.a && h.b == g.b;
        }) == fs.end())
      fs.push_back(g);
  }

  SquareTable squares(f);
  u64 c0 = fbar.c[0].value, c1 = fbar.c[1].value, c2 = fbar.c[2].value,
      c3 = fbar.c[3].value;
  auto f_at = [&](u64 u) {
    return f.mul(f.mul(f.add(u, c0), f.add(u, c1)),
                 f.mul(f.add(u, c2), f.add(u, c3)));
  };

  u64 count = 0;
  for (u64 u0 = 0; u0 < p; ++u0) {
    bool all = true;
    for (const auto& fm : fs) {
      u64 val = f_at(f.add(f.mul(fm.a, u0), fm.b));
      if (val == 0 || !squares.is_qr(val)) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }

  DensityReport rep;
  rep.p = p;
  rep.n = forms.size();
  rep.count = count;
  Rational pr(static_cast<unsigned long>(p));
  rep.epsilon_bound = pr * pow2_rational(rep.n + 1);
  rep.heuristic = pr * pow2_rational(rep.n);
  rep.pass = Rational(static_cast<unsigned long>(count)) > rep.epsilon_bound;
  // |count - p/2^n| <= 4*2^n*sqrt(p)  <=>  (count*2^n - p)^2 <= 16^(n+1) * p
  Integer lhs = Integer(static_cast<unsigned long>(count));
  mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), rep.n);
  lhs -= static_cast<unsigned long>(p);
  Integer rhs = 1;
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), 4 * (rep.n + 1));
  rhs *= static_cast<unsigned long>(p);
  rep.weil_ok = lhs * lhs <= rhs;
  return rep;
}

QuarticGroup::QuarticGroup(QuarticCurve<FpElement> q)
    : quartic_(std::move(q)),
      field_(quartic_.c[0].p),
      dprod_(fp(0, field_.p())),
      model_(
          // placeholder roots replaced below; SplitCurve validates distinctness
          fp(0, field_.p()), fp(1 % field_.p(), field_.p()),
          fp(2 % field_.p(), field_.p())),
      roots_(field_),
      order_(0) {
  const u64 p = field_.p();
  FpElement c0 = quartic_.c[0];
  std::array<FpElement, 3> d{quartic_.c[1] - c0, quartic_.c[2] - c0,
                             quartic_.c[3] - c0};
  FpElement dd = d[0] * d[1] * d[2];
  dprod_ = -dd;
  // roots D/d_i
  model_ = SplitCurve<FpElement>(dprod_ / d[0], dprod_ / d[1], dprod_ / d[2]);

  u64 affine = 0;
  for (u64 u = 0; u < p; ++u) {
    u64 fu = quartic_.f(fp(u, p)).value;
    if (fu == 0)
      affine += 1;
    else if (roots_.has_root(fu))
      affine += 2;
  }
  order_ = affine + 2;
  if (order_ != count_points(model_))
    raise(Errc::InternalError, "quartic/Weierstrass point counts disagree");
}

CurvePoint<FpElement> QuarticGroup::to_group(const QuarticPoint<FpElement>& pt) const {
  if (!on_quartic(quartic_, pt))
    raise(Errc::NotOnCurve, "to_group: not on the quartic");
  FpElement us = pt.u + quartic_.c[0];  // u'' with f = u''(u''+d1)(u''+d2)(u''+d3)
  if (us.value == 0) return CurvePoint<FpElement>::infinity();
  FpElement one = fp(1, field_.p());
  FpElement x = -(one / us);
  FpElement bx = dprod_ * x;
  FpElement by = dprod_ * pt.v * x * x;
  CurvePoint<FpElement> out = CurvePoint<FpElement>::affine(bx, by);
  if (!on_curve(model_, out))
    raise(Errc::InternalError, "quartic point mapped off the model");
  return out;
}

std::vector<QuarticPoint<FpElement>> QuarticGroup::points_with_u(
    const FpElement& u) const {
  std::vector<QuarticPoint<FpElement>> out;
  u64 fu = quartic_.f(u).value;
  if (!roots_.has_root(fu)) return out;
  u64 r = roots_.root(fu);
  out.push_back(QuarticPoint<FpElement>{u, fp(r, field_.p())});
  if (r != 0)
    out.push_back(QuarticPoint<FpElement>{u, fp(field_.p() - r, field_.p())});
  return out;
}

MSubgroup::MSubgroup(const SplitCurve<FpElement>& curve, u64 m) : m_(m) {
  if (m == 0) raise(Errc::InvalidArgument, "m must be positive");
  const u64 p = curve.e1.p;
  auto pts = enumerate_points(curve);
  group_order_ = pts.size();
  if ((p - 1) % m != 0)
    raise(Errc::TorsionNotRational, "m does not divide p - 1 (Weil pairing)");
  if (group_order_ % (m * m) != 0)
    raise(Errc::TorsionNotRational, "m^2 does not divide |E(F_p)|");
  u64 torsion_count = 0;
  Integer mi(static_cast<unsigned long>(m));
  for (const auto& pt : pts)
    if (scalar_mul_unchecked(curve, mi, pt).inf) ++torsion_count;
  if (torsion_count != m * m)
    raise(Errc::TorsionNotRational, "E[m] is not fully rational");
  for (const auto& pt : pts) elements_.insert(scalar_mul_unchecked(curve, mi, pt));
  if (elements_.size() * m * m != group_order_)
    raise(Errc::InternalError, "|mE| != |E| / m^2");
}

std::vector<std::vector<QuarticPoint<FpElement>>> compatible_tuples(
    const QuarticGroup& group, const std::vector<std::vector<LinearFormFp>>& sigmas,
    const std::vector<u64>& u_tuple) {
  if (sigmas.size() != u_tuple.size())
    raise(Errc::InvalidArgument, "compatible_tuples: arity mismatch");
  const FpField& f = group.field();
  std::vector<std::vector<QuarticPoint<FpElement>>> per_j;
  for (size_t j = 0; j < sigmas.size(); ++j) {
    std::vector<u64> us;
    for (const auto& fm : sigmas[j]) {
      if (fm.a % f.p() == 0)
        raise(Errc::InvalidArgument, "compatible_tuples: constant form");
      u64 u = f.add(f.mul(fm.a % f.p(), u_tuple[j] % f.p()), fm.b % f.p());
      if (std::find(us.begin(), us.end(), u) == us.end()) us.push_back(u);
    }
    std::vector<QuarticPoint<FpElement>> pts;
    for (u64 u : us)
      for (const auto& pt : group.points_with_u(fp(u, f.p()))) pts.push_back(pt);
    per_j.push_back(std::move(pts));
  }

  std::vector<std::vector<QuarticPoint<FpElement>>> tuples;
  u128 total = 1;
  for (const auto& v : per_j) {
    total *= v.empty() ? 0 : v.size();
    if (total == 0) return tuples;
    if (total > 1u << 20)
      raise(Errc::InvalidArgument, "compatible tuple space too large");
  }
  std::vector<size_t> idx(per_j.size(), 0);
  while (true) {
    std::vector<QuarticPoint<FpElement>> tup;
    tup.reserve(per_j.size());
    for (size_t j = 0; j < per_j.size(); ++j) tup.push_back(per_j[j][idx[j]]);
    tuples.push_back(std::move(tup));
    size_t j = per_j.size();
    while (j > 0) {
      if (++idx[j - 1] < per_j[j - 1].size()) break;
      idx[j - 1] = 0;
      --j;
    }
    if (j == 0) break;
  }
  return tuples;
}

std::pair<bool, u64> avoidance_verify(const QuarticGroup& group,
                                      const std::vector<std::vector<LinearFormFp>>& sigmas,
                                      const MSubgroup& me,
                                      const std::vector<u64>& u_tuple) {
  auto tuples = compatible_tuples(group, sigmas, u_tuple);
  if (tuples.empty()) return {false, 0};
  const size_t k = sigmas.size();
  const auto& curve = group.weierstrass();
  u64 checked = 0;
  for (const auto& tup : tuples) {
    ++checked;
    std::vector<CurvePoint<FpElement>> imgs;
    imgs.reserve(k);
    for (const auto& qp : tup) imgs.push_back(group.to_group(qp));
    for (u64 mask = 1; mask < (1ull << k); ++mask) {
      CurvePoint<FpElement> sum = CurvePoint<FpElement>::infinity();
      for (size_t j = 0; j < k; ++j)
        if ((mask >> j) & 1) sum = add_unchecked(curve, sum, imgs[j]);
      if (me.contains(sum)) return {false, checked};
    }
  }
  return {true, checked};
}

std::optional<AvoidanceWitness> avoidance_search(
    const QuarticGroup& group, const std::vector<std::vector<LinearFormFp>>& sigmas,
    u64 m, u64 budget, u64 seed, AvoidanceStats* stats) {
  if (sigmas.empty())
    raise(Errc::InvalidArgument, "avoidance search needs at least one sequence");
  const u64 p = group.field().p();
  const size_t k = sigmas.size();
  std::optional<MSubgroup> me_holder;
  try {
    me_holder.emplace(group.weierstrass(), m);
  } catch (const Error& e) {
    if (e.code() == Errc::TorsionNotRational) return std::nullopt;
    throw;
  }
  const MSubgroup& me = *me_holder;
  AvoidanceStats local;
  AvoidanceStats& st = stats ? *stats : local;

  auto try_tuple = [&](const std::vector<u64>& tuple) -> std::optional<AvoidanceWitness> {
    ++st.tuples_tried;
    auto [ok, checked] = avoidance_verify(group, sigmas, me, tuple);
    if (!ok) return std::nullopt;
    return AvoidanceWitness{p, m, tuple, checked};
  };

  if (p <= 500) {
    st.exhaustive = true;
    std::vector<u64> tuple(k, 0);
    while (true) {
      if (auto w = try_tuple(tuple)) return w;
      size_t j = k;
      while (j > 0) {
        if (++tuple[j - 1] < p) break;
        tuple[j - 1] = 0;
        --j;
      }
      if (j == 0) break;
    }
    return std::nullopt;
  }

  std::mt19937_64 rng(splitmix64(seed));
  for (u64 it = 0; it < budget; ++it) {
    std::vector<u64> tuple(k);
    for (size_t j = 0; j < k; ++j) tuple[j] = uniform_u64(rng, p);
    if (auto w = try_tuple(tuple)) return w;
  }
  return std::nullopt;
}

SweepOutput prime_sweep(const QuarticCurve<Rational>& q, const SweepConfig& cfg) {
  std::vector<u64> primes = primes_in_range(std::max<u64>(cfg.prime_min, 3), cfg.prime_max);
  SweepOutput out;
  out.records.resize(primes.size());

  auto run_prime = [&](size_t idx) {
    const u64 p = primes[idx];
    PrimeRecord rec;
    rec.p = p;
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(p)));
    try {
      FpField f(p);
      QuarticCurve<FpElement> fbar = reduce_quartic(q, f);
      std::vector<LinearFormFp> forms;
      for (size_t i = 0; i < cfg.n; ++i)
        forms.push_back(LinearFormFp{1 + uniform_u64(rng, p - 1), uniform_u64(rng, p)});
      rec.density = multiquadratic_count(fbar, forms);
      if (cfg.k > 0) {
        rec.witness_searched = true;
        QuarticGroup group(fbar);
        std::vector<std::vector<LinearFormFp>> sigmas;
        for (size_t j = 0; j < cfg.k; ++j) {
          std::vector<LinearFormFp> s;
          for (size_t i = 0; i < cfg.n; ++i)
            s.push_back(LinearFormFp{1 + uniform_u64(rng, p - 1), uniform_u64(rng, p)});
          sigmas.push_back(std::move(s));
        }
        rec.witness = avoidance_search(group, sigmas, cfg.m, cfg.budget, rng());
      }
    } catch (const Error& e) {
      if (e.code() == Errc::BadReductionF || e.code() == Errc::TorsionNotRational) {
        rec.skipped = true;
      } else {
        throw;
      }
    }
    out.records[idx] = std::move(rec);
  };

  unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    for (size_t i = 0; i < primes.size(); ++i) run_prime(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= primes.size()) return;
          run_prime(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  SweepAggregate agg;
  Rational sum_ratio = 0;
  bool first = true;
  for (const auto& rec : out.records) {
    if (rec.skipped || !rec.density) continue;
    ++agg.primes_swept;
    const auto& d = *rec.density;
    if (d.pass) ++agg.density_pass;
    if (d.weil_ok) ++agg.weil_pass;
    Rational ratio = Rational(static_cast<unsigned long>(d.count)) / d.heuristic;
    if (first || ratio < agg.min_ratio) agg.min_ratio = ratio;
    if (first || ratio > agg.max_ratio) agg.max_ratio = ratio;
    first = false;
    sum_ratio += ratio;
    if (rec.witness_searched) {
      ++agg.witness_attempts;
      if (rec.witness) ++agg.witness_found;
    }
  }
  if (agg.primes_swept > 0)
    agg.mean_ratio = sum_ratio / Rational(static_cast<unsigned long>(agg.primes_swept));
  out.aggregate = agg;
  return out;
}

}  // namespace qf
