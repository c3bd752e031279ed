#include "qforge/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "qforge/counting.hpp"
#include "qforge/factor.hpp"

namespace qf {

namespace {

using FpPoint = CurvePoint<FpElement>;
using PointSet = std::unordered_set<FpPoint, FpPointHash>;
using PointIndex = std::unordered_map<FpPoint, u64, FpPointHash>;

u64 point_order(const SplitCurve<FpElement>& c, const FpPoint& pt, u64 group_order) {
  u64 n = group_order;
  for (const auto& [q, e] : factorize_u64(group_order)) {
    for (int i = 0; i < e; ++i) {
      u64 cand = n / q;
      if (n % q == 0 && scalar_mul_unchecked(c, Integer(static_cast<unsigned long>(cand)), pt).inf)
        n = cand;
      else
        break;
    }
  }
  return n;
}

u64 subgroup_size(const SplitCurve<FpElement>& c, const std::vector<FpPoint>& gens) {
  PointSet seen;
  std::vector<FpPoint> queue;
  seen.insert(FpPoint::infinity());
  queue.push_back(FpPoint::infinity());
  while (!queue.empty()) {
    FpPoint e = queue.back();
    queue.pop_back();
    for (const auto& g : gens) {
      FpPoint s = add_unchecked(c, e, g);
      if (seen.insert(s).second) queue.push_back(s);
    }
  }
  return seen.size();
}

// Everything certify needs at one prime.
struct PrimeContext {
  u64 p;
  SplitCurve<FpElement> curve;
  u64 group_order;
  PointSet torsion_images;
  std::vector<FpPoint> images;
  std::vector<u64> orders;
  // multiples[i][t] = t * image_i; inverse[i] maps the same points back to t
  std::vector<std::vector<FpPoint>> multiples;
  std::vector<PointIndex> inverse;

  FpPoint image_multiple(size_t i, const Integer& a) const {
    unsigned long m = static_cast<unsigned long>(orders[i]);
    Integer r = a % m;
    if (r < 0) r += m;
    return multiples[i][r.get_ui()];
  }

  bool vector_in_torsion(const std::vector<Integer>& a) const {
    FpPoint sum = FpPoint::infinity();
    for (size_t i = 0; i < a.size(); ++i)
      sum = add_unchecked(curve, sum, image_multiple(i, a[i]));
    return torsion_images.count(sum) > 0;
  }
};

PrimeContext build_context(const SplitCurve<Rational>& curve,
                           const std::vector<CurvePoint<Rational>>& points,
                           const std::vector<CurvePoint<Rational>>& torsion, u64 p) {
  FpField f(p);
  PrimeContext ctx{p,
                   reduce_curve(curve, f),
                   0,
                   {},
                   {},
                   {},
                   {},
                   {}};
  ctx.group_order = count_points(ctx.curve);
  for (const auto& t : torsion) ctx.torsion_images.insert(reduce_point(curve, t, f));
  for (const auto& pt : points) ctx.images.push_back(reduce_point(curve, pt, f));
  for (const auto& img : ctx.images) {
    u64 ord = point_order(ctx.curve, img, ctx.group_order);
    ctx.orders.push_back(ord);
    std::vector<FpPoint> mult;
    PointIndex inv;
    mult.reserve(ord);
    FpPoint acc = FpPoint::infinity();
    for (u64 t = 0; t < ord; ++t) {
      mult.push_back(acc);
      inv.emplace(acc, t);
      acc = add_unchecked(ctx.curve, acc, img);
    }
    ctx.multiples.push_back(std::move(mult));
    ctx.inverse.push_back(std::move(inv));
  }
  return ctx;
}

// Primes for the reduction system: smallest good-reduction primes above
// max(p_min, largest coordinate denominator) that keep every point, and the
// torsion, reducible.
std::vector<u64> select_primes(const SplitCurve<Rational>& curve,
                               const std::vector<CurvePoint<Rational>>& points,
                               const std::vector<CurvePoint<Rational>>& torsion,
                               u64 p_min, size_t count, const std::vector<u64>& skip) {
  Integer largest_den = 1;
  auto scan = [&](const CurvePoint<Rational>& pt) {
    if (pt.inf) return;
    largest_den = std::max(largest_den, Integer(den(pt.x)));
    largest_den = std::max(largest_den, Integer(den(pt.y)));
  };
  for (const auto& pt : points) scan(pt);
  u64 start = p_min;
  if (largest_den.fits_ulong_p() && largest_den.get_ui() <= 1000000)
    start = std::max<u64>(start, largest_den.get_ui());

  auto reducible = [&](u64 p) {
    FpField f(p);
    if (!good_reduction(curve, f)) return false;
    for (const auto& pt : points) {
      if (pt.inf) continue;
      if (!f.reduce_rational(pt.x) || !f.reduce_rational(pt.y)) return false;
    }
    for (const auto& pt : torsion) {
      if (pt.inf) continue;
      if (!f.reduce_rational(pt.x) || !f.reduce_rational(pt.y)) return false;
    }
    return true;
  };

  std::vector<u64> primes;
  u64 p = start < 3 ? 2 : start;
  while (primes.size() < count) {
    p = next_prime_above(p);
    if (std::find(skip.begin(), skip.end(), p) != skip.end()) continue;
    if (reducible(p)) primes.push_back(p);
  }
  return primes;
}

void canonicalize(std::vector<Integer>& a) {
  for (const Integer& x : a) {
    if (x > 0) return;
    if (x < 0) {
      for (Integer& y : a) y = -y;
      return;
    }
  }
}

struct SurvivorSet {
  std::set<std::vector<Integer>> vecs;
  void insert(std::vector<Integer> a) {
    canonicalize(a);
    vecs.insert(std::move(a));
  }
};

Integer max_norm(const std::vector<Integer>& a) {
  Integer m = 0;
  for (const Integer& x : a) m = std::max(m, Integer(abs(x)));
  return m;
}

// Exact check over Q: does sum a_i P_i land in the torsion subgroup?
bool verify_rational_relation(const SplitCurve<Rational>& curve,
                              const std::vector<CurvePoint<Rational>>& points,
                              const std::vector<CurvePoint<Rational>>& torsion,
                              const std::vector<Integer>& a) {
  CurvePoint<Rational> sum = CurvePoint<Rational>::infinity();
  for (size_t i = 0; i < points.size(); ++i) {
    sum = add_unchecked(curve, sum, scalar_mul_unchecked(curve, a[i], points[i]));
  }
  return std::find(torsion.begin(), torsion.end(), sum) != torsion.end();
}

long effective_bound(const Integer& requested, size_t k, u64 work_cap) {
  long b = requested.fits_slong_p() ? requested.get_si() : 1000000;
  if (k <= 2) return b;
  double per_level = std::pow(static_cast<double>(work_cap), 1.0 / static_cast<double>(k - 1));
  long cap = std::max<long>(4, static_cast<long>(per_level / 2.0));
  return std::min(b, cap);
}

// Enumerates every vector in [-b, b]^k passing all per-prime torsion-image
// membership tests and feeds it to sink; sink returns false to stop early.
// Coordinates before the last two are walked recursively; the final two are
// solved from residue classes at a pivot prime.
class BoxScanner {
 public:
  BoxScanner(const std::vector<PrimeContext>& ctxs, long b,
             const std::function<bool(const std::vector<Integer>&)>& sink)
      : ctxs_(ctxs), b_(b), sink_(sink), k_(ctxs.front().images.size()) {}

  void run() {
    if (k_ == 1) {
      scan_k1();
      return;
    }
    std::vector<FpPoint> partial(ctxs_.size(), FpPoint::infinity());
    coeffs_.assign(k_, Integer(0));
    descend(0, partial);
  }

 private:
  void scan_k1() {
    for (long a = 1; a <= b_ && !stopped_; ++a) {
      bool ok = true;
      for (const auto& ctx : ctxs_) {
        u64 r = static_cast<u64>(a) % ctx.orders[0];
        if (!ctx.torsion_images.count(ctx.multiples[0][r])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::vector<Integer> v{Integer(a)};
        if (!sink_(v)) stopped_ = true;
      }
    }
  }

  void descend(size_t depth, std::vector<FpPoint>& partial) {
    if (stopped_) return;
    if (depth == k_ - 2) {
      solve_last_two(partial);
      return;
    }
    for (long a = -b_; a <= b_ && !stopped_; ++a) {
      coeffs_[depth] = a;
      std::vector<FpPoint> next(ctxs_.size());
      for (size_t c = 0; c < ctxs_.size(); ++c)
        next[c] = add_unchecked(ctxs_[c].curve, partial[c],
                                ctxs_[c].image_multiple(depth, coeffs_[depth]));
      descend(depth + 1, next);
    }
  }

  void solve_last_two(const std::vector<FpPoint>& partial) {
    const size_t i = k_ - 2, j = k_ - 1;
    size_t pivot = 0;
    for (size_t c = 1; c < ctxs_.size(); ++c)
      if (ctxs_[c].orders[j] > ctxs_[pivot].orders[j]) pivot = c;
    const PrimeContext& pc = ctxs_[pivot];
    const u64 ordj = pc.orders[j];

    for (long ai = -b_; ai <= b_ && !stopped_; ++ai) {
      coeffs_[i] = ai;
      FpPoint base =
          add_unchecked(pc.curve, partial[pivot], pc.image_multiple(i, coeffs_[i]));
      for (const auto& target : pc.torsion_images) {
        FpPoint need = add_unchecked(pc.curve, target, neg(base));
        auto it = pc.inverse[j].find(need);
        if (it == pc.inverse[j].end()) continue;
        long r = static_cast<long>(it->second);
        long first = -b_ + ((r - (-b_)) % static_cast<long>(ordj) +
                            static_cast<long>(ordj)) %
                               static_cast<long>(ordj);
        for (long aj = first; aj <= b_ && !stopped_; aj += static_cast<long>(ordj)) {
          coeffs_[j] = aj;
          if (all_zero()) continue;
          bool ok = true;
          for (size_t c = 0; c < ctxs_.size() && ok; ++c) {
            const PrimeContext& ctx = ctxs_[c];
            FpPoint sum = add_unchecked(
                ctx.curve,
                add_unchecked(ctx.curve, partial[c], ctx.image_multiple(i, coeffs_[i])),
                ctx.image_multiple(j, coeffs_[j]));
            ok = ctx.torsion_images.count(sum) > 0;
          }
          if (ok && !sink_(coeffs_)) stopped_ = true;
        }
      }
    }
  }

  bool all_zero() const {
    for (const Integer& x : coeffs_) {
      if (x != 0) return false;
    }
    return true;
  }

  const std::vector<PrimeContext>& ctxs_;
  long b_;
  const std::function<bool(const std::vector<Integer>&)>& sink_;
  size_t k_;
  std::vector<Integer> coeffs_;
  bool stopped_ = false;
};

}  // namespace

std::vector<ReductionProfile> reduction_profiles(
    const SplitCurve<Rational>& curve, const std::vector<CurvePoint<Rational>>& points,
    const std::vector<u64>& primes) {
  std::vector<ReductionProfile> out;
  for (size_t i = 0; i < points.size(); ++i) {
    ReductionProfile prof;
    prof.point_id = i;
    for (u64 p : primes) {
      FpField f(p);
      SplitCurve<FpElement> cp = reduce_curve(curve, f);
      prof.images.push_back(
          {p, reduce_point(curve, points[i], f), count_points(cp)});
    }
    out.push_back(std::move(prof));
  }
  return out;
}

RelationSearchResult relation_search_mod_p(
    const SplitCurve<FpElement>& curve,
    const std::vector<CurvePoint<FpElement>>& images, long bound, u64 order_seed) {
  const size_t k = images.size();
  if (k == 0) raise(Errc::InvalidArgument, "relation search needs points");
  for (const auto& img : images)
    if (!on_curve(curve, img)) raise(Errc::NotOnCurve, "image not on curve");
  const u64 side = 2 * static_cast<u64>(bound) + 1;
  const size_t h = (k + 1) / 2;
  u128 half_size = 1;
  for (size_t i = 0; i < h; ++i) half_size *= side;
  if (half_size > (1u << 22))
    raise(Errc::InvalidArgument, "relation search half-space too large");

  // Enumeration order is a seeded rotation; the result set is order-free.
  u64 total_first = static_cast<u64>(half_size);
  u64 rot = total_first ? splitmix64(order_seed) % total_first : 0;

  auto decode = [&](u64 code, size_t arity, size_t offset, std::vector<long>& out) {
    for (size_t i = 0; i < arity; ++i) {
      out[offset + i] = static_cast<long>(code % side) - bound;
      code /= side;
    }
  };

  std::unordered_map<FpPoint, std::vector<u64>, FpPointHash> table;
  std::vector<long> vec(k, 0);
  for (u64 step = 0; step < total_first; ++step) {
    u64 code = (step + rot) % total_first;
    decode(code, h, 0, vec);
    FpPoint sum = FpPoint::infinity();
    for (size_t i = 0; i < h; ++i)
      sum = add_unchecked(curve, sum,
                          scalar_mul_unchecked(curve, Integer(vec[i]), images[i]));
    table[sum].push_back(code);
  }

  RelationSearchResult result;
  const size_t rest = k - h;
  u64 total_second = 1;
  for (size_t i = 0; i < rest; ++i) total_second *= side;
  for (u64 code = 0; code < total_second; ++code) {
    decode(code, rest, h, vec);
    FpPoint sum = FpPoint::infinity();
    for (size_t i = h; i < k; ++i)
      sum = add_unchecked(curve, sum,
                          scalar_mul_unchecked(curve, Integer(vec[i]), images[i]));
    auto it = table.find(neg(sum));
    if (it == table.end()) continue;
    for (u64 first_code : it->second) {
      decode(first_code, h, 0, vec);
      bool zero = true;
      for (long x : vec)
        if (x != 0) zero = false;
      if (zero) continue;
      std::vector<Integer> rel(k);
      for (size_t i = 0; i < k; ++i) rel[i] = vec[i];
      result.relations.push_back(std::move(rel));
    }
  }
  std::sort(result.relations.begin(), result.relations.end());
  u64 group = count_points(curve);
  result.index = Integer(static_cast<unsigned long>(group / subgroup_size(curve, images)));
  return result;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Independent: return "independent";
    case Verdict::RelationFound: return "relation_found";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

IndependenceCertificate certify(const SplitCurve<Rational>& curve,
                                const std::vector<CurvePoint<Rational>>& points,
                                const CertifyOptions& options) {
  if (options.bound < 1)
    raise(Errc::InvalidArgument, "certify: coefficient bound must be positive");
  IndependenceCertificate cert;
  cert.points = points;
  cert.b_requested = options.bound;
  cert.b_certified = options.bound;
  for (const auto& pt : points)
    if (!on_curve(curve, pt)) raise(Errc::NotOnCurve, "certify: point not on curve");
  if (points.empty()) return cert;  // vacuously independent

  const size_t k = points.size();
  std::vector<CurvePoint<Rational>> torsion = torsion_subgroup_q(curve);

  std::vector<u64> primes =
      select_primes(curve, points, torsion, options.p_min, options.prime_count, {});
  std::vector<PrimeContext> ctxs;
  for (u64 p : primes) ctxs.push_back(build_context(curve, points, torsion, p));
  cert.primes = primes;
  for (const auto& ctx : ctxs)
    cert.per_prime_index.push_back(Integer(static_cast<unsigned long>(
        ctx.group_order / subgroup_size(ctx.curve, ctx.images))));

  // Sorts candidate relations smallest-first and verifies them exactly over
  // Q. Coefficients above the cap would force point heights quadratic in the
  // coefficient, so only small representatives get the exact check.
  const Integer verify_cap = 64;
  std::set<std::vector<Integer>> undecided;
  auto resolve = [&](const SurvivorSet& found) -> std::optional<std::vector<Integer>> {
    std::vector<std::vector<Integer>> ordered(found.vecs.begin(), found.vecs.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const std::vector<Integer>& a, const std::vector<Integer>& b) {
                Integer na = max_norm(a), nb = max_norm(b);
                if (na != nb) return na < nb;
                return a < b;
              });
    for (const auto& v : ordered) {
      if (undecided.count(v)) continue;
      if (max_norm(v) <= verify_cap &&
          verify_rational_relation(curve, points, torsion, v))
        return v;
      undecided.insert(v);  // spurious at the current primes, or too large
    }
    return std::nullopt;
  };

  // Pass 1 (shell): tiny vectors only; resolves planted relations without
  // paying for a full box scan.
  long beff = effective_bound(options.bound, k, options.work_cap);
  cert.b_certified = beff;
  long shell = std::min<long>(options.shell_radius, beff);
  if (shell > 0 && k >= 2) {
    SurvivorSet small_hits;
    std::vector<Integer> a(k, Integer(-shell));
    while (true) {
      bool zero = true;
      for (const auto& x : a)
        if (x != 0) zero = false;
      if (!zero) {
        bool ok = true;
        for (const auto& ctx : ctxs) {
          if (!ctx.vector_in_torsion(a)) {
            ok = false;
            break;
          }
        }
        if (ok) small_hits.insert(a);
      }
      size_t i = k;
      while (i > 0) {
        if (++a[i - 1] <= shell) break;
        a[i - 1] = -shell;
        --i;
      }
      if (i == 0) break;
    }
    if (auto rel = resolve(small_hits)) {
      cert.verdict = Verdict::RelationFound;
      cert.relation = *rel;
      return cert;
    }
  }

  // Pass 2 (box): every vector up to the certified bound whose reductions
  // land in the torsion image at all primes. Collection is capped; hitting
  // the cap means a dense relation family, which the resolution step below
  // sorts out via its smallest member.
  SurvivorSet survivors;
  bool scan_truncated = false;
  {
    const size_t collect_cap = 500000;
    std::function<bool(const std::vector<Integer>&)> sink =
        [&](const std::vector<Integer>& a) {
          survivors.insert(a);
          if (survivors.vecs.size() >= collect_cap) {
            scan_truncated = true;
            return false;
          }
          return true;
        };
    BoxScanner scanner(ctxs, beff, sink);
    scanner.run();
  }
  if (auto rel = resolve(survivors)) {
    cert.verdict = Verdict::RelationFound;
    cert.relation = *rel;
    return cert;
  }
  if (scan_truncated) {
    // cannot certify a box that was not fully scanned
    cert.verdict = Verdict::Inconclusive;
    return cert;
  }

  // Pass 3: spurious survivors vanish once enough primes are in play; an
  // undecided survivor at the budget is reported, not guessed at.
  while (!undecided.empty() && cert.primes.size() < options.prime_budget) {
    u64 p = select_primes(curve, points, torsion, cert.primes.back() + 1, 1,
                          cert.primes)[0];
    PrimeContext ctx = build_context(curve, points, torsion, p);
    cert.primes.push_back(p);
    cert.per_prime_index.push_back(Integer(static_cast<unsigned long>(
        ctx.group_order / subgroup_size(ctx.curve, ctx.images))));
    for (auto it = undecided.begin(); it != undecided.end();) {
      if (!ctx.vector_in_torsion(*it))
        it = undecided.erase(it);
      else
        ++it;
    }
  }
  if (!undecided.empty()) {
    cert.verdict = Verdict::Inconclusive;
    return cert;
  }
  cert.verdict = Verdict::Independent;
  return cert;
}

GrowthReport rank_growth_report(const SplitCurve<Rational>& curve,
                                const CurvePoint<Rational>& p0,
                                const std::vector<u64>& schedule,
                                const ForgeBudget& budget_template,
                                const CertifyOptions& certify_options, u64 seed) {
  GrowthReport report;
  report.schedule = schedule;
  std::vector<CurvePoint<Rational>> torsion = torsion_subgroup_q(curve);
  u64 forged_total = 0;
  std::vector<CurvePoint<Rational>> seen;

  for (size_t stage = 0; stage < schedule.size(); ++stage) {
    ForgeBudget budget = budget_template;
    budget.restarts = schedule[stage];
    ForgeOutcome outcome = forge(curve, p0, budget, splitmix64(seed) ^ stage);
    report.forge_stats.restarts_used += outcome.stats.restarts_used;
    report.forge_stats.lines_scanned += outcome.stats.lines_scanned;
    report.forge_stats.monochromatic_hits += outcome.stats.monochromatic_hits;
    report.forge_stats.degenerate_skips += outcome.stats.degenerate_skips;
    forged_total += outcome.results.size();

    for (const auto& res : outcome.results) {
      if (!res.traced || res.traced->inf) continue;
      const CurvePoint<Rational>& q = *res.traced;
      if (std::find(seen.begin(), seen.end(), q) != seen.end()) continue;
      seen.push_back(q);
      if (std::find(torsion.begin(), torsion.end(), q) != torsion.end()) continue;
      std::vector<CurvePoint<Rational>> candidate = report.independent;
      candidate.push_back(q);
      IndependenceCertificate cert = certify(curve, candidate, certify_options);
      if (cert.verdict == Verdict::Independent) report.independent = candidate;
    }
    report.rows.push_back(GrowthRow{forged_total, report.independent.size()});
  }

  if (forged_total == 0)
    report.outcome = "empty_forge";
  else if (report.independent.empty())
    report.outcome = "torsion_only";
  else
    report.outcome = "independent_point";
  return report;
}

}  // namespace qf
