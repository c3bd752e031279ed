#pragma once

#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qforge/counting.hpp"
#include "qforge/forge.hpp"
#include "qforge/quartic.hpp"
#include "qforge/reduction.hpp"

namespace qf {

// Reduction of a rational quartic mod p; collisions among the roots mean
// f-bar is not squarefree.
QuarticCurve<FpElement> reduce_quartic(const QuarticCurve<Rational>& q,
                                       const FpField& f);

struct DensityReport {
  u64 p = 0;
  size_t n = 0;
  u64 count = 0;
  Rational epsilon_bound;  // eps * p with eps = 2^-(n+1)
  Rational heuristic;      // p / 2^n
  bool pass = false;       // count > eps * p
  bool weil_ok = false;    // |count - p/2^n| <= 4 * 2^n * sqrt(p)
};

// Exact count of u0 in F_p with f(a_i u0 + b_i) a nonzero square for all i,
// by full scan. Duplicate forms are deduplicated (the condition is
// idempotent); n = 0 counts everything.
DensityReport multiquadratic_count(const QuarticCurve<FpElement>& fbar,
                                   const std::vector<LinearFormFp>& forms);

// The affine patch v^2 = f(u) glued to its split Weierstrass model
// Y^2 = prod (X - D/d_i), X = D x, x = -1/(u + c0), D = -d1 d2 d3 with
// d_i = c_i - c0. The map is a bijection U(F_p) + {two points at infinity}
// -> E(F_p), with (-c0, 0) landing on the group identity.
class QuarticGroup {
 public:
  explicit QuarticGroup(QuarticCurve<FpElement> q);

  const QuarticCurve<FpElement>& quartic() const { return quartic_; }
  const SplitCurve<FpElement>& weierstrass() const { return model_; }
  const FpField& field() const { return field_; }
  u64 group_order() const { return order_; }  // |E(F_p)| = |U(F_p)| + 2

  CurvePoint<FpElement> to_group(const QuarticPoint<FpElement>& pt) const;

  // Both square roots per admissible u (one when f(u) = 0).
  std::vector<QuarticPoint<FpElement>> points_with_u(const FpElement& u) const;

 private:
  QuarticCurve<FpElement> quartic_;
  FpField field_;
  FpElement dprod_;  // D
  SplitCurve<FpElement> model_;
  SqrtTable roots_;
  u64 order_;
};

// Membership oracle for mE(F_p) = {mP}; requires all m-torsion rational,
// checked by m | p-1, m^2 | |E|, and an exhaustive m-torsion count.
class MSubgroup {
 public:
  MSubgroup(const SplitCurve<FpElement>& curve, u64 m);

  u64 m() const { return m_; }
  u64 group_order() const { return group_order_; }
  u64 size() const { return elements_.size(); }
  bool contains(const CurvePoint<FpElement>& pt) const {
    return elements_.count(pt) > 0;
  }

 private:
  u64 m_;
  u64 group_order_;
  std::unordered_set<CurvePoint<FpElement>, FpPointHash> elements_;
};

// All compatible point tuples: u(P_j) must appear in Sigma_j(u_j).
std::vector<std::vector<QuarticPoint<FpElement>>> compatible_tuples(
    const QuarticGroup& group, const std::vector<std::vector<LinearFormFp>>& sigmas,
    const std::vector<u64>& u_tuple);

struct AvoidanceWitness {
  u64 p = 0;
  u64 m = 0;
  std::vector<u64> u_tuple;
  u64 checked_tuples = 0;  // compatible tuples examined by verification
};

struct AvoidanceStats {
  u64 tuples_tried = 0;
  bool exhaustive = false;
};

// True iff every non-empty subsequence of every compatible tuple sums
// outside mE(F_p); also requires at least one compatible tuple so the
// witness is not vacuous. Returns the number of tuples examined.
std::pair<bool, u64> avoidance_verify(const QuarticGroup& group,
                                      const std::vector<std::vector<LinearFormFp>>& sigmas,
                                      const MSubgroup& me,
                                      const std::vector<u64>& u_tuple);

// Searches u-tuples lexicographically for p <= 500, randomly within budget
// otherwise. Found witnesses are re-verified exhaustively before return.
// NotFound is a value, never an error: an m with no rational m-torsion at
// this prime cannot have witnesses and comes back empty.
std::optional<AvoidanceWitness> avoidance_search(
    const QuarticGroup& group, const std::vector<std::vector<LinearFormFp>>& sigmas,
    u64 m, u64 budget, u64 seed, AvoidanceStats* stats = nullptr);

// Prime sweep: density reports and optional avoidance witnesses across a
// prime range, deterministic per (config, seed) regardless of thread count.
struct SweepConfig {
  u64 prime_min = 100;
  u64 prime_max = 1000;
  size_t n = 2;       // forms per density instance
  size_t k = 0;       // 0 disables the witness search
  u64 m = 2;
  u64 seed = 0;
  u64 budget = 2000;  // witness search budget per prime
  unsigned threads = 1;
};

struct PrimeRecord {
  u64 p = 0;
  bool skipped = false;  // bad reduction or inapplicable m at this prime
  std::optional<DensityReport> density;
  std::optional<AvoidanceWitness> witness;
  bool witness_searched = false;
};

struct SweepAggregate {
  size_t primes_swept = 0;
  size_t density_pass = 0;
  size_t weil_pass = 0;
  // count / (p / 2^n), extremes and mean over swept primes
  Rational min_ratio, max_ratio, mean_ratio;
  size_t witness_attempts = 0;
  size_t witness_found = 0;
};

struct SweepOutput {
  std::vector<PrimeRecord> records;  // sorted by p
  SweepAggregate aggregate;
};

SweepOutput prime_sweep(const QuarticCurve<Rational>& q, const SweepConfig& cfg);

}  // namespace qf
