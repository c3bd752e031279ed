#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qforge/forge.hpp"
#include "qforge/reduction.hpp"
#include "qforge/torsion.hpp"

namespace qf {

// Reduction data for one rational point across the working primes.
struct ReductionProfile {
  size_t point_id = 0;
  struct PerPrime {
    u64 p;
    CurvePoint<FpElement> image;
    u64 group_order;
  };
  std::vector<PerPrime> images;
};

std::vector<ReductionProfile> reduction_profiles(
    const SplitCurve<Rational>& curve, const std::vector<CurvePoint<Rational>>& points,
    const std::vector<u64>& primes);

// All integer vectors a, ||a||_inf <= bound, with sum a_i * P_i = infinity in
// E(F_p), by meet-in-the-middle enumeration over half-vectors. order_seed
// permutes the enumeration order without affecting the result set. Also
// reports the index [E(F_p) : <images>].
struct RelationSearchResult {
  std::vector<std::vector<Integer>> relations;  // sorted lexicographically
  Integer index;
};

RelationSearchResult relation_search_mod_p(
    const SplitCurve<FpElement>& curve,
    const std::vector<CurvePoint<FpElement>>& images, long bound,
    u64 order_seed = 0);

enum class Verdict { Independent, RelationFound, Inconclusive };

const char* verdict_name(Verdict v);

struct CertifyOptions {
  Integer bound = Integer(10000);  // requested coefficient bound B
  size_t prime_count = 20;         // reduction primes in the first pass
  size_t prime_budget = 40;        // total primes allowed incl. retries
  // Larger groups keep box residue classes sparse and spurious survivors rare.
  u64 p_min = 200;
  // Exhausting the box costs ~(2B+1)^(k-1); for k >= 3 the certified bound
  // shrinks to keep within this work budget (reported in the certificate).
  u64 work_cap = 6000000;
  long shell_radius = 30;  // cheap small-vector pass run first
};

struct IndependenceCertificate {
  std::vector<CurvePoint<Rational>> points;
  Integer b_requested;
  Integer b_certified;  // box fully excluded up to this bound
  Verdict verdict = Verdict::Independent;
  std::vector<Integer> relation;  // set iff RelationFound, verified over Q
  std::vector<u64> primes;
  std::vector<Integer> per_prime_index;
};

// Intersects relation sets across reduction primes. A surviving vector is
// verified exactly over Q (sum must land in the torsion subgroup); vectors
// that fail verification trigger more primes, and an undecided survivor at
// the prime budget yields an explicit Inconclusive verdict.
IndependenceCertificate certify(const SplitCurve<Rational>& curve,
                                const std::vector<CurvePoint<Rational>>& points,
                                const CertifyOptions& options = {});

struct GrowthRow {
  u64 forged_total = 0;
  size_t independent_size = 0;
};

struct GrowthReport {
  std::vector<u64> schedule;  // cumulative restart budgets
  std::vector<GrowthRow> rows;
  std::string outcome;  // "independent_point", "torsion_only", "empty_forge"
  ForgeStats forge_stats;
  std::vector<CurvePoint<Rational>> independent;
};

// Greedily grows a certified-independent set from forge output, stage by
// stage. An empty forge is an ordinary documented outcome.
GrowthReport rank_growth_report(const SplitCurve<Rational>& curve,
                                const CurvePoint<Rational>& p0,
                                const std::vector<u64>& schedule,
                                const ForgeBudget& budget_template,
                                const CertifyOptions& certify_options, u64 seed);

}  // namespace qf
