#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qforge/coloring.hpp"
#include "qforge/quartic.hpp"

namespace qf {

// A monochromatic line converted to curve points: u = (l + r_v)/s_w, then
// f(u) = d * s^2 gives the pair (u, +-s sqrt(d)) on the quartic. When the
// quartic knows its source Weierstrass model, the point is mapped there and
// traced down to Q.
struct ForgeResult {
  CombinatorialLine line;
  Rational u;
  Integer d = 1;        // extension: 1 means the pair is rational
  Rational v_scale;     // v = v_scale * sqrt(d), v_scale > 0
  std::optional<CurvePoint<Rational>> traced;  // absent without provenance
  // spec echo
  Rational l;
  std::vector<Rational> b;
};

ForgeResult line_to_point(const QuarticCurve<Rational>& q,
                          const ColoringSpec<Rational>& spec,
                          const CombinatorialLine& line);

// F_p variant: a monochromatic line always lands on a residue (the common
// color to the fourth power), so the pair lives in F_p itself.
struct FpForgeResult {
  CombinatorialLine line;
  FpElement u;
  FpElement v;  // canonical root
};

FpForgeResult line_to_point(const QuarticCurve<FpElement>& q,
                            const ColoringSpec<FpElement>& spec,
                            const CombinatorialLine& line);

struct ForgeBudget {
  u64 restarts = 10000;
  size_t n_max = 10;
  // Skip restarts whose full line enumeration would exceed this many lines;
  // keeps large-N restarts from starving the schedule.
  u64 line_cap = 20000;
  long coeff_bound = 9;  // |b_j| <= coeff_bound
};

struct ForgeStats {
  u64 restarts_used = 0;
  u64 lines_scanned = 0;
  u64 monochromatic_hits = 0;
  u64 degenerate_skips = 0;
};

struct ForgeOutcome {
  std::vector<ForgeResult> results;  // deduplicated by u
  ForgeStats stats;
  bool empty() const { return results.empty(); }
};

// The pipeline: to_quartic, randomized (l, b, N) restarts with iterative
// deepening on N, monochromatic-line search, line-to-point conversion,
// trace. Over Q the color set is infinite, so an empty outcome is an
// ordinary result, not an error.
ForgeOutcome forge(const SplitCurve<Rational>& curve, const CurvePoint<Rational>& p0,
                   const ForgeBudget& budget, u64 seed);

// Linear-family scan: which forms a_i t0 + b_i hit u-coordinates of points.
struct LinearFormQ {
  Rational a, b;  // a != 0
};

struct ScanEval {
  size_t form_index;
  Integer d;  // square class of f(u); 1 = rational point, 0 = root of f
};

struct ScanRow {
  Rational t0;
  std::vector<ScanEval> evals;  // one per form
  std::vector<size_t> hits;     // forms with d = 1, d = designated, or d = 0
};

// A hit means f(a_i t0 + b_i) is a square (class 1), vanishes, or lands in
// the designated class; the full class column is reported alongside.
std::vector<ScanRow> scan_linear_family(const QuarticCurve<Rational>& q,
                                        const std::vector<LinearFormQ>& forms,
                                        long t_min, long t_max,
                                        const Integer& designated_d = Integer(1));

struct LinearFormFp {
  u64 a = 1, b = 0;  // a != 0 mod p
};

struct FpScanRow {
  u64 t0;
  std::vector<size_t> hits;  // indices with f(a_i t0 + b_i) in QR (or zero)
};

std::vector<FpScanRow> scan_linear_family(const QuarticCurve<FpElement>& q,
                                          const std::vector<LinearFormFp>& forms,
                                          u64 t_min, u64 t_max);

}  // namespace qf
