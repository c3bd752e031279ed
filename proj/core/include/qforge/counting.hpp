#pragma once

#include <vector>

#include "qforge/curve.hpp"

namespace qf {

// |E(F_p)| by character sum over x in F_p, O(p); Hasse bound asserted.
u64 count_points(const SplitCurve<FpElement>& c);

// Every point of E(F_p), infinity first. O(p) time and memory.
std::vector<CurvePoint<FpElement>> enumerate_points(const SplitCurve<FpElement>& c);

inline bool hasse_bound_ok(u64 count, u64 p) {
  // |N - (p+1)|^2 <= 4p, kept in integers.
  i64 d = static_cast<i64>(count) - static_cast<i64>(p + 1);
  u128 dd = static_cast<u128>(d < 0 ? -d : d);
  return dd * dd <= static_cast<u128>(4) * p;
}

}  // namespace qf
