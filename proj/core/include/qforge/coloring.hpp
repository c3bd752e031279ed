#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "qforge/field.hpp"

namespace qf {

// Direction w in {0,1}^N (nonzero) and base v in {0,1,2,3}^N with v_j = 0
// wherever w_j = 1; the line is {v, v+w, v+2w, v+3w}.
struct CombinatorialLine {
  std::vector<std::uint8_t> v;
  std::vector<std::uint8_t> w;

  bool operator==(const CombinatorialLine& o) const = default;

  std::vector<std::uint8_t> point(int k) const {
    std::vector<std::uint8_t> out(v.size());
    for (size_t j = 0; j < v.size(); ++j)
      out[j] = static_cast<std::uint8_t>(v[j] + k * w[j]);
    return out;
  }
};

inline bool line_valid(const CombinatorialLine& line, size_t n) {
  if (line.v.size() != n || line.w.size() != n || n == 0) return false;
  bool nonzero = false;
  for (size_t j = 0; j < n; ++j) {
    if (line.w[j] > 1 || line.v[j] > 3) return false;
    if (line.w[j]) {
      nonzero = true;
      if (line.v[j] != 0) return false;
    }
  }
  return nonzero;
}

// Enumerates lines by |w| ascending, then w lexicographic, then v
// lexicographic; returns false from the callback to stop. The first
// monochromatic line in this order is the search result, which makes runs
// reproducible.
template <class Fn>
bool enumerate_lines(size_t n, Fn&& fn) {
  // n <= 20 in practice; masks fit in 32 bits.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int wa = __builtin_popcount(a), wb = __builtin_popcount(b);
    if (wa != wb) return wa < wb;
    // lexicographic on (w_1, ..., w_N), bit j-1 = coordinate j
    std::uint32_t ra = 0, rb = 0;
    for (int i = 0; i < 32; ++i) {
      ra = (ra << 1) | ((a >> i) & 1);
      rb = (rb << 1) | ((b >> i) & 1);
    }
    return ra < rb;
  });
  CombinatorialLine line;
  line.v.assign(n, 0);
  line.w.assign(n, 0);
  for (std::uint32_t m : masks) {
    std::vector<size_t> free_coords;
    for (size_t j = 0; j < n; ++j) {
      line.w[j] = (m >> j) & 1;
      line.v[j] = 0;
      if (!line.w[j]) free_coords.push_back(j);
    }
    size_t k = free_coords.size();
    std::vector<std::uint8_t> digits(k, 0);
    while (true) {
      for (size_t i = 0; i < k; ++i) line.v[free_coords[i]] = digits[i];
      if (!fn(static_cast<const CombinatorialLine&>(line))) return false;
      // next v, lexicographic (last coordinate fastest)
      size_t i = k;
      while (i > 0) {
        if (++digits[i - 1] < 4) break;
        digits[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  return true;
}

inline u64 line_count(size_t n) {  // 5^n - 4^n
  u64 p5 = 1, p4 = 1;
  for (size_t i = 0; i < n; ++i) {
    p5 *= 5;
    p4 *= 4;
  }
  return p5 - p4;
}

// The coloring data (l, b_1..b_N, c_0..c_3): xi(i_1..i_N) = l + sum b_j c_{i_j}.
// No non-empty subsequence of b may sum to zero; checked exhaustively at
// construction (N <= 20).
template <ColorableField F>
class ColoringSpec {
 public:
  using Color = typename ColorTraits<F>::Color;

  ColoringSpec(F l, std::vector<F> b, std::array<F, 4> c)
      : l_(std::move(l)), b_(std::move(b)), c_(std::move(c)) {
    using Ops = FieldOps<F>;
    if (b_.empty()) raise(Errc::InvalidArgument, "coloring needs N >= 1");
    if (b_.size() > 20)
      raise(Errc::InvalidArgument, "subsequence-sum check supports N <= 20");
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (c_[i] == c_[j])
          raise(Errc::InvalidArgument, "coloring constants must be distinct");
    const size_t n = b_.size();
    // exhaustive subset sums
    std::vector<F> sums{Ops::zero(l_)};
    sums.reserve(1u << n);
    for (size_t j = 0; j < n; ++j) {
      if (Ops::is_zero(b_[j]))
        raise(Errc::InvalidArgument, "coloring coefficients must be nonzero");
      size_t sz = sums.size();
      for (size_t i = 0; i < sz; ++i) {
        F s = sums[i] + b_[j];
        if (Ops::is_zero(s))
          raise(Errc::InvalidArgument, "a subsequence of b sums to zero");
        sums.push_back(std::move(s));
      }
    }
  }

  size_t n() const { return b_.size(); }
  const F& l() const { return l_; }
  const std::vector<F>& b() const { return b_; }
  const std::array<F, 4>& c() const { return c_; }

  F value_at(const std::vector<std::uint8_t>& point) const {
    F acc = l_;
    for (size_t j = 0; j < b_.size(); ++j) acc = acc + b_[j] * c_[point[j]];
    return acc;
  }

  // r_v over coordinates with w_j = 0.
  F r_v(const CombinatorialLine& line) const {
    using Ops = FieldOps<F>;
    F acc = Ops::zero(l_);
    for (size_t j = 0; j < b_.size(); ++j)
      if (!line.w[j]) acc = acc + b_[j] * c_[line.v[j]];
    return acc;
  }

  // s_w = sum of b_j over w_j = 1; nonzero by the subsequence-sum invariant.
  F s_w(const CombinatorialLine& line) const {
    using Ops = FieldOps<F>;
    F acc = Ops::zero(l_);
    for (size_t j = 0; j < b_.size(); ++j)
      if (line.w[j]) acc = acc + b_[j];
    return acc;
  }

 private:
  F l_;
  std::vector<F> b_;
  std::array<F, 4> c_;
};

// The spec operation: square class of l + sum b_j c_{i_j}; the zero value is
// the degenerate color and the caller must move l.
template <ColorableField F>
typename ColorTraits<F>::Color xi_eval(const ColoringSpec<F>& spec,
                                       const std::vector<std::uint8_t>& point) {
  if (point.size() != spec.n())
    raise(Errc::InvalidArgument, "xi_eval: wrong arity");
  auto color = ColorTraits<F>::color(spec.value_at(point));
  if (!color) raise(Errc::DegenerateColor, "xi_eval: value is zero");
  return *color;
}

// (l + r_v) + s_w * c_k for k = 0..3; consecutive differences are
// s_w (c1 - c0), s_w (c2 - c1), s_w (c3 - c2).
template <ColorableField F>
std::array<F, 4> line_values(const ColoringSpec<F>& spec,
                             const CombinatorialLine& line) {
  if (!line_valid(line, spec.n()))
    raise(Errc::InvalidArgument, "line_values: invalid line");
  F base = spec.l() + spec.r_v(line);
  F s = spec.s_w(line);
  return {base + s * spec.c()[0], base + s * spec.c()[1], base + s * spec.c()[2],
          base + s * spec.c()[3]};
}

// True iff the four line values are nonzero and share a color.
template <ColorableField F>
bool line_monochromatic(const ColoringSpec<F>& spec, const CombinatorialLine& line) {
  auto vals = line_values(spec, line);
  auto first = ColorTraits<F>::color(vals[0]);
  if (!first) return false;
  for (int k = 1; k < 4; ++k) {
    auto c = ColorTraits<F>::color(vals[k]);
    if (!c || !(*c == *first)) return false;
  }
  return true;
}

// First monochromatic line in canonical enumeration order, or nullopt after
// exhausting all 5^N - 4^N lines.
template <ColorableField F>
std::optional<CombinatorialLine> find_monochromatic_line(const ColoringSpec<F>& spec) {
  std::optional<CombinatorialLine> hit;
  enumerate_lines(spec.n(), [&](const CombinatorialLine& line) {
    if (line_monochromatic(spec, line)) {
      hit = line;
      return false;
    }
    return true;
  });
  return hit;
}

}  // namespace qf
