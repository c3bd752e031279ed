#pragma once

#include <concepts>
#include <optional>

#include "qforge/fp.hpp"
#include "qforge/quad_ext.hpp"
#include "qforge/square_class.hpp"

namespace qf {

// The generic curve/coloring code is written against this trait bundle.
// "like" parameters carry the context a bare value type cannot: the modulus
// for F_p, the extension for Q(sqrt d).
template <class F>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static Rational zero(const Rational&) { return Rational(0); }
  static Rational one(const Rational&) { return Rational(1); }
  static Rational from_int(const Rational&, long n) { return Rational(n); }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct FieldOps<FpElement> {
  static FpElement zero(const FpElement& like) { return FpElement{0, like.p}; }
  static FpElement one(const FpElement& like) { return FpElement{1 % like.p, like.p}; }
  static FpElement from_int(const FpElement& like, long n) {
    i64 v = n % static_cast<i64>(like.p);
    if (v < 0) v += static_cast<i64>(like.p);
    return FpElement{static_cast<u64>(v), like.p};
  }
  static bool is_zero(const FpElement& x) { return x.value == 0; }
};

template <>
struct FieldOps<QuadExt> {
  static QuadExt zero(const QuadExt&) { return QuadExt(Rational(0)); }
  static QuadExt one(const QuadExt&) { return QuadExt(Rational(1)); }
  static QuadExt from_int(const QuadExt&, long n) { return QuadExt(Rational(n)); }
  static bool is_zero(const QuadExt& x) { return x.a == 0 && x.b == 0; }
};

template <class F>
concept FieldElement = requires(const F& x, const F& y) {
  { x + y } -> std::convertible_to<F>;
  { x - y } -> std::convertible_to<F>;
  { x* y } -> std::convertible_to<F>;
  { x / y } -> std::convertible_to<F>;
  { -x } -> std::convertible_to<F>;
  { x == y } -> std::convertible_to<bool>;
  { FieldOps<F>::zero(x) } -> std::convertible_to<F>;
  { FieldOps<F>::is_zero(x) } -> std::convertible_to<bool>;
};

// Coloring alphabet per field: square classes over Q, residuosity over F_p.
template <class F>
struct ColorTraits;

template <>
struct ColorTraits<Rational> {
  using Color = SquareClass;
  // nullopt marks the degenerate (zero) value.
  static std::optional<Color> color(const Rational& x) {
    if (x == 0) return std::nullopt;
    return squarefree_part(x);
  }
};

template <>
struct ColorTraits<FpElement> {
  using Color = Residuosity;
  static std::optional<Color> color(const FpElement& x) {
    if (x.value == 0) return std::nullopt;
    return fp_square_class(x);
  }
};

template <class F>
concept ColorableField = FieldElement<F> && requires(const F& x) {
  { ColorTraits<F>::color(x) };
};

}  // namespace qf
