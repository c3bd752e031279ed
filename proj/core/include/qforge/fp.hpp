#pragma once

#include <optional>
#include <vector>

#include "qforge/numeric.hpp"

namespace qf {

// Arithmetic context for F_p, p an odd prime below 2^63 (products fit u128).
class FpField {
 public:
  explicit FpField(u64 p);

  u64 p() const { return p_; }

  u64 add(u64 a, u64 b) const { return addmod(a, b, p_); }
  u64 sub(u64 a, u64 b) const { return submod(a, b, p_); }
  u64 mul(u64 a, u64 b) const { return mulmod(a, b, p_); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 pow(u64 a, u64 e) const { return powmod(a, e, p_); }
  u64 inv(u64 a) const;
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

  u64 reduce_int(const Integer& n) const;
  // Fails (nullopt) when p divides the denominator.
  std::optional<u64> reduce_rational(const Rational& r) const;

  // Euler criterion: +1 residue, -1 non-residue, 0 for zero.
  int legendre(u64 a) const;

  // Canonical square root in [0, (p-1)/2]; nullopt for non-residues.
  std::optional<u64> sqrt(u64 a) const;

 private:
  u64 p_;
};

// One field element; value < p. Small value type so points/curves over F_p
// can share the generic curve templates with Q and Q(sqrt d).
struct FpElement {
  u64 value = 0;
  u64 p = 0;

  bool operator==(const FpElement& o) const = default;
};

inline FpElement fp(u64 value, u64 p) { return FpElement{value % p, p}; }

FpElement operator+(const FpElement& a, const FpElement& b);
FpElement operator-(const FpElement& a, const FpElement& b);
FpElement operator*(const FpElement& a, const FpElement& b);
FpElement operator/(const FpElement& a, const FpElement& b);
FpElement operator-(const FpElement& a);

enum class Residuosity { QR, NonQR };

// Spec operation: QR iff x^((p-1)/2) = 1. Zero is the degenerate color.
Residuosity fp_square_class(const FpElement& x);

// Canonical root in [0,(p-1)/2]; sqrt(0) = 0. Non-residues are an error.
FpElement fp_sqrt(const FpElement& x);

// Bitset of nonzero quadratic residues; y = sqrt-exists table for scans.
class SquareTable {
 public:
  explicit SquareTable(const FpField& f);

  bool is_qr(u64 a) const {  // nonzero residues only
    return (bits_[a >> 6] >> (a & 63)) & 1;
  }

 private:
  std::vector<u64> bits_;
};

// Table of canonical square roots: root_of(a) in [0,(p-1)/2] or p when a is
// a non-residue. O(p) memory; used by point enumeration.
class SqrtTable {
 public:
  explicit SqrtTable(const FpField& f);

  u64 p() const { return p_; }
  bool has_root(u64 a) const { return roots_[a] != p_; }
  u64 root(u64 a) const { return roots_[a]; }

 private:
  u64 p_;
  std::vector<u64> roots_;
};

}  // namespace qf
