#include "qforge/fp.hpp"

#include "qforge/factor.hpp"

namespace qf {

namespace {

void check_same_field(const FpElement& a, const FpElement& b) {
  if (a.p != b.p) raise(Errc::InvalidArgument, "mixed moduli in F_p arithmetic");
}

}  // namespace

u64 powmod(u64 base, u64 exp, u64 p) {
  u64 r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, p);
    base = mulmod(base, base, p);
    exp >>= 1;
  }
  return r;
}

FpField::FpField(u64 p) : p_(p) {
  if (p < 3 || (p & 1) == 0 || p >= (1ull << 63) || !is_prime_u64(p))
    raise(Errc::InvalidArgument, "modulus must be an odd prime below 2^63");
}

u64 FpField::inv(u64 a) const {
  if (a == 0) raise(Errc::InvalidArgument, "inverse of zero");
  return pow(a, p_ - 2);
}

u64 FpField::reduce_int(const Integer& n) const {
  Integer r = n % Integer(static_cast<unsigned long>(p_));
  if (r < 0) r += static_cast<unsigned long>(p_);
  return r.get_ui();
}

std::optional<u64> FpField::reduce_rational(const Rational& r) const {
  u64 d = reduce_int(den(r));
  if (d == 0) return std::nullopt;
  return mul(reduce_int(num(r)), inv(d));
}

int FpField::legendre(u64 a) const {
  a %= p_;
  if (a == 0) return 0;
  return pow(a, (p_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<u64> FpField::sqrt(u64 a) const {
  a %= p_;
  if (a == 0) return 0;
  if (legendre(a) != 1) return std::nullopt;
  u64 r;
  if (p_ % 4 == 3) {
    r = pow(a, (p_ + 1) / 4);
  } else {
    // Tonelli-Shanks.
    u64 q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = 2;
    while (legendre(z) != -1) ++z;
    u64 m = s;
    u64 c = pow(z, q);
    u64 t = pow(a, q);
    r = pow(a, (q + 1) / 2);
    while (t != 1) {
      u64 t2 = t;
      u64 i = 0;
      while (t2 != 1) {
        t2 = mul(t2, t2);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
  }
  return std::min(r, p_ - r);
}

FpElement operator+(const FpElement& a, const FpElement& b) {
  check_same_field(a, b);
  return FpElement{addmod(a.value, b.value, a.p), a.p};
}

FpElement operator-(const FpElement& a, const FpElement& b) {
  check_same_field(a, b);
  return FpElement{submod(a.value, b.value, a.p), a.p};
}

FpElement operator*(const FpElement& a, const FpElement& b) {
  check_same_field(a, b);
  return FpElement{mulmod(a.value, b.value, a.p), a.p};
}

FpElement operator/(const FpElement& a, const FpElement& b) {
  check_same_field(a, b);
  if (b.value == 0) raise(Errc::InvalidArgument, "division by zero in F_p");
  u64 inv = powmod(b.value, a.p - 2, a.p);
  return FpElement{mulmod(a.value, inv, a.p), a.p};
}

FpElement operator-(const FpElement& a) {
  return FpElement{a.value == 0 ? 0 : a.p - a.value, a.p};
}

Residuosity fp_square_class(const FpElement& x) {
  if (x.value == 0) raise(Errc::DegenerateColor, "square class of zero");
  return powmod(x.value, (x.p - 1) / 2, x.p) == 1 ? Residuosity::QR
                                                  : Residuosity::NonQR;
}

FpElement fp_sqrt(const FpElement& x) {
  auto r = FpField(x.p).sqrt(x.value);
  if (!r) raise(Errc::NotASquare, "fp_sqrt of a non-residue");
  return FpElement{*r, x.p};
}

SquareTable::SquareTable(const FpField& f) {
  u64 p = f.p();
  bits_.assign((p + 63) / 64, 0);
  for (u64 t = 1; t <= (p - 1) / 2; ++t) {
    u64 s = mulmod(t, t, p);
    bits_[s >> 6] |= 1ull << (s & 63);
  }
}

SqrtTable::SqrtTable(const FpField& f) : p_(f.p()) {
  roots_.assign(p_, p_);
  roots_[0] = 0;
  for (u64 t = 1; t <= (p_ - 1) / 2; ++t) {
    roots_[mulmod(t, t, p_)] = t;
  }
}

}  // namespace qf
