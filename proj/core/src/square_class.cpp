#include "qforge/square_class.hpp"

#include <mutex>
#include <vector>

#include "qforge/factor.hpp"

namespace qf {

namespace {

// Smallest-prime-factor sieve for the fast path. Line searches over Q call
// squarefree_part on millions of small values; Pollard rho would dominate.
constexpr u64 kSieveLimit = 1u << 22;

using u32_t = std::uint32_t;

std::vector<u32_t> build_spf() {
  std::vector<u32_t> spf(kSieveLimit, 0);
  for (u64 i = 2; i < kSieveLimit; ++i) {
    if (spf[i] == 0) {
      for (u64 j = i; j < kSieveLimit; j += i) {
        if (spf[j] == 0) spf[j] = static_cast<u32_t>(i);
      }
    }
  }
  return spf;
}

const std::vector<u32_t>& spf_sieve() {
  static const std::vector<u32_t> sieve = build_spf();
  return sieve;
}

// Squarefree part of |n| for small n via the sieve.
u64 squarefree_small(u64 n) {
  const auto& spf = spf_sieve();
  u64 out = 1;
  while (n > 1) {
    u64 p = spf[n];
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e & 1) out *= p;
  }
  return out;
}

Integer squarefree_abs(const Integer& n) {
  Integer m = abs(n);
  if (m.fits_ulong_p() && m.get_ui() < kSieveLimit)
    return Integer(squarefree_small(m.get_ui()));
  return abs(squarefree_decompose(m).squarefree);
}

}  // namespace

SquareClass class_product(const SquareClass& a, const SquareClass& b) {
  Integer prod = a.rep * b.rep;
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.rep.get_mpz_t(), b.rep.get_mpz_t());
  // reps are squarefree, so the square part of the product is exactly g^2.
  Integer rep = prod / (g * g);
  return SquareClass{rep};
}

SquareClass squarefree_part(const Rational& r) {
  if (r == 0) raise(Errc::DegenerateColor, "square class of zero");
  // Exact-square fast path: avoids factoring the towers of squares the
  // descent tests produce (their prime factors can be astronomically large).
  if (mpz_perfect_square_p(num(r).get_mpz_t()) &&
      mpz_perfect_square_p(den(r).get_mpz_t()))
    return SquareClass{Integer(1)};
  if (r < 0) {
    Rational m = -r;
    if (mpz_perfect_square_p(num(m).get_mpz_t()) &&
        mpz_perfect_square_p(den(m).get_mpz_t()))
      return SquareClass{Integer(-1)};
  }
  // num/den coprime, so sf(num*den) = sf(num)*sf(den).
  Integer rep = squarefree_abs(num(r)) * squarefree_abs(den(r));
  if (r < 0) rep = -rep;
  return SquareClass{rep};
}

SqrtClass rational_sqrt_class(const Rational& r) {
  if (r == 0) raise(Errc::DegenerateColor, "sqrt class of zero");
  SquareClass cls = squarefree_part(r);
  Rational ratio = r / Rational(cls.rep);
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num(ratio).get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den(ratio).get_mpz_t());
  return SqrtClass{cls.rep, make_rational(sn, sd)};
}

bool is_rational_square(const Rational& r) {
  if (r <= 0) return false;
  return mpz_perfect_square_p(num(r).get_mpz_t()) &&
         mpz_perfect_square_p(den(r).get_mpz_t());
}

std::string square_class_str(const SquareClass& c) { return c.rep.get_str(); }

}  // namespace qf
