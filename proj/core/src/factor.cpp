#include "qforge/factor.hpp"

#include <algorithm>
#include <numeric>

namespace qf {

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic Miller-Rabin base set for 64-bit inputs.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

bool is_prime(const Integer& n) {
  if (n <= 0) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

u64 pollard_rho_u64(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = addmod(mulmod(x, x, n), c, n);
      y = addmod(mulmod(y, y, n), c, n);
      y = addmod(mulmod(y, y, n), c, n);
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_rec_u64(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho_u64(n);
  factor_rec_u64(d, out);
  factor_rec_u64(n / d, out);
}

Integer pollard_rho_mpz(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1, diff;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x > y ? x - y : y - x;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      if (diff == 0) break;
    }
    if (d != n && d != 1) return d;
  }
}

void factor_rec_mpz(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho_mpz(n);
  factor_rec_mpz(d, out);
  factor_rec_mpz(n / d, out);
}

template <class T>
std::vector<std::pair<T, int>> collect(std::vector<T>& flat) {
  std::sort(flat.begin(), flat.end());
  std::vector<std::pair<T, int>> out;
  for (const T& f : flat) {
    if (!out.empty() && out.back().first == f)
      ++out.back().second;
    else
      out.emplace_back(f, 1);
  }
  return out;
}

}  // namespace

std::vector<std::pair<u64, int>> factorize_u64(u64 n) {
  if (n == 0) raise(Errc::InvalidArgument, "factorize(0)");
  std::vector<u64> flat;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
    while (n % q == 0) {
      flat.push_back(q);
      n /= q;
    }
  }
  factor_rec_u64(n, flat);
  return collect(flat);
}

std::vector<std::pair<Integer, int>> factorize(const Integer& n) {
  if (n == 0) raise(Errc::InvalidArgument, "factorize(0)");
  Integer m = abs(n);
  if (m.fits_ulong_p()) {
    std::vector<std::pair<Integer, int>> out;
    for (auto& [p, e] : factorize_u64(m.get_ui())) out.emplace_back(Integer(p), e);
    return out;
  }
  std::vector<Integer> flat;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull, 41ull, 43ull, 47ull, 53ull, 59ull, 61ull,
                67ull, 71ull, 73ull, 79ull, 83ull, 89ull, 97ull}) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), q)) {
      flat.push_back(Integer(q));
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), q);
    }
  }
  factor_rec_mpz(m, flat);
  return collect(flat);
}

SquarefreeDecomposition squarefree_decompose(const Integer& n) {
  if (n == 0) raise(Errc::InvalidArgument, "squarefree_decompose(0)");
  SquarefreeDecomposition d{Integer(n < 0 ? -1 : 1), Integer(1)};
  for (const auto& [p, e] : factorize(n)) {
    if (e & 1) d.squarefree *= p;
    Integer half;
    mpz_pow_ui(half.get_mpz_t(), p.get_mpz_t(), e / 2);
    d.square_root *= half;
  }
  return d;
}

std::vector<Integer> divisors(const Integer& n) {
  std::vector<Integer> out{Integer(1)};
  for (const auto& [p, e] : factorize(n)) {
    size_t base = out.size();
    Integer pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  return out;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2) return out;
  lo = std::max<u64>(lo, 2);
  for (u64 n = lo; n <= hi; ++n) {
    if (is_prime_u64(n)) out.push_back(n);
  }
  return out;
}

u64 next_prime_above(u64 n) {
  u64 m = n + 1;
  while (!is_prime_u64(m)) ++m;
  return m;
}

}  // namespace qf
