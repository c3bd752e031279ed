#pragma once

#include <utility>
#include <vector>

#include "qforge/numeric.hpp"

namespace qf {

bool is_prime_u64(u64 n);
bool is_prime(const Integer& n);

// Prime factorization with exponents, factors ascending.
std::vector<std::pair<u64, int>> factorize_u64(u64 n);
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

// n = squarefree * square_root^2 with squarefree carrying the sign of n.
struct SquarefreeDecomposition {
  Integer squarefree;
  Integer square_root;  // >= 1
};
SquarefreeDecomposition squarefree_decompose(const Integer& n);

// All positive divisors, unsorted.
std::vector<Integer> divisors(const Integer& n);

// Primes in [lo, hi] ascending.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

u64 next_prime_above(u64 n);

}  // namespace qf
