#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qforge/factor.hpp"
#include "qforge/fp.hpp"

using namespace qf;

TEST_CASE("fp_square_class examples") {
  CHECK(fp_square_class(fp(2, 7)) == Residuosity::QR);      // 3^2 = 2 mod 7
  CHECK(fp_square_class(fp(3, 7)) == Residuosity::NonQR);   // squares are 1,2,4
  CHECK(fp_square_class(fp(1, 101)) == Residuosity::QR);
  CHECK_THROWS_AS(fp_square_class(fp(0, 7)), Error);
}

TEST_CASE("fp_sqrt examples and canonical choice") {
  CHECK(fp_sqrt(fp(2, 7)).value == 3);
  CHECK(fp_sqrt(fp(0, 7)).value == 0);
  CHECK(fp_sqrt(fp(4, 17)).value == 2);
  CHECK_THROWS_AS(fp_sqrt(fp(3, 7)), Error);
}

TEST_CASE("fp_sqrt exhaustive over all p <= 10^4") {
  for (u64 p : primes_in_range(3, 10000)) {
    FpField f(p);
    for (u64 x = 0; x < p; ++x) {
      auto r = f.sqrt(x);
      if (f.legendre(x) == -1) {
        CHECK(!r);
        continue;
      }
      REQUIRE(r);
      CHECK(*r <= (p - 1) / 2);
      CHECK(f.mul(*r, *r) == x);
    }
  }
}

TEST_CASE("legendre matches Euler criterion and square tables") {
  for (u64 p : {101ull, 1009ull, 65537ull}) {
    FpField f(p);
    SquareTable table(f);
    for (u64 x = 1; x < std::min<u64>(p, 2000); ++x) {
      bool qr = f.pow(x, (p - 1) / 2) == 1;
      CHECK(table.is_qr(x) == qr);
      CHECK((f.legendre(x) == 1) == qr);
    }
  }
}

TEST_CASE("field arithmetic basics") {
  FpField f(1000003);
  for (u64 a : {1ull, 2ull, 999999ull, 500001ull}) {
    CHECK(f.mul(a, f.inv(a)) == 1);
  }
  CHECK_THROWS_AS(FpField(4), Error);        // not prime
  CHECK_THROWS_AS(FpField(2), Error);        // even
  CHECK_THROWS_AS(fp(1, 7) + fp(1, 11), Error);  // mixed moduli
}

TEST_CASE("rational reduction mod p") {
  FpField f(7);
  CHECK(*f.reduce_rational(make_rational(-4, 1)) == 3);
  CHECK(*f.reduce_rational(make_rational(1, 2)) == 4);  // 2*4 = 1 mod 7
  CHECK(!f.reduce_rational(make_rational(1, 7)));
}
