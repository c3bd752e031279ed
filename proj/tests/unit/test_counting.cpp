#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qforge/counting.hpp"
#include "qforge/factor.hpp"
#include "qforge/reduction.hpp"
#include "test_rng.hpp"

using namespace qf;

TEST_CASE("y^2 = x^3 - x over F_7 has 8 points") {
  SplitCurve<FpElement> c(fp(0, 7), fp(1, 7), fp(6, 7));
  // enumeration oracle
  u64 n = 1;
  FpField f(7);
  for (u64 x = 0; x < 7; ++x) {
    u64 rhs = f.mul(f.mul(x, f.sub(x, 1)), f.add(x, 1));
    for (u64 y = 0; y < 7; ++y)
      if (f.mul(y, y) == rhs) ++n;
  }
  CHECK(n == 8);
  CHECK(count_points(c) == 8);
  CHECK(enumerate_points(c).size() == 8);
}

TEST_CASE("count matches enumeration on random split curves") {
  std::mt19937_64 rng(0x5eedcafe);
  for (u64 p : {11ull, 101ull, 499ull}) {
    for (int i = 0; i < 10; ++i) {
      u64 e1 = qtest::draw(rng, p), e2 = qtest::draw(rng, p), e3 = qtest::draw(rng, p);
      if (e1 == e2 || e1 == e3 || e2 == e3) continue;
      SplitCurve<FpElement> c(fp(e1, p), fp(e2, p), fp(e3, p));
      CHECK(count_points(c) == enumerate_points(c).size());
    }
  }
}

TEST_CASE("Hasse bound and 4 | N across primes up to 10^4") {
  std::mt19937_64 rng(0x5eedbeef);
  auto primes = primes_in_range(5, 10000);
  for (int i = 0; i < 120; ++i) {
    u64 p = primes[qtest::draw(rng, primes.size())];
    u64 e1 = qtest::draw(rng, p), e2 = qtest::draw(rng, p), e3 = qtest::draw(rng, p);
    if (e1 == e2 || e1 == e3 || e2 == e3) continue;
    SplitCurve<FpElement> c(fp(e1, p), fp(e2, p), fp(e3, p));
    u64 n = count_points(c);
    CHECK(hasse_bound_ok(n, p));
    CHECK(n % 4 == 0);  // full 2-torsion forces 4 | N
  }
}

TEST_CASE("bad reduction raises") {
  SplitCurve<Rational> c(Rational(0), Rational(5), Rational(-5));
  // p = 5 divides the discriminant (roots collide mod 5)
  CHECK(!good_reduction(c, FpField(5)));
  CHECK_THROWS_AS(reduce_curve(c, FpField(5)), Error);
  CHECK(good_reduction(c, FpField(7)));
}

TEST_CASE("point reduction examples") {
  SplitCurve<Rational> c(Rational(0), Rational(5), Rational(-5));
  FpField f(7);
  auto p = CurvePoint<Rational>::affine(Rational(-4), Rational(6));
  auto r = reduce_point(c, p, f);
  CHECK(r.x.value == 3);
  CHECK(r.y.value == 6);
  CHECK(reduce_point(c, CurvePoint<Rational>::infinity(), f).inf);
  // bad-reduction prime surfaces through point reduction too
  try {
    reduce_point(c, p, FpField(5));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadReduction);
  }
  // p divides a denominator (roots stay distinct mod 3, so reduction of the
  // curve itself is fine)
  auto d = add(c, p, p);  // x = 1681/144, denominator 2^4 3^2
  try {
    reduce_point(c, d, FpField(3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadPrimeForPoint);
  }
}
