#include <random>

#include "doctest.h"
#include "p2rigid/cyclo.hpp"

using namespace p2r;

namespace {

using BigPoly = std::vector<mpz_class>;

BigPoly mul(const BigPoly& a, const BigPoly& b) {
  BigPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

CycloNum random_num(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> c(-4, 4), d(1, 3);
  std::vector<Rational> co;
  for (int i = 0; i < euler_phi(n); ++i) co.emplace_back(c(rng), d(rng));
  return CycloNum::from_coeffs(n, co);
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == IntPoly{-1, 1});
  CHECK(cyclotomic_polynomial(3) == IntPoly{1, 1, 1});
  CHECK(cyclotomic_polynomial(12) == IntPoly{1, 0, -1, 0, 1});
  CHECK_THROWS_AS(cyclotomic_polynomial(0), InputError);
}

TEST_CASE("product of Phi_d over divisors is x^n - 1") {
  for (int n = 1; n <= 60; ++n) {
    BigPoly prod{1};
    for (int d = 1; d <= n; ++d) {
      if (n % d) continue;
      const IntPoly p = cyclotomic_polynomial(d);
      CHECK(static_cast<int>(p.size()) - 1 == euler_phi(d));
      BigPoly bp;
      for (auto c : p) bp.emplace_back(static_cast<long>(c));
      prod = mul(prod, bp);
    }
    BigPoly expect(n + 1, 0);
    expect[0] = -1;
    expect[n] = 1;
    CHECK_MESSAGE(prod == expect, "n = " << n);
  }
}

TEST_CASE("basic field identities") {
  const CycloNum w = CycloNum::zeta(3);
  CHECK(w + w * w == CycloNum(-1));
  const CycloNum s = CycloNum(1) + CycloNum(2) * w;
  CHECK(s * s == CycloNum(-3));
  const CycloNum z7 = CycloNum::zeta(7);
  CHECK((z7 * z7.inv()).is_one());
  CHECK(z7.inv() == CycloNum::zeta(7, 6));
  CHECK_THROWS_AS(CycloNum(0).inv(), DivisionByZero);
}

TEST_CASE("embedding") {
  CHECK(CycloNum::zeta(3).embed(12) == CycloNum::zeta(12, 4));
  CHECK(CycloNum::zeta(3).embed(12).conductor() == 12);
  const CycloNum half(Rational(5, 2));
  CHECK(half.embed(7) == half);
  CHECK(half.embed(7).is_rational());
  CHECK(CycloNum::zeta(7, 2).embed(21) == CycloNum::zeta(21, 6));
  CHECK_THROWS_AS(CycloNum::zeta(7).embed(10), ConductorError);
  CHECK_THROWS_AS(CycloNum::zeta(5040), ConductorError);
}

TEST_CASE("mixed conductors compare semantically") {
  CHECK(CycloNum::zeta(3) == CycloNum::zeta(6, 2));
  CHECK(CycloNum::zeta(4) * CycloNum::zeta(4) == CycloNum(-1));
  CHECK(CycloNum::zeta(2) == CycloNum(-1));
  CHECK(CycloNum::zeta(3) + CycloNum::zeta(4) == CycloNum::zeta(12, 4) + CycloNum::zeta(12, 3));
  CHECK(CycloNum::zeta(5).descend(5).has_value());
  CHECK_FALSE(CycloNum::zeta(15, 1).descend(5).has_value());
  CHECK(CycloNum::zeta(15, 3).descend(5).value() == CycloNum::zeta(5));
  CHECK(CycloNum::zeta(15, 5).minimized().conductor() == 3);
}

TEST_CASE("random field axioms") {
  std::mt19937 rng(12345);
  for (int n : {3, 4, 5, 7, 9, 12, 15, 21}) {
    for (int trial = 0; trial < 20; ++trial) {
      const CycloNum a = random_num(rng, n), b = random_num(rng, n), c = random_num(rng, n);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a - a).is_zero());
      if (!a.is_zero()) CHECK((a * a.inv()).is_one());
      const int m = n * 2;
      CHECK((a * b).embed(m) == a.embed(m) * b.embed(m));
      CHECK((a + b).embed(m) == a.embed(m) + b.embed(m));
    }
  }
}

TEST_CASE("galois and powers") {
  const CycloNum z = CycloNum::zeta(7);
  CHECK(z.galois(3) == CycloNum::zeta(7, 3));
  CHECK(z.pow(7).is_one());
  CHECK(z.pow(-1) == z.inv());
  const CycloNum e = CycloNum::zeta(9, 2);
  CHECK(e.pow(3) == CycloNum::zeta(3, 2));
}

TEST_CASE("signed root exponent") {
  auto r = (-CycloNum::zeta(5, 2)).signed_root_exponent();
  REQUIRE(r.has_value());
  CHECK(r->first == -1);
  CHECK(r->second == 2);
  // -1 is itself a root of unity at even conductor.
  r = (-CycloNum::zeta(12, 5)).signed_root_exponent();
  REQUIRE(r.has_value());
  CHECK(r->first == 1);
  CHECK(r->second == 11);
  // 1 + z5 = -(z5^2 + z5^3 + z5^4) is not a root of unity.
  CHECK_FALSE((CycloNum(1) + CycloNum::zeta(5)).signed_root_exponent().has_value());
  CHECK_FALSE(CycloNum(2).signed_root_exponent().has_value());
}

TEST_CASE("square roots") {
  auto s = CycloNum(-3).try_sqrt();
  REQUIRE(s.has_value());
  CHECK(*s * *s == CycloNum(-3));
  auto t = CycloNum::zeta(3).try_sqrt();
  REQUIRE(t.has_value());
  CHECK(*t * *t == CycloNum::zeta(3));
  for (long v : {2L, 3L, 5L, 6L, -7L, 12L, -20L}) {
    auto q = CycloNum(v).try_sqrt();
    REQUIRE(q.has_value());
    CHECK(*q * *q == CycloNum(v));
  }
  auto h = (CycloNum(Rational(9, 8)) * CycloNum::zeta(7)).try_sqrt();
  REQUIRE(h.has_value());
  CHECK(*h * *h == CycloNum(Rational(9, 8)) * CycloNum::zeta(7));
  // 1 + z5 is not a rational multiple of a root of unity.
  CHECK_FALSE((CycloNum(1) + CycloNum::zeta(5)).try_sqrt().has_value());
}

TEST_CASE("to_string") {
  CHECK(CycloNum(0).to_string() == "0");
  CHECK(CycloNum(Rational(-3, 4)).to_string() == "-3/4");
  CHECK(CycloNum::zeta(12, 5).to_string() == "z^5");
  const CycloNum x =
      CycloNum::from_coeffs(12, {Rational(3), Rational(0), Rational(-1), Rational(0)}) +
      CycloNum(Rational(1, 2)) * CycloNum::zeta(12, 4);
  // z^4 = z^2 - 1 at conductor 12, so 1/2*z^4 - z^2 + 3 reduces to -1/2*z^2 + 5/2.
  CHECK(x.to_string() == "-1/2*z^2 + 5/2");
}
