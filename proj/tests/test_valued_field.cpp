#include <doctest.h>

#include <algorithm>
#include <random>

#include "nabas/valued_field.hpp"

using namespace nabas;

namespace {

// Independent valuation oracle on machine integers.
long vp_int(long n, long p) {
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

FieldElement Q(const FieldModel& m, long a, long b = 1) { return FieldElement::rational(m, mpq_class(a, b)); }

std::vector<FieldElement> poly(const FieldModel& m, std::initializer_list<long> c) {
  std::vector<FieldElement> out;
  for (auto x : c) out.push_back(FieldElement::integer(m, x));
  return out;
}

}  // namespace

TEST_CASE("valuation examples") {
  auto q3 = FieldModel::qp(3);
  CHECK(Q(q3, 9, 2).valuation() == Valuation::finite(2));
  CHECK(Q(q3, 0).valuation().is_infinite());
  auto l5 = FieldModel::laurent(5);
  CHECK(FieldElement::parse(l5, "T^2/(1+T)").valuation() == Valuation::finite(2));
  CHECK(FieldElement::parse(l5, "(1+2T+T^2)/(T^3)").valuation() == Valuation::finite(-3));
}

TEST_CASE("arith examples") {
  auto q3 = FieldModel::qp(3), q2 = FieldModel::qp(2);
  auto s = Q(q3, 1, 3) + Q(q3, 2, 3);
  CHECK(s.exact_equal(Q(q3, 1)));
  CHECK(s.valuation() == Valuation::finite(0));
  auto t = Q(q2, 2) + Q(q2, 2);
  CHECK(t.exact_equal(Q(q2, 4)));
  CHECK(t.valuation() == Valuation::finite(2));
  auto u = arith(ArithOp::Mul, Q(q3, 9, 2), &static_cast<const FieldElement&>(Q(q3, 2, 3)));
  CHECK(u.exact_equal(Q(q3, 3)));
  CHECK(u.valuation() == Valuation::finite(1));
  CHECK_THROWS_AS(Q(q3, 0).inverse(), Error);
  try {
    (void)(Q(q3, 1) + Q(q2, 1));
    FAIL("expected mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModelMismatch);
  }
}

TEST_CASE("ultrametric and additivity on random rationals") {
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 5L, 7L}) {
    auto m = FieldModel::qp(p);
    std::uniform_int_distribution<long> d(-5000, 5000);
    for (int i = 0; i < 300; ++i) {
      long a = d(rng), b = d(rng);
      if (a == 0 || b == 0) continue;
      auto x = Q(m, a), y = Q(m, b);
      CHECK((x * y).valuation().value() == vp_int(a, p) + vp_int(b, p));
      if (a + b != 0) {
        long vs = vp_int(a + b, p);
        long va = vp_int(a, p), vb = vp_int(b, p);
        CHECK((x + y).valuation().value() == vs);
        CHECK(vs >= std::min(va, vb));
        if (va != vb) CHECK(vs == std::min(va, vb));
      }
    }
  }
}

TEST_CASE("Laurent arithmetic valuations") {
  auto m = FieldModel::laurent(5);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(0, 4), deg(0, 5);
  auto rand_poly = [&]() {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& x : c) x = static_cast<std::uint32_t>(coef(rng));
    c.back() = 1 + static_cast<std::uint32_t>(coef(rng) % 4);
    return FpPoly(5, c);
  };
  for (int i = 0; i < 200; ++i) {
    FpPoly a = rand_poly(), b = rand_poly(), c = rand_poly();
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    auto x = FieldElement::ratfunc(m, RatFunc(a, c)), y = FieldElement::ratfunc(m, RatFunc(b, c));
    long va = a.low_order() - c.low_order(), vb = b.low_order() - c.low_order();
    CHECK((x * y).valuation().value() == va + vb);
    auto s = x + y;
    if (!s.is_exact_zero()) {
      CHECK(s.valuation().value() >= std::min(va, vb));
      if (va != vb) CHECK(s.valuation().value() == std::min(va, vb));
    }
  }
}

TEST_CASE("local approximations agree with exact arithmetic") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-100000, 100000);
  for (long p : {2L, 3L, 5L}) {
    auto m = FieldModel::qp(p);
    for (int i = 0; i < 200; ++i) {
      long a = d(rng), b = d(rng) | 1, c = d(rng), e = d(rng) | 1;
      if (a == 0 || c == 0) continue;
      mpq_class x(a, b), y(c, e);
      x.canonicalize();
      y.canonicalize();
      const long n = 30;
      Local lx = Local::from_rational(m, x, n), ly = Local::from_rational(m, y, n);
      CHECK((lx + ly).congruent(Local::from_rational(m, x + y, n), n));
      CHECK((lx * ly).congruent(Local::from_rational(m, x * y, 2 * n), (lx * ly).absprec()));
      Local inv = lx.inverse();
      CHECK(inv.congruent(Local::from_rational(m, 1 / x, 2 * n), inv.absprec()));
    }
  }
}

TEST_CASE("parse and print round trip") {
  auto q = FieldModel::qp(3);
  for (auto s : {"-4", "5/2", "0", "-7/9", "12345678901234567890"}) {
    auto x = FieldElement::parse(q, s);
    CHECK(FieldElement::parse(q, x.to_string()).exact_equal(x));
  }
  CHECK(FieldElement::parse(q, "10/4").to_string() == "5/2");
  auto l = FieldModel::laurent(5);
  for (auto s : {"(1+2T+T^2)/(T^3)", "T", "2-T", "1/T", "-1", "3T^4+T", "(T-1)/(2T-5)"}) {
    auto x = FieldElement::parse(l, s);
    CHECK(FieldElement::parse(l, x.to_string()).exact_equal(x));
  }
  CHECK(FieldElement::parse(l, "-1").exact_equal(FieldElement::integer(l, 4)));
  CHECK_THROWS_AS(FieldElement::parse(q, "1/0"), Error);
  CHECK_THROWS_AS(FieldElement::parse(q, "abc"), Error);
  CHECK_THROWS_AS(FieldElement::parse(l, "(1+T"), Error);
  CHECK_THROWS_AS(FieldElement::parse(l, "1++T"), Error);
}

TEST_CASE("Newton polygon examples") {
  auto q2 = FieldModel::qp(2), q3 = FieldModel::qp(3);
  auto r = newton_polygon(poly(q2, {8, -6, 1}), q2);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == RootValuation{Q64(1), 1});
  CHECK(r[1] == RootValuation{Q64(2), 1});
  r = newton_polygon(poly(q3, {81, -50, 1}), q3);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == RootValuation{Q64(0), 1});
  CHECK(r[1] == RootValuation{Q64(4), 1});
  r = newton_polygon(poly(q3, {1, 0, 1}), q3);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == RootValuation{Q64(0), 2});
  CHECK_THROWS_AS(newton_polygon(poly(q3, {0, 0}), q3), Error);
  try {
    newton_polygon(poly(q3, {0, 0, 0}), q3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroPoly);
  }
  // Fractional slope: lambda^2 - 2 over Q_2.
  r = newton_polygon(poly(q2, {-2, 0, 1}), q2);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == RootValuation{Q64(1, 2), 2});
}

TEST_CASE("Newton polygon matches explicit factorizations") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    long p = trial % 2 ? 3 : 2;
    auto m = FieldModel::qp(p);
    std::uniform_int_distribution<int> deg(1, 5), expo(-3, 6), unit(1, 40);
    int n = deg(rng);
    std::vector<mpq_class> coeffs{1};
    std::vector<long> expected;
    for (int i = 0; i < n; ++i) {
      int a = expo(rng);
      long u = unit(rng);
      while (u % p == 0) ++u;
      mpq_class root = a >= 0 ? mpq_class(u * static_cast<long>(std::pow(p, a))) : mpq_class(u, static_cast<long>(std::pow(p, -a)));
      root.canonicalize();
      expected.push_back(a);
      std::vector<mpq_class> next(coeffs.size() + 1, 0);
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j + 1] += coeffs[j];
        next[j] -= root * coeffs[j];
      }
      coeffs = next;
    }
    std::vector<FieldElement> c;
    for (auto& x : coeffs) c.push_back(FieldElement::rational(m, x));
    auto r = newton_polygon(c, m);
    std::vector<long> got;
    for (auto& rv : r)
      for (long k = 0; k < rv.multiplicity; ++k) {
        REQUIRE(rv.valuation.denominator() == 1);
        got.push_back(rv.valuation.numerator());
      }
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
  }
}

TEST_CASE("Hensel roots") {
  auto q2 = FieldModel::qp(2), q3 = FieldModel::qp(3);
  auto f = poly(q2, {8, -6, 1});
  auto top = extremal_root(f, RootChoice::Top);
  CHECK(top.valuation() == Valuation::finite(1));
  // The top root is exactly 2: residues 0, 2, 2 modulo 2, 4, 16.
  CHECK(top.approx(1).to_rational() == 0);
  CHECK(top.approx(2).to_rational() == 2);
  CHECK(top.approx(4).to_rational() == 2);
  CHECK(top.approx(200).congruent(Local::from_rational(q2, 2, 200), 200));
  auto bottom = extremal_root(f, RootChoice::Bottom);
  CHECK(bottom.valuation() == Valuation::finite(2));
  CHECK(bottom.approx(100).congruent(Local::from_rational(q2, 4, 100), 100));

  auto g = poly(q3, {81, -50, 1});
  auto unit_root = extremal_root(g, RootChoice::Top);
  CHECK(unit_root.valuation() == Valuation::finite(0));
  CHECK(unit_root.approx(1).unit_residue() == 2);
  for (long n : {5L, 17L, 64L, 300L}) {
    auto val = evaluate_poly(g, unit_root).approx(n);
    CHECK(val.is_zero());
  }
  auto direct = hensel_root(g, 0, 2);
  CHECK(direct.approx(50).congruent(unit_root.approx(50), 50));

  try {
    extremal_root(poly(q3, {1, 0, 1}), RootChoice::Top);
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSimpleSegment);
  }
  CHECK_THROWS_AS(hensel_root(g, 0, 1), Error);
}

TEST_CASE("refinable coherence and root property on random polynomials") {
  std::mt19937_64 rng(23);
  for (long p : {2L, 3L, 5L}) {
    auto m = FieldModel::qp(p);
    std::uniform_int_distribution<long> d(-60, 60);
    int made = 0;
    for (int trial = 0; trial < 200 && made < 20; ++trial) {
      long c0 = d(rng), c1 = d(rng), c2 = d(rng);
      if (c0 == 0 || c2 == 0) continue;
      auto f = poly(m, {c0, c1, c2, 1});
      FieldElement r;
      try {
        r = extremal_root(f, RootChoice::Top);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoSimpleSegment);
        continue;
      }
      ++made;
      Local hi = r.approx(96);
      for (long n : {3L, 8L, 31L, 64L}) CHECK(r.approx(n).congruent(hi, n));
      for (long n : {10L, 40L}) CHECK(evaluate_poly(f, r).approx(n).is_zero());
    }
    CHECK(made > 5);
  }
  auto l = FieldModel::laurent(5);
  // (lambda - (1+T)) (lambda - T^2 (2+T)) expanded by hand.
  auto a = FieldElement::parse(l, "1+T"), b = FieldElement::parse(l, "2T^2+T^3");
  std::vector<FieldElement> f{a * b, -(a + b), FieldElement::integer(l, 1)};
  auto top = extremal_root(f, RootChoice::Top), bottom = extremal_root(f, RootChoice::Bottom);
  CHECK(top.approx(40).congruent(a.approx(40), 40));
  CHECK(bottom.approx(40).congruent(b.approx(40), 40));
}

TEST_CASE("refinable arithmetic tracks precision") {
  auto m = FieldModel::qp(3);
  auto r = extremal_root(poly(m, {81, -50, 1}), RootChoice::Bottom);
  CHECK(r.valuation() == Valuation::finite(4));
  auto inv = r.inverse();
  CHECK(inv.valuation() == Valuation::finite(-4));
  auto one = inv * r;
  CHECK(one.approx(60).congruent(Local::one(m, 60), 60));
  auto diff = (r + FieldElement::integer(m, 1)) - r;
  CHECK(diff.approx(70).congruent(Local::one(m, 70), 70));
}

TEST_CASE("precision cap stops zero refinables") {
  auto m = FieldModel::qp(3);
  auto r = extremal_root(poly(m, {81, -50, 1}), RootChoice::Top);
  auto z = r - r;
  PrecisionCapScope cap(256);
  try {
    (void)z.valuation();
    FAIL("expected exhaustion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PrecisionExhausted);
  }
}

TEST_CASE("rational reconstruction") {
  auto m = FieldModel::qp(5);
  auto x = FieldElement::rational(m, mpq_class(-37, 250));
  auto back = reconstruct_exact(x.approx(60));
  REQUIRE(back.has_value());
  CHECK(back->exact_equal(x));
  auto l = FieldModel::laurent(3);
  auto y = FieldElement::parse(l, "(1+T^2)/(T^2+2T^3+1)");
  auto yb = reconstruct_exact(y.approx(40));
  REQUIRE(yb.has_value());
  CHECK(yb->exact_equal(y));
}

TEST_CASE("field model validation") {
  CHECK_THROWS_AS(FieldModel::qp(4), Error);
  CHECK_THROWS_AS(FieldModel::laurent(1), Error);
  CHECK(FieldModel::qp(7).residue_cardinality() == 7);
}
