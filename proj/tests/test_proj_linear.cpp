#include <doctest.h>

#include <random>

#include "nabas/proj_linear.hpp"

using namespace nabas;

namespace {

FieldElement I(const FieldModel& m, long n) { return FieldElement::integer(m, n); }
FieldElement R(const FieldModel& m, long a, long b) { return FieldElement::rational(m, mpq_class(a, b)); }

ProjMatrix M2(const FieldModel& m, long a, long b, long c, long d) { return ProjMatrix::from_integers(m, 2, {a, b, c, d}); }

ProjMatrix commutator(const ProjMatrix& a, const ProjMatrix& b) { return a * b * a.adjugate() * b.adjugate(); }

// Independent 2x2 oracle: det(lambda I - M) = lambda^2 - tr lambda + det.
bool charpoly_2x2_matches(const ProjMatrix& m) {
  auto c = characteristic_polynomial(m);
  return c.size() == 3 && c[2].exact_equal(I(m.model(), 1)) && c[1].exact_equal(-m.trace()) && c[0].exact_equal(m.determinant());
}

ProjMatrix random_matrix(const FieldModel& m, int d, std::mt19937_64& rng, long range = 9) {
  std::uniform_int_distribution<long> e(-range, range);
  for (;;) {
    std::vector<long> v(static_cast<std::size_t>(d * d));
    for (auto& x : v) x = e(rng);
    try {
      return ProjMatrix::from_integers(m, d, v);
    } catch (const Error&) {
    }
  }
}

// Points in P^1 given by affine coordinates agree at precision n.
bool same_p1_point(const ProjPoint& x, const FieldElement& z, long n) {
  auto cross = x.coords[0] - z * x.coords[1];
  return cross.approx(n + x.coords[1].valuation().value()).is_zero();
}

}  // namespace

TEST_CASE("classification examples") {
  auto q3 = FieldModel::qp(3), q2 = FieldModel::qp(2);
  CHECK(classify_pgl2(M2(q3, 3, 0, 0, 1)) == Pgl2Class::Hyperbolic);
  CHECK(classify_pgl2(M2(q3, 1, -4, 2, -5)) == Pgl2Class::Hyperbolic);
  CHECK(classify_pgl2(M2(q2, 1, 1, 0, 1)) == Pgl2Class::Parabolic);
  CHECK(classify_pgl2(M2(q2, 5, 0, 0, 5)) == Pgl2Class::Identity);
  // Order-4 rotation z -> -1/z has trace 0.
  CHECK(classify_pgl2(M2(q3, 0, -1, 1, 0)) == Pgl2Class::StrictlyElliptic);
  CHECK(classify_pgl2(M2(q3, 9, 0, 0, 3)) == Pgl2Class::Hyperbolic);
  CHECK_THROWS_AS(classify_pgl2(ProjMatrix::identity(q3, 3)), Error);
}

TEST_CASE("characteristic polynomial") {
  std::mt19937_64 rng(2);
  auto q5 = FieldModel::qp(5);
  for (int i = 0; i < 30; ++i) CHECK(charpoly_2x2_matches(random_matrix(q5, 2, rng)));
  // d = 3, 4: compare with det(t I - M) at sample points t.
  for (int d : {3, 4}) {
    for (int i = 0; i < 10; ++i) {
      auto m = random_matrix(q5, d, rng);
      auto c = characteristic_polynomial(m);
      REQUIRE(c.size() == static_cast<std::size_t>(d + 1));
      for (long t : {-3L, 0L, 2L, 7L}) {
        std::vector<FieldElement> e = m.entries();
        for (auto& x : e) x = -x;
        for (int k = 0; k < d; ++k) e[static_cast<std::size_t>(k * d + k)] = e[static_cast<std::size_t>(k * d + k)] + I(q5, t);
        FieldElement direct;
        bool singular = false;
        try {
          direct = ProjMatrix(q5, d, e).determinant();
        } catch (const Error&) {
          singular = true;
        }
        auto value = evaluate_poly(c, I(q5, t));
        if (singular)
          CHECK(value.is_exact_zero());
        else
          CHECK(value.exact_equal(direct));
      }
    }
  }
  auto l3 = FieldModel::laurent(3);
  auto m = ProjMatrix(l3, 2, {FieldElement::parse(l3, "T"), I(l3, 1), I(l3, 2), FieldElement::parse(l3, "1+T")});
  CHECK(charpoly_2x2_matches(m));
}

TEST_CASE("adjugate is an inverse up to scalars") {
  std::mt19937_64 rng(4);
  auto q3 = FieldModel::qp(3);
  for (int d : {2, 3, 4}) {
    auto m = random_matrix(q3, d, rng);
    CHECK((m * m.adjugate()).is_scalar());
    CHECK((m * m.adjugate()).at(0, 0).exact_equal(m.determinant()));
  }
}

TEST_CASE("eigen data examples") {
  auto q3 = FieldModel::qp(3), q2 = FieldModel::qp(2);
  auto e = eigen_data(M2(q3, 3, 0, 0, 1));
  CHECK(projectively_equal(e.attracting_point, p1_point(I(q3, 0))));
  CHECK(projectively_equal(e.repelling_point, p1_infinity(q3)));
  CHECK(e.top_valuation == 0);
  CHECK(e.bottom_valuation == 1);

  auto f = eigen_data(M2(q2, 5, -3, 1, 1));
  CHECK(projectively_equal(f.attracting_point, p1_point(I(q2, 1))));
  CHECK(projectively_equal(f.repelling_point, p1_point(I(q2, 3))));
  CHECK(f.top_valuation == 1);
  CHECK(f.bottom_valuation == 2);
  // Each hyperplane vanishes on its own fixed point and not on the other.
  CHECK(pairing(f.attracting_hyperplane, f.attracting_point).is_exact_zero());
  CHECK(!pairing(f.attracting_hyperplane, f.repelling_point).is_exact_zero());
  CHECK(pairing(f.repelling_hyperplane, f.repelling_point).is_exact_zero());

  try {
    eigen_data(M2(q2, 1, 1, 0, 1));
    FAIL("expected failure");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotBiproximal);
  }
}

TEST_CASE("eigen data fixed-point property for refinable eigenvectors") {
  auto q3 = FieldModel::qp(3);
  auto a = M2(q3, 3, 0, 0, 1), b = M2(q3, 1, -4, 2, -5);
  std::vector<ProjMatrix> samples{commutator(a, b), a * b, a * a * b.adjugate(), veronese(commutator(a, b), 3)};
  for (const auto& m : samples) {
    auto e = eigen_data(m);
    for (const auto* x : {&e.attracting_point, &e.repelling_point}) {
      auto y = apply(m, *x);
      for (std::size_t i = 0; i < x->coords.size(); ++i)
        for (std::size_t j = i + 1; j < x->coords.size(); ++j) {
          auto cross = y.coords[i] * x->coords[j] - y.coords[j] * x->coords[i];
          CHECK(cross.approx(40).is_zero());
        }
    }
    // Left eigenvectors: phi M proportional to phi.
    for (const auto* phi : {&e.attracting_hyperplane, &e.repelling_hyperplane}) {
      auto y = m.apply_left(phi->coords);
      for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = i + 1; j < y.size(); ++j)
          CHECK((y[i] * phi->coords[j] - y[j] * phi->coords[i]).approx(40).is_zero());
    }
    CHECK(pairing(e.attracting_hyperplane, e.attracting_point).approx(40).is_zero());
    CHECK(pairing(e.attracting_hyperplane, e.repelling_point).valuation() < Valuation::finite(40));
  }
  // Attracting point of a on z -> 3z is 0; for the commutator compare with an iterate.
  auto m = commutator(a, b);
  auto e = eigen_data(m);
  ProjPoint x = p1_point(I(q3, 7));
  for (int i = 0; i < 30; ++i) x = apply(m, x);
  auto z = x.coords[0] / x.coords[1];
  CHECK(same_p1_point(e.attracting_point, z, 20));
}

TEST_CASE("cross ratio examples") {
  auto q3 = FieldModel::qp(3), q2 = FieldModel::qp(2);
  auto dinf = p1_dual(p1_infinity(q3)), d0 = p1_dual(p1_point(I(q3, 0)));
  auto p1 = p1_point(I(q3, 1)), p3 = p1_point(I(q3, 3));
  CHECK(cross_ratio(dinf, dinf, p1, p3).exact_equal(I(q3, 1)));
  CHECK(cross_ratio(dinf, d0, p1, p3).exact_equal(I(q3, 3)));
  CHECK(cross_ratio_valuation(dinf, d0, p1, p3) == -1);
  CHECK(cross_ratio_valuation(dinf, dinf, p1, p3) == 0);
  auto c3 = cross_ratio(veronese_dual(dinf, 3), veronese_dual(d0, 3), veronese_point(p1, 3), veronese_point(p3, 3));
  CHECK(c3.exact_equal(I(q3, 9)));
  auto einf = p1_dual(p1_infinity(q2)), e0 = p1_dual(p1_point(I(q2, 0)));
  CHECK(cross_ratio_valuation(einf, e0, p1_point(I(q2, 1)), p1_point(R(q2, 1, 4))) == 2);
  // Classical cross ratio (w1-w3)(w2-w4)/((w1-w4)(w2-w3)) for finite points.
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> d(-30, 30);
  for (int i = 0; i < 50; ++i) {
    long w[4];
    for (auto& x : w) x = d(rng);
    if (w[0] == w[1] || w[0] == w[2] || w[0] == w[3] || w[1] == w[2] || w[1] == w[3] || w[2] == w[3]) continue;
    auto c = cross_ratio(p1_dual(p1_point(I(q3, w[0]))), p1_dual(p1_point(I(q3, w[1]))), p1_point(I(q3, w[2])), p1_point(I(q3, w[3])));
    mpq_class classical(mpz_class((w[0] - w[2]) * (w[1] - w[3])), mpz_class((w[0] - w[3]) * (w[1] - w[2])));
    classical.canonicalize();
    CHECK(c.exact_equal(FieldElement::rational(q3, classical)));
  }
  try {
    CHECK(cross_ratio(dinf, d0, p1_infinity(q3), p3).is_exact_zero());
    cross_ratio(dinf, d0, p1, p1_infinity(q3));
    FAIL("expected degenerate pairing");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DegeneratePairing);
  }
}

TEST_CASE("cross ratio invariances") {
  std::mt19937_64 rng(9);
  auto q5 = FieldModel::qp(5);
  std::uniform_int_distribution<long> e(-20, 20);
  auto rand_vec = [&](int d) {
    Vec v;
    for (int i = 0; i < d; ++i) v.push_back(I(q5, e(rng)));
    return v;
  };
  for (int d : {2, 3}) {
    for (int trial = 0; trial < 40; ++trial) {
      DualPoint phi{rand_vec(d)}, phi2{rand_vec(d)};
      ProjPoint w{rand_vec(d)}, w2{rand_vec(d)};
      FieldElement c;
      try {
        c = cross_ratio(phi, phi2, w, w2);
      } catch (const Error&) {
        continue;
      }
      if (c.is_exact_zero()) continue;
      // Independent rescaling of all four arguments.
      auto scale = [&](Vec v, long s) {
        for (auto& x : v) x = x * I(q5, s);
        return v;
      };
      CHECK(cross_ratio({scale(phi.coords, 3)}, {scale(phi2.coords, -7)}, {scale(w.coords, 10)}, {scale(w2.coords, 2)}).exact_equal(c));
      auto g = random_matrix(q5, d, rng);
      CHECK(cross_ratio(apply_dual(g, phi), apply_dual(g, phi2), apply(g, w), apply(g, w2)).exact_equal(c));
      CHECK(cross_ratio_valuation(phi, phi2, w, w2) == -c.valuation().value());
    }
  }
}

TEST_CASE("translation length examples") {
  auto q3 = FieldModel::qp(3), q2 = FieldModel::qp(2);
  auto a = M2(q3, 3, 0, 0, 1), b = M2(q3, 1, -4, 2, -5);
  CHECK(translation_length(a) == Q64(1));
  auto c = commutator(a, b);
  CHECK(c.projectively_equal(M2(q3, 57, -24, 20, -7)));
  CHECK(translation_length(c) == Q64(4));
  auto a2 = M2(q2, 2, 0, 0, 1), g2 = M2(q2, 5, -3, 1, 1);
  auto c2 = commutator(a2, g2);
  CHECK(c2.projectively_equal(M2(q2, 22, -30, -1, 13)));
  CHECK(translation_length(c2) == Q64(8));
  // Scaling invariance.
  auto scaled = ProjMatrix(q3, 2, {c.at(0, 0) * I(q3, 9), c.at(0, 1) * I(q3, 9), c.at(1, 0) * I(q3, 9), c.at(1, 1) * I(q3, 9)});
  CHECK(translation_length(scaled) == Q64(4));
  CHECK(classify_pgl2(scaled) == classify_pgl2(c));
  CHECK(translation_length(ProjMatrix::identity(q3, 3)) == Q64(0));
}

TEST_CASE("period examples and period equals translation length") {
  auto q3 = FieldModel::qp(3), q2 = FieldModel::qp(2);
  CHECK(period(M2(q3, 3, 0, 0, 1), {{I(q3, 1), I(q3, 1)}}) == 1);
  CHECK(period(M2(q2, 5, -3, 1, 1), p1_point(I(q2, 0))) == 1);
  CHECK(period(M2(q2, 4, 0, 0, 4), p1_point(I(q2, 5))) == 0);
  auto a = M2(q3, 3, 0, 0, 1), b = M2(q3, 1, -4, 2, -5);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> e(-50, 50);
  for (const auto& m : {commutator(a, b), a * b, b * b * a, veronese(a * b.adjugate(), 3)}) {
    long ell = translation_length(m).numerator();
    for (int i = 0; i < 20; ++i) {
      ProjPoint w;
      for (int k = 0; k < m.dim(); ++k) w.coords.push_back(I(q3, e(rng)));
      CHECK(period(m, w) == ell);
    }
  }
}

TEST_CASE("Cartan valuations") {
  auto q2 = FieldModel::qp(2), q3 = FieldModel::qp(3);
  CHECK(cartan_valuations(ProjMatrix::identity(q3, 3)).vals == std::vector<long>{0, 0, 0});
  CHECK(cartan_valuations(M2(q2, 5, -3, 1, 1)).vals == std::vector<long>{0, 3});
  CHECK(cartan_valuations(M2(q3, 3, 0, 0, 1)).vals == std::vector<long>{0, 1});
  // Determinantal-divisor oracle for d = 3: the partial sums of invariant
  // factors are the minimal valuations of k x k minors.
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(q3, 3, rng, 30);
    auto cv = cartan_valuations(m);
    long min1 = 1L << 40, min2 = 1L << 40;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!m.at(i, j).is_exact_zero()) min1 = std::min(min1, m.at(i, j).valuation().value());
    for (int r0 = 0; r0 < 3; ++r0)
      for (int r1 = r0 + 1; r1 < 3; ++r1)
        for (int c0 = 0; c0 < 3; ++c0)
          for (int c1 = c0 + 1; c1 < 3; ++c1) {
            auto minor = m.at(r0, c0) * m.at(r1, c1) - m.at(r0, c1) * m.at(r1, c0);
            if (!minor.is_exact_zero()) min2 = std::min(min2, minor.valuation().value());
          }
    CHECK(cv.raw[0] == min1);
    CHECK(cv.raw[0] + cv.raw[1] == min2);
    CHECK(cv.raw[0] + cv.raw[1] + cv.raw[2] == m.determinant().valuation().value());
    CHECK(cv.vals[0] == 0);
  }
}

TEST_CASE("gap report") {
  auto q2 = FieldModel::qp(2), q3 = FieldModel::qp(3);
  auto rows = anosov_gap_report({M2(q2, 2, 0, 0, 1), M2(q2, 5, -3, 1, 1)}, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].min_gap == 1);
  auto id = ProjMatrix::identity(q3, 2);
  for (auto r : anosov_gap_report({id, id}, 4)) CHECK(r.min_gap == 0);
  for (auto r : anosov_gap_report({M2(q3, 3, 0, 0, 1), M2(q3, 1, -4, 2, -5)}, 6)) CHECK(r.min_gap > 0);
}

TEST_CASE("Veronese embedding") {
  auto q3 = FieldModel::qp(3);
  CHECK(veronese(ProjMatrix::identity(q3, 2), 3).projectively_equal(ProjMatrix::identity(q3, 3)));
  auto v = veronese(M2(q3, 3, 0, 0, 1), 3);
  CHECK(v.projectively_equal(ProjMatrix::from_integers(q3, 3, {9, 0, 0, 0, 3, 0, 0, 0, 1})));
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_matrix(q3, 2, rng), b = random_matrix(q3, 2, rng);
    for (int d : {2, 3, 4, 5}) CHECK(veronese(a * b, d).projectively_equal(veronese(a, d) * veronese(b, d)));
    // nu(g v) = V(g) nu(v) and Phi(nu(v)) = phi(v)^(d-1).
    ProjPoint x{{I(q3, 2), I(q3, -5)}};
    DualPoint phi{{I(q3, 7), I(q3, 4)}};
    CHECK(projectively_equal(veronese_point(apply(a, x), 4), apply(veronese(a, 4), veronese_point(x, 4))));
    auto lhs = pairing(veronese_dual(phi, 4), veronese_point(x, 4));
    auto base = pairing(phi, x);
    CHECK(lhs.exact_equal(base * base * base));
  }
  CHECK_THROWS_AS(veronese(ProjMatrix::identity(q3, 3), 3), Error);
}

TEST_CASE("Veronese scales cross ratio valuations") {
  std::mt19937_64 rng(41);
  auto q3 = FieldModel::qp(3);
  std::uniform_int_distribution<long> e(-40, 40);
  int tested = 0;
  while (tested < 30) {
    DualPoint phi{{I(q3, e(rng)), I(q3, e(rng))}}, phi2{{I(q3, e(rng)), I(q3, e(rng))}};
    ProjPoint w{{I(q3, e(rng)), I(q3, e(rng))}}, w2{{I(q3, e(rng)), I(q3, e(rng))}};
    long base;
    try {
      base = cross_ratio_valuation(phi, phi2, w, w2);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    for (int d : {3, 4})
      CHECK(cross_ratio_valuation(veronese_dual(phi, d), veronese_dual(phi2, d), veronese_point(w, d), veronese_point(w2, d)) == (d - 1) * base);
  }
}

TEST_CASE("Laurent model eigen data") {
  auto l5 = FieldModel::laurent(5);
  auto a = ProjMatrix(l5, 2, {FieldElement::parse(l5, "T"), I(l5, 0), I(l5, 0), I(l5, 1)});
  auto b = ProjMatrix(l5, 2, {FieldElement::parse(l5, "2-T"), FieldElement::parse(l5, "-2+2T"), FieldElement::parse(l5, "1-T"), FieldElement::parse(l5, "-1+2T")});
  auto eb = eigen_data(b);
  CHECK(projectively_equal(eb.attracting_point, p1_point(I(l5, 2))));
  CHECK(projectively_equal(eb.repelling_point, p1_point(I(l5, 1))));
  CHECK(translation_length(a) == Q64(1));
  CHECK(translation_length(commutator(a, b)) == Q64(4));
  auto e = eigen_data(commutator(a, b));
  CHECK(pairing(e.attracting_hyperplane, e.attracting_point).approx(30).is_zero());
}
