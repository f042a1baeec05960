#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "jetgeo/errors.hpp"
#include "jetgeo/poly.hpp"
#include "test_support.hpp"

using namespace jetgeo;

TEST_CASE("eval and derivatives") {
  const Polynomial F{1, 0, -2};
  CHECK(F(0.0) == 1.0);
  CHECK(F.eval_deriv(1.0, 1) == -4.0);
  CHECK(eval(Polynomial{1, 0, -6, 4}, 1.0) == -1.0);
  CHECK(eval_deriv(F, 3.0, 2) == -4.0);
  CHECK(eval_deriv(F, 3.0, 3) == 0.0);
}

TEST_CASE("degree follows the last nonzero coefficient") {
  CHECK(Polynomial{1, 2, 0, 0}.degree() == 1);
  CHECK(Polynomial{0, 0}.degree() == 0);
  CHECK(Polynomial{0, 0}.is_zero());
  CHECK(Polynomial::monomial(3, 2.0).degree() == 3);
}

TEST_CASE("arithmetic agrees with pointwise values") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 20; ++t) {
    const Polynomial p = testsupport::random_poly(rng, 3), q = testsupport::random_poly(rng, 2);
    const double x = u(rng);
    CHECK((p + q)(x) == doctest::Approx(p(x) + q(x)).epsilon(1e-13));
    CHECK((p - q)(x) == doctest::Approx(p(x) - q(x)).epsilon(1e-13));
    CHECK((p * q)(x) == doctest::Approx(p(x) * q(x)).epsilon(1e-12));
    CHECK(p.taylor_shift(0.3)(x) == doctest::Approx(p(0.3 + x)).epsilon(1e-12));
    CHECK(p.compose_affine(0.3, -1.7)(x) == doctest::Approx(p(0.3 - 1.7 * x)).epsilon(1e-12));
    CHECK(p.derivative()(x) == doctest::Approx(p.eval_deriv(x, 1)).epsilon(1e-13));
  }
}

TEST_CASE("real roots with multiplicities") {
  SUBCASE("x^2 - 1") {
    const auto r = real_roots(Polynomial{-1, 0, 1}, {-2, 2});
    REQUIRE(r.size() == 2);
    CHECK(r[0].x == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(r[0].multiplicity == 1);
    CHECK(r[1].x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r[1].multiplicity == 1);
  }
  SUBCASE("x^2 (1-x)^2") {
    const Polynomial F = Polynomial{0, 0, 1} * Polynomial{1, -2, 1};
    const auto r = real_roots(F, {-1, 2});
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0].x) < 1e-12);
    CHECK(r[0].multiplicity == 2);
    CHECK(r[1].x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r[1].multiplicity == 2);
  }
  SUBCASE("F - 1 for F = 1 - 2x^3") {
    const Polynomial F{1, 0, 0, -2};
    const auto r = real_roots(F - Polynomial::constant(1.0), {-1, 1});
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].x) < 1e-12);
    CHECK(r[0].multiplicity == 3);
  }
  SUBCASE("no real roots") { CHECK(real_roots(Polynomial{1, 0, 1}, {-5, 5}).empty()); }
  SUBCASE("window filters") {
    const auto r = real_roots(Polynomial{-1, 0, 1}, {0, 2});
    REQUIRE(r.size() == 1);
    CHECK(r[0].x == doctest::Approx(1.0));
  }
}

TEST_CASE("roots of random products of linear factors") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 30; ++t) {
    std::vector<double> xs;
    Polynomial p{1};
    for (int i = 0; i < 4; ++i) {
      xs.push_back(u(rng));
      p = p * Polynomial{-xs.back(), 1};
    }
    std::sort(xs.begin(), xs.end());
    if (xs[1] - xs[0] < 1e-3 || xs[2] - xs[1] < 1e-3 || xs[3] - xs[2] < 1e-3) continue;
    const auto r = real_roots(p, {-4, 4});
    REQUIRE(r.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(r[i].x == doctest::Approx(xs[i]).epsilon(1e-9));
  }
}

TEST_CASE("hill intervals") {
  SUBCASE("1 - 2x^2") {
    const auto h = hill_intervals(Polynomial{1, 0, -2}, {-2, 2});
    REQUIRE(h.size() == 2);
    CHECK(h[0].lo == doctest::Approx(-1.0));
    CHECK(std::abs(h[0].hi) < 1e-12);
    CHECK(h[0].lo_kind == EndpointKind::Regular);
    CHECK(h[0].hi_kind == EndpointKind::Critical);
    CHECK(std::abs(h[1].lo) < 1e-12);
    CHECK(h[1].hi == doctest::Approx(1.0));
    CHECK(h[1].lo_kind == EndpointKind::Critical);
    CHECK(h[1].hi_kind == EndpointKind::Regular);
    CHECK(h[1].lo_value == 1.0);
    CHECK(h[1].hi_value == -1.0);
  }
  SUBCASE("constant 0.5 is clipped to the window") {
    const auto h = hill_intervals(Polynomial{0.5}, {-3, 3});
    REQUIRE(h.size() == 1);
    CHECK(h[0].lo == -3.0);
    CHECK(h[0].hi == 3.0);
    CHECK(h[0].clipped);
  }
  SUBCASE("1 - 6x^2 + 4x^3") {
    const Polynomial F{1, 0, -6, 4};
    const auto h = hill_intervals(F, {-1, 2});
    bool found = false;
    for (const auto& I : h) {
      if (std::abs(I.lo) < 1e-9 && std::abs(I.hi - 1.0) < 1e-9) {
        found = true;
        CHECK(I.lo_kind == EndpointKind::Critical);
        CHECK(I.hi_kind == EndpointKind::Critical);
      }
    }
    CHECK(found);
  }
  SUBCASE("containing a point") {
    const auto h = hill_interval_containing(Polynomial{0, 1}, 0.3);
    REQUIRE(h.has_value());
    CHECK(h->lo == doctest::Approx(-1.0));
    CHECK(h->hi == doctest::Approx(1.0));
    CHECK_FALSE(hill_interval_containing(Polynomial{0, 1}, 3.0).has_value());
  }
}

TEST_CASE("hill interval property on random polynomials") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const Polynomial F = testsupport::random_poly(rng, 1 + t % 5, 2.0);
    for (const HillInterval& I : hill_intervals(F, {-3, 3})) {
      if (I.clipped) continue;
      CHECK(std::abs(std::abs(F(I.lo)) - 1.0) <= 1e-9);
      CHECK(std::abs(std::abs(F(I.hi)) - 1.0) <= 1e-9);
      bool inside = true;
      for (int i = 1; i < 10000; ++i) {
        const double x = I.lo + (I.hi - I.lo) * i / 10000.0;
        if (!(std::abs(F(x)) < 1.0)) inside = false;
      }
      CHECK(inside);
      CHECK(validate_hill(F, I));
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("normalization to the unit hill") {
  SUBCASE("1 - x^2/2 on [0, 2]") {
    const Polynomial F{1, 0, -0.5};
    const auto I = *hill_interval_containing(F, 1.0);
    const UnitaryForm uf = normalize_to_unitary(F, I);
    CHECK(uf.h.u == doctest::Approx(2.0));
    CHECK(uf.F_hat[0] == doctest::Approx(1.0));
    CHECK(std::abs(uf.F_hat[1]) < 1e-12);
    CHECK(uf.F_hat[2] == doctest::Approx(-2.0));
    CHECK(uf.unit_hill.lo == 0.0);
    CHECK(uf.unit_hill.hi == 1.0);
  }
  SUBCASE("unit hill is left alone") {
    const Polynomial F{1, 0, -24, 48, -24};
    const auto I = *hill_interval_containing(F, 0.5);
    const UnitaryForm uf = normalize_to_unitary(F, I);
    CHECK(std::abs(uf.h.x0) < 1e-12);
    CHECK(uf.h.u == doctest::Approx(1.0));
    for (int i = 0; i <= 4; ++i) CHECK(uf.F_hat[i] == doctest::Approx(F[i]).epsilon(1e-10));
  }
  SUBCASE("1 - 2(x-3)^2 on [3, 4]") {
    const Polynomial F = 1.0 - 2.0 * (Polynomial{-3, 1} * Polynomial{-3, 1});
    const auto I = *hill_interval_containing(F, 3.5);
    const UnitaryForm uf = normalize_to_unitary(F, I);
    CHECK(uf.h.x0 == doctest::Approx(3.0));
    CHECK(uf.h.u == doctest::Approx(1.0));
    CHECK(uf.F_hat[0] == doctest::Approx(1.0));
    CHECK(uf.F_hat[2] == doctest::Approx(-2.0));
  }
  SUBCASE("inverse substitution at 100 random points") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 2.0);
    const Polynomial F{0.3, -1.1, 0.4, 0.9};
    const auto I = *hill_interval_containing(F, 0.2);
    const UnitaryForm uf = normalize_to_unitary(F, I);
    for (int i = 0; i < 100; ++i) {
      const double xt = u(rng);
      CHECK(std::abs(uf.F_hat(xt) - F(uf.h(xt))) <= 1e-12 * std::max(1.0, std::abs(F(uf.h(xt)))));
      CHECK(uf.h.inverse(uf.h(xt)) == doctest::Approx(xt).epsilon(1e-12));
    }
  }
}

TEST_CASE("direct-type factorization") {
  SUBCASE("1 - 24 x^2 (1-x)^2") {
    const Polynomial F{1, 0, -24, 48, -24};
    const auto d = direct_type_factorize(F);
    CHECK(d.k1 == 2);
    CHECK(d.k2 == 2);
    CHECK(d.q.degree() == 0);
    CHECK(d.q[0] == doctest::Approx(24.0));
    CHECK(d.q_max == doctest::Approx(1.5).epsilon(1e-12));
    const Polynomial sum = F + d.bump();
    CHECK(std::abs(sum[0] - 1.0) <= 1e-10);
    for (int i = 1; i <= 4; ++i) CHECK(std::abs(sum[i]) <= 1e-10);
    for (int i = 0; i <= 50; ++i) {
      const double x = i / 50.0;
      CHECK(std::abs(d.reconstruct()(x) - F(x)) <= 1e-12);
      if (i > 0 && i < 50) {
        CHECK(d.bump()(x) > 0.0);
        CHECK(d.bump()(x) < 2.0);
      }
    }
  }
  SUBCASE("1 - x^2 (1-x)^2") {
    const auto d = direct_type_factorize(Polynomial{1, 0, -1, 2, -1});
    CHECK(d.k1 == 2);
    CHECK(d.k2 == 2);
    CHECK(d.q[0] == doctest::Approx(1.0));
    CHECK(d.q_max == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  }
  SUBCASE("unequal orders") {
    // 1 - x^3 (1-x)^2 (2 + x)
    const Polynomial bump = Polynomial::monomial(3) * Polynomial{1, -2, 1} * Polynomial{2, 1};
    const auto d = direct_type_factorize(1.0 - bump);
    CHECK(d.k1 == 3);
    CHECK(d.k2 == 2);
    CHECK(d.q(0.5) == doctest::Approx(2.5));
  }
  SUBCASE("1 - 2x^2 is not direct-type") {
    try {
      direct_type_factorize(Polynomial{1, 0, -2});
      FAIL("expected NotDirectType");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotDirectType);
    }
  }
}

TEST_CASE("Markov inequality on [0, 1]") {
  SUBCASE("x") {
    const auto m = markov_bound_check(Polynomial{0, 1});
    CHECK(m.sup_norm == doctest::Approx(1.0));
    CHECK(m.deriv_sup == doctest::Approx(1.0));
    CHECK(m.ok);
  }
  SUBCASE("shifted Chebyshev attains the bound") {
    const auto m = markov_bound_check(Polynomial{1, -8, 8});
    CHECK(m.sup_norm == doctest::Approx(1.0));
    CHECK(m.deriv_sup == doctest::Approx(8.0));
    CHECK(m.bound == doctest::Approx(8.0));
    CHECK(m.ok);
    CHECK_FALSE(m.printed_ok);
  }
  SUBCASE("zero") {
    const auto m = markov_bound_check(Polynomial{});
    CHECK(m.sup_norm == 0.0);
    CHECK(m.deriv_sup == 0.0);
    CHECK(m.ok);
  }
  SUBCASE("100 random polynomials with sup norm at most 1") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
      Polynomial F = testsupport::random_poly(rng, 1 + t % 7);
      F = (1.0 / sup_norm_on(F, {0, 1})) * F;
      const auto m = markov_bound_check(F);
      CHECK(m.sup_norm <= 1.0 + 1e-12);
      CHECK(m.ok);
    }
  }
}

TEST_CASE("pencil evaluation identity") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2, 2);
  const PencilElement p{0.3, -1.2, Polynomial{1, 0, -6, 4}};
  const Polynomial G = p.G();
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng);
    CHECK(p(x) == doctest::Approx(0.3 - 1.2 * p.base(x)).epsilon(1e-14));
    CHECK(G(x) == doctest::Approx(p(x)).epsilon(1e-13));
  }
}

TEST_CASE("vanishing order and critical points") {
  const Polynomial F{1, 0, -2};
  CHECK(vanishing_order(F - Polynomial::constant(1.0), 0.0) == 2);
  CHECK(vanishing_order(F + Polynomial::constant(1.0), 1.0) == 1);
  CHECK(is_critical_point(F, 0.0));
  CHECK_FALSE(is_critical_point(F, 1.0));
  CHECK(root_bound(Polynomial{-6, 1, 1}) >= 3.0);
}
