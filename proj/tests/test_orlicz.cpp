#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "oracles.hpp"
#include "orlicz.hpp"

using namespace freeinterp;

TEST_CASE("t^2 shape and predicates") {
  const auto phi = orlicz_power(2.0);
  CHECK(phi(-1.0) == 0.0);
  CHECK(phi(3.0) == 9.0);
  const auto shape = spot_check(phi);
  CHECK(shape.convex);
  CHECK(shape.nondecreasing);
  CHECK(shape.superlinear_trend);

  const auto s = SampleRange{}.samples();
  CHECK(s.size() == 201);
  CHECK(s.front() == 0.0);
  CHECK(s.back() == 50.0);

  CHECK(subadditive_holds(phi, 2.0, s));
  CHECK_FALSE(subadditive_holds(phi, 1.9, s, 1.0));
  CHECK_FALSE(v2_holds(phi, 10.0, s, 1.0));

  // (t+2)^2 <= 2t^2 + 2  iff  t >= 2 + sqrt 6
  CHECK_FALSE(delta2_holds(phi, 2.0, 2.0, s));
  CHECK(delta2_holds(phi, 2.0, 2.0, s, 2.0 + std::sqrt(6.0)));
  const SampleRange fine{0.0, 50.0, 50001};
  const auto th = delta2_threshold(phi, 2.0, 2.0, fine.samples());
  REQUIRE(th.has_value());
  CHECK(*th == doctest::Approx(2.0 + std::sqrt(6.0)).epsilon(1e-3));
  CHECK(*th >= 2.0 + std::sqrt(6.0));

  const auto g = check_growth(phi);
  REQUIRE(g.delta2.has_value());
  REQUIRE(g.subadditive.has_value());
  CHECK_FALSE(g.v2.has_value());
  CHECK(g.subadditive->c == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(delta2_holds(phi, g.delta2->m, g.delta2->k, s, g.delta2->threshold));
  MESSAGE("t^2: M = " << g.delta2->m << ", K = " << g.delta2->k << " from t = " << g.delta2->threshold);
}

TEST_CASE("e^t predicates") {
  const auto phi = orlicz_exponential();
  const auto s = SampleRange{}.samples();
  CHECK(v2_holds(phi, std::log(2.0), s));
  CHECK_FALSE(v2_holds(phi, 0.99 * std::log(2.0), s));
  CHECK(delta2_holds(phi, std::exp(2.0), 0.0, s));
  CHECK_FALSE(subadditive_holds(phi, 100.0, s, 10.0));

  const auto g = check_growth(phi);
  REQUIRE(g.v2.has_value());
  REQUIRE(g.delta2.has_value());
  CHECK_FALSE(g.subadditive.has_value());
  CHECK(g.v2->alpha == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(g.delta2->m == doctest::Approx(std::exp(2.0)).epsilon(1e-9));

  CHECK_THROWS_AS(orlicz_power(1.0), Error);
  CHECK_THROWS_AS(orlicz_exponential(0.0), Error);
  CHECK_THROWS_AS((SampleRange{1.0, 1.0, 10}.samples()), Error);
}

TEST_CASE("integral of phi of a step weight") {
  const auto phi = orlicz_power(3.0);
  StepWeight one;
  one.add(CircleArc(0.0, kPi), 1.0);
  CHECK(orlicz_integral(phi, one) == doctest::Approx(1.0).epsilon(1e-15));

  StepWeight w;
  w.add(CircleArc(0.5, 0.1), 2.0);
  w.add(CircleArc(3.0, 0.2), 1.5);
  const double expect = (0.2 * 8.0 + 0.4 * 3.375) / kTwoPi;
  CHECK(orlicz_integral(phi, w) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(orlicz_integral_quadrature(phi, w) == doctest::Approx(expect).epsilon(1e-10));

  // overlapping pieces add before phi is applied
  StepWeight ov;
  ov.add(CircleArc(1.0, 0.2), 1.0);
  ov.add(CircleArc(1.1, 0.2), 1.0);
  const double both = 0.3, single = 0.2;
  CHECK(orlicz_integral(phi, ov) == doctest::Approx((both * 8.0 + single * 1.0) / kTwoPi).epsilon(1e-13));

  oracle::Rng rng(44);
  for (int i = 0; i < 50; ++i) {
    StepWeight r;
    for (int k = 0; k < 5; ++k) r.add(CircleArc(rng.uniform(0, kTwoPi), rng.uniform(0.01, 1.0)), rng.uniform(0, 4));
    const auto e = orlicz_exponential(0.5);
    CHECK(orlicz_integral(e, r) == doctest::Approx(orlicz_integral_quadrature(e, r)).epsilon(1e-8));
  }
}

TEST_CASE("sufficiency check") {
  const auto seq = gen_radial(0.5, 10);
  const auto cert = certify_propsep(seq);
  const auto res = orlicz_sufficiency_check(seq, cert.measure.ac, orlicz_power(2.0));
  CHECK(res.verdict);
  CHECK(res.majorant_cert.verdict);
  CHECK(std::isfinite(res.phi_integral));
  const auto weak = orlicz_sufficiency_check(seq, cert.measure.ac.scaled(0.1), orlicz_power(2.0));
  CHECK_FALSE(weak.verdict);
}

TEST_CASE("non-Carleson Orlicz example") {
  const std::size_t n = 15;
  const auto base = orlicz_default_base(n);
  for (std::size_t k = 0; k < n; ++k) CHECK(base[k].co_radius() == std::ldexp(1.0, -2 * int(k + 1)));
  const auto gamma = orlicz_default_gamma(n);
  CHECK(gamma[3] == 16.0);

  const auto ex = build_orlicz_example(2.0, base, gamma);
  CHECK(ex.seq.size() == 2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(ex.pair_log_distances[k] == doctest::Approx(-double(k + 1)).epsilon(1e-15));
    CHECK(ex.seq.log_distance(k, n + k) == doctest::Approx(-double(k + 1)).epsilon(1e-12));
  }
  CHECK(ex.phi_integral == doctest::Approx(ex.closed_form_sum).epsilon(1e-10));
  double closed = 0.0;
  for (std::size_t k = 0; k < n; ++k) closed += std::ldexp(1.0, -2 * int(k + 1)) * double((k + 1) * (k + 1));
  CHECK(ex.closed_form_sum == doctest::Approx(closed).epsilon(1e-14));
  CHECK(ex.certificate.verdict);
  CHECK(ex.scale_bounded);
  CHECK(ex.min_pair_distance == doctest::Approx(std::exp(-double(n))).epsilon(1e-9));

  // larger gamma pushes the pairs closer and the integral up
  auto g2 = gamma;
  for (auto& g : g2) g *= 4.0;
  const auto ex2 = build_orlicz_example(2.0, base, g2);
  CHECK(ex2.phi_integral > ex.phi_integral);
  CHECK(ex2.min_pair_distance < ex.min_pair_distance);

  const auto ex3 = build_orlicz_example(3.0, base, gamma);
  CHECK(ex3.phi_integral == doctest::Approx(ex3.closed_form_sum).epsilon(1e-10));
  CHECK(ex3.pair_log_distances[7] == doctest::Approx(-4.0).epsilon(1e-14));

  std::vector<double> bad(n, 1.0);
  CHECK_THROWS_AS(build_orlicz_example(2.0, base, bad), Error);
  CHECK_THROWS_AS(build_orlicz_example(2.0, gen_radial(0.5, 3), std::vector<double>{1, 2, 3}), Error);
}
