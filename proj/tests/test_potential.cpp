#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "oracles.hpp"
#include "potential.hpp"
#include "sequence.hpp"

using namespace freeinterp;
using oracle::cplx;

namespace {

DiskPoint pt(cplx z) { return DiskPoint::from_cartesian(z.real(), z.imag()); }

Measure random_measure(oracle::Rng& rng) {
  Measure mu;
  const int steps = rng.integer(1, 4);
  for (int i = 0; i < steps; ++i)
    mu.ac.add(CircleArc(rng.uniform(0, kTwoPi), rng.uniform(0.001, kPi)), rng.uniform(0.0, 3.0));
  const int atoms = rng.integer(0, 3);
  for (int i = 0; i < atoms; ++i) mu.sing.add(rng.uniform(0, kTwoPi), rng.uniform(0.01, 2.0));
  return mu;
}

// P[mu](z) from the quadrature oracle: steps integrated, atoms by the kernel.
double oracle_poisson(const Measure& mu, cplx z) {
  double v = 0.0;
  for (const auto& p : mu.ac.pieces()) v += p.value * oracle::harmonic_measure(z, p.arc.center(), p.arc.half_width());
  for (const auto& a : mu.sing.atoms()) v += a.mass * oracle::poisson(z, a.angle);
  return v;
}

}  // namespace

TEST_CASE("poisson kernel values") {
  CHECK(poisson_kernel(DiskPoint{}, 1.234) == 1.0);
  CHECK(poisson_kernel(DiskPoint::from_polar(0.5, 0.0), 0.0) == doctest::Approx(3.0).epsilon(1e-15));
  oracle::Rng rng(31);
  for (int i = 0; i < 2000; ++i) {
    const cplx z = rng.point(0.999);
    const double t = rng.uniform(0, kTwoPi);
    CHECK(poisson_kernel(pt(z), t) == doctest::Approx(oracle::poisson(z, t)).epsilon(1e-9));
  }
}

TEST_CASE("normalization by adaptive quadrature") {
  oracle::Rng rng(32);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) worst = std::max(worst, std::abs(poisson_normalization_quadrature(pt(rng.point(0.999))) - 1.0));
  CHECK(worst <= 1e-8);
  CHECK(std::abs(poisson_normalization_quadrature(DiskPoint::from_co_radius(1e-3, 2.0)) - 1.0) <= 1e-8);
}

TEST_CASE("closed-form arc integral against the oracle") {
  oracle::Rng rng(33);
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const cplx z = rng.point(0.995);
    const CircleArc arc(rng.uniform(0, kTwoPi), rng.uniform(1e-4, kPi));
    const double got = harmonic_measure(arc, pt(z));
    const double want = oracle::harmonic_measure(z, arc.center(), arc.half_width());
    worst = std::max(worst, std::abs(got - want) / std::max(want, 1e-300));
    CHECK(std::abs(harmonic_measure_quadrature(arc, pt(z)) - got) <= 1e-8 * std::max(got, 1e-12));
  }
  CHECK(worst <= 1e-8);
  // full circle and complementary arcs
  const auto z = pt(cplx(0.3, -0.5));
  CHECK(harmonic_measure(CircleArc(0.0, kPi), z) == doctest::Approx(1.0).epsilon(1e-14));
  const double a = harmonic_measure(CircleArc(1.0, 0.7), z);
  const double b = harmonic_measure(CircleArc(1.0 + kPi, kPi - 0.7), z);
  CHECK(a + b == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("shadow-arc indicator seen from its own point") {
  const auto lam = DiskPoint::from_polar(0.9, 0.8);
  const Measure w{StepWeight({{shadow_arc(lam), 1.0}}), {}};
  const double got = poisson_extend(w, lam);
  const double want = oracle::harmonic_measure(lam.value(), shadow_arc(lam).center(), shadow_arc(lam).half_width());
  CHECK(got == doctest::Approx(want).epsilon(1e-10));
  // lower bound sigma(I) * min kernel on I
  const double min_kernel = poisson_kernel(lam, lam.angle() + shadow_arc(lam).half_width());
  CHECK(got >= shadow_arc(lam).measure() * min_kernel);
}

TEST_CASE("poisson extension of simple measures") {
  oracle::Rng rng(34);
  const Measure one{StepWeight({{CircleArc(0.0, kPi), 1.0}}), {}};
  for (int i = 0; i < 100; ++i) CHECK(poisson_extend(one, pt(rng.point(0.999))) == doctest::Approx(1.0).epsilon(1e-13));
  Measure dirac;
  dirac.sing.add(0.0, 1.0);
  CHECK(poisson_extend(dirac, DiskPoint::from_polar(0.5, 0.0)) == doctest::Approx(3.0).epsilon(1e-15));
  for (int i = 0; i < 200; ++i) {
    const auto mu = random_measure(rng);
    const cplx z = rng.point(0.99);
    const auto ev = poisson_extend_verified(mu, pt(z));
    CHECK_FALSE(ev.accuracy_warning);
    CHECK(ev.value == doctest::Approx(oracle_poisson(mu, z)).epsilon(1e-9));
  }
}

TEST_CASE("herglotz transform") {
  oracle::Rng rng(35);
  for (int i = 0; i < 200; ++i) {
    const auto mu = random_measure(rng);
    const auto h0 = herglotz(mu, DiskPoint{});
    CHECK(h0.real() == doctest::Approx(mu.total_mass()).epsilon(1e-12));
    CHECK(std::abs(h0.imag()) <= 1e-12 * (1.0 + mu.total_mass()));
    const auto z = pt(rng.point(0.999));
    CHECK(std::abs(herglotz(mu, z).real() - poisson_extend(mu, z)) <= 1e-10 * (1.0 + poisson_extend(mu, z)));
  }
  Measure dirac;
  dirac.sing.add(0.0, 1.0);
  const cplx z(0.5, 0.0);
  CHECK(std::abs(herglotz(dirac, pt(z)) - (1.0 + z) / (1.0 - z)) < 1e-14);
  const cplx w(0.2, 0.6);
  CHECK(std::abs(herglotz(dirac, pt(w)) - (1.0 + w) / (1.0 - w)) < 1e-13);
  // imaginary part of a step against the conjugate-kernel oracle
  for (int i = 0; i < 50; ++i) {
    const cplx q = rng.point(0.95);
    const CircleArc arc(rng.uniform(0, kTwoPi), rng.uniform(0.01, kPi));
    const Measure m{StepWeight({{arc, 1.0}}), {}};
    const double off = std::remainder(arc.center() - std::arg(q), kTwoPi);
    const double want = oracle::poisson_integral(q, off - arc.half_width(), off + arc.half_width(), [&](double t) {
      const cplx zeta = std::polar(1.0, t);
      return ((zeta + q) / (zeta - q)).imag() / oracle::poisson(q, t);
    });
    CHECK(herglotz(m, pt(q)).imag() == doctest::Approx(want).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("harnack bounds") {
  Measure dirac;
  dirac.sing.add(0.0, 1.0);
  const auto at0 = harnack_check(dirac, DiskPoint{});
  CHECK(at0.ok);
  CHECK(at0.value == doctest::Approx(at0.lower));
  CHECK(at0.value == doctest::Approx(at0.upper));
  const auto radial = harnack_check(dirac, DiskPoint::from_polar(0.7, 0.0));
  CHECK(radial.ok);
  CHECK(radial.value == doctest::Approx(radial.upper).epsilon(1e-13));
  oracle::Rng rng(36);
  for (int i = 0; i < 1000; ++i) CHECK(harnack_check(random_measure(rng), pt(rng.point(0.999))).ok);
}

TEST_CASE("gamma and H for the Garnett transport") {
  const Sequence solo({DiskPoint::from_polar(0.3, 0.0)});
  const auto g = gamma_lambda(solo, Measure{}, 1e-9);
  CHECK(g.lower_bound[0] == doctest::Approx(4.0));
  CHECK(g.abs_H[0] == doctest::Approx(4.0));
  CHECK(g.max_abs_gamma == doctest::Approx(1.0));
  CHECK(big_H(Measure{}, DiskPoint{}) == cplx(4.0, 0.0));
  // the majorant hypothesis is enforced
  const auto r = gen_radial(0.5, 5);
  try {
    gamma_lambda(r, Measure{}, 1e-9);
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolated);
  }
  Measure big;
  big.sing.add(0.0, 10.0);
  const auto gr = gamma_lambda(r, big, 1e-9);
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double re_h = poisson_extend(big, r[i]);
    CHECK(gr.abs_H[i] >= (2.0 + re_h) * (2.0 + re_h) * (1.0 - 1e-12));
    CHECK((2.0 + re_h) * (2.0 + re_h) >= gr.lower_bound[i] * (1.0 - 1e-12));
    CHECK(std::abs(gr.gamma[i]) <= 1.0 + 1e-9);
  }
}

TEST_CASE("maximal function") {
  const Sequence solo({DiskPoint::from_polar(0.6, 1.0)});
  const auto p0 = maximal_function(solo, 256, 2.0);
  for (double v : p0.values) CHECK(v == 0.0);

  const Sequence two({DiskPoint{}, DiskPoint::from_polar(0.5, 0.0)});
  const auto p2 = maximal_function(two, 1024, 2.0);
  for (double v : p2.values) CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-14));

  oracle::Rng rng(37);
  std::vector<DiskPoint> pts;
  std::vector<cplx> cp;
  for (int i = 0; i < 25; ++i) {
    const cplx z = rng.point(0.97);
    pts.push_back(pt(z));
    cp.push_back(pts.back().value());
  }
  const Sequence seq(pts);
  for (double alpha : {1.5, 2.0, 3.0}) {
    const auto prof = maximal_function(seq, 512, alpha);
    for (std::size_t j = 0; j < prof.grid.size(); ++j)
      CHECK(prof.values[j] == doctest::Approx(oracle::maximal_at(cp, prof.grid[j], alpha)).epsilon(1e-9));
  }
}

TEST_CASE("maximal function is monotone in the sequence and the aperture") {
  oracle::Rng rng(38);
  for (int t = 0; t < 10; ++t) {
    std::vector<DiskPoint> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(pt(rng.point(0.98)));
    const Sequence big(pts);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pts.size(); i += 2) keep.push_back(i);
    const auto small = big.subset(keep);
    const auto a = maximal_function(small, 512, 2.0), b = maximal_function(big, 512, 2.0);
    const auto c = maximal_function(big, 512, 3.0);
    for (std::size_t j = 0; j < 512; ++j) {
      CHECK(a.values[j] <= b.values[j] + 1e-12);
      CHECK(b.values[j] <= c.values[j] + 1e-12);
    }
  }
}

TEST_CASE("exact plateaus agree with the grid") {
  oracle::Rng rng(39);
  std::vector<DiskPoint> pts;
  for (int i = 0; i < 15; ++i) pts.push_back(pt(rng.point(0.95)));
  const Sequence seq(pts);
  const auto steps = maximal_plateaus(seq, 2.0);
  const auto prof = maximal_function(seq, 2048, 2.0);
  int mismatches = 0;
  for (std::size_t j = 0; j < prof.grid.size(); ++j)
    if (std::abs(steps.value_at(prof.grid[j]) - prof.values[j]) > 1e-12) ++mismatches;
  CHECK(mismatches <= 2);  // grid points sitting on a breakpoint
  const auto radial = maximal_plateaus(gen_radial(0.5, 30), 2.0);
  CHECK(radial.l1_norm() > 0.0);
}

TEST_CASE("weak-L1 statistics") {
  const Sequence solo({DiskPoint::from_polar(0.6, 1.0)});
  const auto p0 = maximal_function(solo, 128, 2.0);
  const auto s0 = weak_l1_stats(p0, default_t_samples(p0));
  CHECK(s0.sup_t_sigma == 0.0);
  CHECK(s0.largest_t_value == 0.0);

  // constant profile: t sigma{M > t} = t below c, 0 from c on
  MaximalProfile flat;
  for (int j = 0; j < 64; ++j) {
    flat.grid.push_back(kTwoPi * j / 64);
    flat.values.push_back(2.0);
  }
  const std::vector<double> ts{0.5, 1.0, 1.9, 2.0, 3.0};
  const auto s = weak_l1_stats(flat, ts);
  REQUIRE(s.tail.size() == ts.size());
  CHECK(s.tail[0].second == doctest::Approx(0.5));
  CHECK(s.tail[2].second == doctest::Approx(1.9));
  CHECK(s.tail[3].second == 0.0);
  CHECK(s.tail[4].second == 0.0);
  CHECK(s.sup_t_sigma == doctest::Approx(1.9));

  const auto ladder = default_t_samples(flat);
  CHECK(ladder.size() == 64);
  CHECK(ladder.front() == doctest::Approx(2.0));
  CHECK(ladder.back() == doctest::Approx(4.0));

  const auto radial = maximal_function(gen_radial(0.5, 20), 4096, 2.0);
  const auto rs = weak_l1_stats(radial, default_t_samples(radial));
  CHECK(rs.tail.back().second < rs.tail[rs.tail.size() / 2].second);
}

TEST_CASE("step weight algebra") {
  StepWeight w;
  w.add(CircleArc(0.0, 0.5), 2.0);
  w.add(CircleArc(0.25, 0.5), 1.0);
  CHECK(w.l1_norm() == doctest::Approx(2.0 * 0.5 / kPi + 0.5 / kPi));
  CHECK(w.value_at(0.1) == 3.0);
  CHECK(w.value_at(-0.4) == 2.0);
  CHECK(w.value_at(0.7) == 1.0);
  CHECK(w.value_at(2.0) == 0.0);
  CHECK(w.scaled(2.0).l1_norm() == doctest::Approx(2.0 * w.l1_norm()));
  CHECK_THROWS_AS(w.add(CircleArc(0.0, 0.1), -1.0), Error);
  double seg_total = 0.0, seg_l1 = 0.0;
  for (const auto& s : w.flatten()) {
    CHECK(s.end > s.start);
    seg_total += s.end - s.start;
    seg_l1 += s.value * (s.end - s.start) / kTwoPi;
    CHECK(w.value_at(0.5 * (s.start + s.end)) == s.value);
  }
  CHECK(seg_total == doctest::Approx(kTwoPi));
  CHECK(seg_l1 == doctest::Approx(w.l1_norm()));
  AtomicMeasure a;
  a.add(1.0, 0.0);
  CHECK(a.empty());
  CHECK_THROWS_AS(a.add(1.0, -1.0), Error);
}
