#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "oracles.hpp"
#include "sequence.hpp"

using namespace freeinterp;
using oracle::cplx;

namespace {

std::vector<cplx> as_complex(const Sequence& s) {
  std::vector<cplx> out;
  for (const auto& p : s.points()) out.push_back(p.value());
  return out;
}

Sequence random_sequence(oracle::Rng& rng, std::size_t n, double rmax) {
  std::vector<DiskPoint> pts;
  while (pts.size() < n) {
    const cplx z = rng.point(rmax);
    const auto p = DiskPoint::from_cartesian(z.real(), z.imag());
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return Sequence(std::move(pts));
}

}  // namespace

TEST_CASE("sequence rejects duplicates") {
  const auto p = DiskPoint::from_polar(0.5, 1.0);
  CHECK_THROWS_AS(Sequence({p, DiskPoint::from_polar(0.2, 0.0), p}), Error);
  try {
    Sequence({p, p});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicatePoint);
  }
}

TEST_CASE("log delta: singleton, small example, direct product") {
  CHECK(log_blaschke_at(Sequence({DiskPoint::from_polar(0.5, 0.0)}), 0) == 0.0);
  const Sequence s({DiskPoint{}, DiskPoint::from_polar(0.5, 0.0), DiskPoint::from_polar(0.5, kPi)});
  CHECK(log_blaschke_at(s, 0) == doctest::Approx(std::log(0.25)).epsilon(1e-15));

  oracle::Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto seq = random_sequence(rng, std::size_t(rng.integer(2, 100)), 0.99);
    const auto pts = as_complex(seq);
    const auto all = log_blaschke_all(seq);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const double direct = oracle::delta_product(pts, i);
      CHECK(std::abs(std::exp(log_blaschke_at(seq, i)) - direct) <= 1e-10);
      CHECK(all[i] == log_blaschke_at(seq, i));
    }
  }
}

TEST_CASE("separation constant") {
  CHECK(separation_constant(Sequence({DiskPoint::from_polar(0.3, 0.0)})) == 1.0);
  const Sequence two({DiskPoint{}, DiskPoint::from_polar(0.5, 0.0)});
  CHECK(separation_constant(two) == doctest::Approx(0.5).epsilon(1e-15));
  oracle::Rng rng(22);
  const auto seq = random_sequence(rng, 40, 0.95);
  const auto pts = as_complex(seq);
  double best = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, oracle::pseudo(pts[i], pts[j]));
  CHECK(separation_constant(seq) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("radial generator") {
  const auto s = gen_radial(0.5, 3);
  REQUIRE(s.size() == 3);
  CHECK(s[0].modulus() == 0.5);
  CHECK(s[1].modulus() == 0.75);
  CHECK(s[2].modulus() == 0.875);
  CHECK_THROWS_AS(gen_radial(1.0, 3), Error);
  CHECK_THROWS_AS(gen_radial(0.5, 0), Error);
  CHECK_THROWS_AS(gen_radial(0.5, 10, 0.0, 0.01), Error);
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const auto r = gen_radial(q, 25, 1.0);
    const double bound = (1.0 - q) / (1.0 + q);
    CHECK(separation_constant(r) >= bound * (1.0 - 1e-12));
    CHECK(r.blaschke_sum() == doctest::Approx(q * (1.0 - std::pow(q, 25)) / (1.0 - q)).epsilon(1e-13));
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i].co_radius() < r[i - 1].co_radius());
  }
}

TEST_CASE("stolz generator stays in the angle") {
  for (double alpha : {1.5, 2.0, 4.0}) {
    const auto s = gen_stolz(0.5, 30, 0.4, 1.0, alpha);
    for (const auto& p : s.points()) CHECK(stolz_contains({0.4, alpha}, p));
  }
}

TEST_CASE("disjoint tangent generator") {
  for (std::size_t n : {1u, 2u, 10u, 200u}) {
    const auto s = gen_disjoint_tangent(n);
    REQUIRE(s.size() == n);
    CHECK(tangent_arcs_disjoint(s));
    double total = 0.0;
    for (const auto& p : s.points()) total += tangent_arc(p).measure();
    CHECK(total <= 1.0);
  }
  // two points at r = 0.99: centres must be more than 0.2 pi apart
  const std::vector<double> co{0.01, 0.01};
  const auto two = gen_disjoint_tangent(co);
  CHECK(std::abs(wrap_difference(two[1].angle() - two[0].angle())) > 0.2 * kPi);
  const std::vector<double> big(10, 0.2);
  CHECK_THROWS_AS(gen_disjoint_tangent(big), Error);
  try {
    gen_disjoint_tangent(big);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapacityExceeded);
  }
}

TEST_CASE("partner points") {
  const auto base = Sequence({DiskPoint::from_polar(0.5, 0.0)});
  const double eps = 0.5;  // d = exp(-eps/(1-r)) = e^-1
  const auto s = attach_partner_points(base, std::vector<double>{eps});
  REQUIRE(s.size() == 2);
  const double d = std::exp(-1.0);
  CHECK(s[1].modulus() == doctest::Approx((0.5 + d) / (1.0 + 0.5 * d)).epsilon(1e-14));
  CHECK(s[1].modulus() == doctest::Approx(0.73304).epsilon(1e-5));
  CHECK(pseudo_hyperbolic(s[0], s[1]) == doctest::Approx(d).epsilon(1e-12));

  // tiny d: partner approaches the base point
  const auto t = attach_partner_points(base, std::vector<double>{20.0});
  CHECK(t[1].modulus() - 0.5 < 1e-15);

  // round trip on a tangential base; links keep sub-ulp distances exact
  const auto tang = gen_disjoint_tangent(20);
  std::vector<double> e(20);
  for (std::size_t k = 0; k < 20; ++k) e[k] = 0.05 * tang[k].co_radius() * double(k + 1);
  const auto p = attach_partner_points(tang, e);
  for (std::size_t k = 0; k < 20; ++k) {
    const double want = std::exp(-e[k] / tang[k].co_radius());
    CHECK(pseudo_hyperbolic(p[k], p[20 + k]) == doctest::Approx(want).epsilon(1e-12));
    CHECK(p.log_distance(k, 20 + k) == doctest::Approx(-e[k] / tang[k].co_radius()).epsilon(1e-15));
  }

  // harmonic eps on the tangent base: coordinates coincide, links carry the distance
  std::vector<double> h(20);
  for (std::size_t k = 0; k < 20; ++k) h[k] = 1.0 / double(k + 1);
  const auto ph = attach_partner_points(tang, h);
  CHECK(ph.size() == 40);
  CHECK(ph.links().size() == 20);
  const auto logs = log_blaschke_all(ph);
  for (double l : logs) CHECK(std::isfinite(l));
  CHECK(logs[19] <= -h[19] / tang[19].co_radius() + 1e-9);

  CHECK_THROWS_AS(attach_partner_points(base, std::vector<double>{-1.0}), Error);
  CHECK_THROWS_AS(attach_partner_points(base, std::vector<double>{1.0, 2.0}), Error);
  try {
    attach_partner_points(Sequence({DiskPoint::from_co_radius(1e-310, 0.0)}), std::vector<double>{1.0});
    FAIL("expected Underflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Underflow);
  }
}

TEST_CASE("classification") {
  const auto one = classify(Sequence({DiskPoint::from_polar(0.4, 0.0)}));
  CHECK(one.separation_constant == 1.0);
  CHECK(one.cs_sum == 0.0);
  CHECK(one.terms_cn[0] == 0.0);
  CHECK(one.truncation_limited);

  const auto two = classify(Sequence({DiskPoint{}, DiskPoint::from_polar(0.5, 0.0)}));
  CHECK(two.separation_constant == doctest::Approx(0.5));
  CHECK(two.terms_cn[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(two.terms_cn[1] == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  CHECK(two.cs_sum == doctest::Approx(1.5 * std::log(2.0)));
  CHECK(two.cnn_max == doctest::Approx(std::log(2.0)));
  CHECK(two.blaschke_sum == doctest::Approx(1.5));
}

TEST_CASE("classification is permutation invariant") {
  oracle::Rng rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto seq = random_sequence(rng, 30, 0.98);
    std::vector<std::size_t> idx(seq.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng.gen);
    const auto shuffled = seq.subset(idx);
    const auto a = classify(seq), b = classify(shuffled);
    CHECK(a.blaschke_sum == doctest::Approx(b.blaschke_sum).epsilon(1e-14));
    CHECK(a.separation_constant == doctest::Approx(b.separation_constant).epsilon(1e-14));
    CHECK(a.cs_sum == doctest::Approx(b.cs_sum).epsilon(1e-12));
    auto ta = a.terms_cn, tb = b.terms_cn;
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    for (std::size_t i = 0; i < ta.size(); ++i) CHECK(ta[i] == doctest::Approx(tb[i]).epsilon(1e-12));
  }
}

TEST_CASE("clustered family: CS sum follows sum of eps") {
  const auto base = gen_disjoint_tangent(40);
  std::vector<double> l1(40), harmonic(40);
  for (std::size_t k = 0; k < 40; ++k) {
    const double m = double(k + 1);
    l1[k] = base[k].co_radius();  // partner distance e^-1 <= 1/2
    harmonic[k] = std::max(1.0 / m, base[k].co_radius());
  }
  const auto a = classify(intns_family(base, l1));
  const auto b = classify(intns_family(base, harmonic));
  double sum_l1 = 0.0, sum_h = 0.0;
  for (std::size_t k = 0; k < 40; ++k) {
    sum_l1 += l1[k];
    sum_h += harmonic[k];
  }
  // CS sum is comparable to sum eps: bounded below by it, within a fixed factor above.
  CHECK(a.cs_sum >= sum_l1);
  CHECK(a.cs_sum <= 3.0 * sum_l1 + 1.0);
  CHECK(b.cs_sum >= sum_h);
  CHECK(b.cs_sum > 10.0 * a.cs_sum);

  std::vector<double> too_close(40, 1e-12);
  CHECK_THROWS_AS(intns_family(base, too_close), Error);
  CHECK_THROWS_AS(intns_family(gen_radial(0.5, 40), l1), Error);
}

TEST_CASE("four-family splitting is a partition with separated squares") {
  oracle::Rng rng(24);
  const auto seq = random_sequence(rng, 100, 0.999);
  const auto fam = split_four_families(seq);
  std::size_t total = 0;
  std::vector<DiskPoint> all;
  for (int f = 0; f < 4; ++f) {
    total += fam[f].size();
    for (const auto& p : fam[f].points()) {
      CHECK(family_index(square_of_point(p)) == f + 1);
      all.push_back(p);
    }
  }
  CHECK(total == seq.size());
  for (const auto& p : seq.points()) CHECK(std::count(all.begin(), all.end(), p) == 1);

  const auto solo = split_four_families(Sequence({DiskPoint{}}));
  CHECK(solo[0].size() == 1);
  CHECK(solo[1].empty());
  CHECK(solo[2].empty());
  CHECK(solo[3].empty());

  const auto gap = family_square_separation(seq);
  REQUIRE(gap.has_value());
  CHECK(*gap > 0.0);
  MESSAGE("same-family distinct-square separation on 100 random points: " << *gap);
}

TEST_CASE("random separated generator is deterministic and separated") {
  const auto a = gen_random_separated(30, 0.5, 7);
  const auto b = gen_random_separated(30, 0.5, 7);
  REQUIRE(a.size() == 30);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(separation_constant(a) >= 0.5);
}
