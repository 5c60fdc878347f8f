// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <freeinterp/freeinterp.h>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  fi_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strcmp(fi_status_name(FI_OK), "Ok") == 0);
  CHECK(std::strlen(fi_status_name(FI_NOT_RADIAL)) > 0);
  CHECK(std::strcmp(fi_version(), "0.1.0") == 0);
}

TEST_CASE("sequence handles") {
  const double s[] = {0.5, 0.25, 0.125};
  const double th[] = {0.0, 0.0, 0.0};
  fi_sequence* seq = nullptr;
  REQUIRE(fi_sequence_create(s, th, 3, "three", &seq) == FI_OK);
  CHECK(fi_sequence_size(seq) == 3);
  double r = 0, t = 0, c = 0;
  CHECK(fi_sequence_point(seq, 1, &r, &t, &c) == FI_OK);
  CHECK(r == 0.75);
  CHECK(c == 0.25);
  CHECK(fi_sequence_point(seq, 3, &r, &t, &c) == FI_INVALID_ARGUMENT);
  CHECK(std::strlen(fi_last_error()) > 0);

  double lb = 0;
  CHECK(fi_log_blaschke_at(seq, 0, &lb) == FI_OK);
  // |b| = (0.75-0.5)/(1-0.375) = 0.4, (0.875-0.5)/(1-0.4375) = 2/3
  CHECK(lb == doctest::Approx(std::log(0.4) + std::log(2.0 / 3.0)).epsilon(1e-14));

  const auto text = take([&] { char* o = nullptr; fi_sequence_to_json(seq, &o); return o; }());
  fi_sequence* back = nullptr;
  REQUIRE(fi_sequence_from_json(text.c_str(), &back) == FI_OK);
  CHECK(fi_sequence_size(back) == 3);
  fi_sequence_free(back);

  CHECK(fi_sequence_from_json("{oops", &back) == FI_PARSE);
  const double dup_s[] = {0.5, 0.5};
  const double dup_t[] = {1.0, 1.0};
  fi_sequence* dup = nullptr;
  CHECK(fi_sequence_create(dup_s, dup_t, 2, nullptr, &dup) == FI_DUPLICATE_POINT);
  CHECK(dup == nullptr);
  CHECK(fi_sequence_create(s, th, 3, nullptr, nullptr) == FI_INVALID_ARGUMENT);
  fi_sequence_free(seq);
  fi_sequence_free(nullptr);
}

TEST_CASE("certify through the C API") {
  fi_sequence* radial = nullptr;
  REQUIRE(fi_gen_radial(0.5, 20, 0.0, &radial) == FI_OK);
  fi_options opts;
  fi_options_default(&opts);
  CHECK(opts.grid_size == 4096);
  CHECK(opts.aperture == 2.0);

  for (const char* name : {"propsep", "maximal", "cs", "staircase", "dirac"}) {
    fi_construction kind;
    REQUIRE(fi_construction_from_name(name, &kind) == FI_OK);
    fi_certificate* cert = nullptr;
    REQUIRE(fi_certify(radial, kind, nullptr, &opts, &cert) == FI_OK);
    CHECK(fi_certificate_verdict(cert) == 1);
    CHECK(fi_certificate_min_margin(cert) >= -1e-9);
    const auto js = take([&] { char* o = nullptr; fi_certificate_to_json(cert, &o); return o; }());
    CHECK(js.find(name) != std::string::npos);
    fi_certificate_free(cert);
  }
  fi_construction bogus;
  CHECK(fi_construction_from_name("nope", &bogus) == FI_INVALID_ARGUMENT);

  fi_certificate* cert = nullptr;
  REQUIRE(fi_certify(radial, FI_CERT_PROPSEP, nullptr, nullptr, &cert) == FI_OK);
  double c_star = -1;
  CHECK(fi_certificate_constant(cert, "c_star", &c_star) == FI_OK);
  CHECK(c_star > 0);
  CHECK(fi_certificate_constant(cert, "missing", &c_star) == FI_NOT_FOUND);
  fi_certificate_free(cert);

  fi_sequence* stolz = nullptr;
  REQUIRE(fi_gen_stolz(0.5, 10, 0.0, 0.5, 2.0, &stolz) == FI_OK);
  CHECK(fi_certify(stolz, FI_CERT_STAIRCASE, nullptr, nullptr, &cert) == FI_NOT_RADIAL);
  CHECK(fi_certify(radial, FI_CERT_CUSTOM, nullptr, nullptr, &cert) == FI_INVALID_ARGUMENT);

  fi_measure* mu = nullptr;
  REQUIRE(fi_measure_create(&mu) == FI_OK);
  CHECK(fi_measure_add_atom(mu, 0.0, 1.0) == FI_OK);
  double p = 0;
  CHECK(fi_poisson_extend(mu, 0.5, 0.0, &p) == FI_OK);
  CHECK(p == doctest::Approx(3.0).epsilon(1e-14));
  double re = 0, im = 0;
  CHECK(fi_herglotz(mu, 0.5, 0.0, &re, &im) == FI_OK);
  CHECK(re == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fi_measure_add_atom(mu, 0.0, -1.0) != FI_OK);
  CHECK(fi_certify(radial, FI_CERT_CUSTOM, mu, nullptr, &cert) == FI_OK);
  fi_certificate_free(cert);
  fi_measure_free(mu);

  fi_sequence_free(stolz);
  fi_sequence_free(radial);
}

TEST_CASE("profile, Orlicz, noouter and acceptance through the C API") {
  fi_sequence* seq = nullptr;
  REQUIRE(fi_gen_disjoint_tangent(20, &seq) == FI_OK);
  fi_profile* prof = nullptr;
  REQUIRE(fi_maximal_profile(seq, 64, 2.0, &prof) == FI_OK);
  CHECK(fi_profile_size(prof) == 64);
  const auto csv = take([&] { char* o = nullptr; fi_profile_csv(prof, &o); return o; }());
  CHECK(csv.rfind("theta,M\n", 0) == 0);
  fi_profile_free(prof);

  std::vector<double> eps(20);
  for (std::size_t k = 0; k < eps.size(); ++k) eps[k] = 1.0 / double(k + 1);
  const auto nb = take([&] { char* o = nullptr; fi_noouter_json(seq, eps.data(), eps.size(), 1.0, &o); return o; }());
  CHECK(nb.find("crossing_index") != std::string::npos);
  fi_sequence* partnered = nullptr;
  REQUIRE(fi_attach_partners(seq, eps.data(), eps.size(), &partnered) == FI_OK);
  CHECK(fi_sequence_size(partnered) == 40);
  fi_sequence_free(partnered);
  fi_sequence_free(seq);

  const auto ex = take([] { char* o = nullptr; fi_orlicz_example_json(2.0, 10, 1e-9, &o); return o; }());
  CHECK(ex.find("closed_form_sum") != std::string::npos);
  const auto gr = take([] { char* o = nullptr; fi_orlicz_growth_json("exponential", 1.0, 0, 50, 201, &o); return o; }());
  CHECK(gr.find("v2") != std::string::npos);
  char* o = nullptr;
  CHECK(fi_orlicz_growth_json("cubic", 1.0, 0, 50, 201, &o) == FI_INVALID_ARGUMENT);

  int count = 0;
  int all = -1;
  auto cb = [](const fi_criterion* c, void* user) {
    CHECK(c->id >= 1);
    CHECK(c->name != nullptr);
    ++*static_cast<int*>(user);
  };
  CHECK(fi_run_acceptance(1, 20240917, cb, &count, &all) == FI_OK);
  CHECK(count == 10);
  CHECK((all == 0 || all == 1));
}
