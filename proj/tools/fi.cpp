// Command-line driver over the C interface.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freeinterp/freeinterp.h"

namespace {

// Exit codes: 0 success / verdict true, 1 verdict false, 2 usage, input or precondition error.
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

struct Failure {
  int code;
  std::string message;
};

void check(fi_status s, const char* what) {
  if (s != FI_OK)
    throw Failure{kExitError, std::string(what) + ": " + fi_status_name(s) + ": " + fi_last_error()};
}

struct SeqDeleter {
  void operator()(fi_sequence* p) const { fi_sequence_free(p); }
};
struct MeasureDeleter {
  void operator()(fi_measure* p) const { fi_measure_free(p); }
};
struct CertDeleter {
  void operator()(fi_certificate* p) const { fi_certificate_free(p); }
};
struct ProfileDeleter {
  void operator()(fi_profile* p) const { fi_profile_free(p); }
};
using SeqPtr = std::unique_ptr<fi_sequence, SeqDeleter>;
using MeasurePtr = std::unique_ptr<fi_measure, MeasureDeleter>;
using CertPtr = std::unique_ptr<fi_certificate, CertDeleter>;
using ProfilePtr = std::unique_ptr<fi_profile, ProfileDeleter>;

std::string take(char* s) {
  std::string out(s ? s : "");
  fi_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitError, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitError, "cannot write " + path};
  out << text;
}

SeqPtr load_sequence(const std::string& path) {
  fi_sequence* seq = nullptr;
  check(fi_sequence_from_json(read_file(path).c_str(), &seq), path.c_str());
  return SeqPtr(seq);
}

std::vector<double> eps_series(const std::string& kind, std::size_t n) {
  std::vector<double> eps(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double m = static_cast<double>(k + 1);
    if (kind == "harmonic") eps[k] = 1.0 / m;
    else if (kind == "square") eps[k] = 1.0 / (m * m);
    else if (kind == "nlogn") eps[k] = 1.0 / (m * std::log(m + 1.0));
    else throw Failure{kExitError, "unknown eps series " + kind + " (harmonic|square|nlogn)"};
  }
  return eps;
}

struct Config {
  std::size_t grid_size = 4096;
  double aperture = 2.0;
  std::size_t truncation = 10;
  double tolerance = 1e-9;
  std::string out;
  std::uint64_t seed = 20240917;
  bool quick = false;
};

void add_common(CLI::App* app, Config& cfg, bool grid) {
  if (grid) {
    app->add_option("--grid-size", cfg.grid_size, "boundary grid size")->check(CLI::Range(std::size_t{16}, std::size_t{1} << 26));
    app->add_option("--aperture", cfg.aperture, "Stolz aperture alpha > 1")
        ->check(CLI::Range(1.0 + 1e-12, 1e6));
  }
  app->add_option("--tolerance", cfg.tolerance, "margin tolerance")->check(CLI::PositiveNumber);
  app->add_option("--out", cfg.out, "output file (default stdout)");
}

fi_options options_of(const Config& cfg) {
  fi_options o;
  fi_options_default(&o);
  o.grid_size = cfg.grid_size;
  o.aperture = cfg.aperture;
  o.tolerance = cfg.tolerance;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free interpolation certificates for Nevanlinna, Smirnov and Hardy-Orlicz classes"};
  app.require_subcommand(1);
  Config cfg;

  // generate
  auto* gen = app.add_subcommand("generate", "write a sequence file");
  std::string kind;
  double q = 0.5, theta = 0.0, spread = 1.0, min_sep = 0.5, p = 2.0;
  std::string eps_kind = "harmonic", base_kind = "disjoint-tangent";
  gen->add_option("kind", kind, "radial|stolz|disjoint-tangent|partnered|orlicz-example|random")
      ->required()
      ->check(CLI::IsMember({"radial", "stolz", "disjoint-tangent", "partnered", "orlicz-example", "random"}));
  gen->add_option("--q", q, "ratio for 1-|z_n| = q^n")->check(CLI::Range(1e-300, 1.0 - 1e-16));
  gen->add_option("--n,--truncation", cfg.truncation, "number of points")->check(CLI::PositiveNumber);
  gen->add_option("--theta", theta, "boundary angle");
  gen->add_option("--spread", spread, "stolz: angular offset factor");
  gen->add_option("--aperture", cfg.aperture, "stolz: aperture")->check(CLI::Range(1.0 + 1e-12, 1e6));
  gen->add_option("--eps", eps_kind, "partnered: harmonic|square|nlogn");
  gen->add_option("--base", base_kind, "partnered: disjoint-tangent|orlicz");
  gen->add_option("--p", p, "orlicz-example exponent")->check(CLI::Range(1.0 + 1e-12, 1e6));
  gen->add_option("--min-sep", min_sep, "random: minimal pseudo-hyperbolic separation");
  gen->add_option("--seed", cfg.seed, "random: seed");
  gen->add_option("--out", cfg.out, "output file (default stdout)");

  auto* cls = app.add_subcommand("classify", "separation quantities and series of a sequence");
  std::string input;
  cls->add_option("input", input, "sequence JSON")->required();
  cls->add_option("--out", cfg.out, "output file (default stdout)");

  auto* cert = app.add_subcommand("certify", "build and verify a harmonic-majorant certificate");
  std::string construction, measure_file;
  double dirac_mass = 0.0, dirac_angle = 0.0, threshold = 0.0;
  bool grid_mode = false;
  cert->add_option("construction", construction, "propsep|maximal|cs|staircase|dirac|custom-measure")
      ->required()
      ->check(CLI::IsMember({"propsep", "maximal", "cs", "staircase", "dirac", "custom-measure"}));
  cert->add_option("input", input, "sequence JSON")->required();
  add_common(cert, cfg, true);
  cert->add_option("--threshold", threshold, "propsep threshold in (0,1); default min(1/2, delta)");
  cert->add_flag("--grid-mode", grid_mode, "maximal: use the sampled grid instead of exact plateaus");
  cert->add_option("--measure", measure_file, "custom-measure: measure JSON");
  cert->add_option("--dirac-mass", dirac_mass, "custom-measure: atom mass");
  cert->add_option("--dirac-angle", dirac_angle, "custom-measure: atom angle");

  auto* maxi = app.add_subcommand("maximal", "non-tangential maximal function profile");
  std::string stats_file;
  maxi->add_option("input", input, "sequence JSON")->required();
  add_common(maxi, cfg, true);
  maxi->add_option("--stats", stats_file, "write weak-L1 statistics JSON here");

  auto* orl = app.add_subcommand("orlicz", "Hardy-Orlicz example and growth predicates");
  std::string growth;
  double param = 2.0, t_min = 0.0, t_max = 50.0;
  std::size_t samples = 201;
  std::size_t orlicz_n = 15;
  orl->add_option("--p", p, "exponent of phi(t) = t^p")->check(CLI::Range(1.0 + 1e-12, 1e6));
  orl->add_option("--n,--truncation", orlicz_n, "number of base points")->check(CLI::PositiveNumber);
  orl->add_option("--growth", growth, "check growth predicates of power|exponential instead")
      ->check(CLI::IsMember({"power", "exponential"}));
  orl->add_option("--param", param, "growth: p or rate");
  orl->add_option("--t-min", t_min, "growth: sample range start");
  orl->add_option("--t-max", t_max, "growth: sample range end");
  orl->add_option("--samples", samples, "growth: sample count");
  add_common(orl, cfg, false);

  auto* noo = app.add_subcommand("noouter", "partial sums against the mass bound c (sum(1-|z|) + 2)");
  double c_mu = 1.0;
  noo->add_option("input", input, "sequence JSON with disjoint tangent arcs")->required();
  noo->add_option("--eps", eps_kind, "harmonic|square|nlogn");
  noo->add_option("--c", c_mu, "mass bound c_mu")->check(CLI::PositiveNumber);
  noo->add_option("--out", cfg.out, "output file (default stdout)");

  auto* rep = app.add_subcommand("report", "run the acceptance suite and write a summary bundle");
  std::string report_dir = "report";
  rep->add_flag("--quick", cfg.quick, "halve truncations and grids");
  rep->add_option("--seed", cfg.seed, "seed for randomized criteria");
  rep->add_option("--out", report_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (gen->parsed()) {
      fi_sequence* raw = nullptr;
      const std::size_t n = cfg.truncation;
      if (kind == "radial") {
        check(fi_gen_radial(q, n, theta, &raw), "generate");
      } else if (kind == "stolz") {
        check(fi_gen_stolz(q, n, theta, spread, cfg.aperture, &raw), "generate");
      } else if (kind == "disjoint-tangent") {
        check(fi_gen_disjoint_tangent(n, &raw), "generate");
      } else if (kind == "random") {
        check(fi_gen_random_separated(n, min_sep, cfg.seed, &raw), "generate");
      } else if (kind == "orlicz-example") {
        check(fi_orlicz_example_sequence(p, n, &raw), "generate");
      } else {
        fi_sequence* base = nullptr;
        if (base_kind == "disjoint-tangent") check(fi_gen_disjoint_tangent(n, &base), "base");
        else if (base_kind == "orlicz") check(fi_gen_orlicz_base(n, &base), "base");
        else throw Failure{kExitError, "unknown base " + base_kind};
        SeqPtr owned(base);
        const auto eps = eps_series(eps_kind, n);
        check(fi_attach_partners(base, eps.data(), eps.size(), &raw), "partners");
      }
      SeqPtr seq(raw);
      char* text = nullptr;
      check(fi_sequence_to_json(seq.get(), &text), "serialize");
      write_output(cfg.out, take(text));
      return 0;
    }

    if (cls->parsed()) {
      auto seq = load_sequence(input);
      char* text = nullptr;
      check(fi_classify_json(seq.get(), &text), "classify");
      write_output(cfg.out, take(text));
      return 0;
    }

    if (cert->parsed()) {
      auto seq = load_sequence(input);
      fi_construction c;
      check(fi_construction_from_name(construction.c_str(), &c), "construction");
      MeasurePtr custom;
      if (c == FI_CERT_CUSTOM) {
        fi_measure* mu = nullptr;
        if (!measure_file.empty()) {
          check(fi_measure_from_json(read_file(measure_file).c_str(), &mu), measure_file.c_str());
          custom.reset(mu);
        } else {
          check(fi_measure_create(&mu), "measure");
          custom.reset(mu);
        }
        check(fi_measure_add_atom(mu, dirac_angle, dirac_mass), "dirac atom");
      }
      auto opts = options_of(cfg);
      if (threshold > 0.0) opts.threshold = threshold;
      opts.exact_plateaus = grid_mode ? 0 : 1;
      fi_certificate* raw = nullptr;
      check(fi_certify(seq.get(), c, custom.get(), &opts, &raw), construction.c_str());
      CertPtr result(raw);
      char* text = nullptr;
      check(fi_certificate_to_json(result.get(), &text), "serialize");
      write_output(cfg.out, take(text));
      return fi_certificate_verdict(result.get()) ? 0 : kExitFalse;
    }

    if (maxi->parsed()) {
      auto seq = load_sequence(input);
      fi_profile* raw = nullptr;
      check(fi_maximal_profile(seq.get(), cfg.grid_size, cfg.aperture, &raw), "maximal");
      ProfilePtr prof(raw);
      char* csv = nullptr;
      check(fi_profile_csv(prof.get(), &csv), "profile");
      write_output(cfg.out, take(csv));
      if (!stats_file.empty()) {
        char* stats = nullptr;
        check(fi_profile_stats_json(prof.get(), &stats), "stats");
        write_output(stats_file, take(stats));
      }
      return 0;
    }

    if (orl->parsed()) {
      char* text = nullptr;
      if (!growth.empty()) {
        check(fi_orlicz_growth_json(growth.c_str(), param, t_min, t_max, samples, &text), "growth");
        write_output(cfg.out, take(text));
        return 0;
      }
      check(fi_orlicz_example_json(p, orlicz_n, cfg.tolerance, &text), "orlicz");
      const std::string report = take(text);
      write_output(cfg.out, report);
      return report.find("\"verdict\": true") != std::string::npos ? 0 : kExitFalse;
    }

    if (noo->parsed()) {
      auto seq = load_sequence(input);
      const auto eps = eps_series(eps_kind, fi_sequence_size(seq.get()));
      char* text = nullptr;
      check(fi_noouter_json(seq.get(), eps.data(), eps.size(), c_mu, &text), "noouter");
      write_output(cfg.out, take(text));
      return 0;
    }

    if (rep->parsed()) {
      struct Collected {
        std::vector<std::string> csv_rows;
        std::vector<std::string> md_rows;
      } col;
      auto cb = [](const fi_criterion* r, void* user) {
        auto* c = static_cast<Collected*>(user);
        std::printf("criterion %2d %s: %s (%.2fs) %s\n", r->id, r->passed ? "PASS" : "FAIL", r->name,
                    r->seconds, r->detail);
        std::fflush(stdout);
        std::string detail = r->detail;
        for (char& ch : detail)
          if (ch == '"') ch = '\'';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", r->seconds);
        c->csv_rows.push_back(std::to_string(r->id) + ",\"" + r->name + "\"," + (r->passed ? "pass" : "fail") +
                              "," + buf + ",\"" + detail + "\"");
        c->md_rows.push_back("| " + std::to_string(r->id) + " | " + r->name + " | " +
                             (r->passed ? "pass" : "**fail**") + " | " + buf + " | " + r->detail + " |");
      };
      int all = 0;
      check(fi_run_acceptance(cfg.quick ? 1 : 0, cfg.seed, cb, &col, &all), "acceptance");
      std::filesystem::create_directories(report_dir);
      std::string csv = "id,name,result,seconds,detail\n";
      for (const auto& r : col.csv_rows) csv += r + "\n";
      std::string md = "# Acceptance summary\n\n";
      md += std::string("mode: ") + (cfg.quick ? "quick" : "full") + ", seed " + std::to_string(cfg.seed) + "\n\n";
      md += "| # | criterion | result | seconds | detail |\n|---|---|---|---|---|\n";
      for (const auto& r : col.md_rows) md += r + "\n";
      md += std::string("\noverall: ") + (all ? "all criteria pass" : "some criteria fail") + "\n";
      write_output((std::filesystem::path(report_dir) / "criteria.csv").string(), csv);
      write_output((std::filesystem::path(report_dir) / "summary.md").string(), md);
      return all ? 0 : kExitFalse;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
