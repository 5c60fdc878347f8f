#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "error.hpp"

namespace freeinterp {

namespace {

// Non-finite doubles have no JSON form; keep them readable.
Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json numbers(std::span<const double> xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

double read_number(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Parse, std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorCode::Parse, std::string("field \"") + key + "\" is not a number");
  return v.get<double>();
}

Json params_to_json(const GeneratorParams& params) {
  Json out = Json::object();
  for (const auto& [k, v] : params)
    std::visit([&](const auto& x) { out[k] = x; }, v);
  return out;
}

}  // namespace

Json to_json(const Sequence& seq) {
  Json pts = Json::array();
  for (const auto& p : seq.points())
    pts.push_back({{"r", p.modulus()}, {"theta", p.angle()}, {"one_minus_r", p.co_radius()}});
  Json out = {{"label", seq.label()},
              {"points", std::move(pts)},
              {"generator_params", params_to_json(seq.generator_params())}};
  if (!seq.links().empty()) {
    Json links = Json::array();
    for (const auto& l : seq.links())
      links.push_back({{"i", l.i}, {"j", l.j}, {"log_distance", l.log_distance}});
    out["links"] = std::move(links);
  }
  return out;
}

Sequence sequence_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "sequence document must be an object");
  if (!j.contains("points") || !j.at("points").is_array())
    throw Error(ErrorCode::Parse, "missing \"points\" array");
  std::vector<DiskPoint> pts;
  for (const auto& p : j.at("points")) {
    if (!p.is_object()) throw Error(ErrorCode::Parse, "point must be an object");
    const double theta = read_number(p, "theta");
    if (p.contains("one_minus_r")) {
      pts.push_back(DiskPoint::from_co_radius(read_number(p, "one_minus_r"), theta));
    } else {
      pts.push_back(DiskPoint::from_polar(read_number(p, "r"), theta));
    }
  }
  std::string label;
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw Error(ErrorCode::Parse, "\"label\" must be a string");
    label = j.at("label").get<std::string>();
  }
  GeneratorParams params;
  if (j.contains("generator_params")) {
    const auto& gp = j.at("generator_params");
    if (!gp.is_object()) throw Error(ErrorCode::Parse, "\"generator_params\" must be an object");
    for (const auto& [k, v] : gp.items()) {
      if (v.is_number()) params[k] = v.get<double>();
      else if (v.is_string()) params[k] = v.get<std::string>();
      else params[k] = v.dump();
    }
  }
  std::vector<PairLink> links;
  if (j.contains("links")) {
    const auto& arr = j.at("links");
    if (!arr.is_array()) throw Error(ErrorCode::Parse, "\"links\" must be an array");
    for (const auto& l : arr) {
      if (!l.is_object() || !l.contains("i") || !l.contains("j") ||
          !l.at("i").is_number_unsigned() || !l.at("j").is_number_unsigned())
        throw Error(ErrorCode::Parse, "link needs unsigned \"i\" and \"j\"");
      links.push_back({l.at("i").get<std::size_t>(), l.at("j").get<std::size_t>(),
                       read_number(l, "log_distance")});
    }
  }
  return Sequence(std::move(pts), std::move(label), std::move(params), std::move(links));
}

Sequence parse_sequence(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid JSON: ") + e.what());
  }
  try {
    return sequence_from_json(j);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid sequence: ") + e.what());
  }
}

Json to_json(const Measure& mu) {
  Json steps = Json::array();
  for (const auto& p : mu.ac.pieces())
    steps.push_back({{"center", p.arc.center()}, {"half_width", p.arc.half_width()}, {"value", p.value}});
  Json atoms = Json::array();
  for (const auto& a : mu.sing.atoms()) atoms.push_back({{"angle", a.angle}, {"mass", a.mass}});
  return {{"steps", std::move(steps)}, {"atoms", std::move(atoms)}};
}

Measure measure_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Parse, "measure must be an object");
  Measure mu;
  if (j.contains("steps")) {
    if (!j.at("steps").is_array()) throw Error(ErrorCode::Parse, "\"steps\" must be an array");
    for (const auto& s : j.at("steps"))
      mu.ac.add(CircleArc(read_number(s, "center"), read_number(s, "half_width")),
                read_number(s, "value"));
  }
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw Error(ErrorCode::Parse, "\"atoms\" must be an array");
    for (const auto& a : j.at("atoms")) mu.sing.add(read_number(a, "angle"), read_number(a, "mass"));
  }
  return mu;
}

Measure parse_measure(std::string_view text) {
  try {
    Json j = Json::parse(text);
    if (j.is_object() && j.contains("measure")) return measure_from_json(j.at("measure"));
    return measure_from_json(j);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("invalid measure: ") + e.what());
  }
}

Json to_json(const Certificate& cert) {
  Json constants = Json::object();
  for (const auto& [k, v] : cert.constants) constants[k] = number(v);
  Json out = {{"construction", cert.construction},
              {"constants", std::move(constants)},
              {"measure", to_json(cert.measure)},
              {"margins", numbers(cert.margins)},
              {"min_margin", number(cert.min_margin())},
              {"verdict", cert.verdict},
              {"tolerance", cert.tolerance}};
  if (!cert.series.empty()) {
    Json series = Json::object();
    for (const auto& [k, v] : cert.series) series[k] = numbers(v);
    out["series"] = std::move(series);
  }
  return out;
}

Json to_json(const ClassificationReport& rep) {
  return {{"blaschke_sum", number(rep.blaschke_sum)},
          {"separation_constant", number(rep.separation_constant)},
          {"terms_cn", numbers(rep.terms_cn)},
          {"cn_trend",
           {{"first_quartile_max", number(rep.cn_trend.first_quartile_max)},
            {"last_quartile_max", number(rep.cn_trend.last_quartile_max)},
            {"decreasing", rep.cn_trend.decreasing}}},
          {"cnn_max", number(rep.cnn_max)},
          {"cs_sum", number(rep.cs_sum)},
          {"truncation_limited", rep.truncation_limited}};
}

Json to_json(const WeakL1Stats& stats) {
  Json tail = Json::array();
  for (const auto& [t, v] : stats.tail) tail.push_back({number(t), number(v)});
  return {{"sup_t_sigma", number(stats.sup_t_sigma)},
          {"tail", std::move(tail)},
          {"largest_t_value", number(stats.largest_t_value)}};
}

Json to_json(const OrliczExample& ex) {
  Json out = to_json(ex.certificate);
  out["phi_integral"] = number(ex.phi_integral);
  out["closed_form_sum"] = number(ex.closed_form_sum);
  out["min_pair_distance"] = number(ex.min_pair_distance);
  out["pair_log_distances"] = numbers(ex.pair_log_distances);
  out["eps"] = numbers(ex.eps);
  out["scale"] = number(ex.scale);
  out["scale_bounded"] = ex.scale_bounded;
  out["p"] = ex.p;
  return out;
}

Json to_json(const GrowthReport& rep) {
  Json out = {{"sampled", true},
              {"range", {{"t_min", rep.range.t_min}, {"t_max", rep.range.t_max}, {"count", rep.range.count}}}};
  out["delta2"] = rep.delta2 ? Json{{"M", rep.delta2->m}, {"K", rep.delta2->k}, {"threshold", rep.delta2->threshold}}
                             : Json(nullptr);
  out["v2"] = rep.v2 ? Json{{"alpha", rep.v2->alpha}, {"threshold", rep.v2->threshold}} : Json(nullptr);
  out["subadditive"] = rep.subadditive
                           ? Json{{"c", rep.subadditive->c}, {"threshold", rep.subadditive->threshold}}
                           : Json(nullptr);
  return out;
}

Json to_json(const NoOuterBound& bound) {
  return {{"partial_sums", numbers(bound.partial_sums)},
          {"rhs_bound", number(bound.rhs_bound)},
          {"crossing_index", bound.crossing_index ? Json(*bound.crossing_index) : Json(nullptr)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string profile_csv(const MaximalProfile& profile) {
  std::string out = "theta,M\n";
  char buf[64];
  for (std::size_t i = 0; i < profile.grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", profile.grid[i], profile.values[i]);
    out += buf;
  }
  return out;
}

}  // namespace freeinterp
