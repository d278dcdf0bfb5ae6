#include "wass_smooth/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "wass_smooth/error.hpp"

namespace wass_smooth {

namespace {

Space parse_space(const std::string& s) {
  if (s == "torus") return Space::torus;
  if (s == "sphere") return Space::sphere;
  fail(ErrorKind::io, "unknown space '" + s + "'");
}

// JSON has no infinity; encode non-finite numbers as strings.
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

Measure measure_from_json(const json& j) {
  try {
    const Space space = parse_space(j.at("space").get<std::string>());
    const int d = j.at("dim").get<int>();
    if (j.value("uniform", false)) return UniformVol{space, d};
    std::vector<double> coords;
    for (const auto& pt : j.at("points")) {
      for (const auto& x : pt) coords.push_back(x.get<double>());
    }
    std::vector<double> weights;
    if (j.contains("weights")) weights = j.at("weights").get<std::vector<double>>();
    return space == Space::torus ? DiscreteMeasure::torus(d, std::move(coords), std::move(weights))
                                 : DiscreteMeasure::sphere(d, std::move(coords), std::move(weights));
  } catch (const json::exception& e) {
    fail(ErrorKind::io, std::string("malformed measure JSON: ") + e.what());
  }
}

json to_json(const Measure& m) {
  json j;
  j["space"] = to_string(space_of(m));
  j["dim"] = dim_of(m);
  if (is_vol(m)) {
    j["uniform"] = true;
    return j;
  }
  const auto& dm = std::get<DiscreteMeasure>(m);
  json pts = json::array();
  for (std::size_t i = 0; i < dm.size(); ++i) {
    const auto p = dm.point(i);
    pts.push_back(std::vector<double>(p.begin(), p.end()));
  }
  j["points"] = std::move(pts);
  j["weights"] = std::vector<double>(dm.weights().begin(), dm.weights().end());
  return j;
}

GenericSpectrumDiff spectrum_from_json(const json& j) {
  GenericSpectrumDiff g;
  try {
    g.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    g.diffs = j.at("diffs").get<std::vector<double>>();
  } catch (const json::exception& e) {
    fail(ErrorKind::io, std::string("malformed spectrum JSON: ") + e.what());
  }
  g.validate();
  g.identical = std::all_of(g.diffs.begin(), g.diffs.end(), [](double x) { return x == 0.0; });
  return g;
}

json to_json(const BoundReport& r) {
  json c = json::object();
  for (const auto& [k, v] : r.constants) c[k] = number(v);
  return {
      {"kind", r.kind},
      {"valid", r.valid},
      {"reason", r.reason},
      {"value", number(r.value)},
      {"smoothing_param", number(r.smoothing_param)},
      {"c1_term", number(r.c1_term)},
      {"fourier_term", number(r.fourier_term)},
      {"tail_contribution", number(r.tail_contribution)},
      {"series_retained", number(r.series_retained)},
      {"series_tail", number(r.series_tail)},
      {"tail_certified", r.tail_certified},
      {"tail_target_met", r.tail_target_met},
      {"vacuous", r.vacuous},
      {"constants", std::move(c)},
  };
}

json to_json(const OtResult& r, bool with_plan) {
  json j = {
      {"method", to_string(r.method)},
      {"p", number(r.p)},
      {"value", number(r.value)},
      {"error_radius", number(r.error_radius)},
      {"lower", number(r.lower())},
      {"upper", number(r.upper())},
      {"radius_heuristic", r.radius_heuristic},
  };
  if (with_plan) {
    json plan = json::array();
    for (const PlanEntry& e : r.plan) plan.push_back({{"i", e.i}, {"j", e.j}, {"mass", e.mass}});
    j["plan"] = std::move(plan);
    if (!r.dual_f.empty()) {
      j["dual_f"] = r.dual_f;
      j["dual_g"] = r.dual_g;
    }
  }
  return j;
}

json to_json(const DesignReport& r, bool with_plan) {
  json res = json::array();
  for (const auto& [ell, e] : r.residuals) res.push_back({{"ell", ell}, {"residual", e}});
  json j = {
      {"t", r.t},
      {"tol", r.tol},
      {"residuals", std::move(res)},
      {"max_residual", r.max_residual},
      {"is_design", r.is_design},
  };
  if (r.p) j["p"] = number(*r.p);
  if (r.corollary_bound) j["corollary_bound"] = number(*r.corollary_bound);
  if (r.oracle_enclosure) j["oracle_enclosure"] = to_json(*r.oracle_enclosure, with_plan);
  if (r.bound_holds) j["bound_holds"] = *r.bound_holds;
  return j;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::io, path.string() + ": " + e.what());
  }
}

}  // namespace wass_smooth
