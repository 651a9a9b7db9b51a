#include "qsppoly/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qsppoly/errors.hpp"

namespace qsppoly::json_io {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// JSON has no inf/nan; they become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::vector<double> read_numbers(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw Error(ErrorCode::InvalidArgument, std::string("polynomial JSON needs an array '") +
                                                field + "'");
  }
  std::vector<double> out;
  for (const auto& v : j[field]) {
    if (!v.is_number()) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("non-numeric entry in '") + field + "'");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

Json params(const CorrectionParams& cp) {
  Json j;
  j["alpha"] = cp.alpha;
  j["beta"] = cp.beta;
  return j;
}

}  // namespace

Json to_json(const Poly& p) {
  Json j;
  j["schema"] = kSchema;
  j["basis"] = "monomial";
  j["coeffs"] = numbers(p.coeffs());
  return j;
}

Json to_json(const CenteredOddPoly& p) {
  Json j;
  j["schema"] = kSchema;
  j["basis"] = "centered_odd";
  j["odd_coeffs"] = numbers(p.odd_coeffs());
  return j;
}

Json to_json(const MembershipReport& r) {
  Json j;
  j["schema"] = kSchema;
  if (r.target_class) {
    j["target_class"] = to_string(*r.target_class);
  } else {
    j["family"] = to_string(r.family);
  }
  j["verdict"] = to_string(r.verdict);
  j["worst_violation"] = number(r.worst_violation);
  j["checked_bound"] = number(r.checked_bound);
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    Json e;
    e["x"] = number(x.x);
    e["value"] = number(x.value);
    e["clause"] = x.clause;
    w.push_back(e);
  }
  j["witnesses"] = w;
  Json m = Json::array();
  for (const auto& c : r.margins) {
    Json e;
    e["clause"] = c.clause;
    e["margin"] = number(c.margin);
    m.push_back(e);
  }
  j["margins"] = m;
  return j;
}

Json to_json(const PipelineTrace& t) {
  Json j;
  j["mode"] = to_string(t.mode);
  j["corrected"] = t.corrected;
  j["eps_internal"] = number(t.eps_internal);
  j["mu_prime"] = number(t.mu_prime);
  j["eta"] = number(t.eta);
  j["eta_prime"] = number(t.eta_prime);
  j["m"] = t.m;
  j["beta0"] = t.beta0;
  j["K"] = number(t.K);
  Json tails = Json::array();
  for (const auto& cp : t.tail_params) tails.push_back(params(cp));
  j["tail_params"] = tails;
  j["final"] = params(t.final_params);
  j["sup_r"] = number(t.sup_r);
  j["candidates_tried"] = t.candidates_tried;
  j["exact_verdict"] = to_string(t.exact_verdict);
  j["verdict"] = to_string(t.verdict);
  return j;
}

Json to_json(const PipelineReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["family"] = to_string(r.family);
  j["delta"] = number(r.delta);
  j["zero_target"] = r.zero_target;
  j["bernstein_n"] = r.bernstein_n;
  j["bernstein_error"] = number(r.bernstein_error);
  j["nodes"] = r.nodes;
  j["node_eps"] = number(r.node_eps);
  j["tilt"] = number(r.tilt);
  j["q_degree"] = r.q_degree;
  j["q_error"] = number(r.q_error);
  j["u_degree"] = r.u_degree;
  j["error"] = number(r.error);
  j["trace"] = to_json(r.trace);
  j["membership"] = to_json(r.membership);
  return j;
}

Json to_json(const EquiRippleResult& r) {
  Json j;
  j["schema"] = kSchema;
  j["ell"] = r.config.ell();
  j["a"] = numbers(r.config.a);
  j["b"] = numbers(r.peaks.b);
  j["heights"] = numbers(r.peaks.heights);
  j["delta"] = number(r.delta);
  j["spread"] = number(r.spread);
  j["spread_tol"] = number(r.spread_tol);
  j["within_spread_tol"] = r.within_spread_tol;
  j["rounds"] = r.rounds;
  j["converged"] = r.converged;
  j["kappa"] = number(r.kappa);
  j["condition"] = number(r.condition);
  j["in_P"] = r.in_P;
  j["polynomial"] = to_json(r.poly);
  return j;
}

Json to_json(const GapReport& g) {
  Json j;
  j["eps"] = number(g.eps);
  j["p_at_gap"] = number(g.p_at_gap);
  j["delta"] = number(g.delta);
  j["residual"] = number(g.residual);
  return j;
}

AnyPoly poly_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "polynomial JSON must be an object");
  if (j.contains("schema") && j["schema"] != kSchema) {
    throw Error(ErrorCode::InvalidArgument, "unsupported schema " + j["schema"].dump());
  }
  if (!j.contains("basis") || !j["basis"].is_string()) {
    throw Error(ErrorCode::InvalidArgument, "polynomial JSON needs a 'basis'");
  }
  const auto basis = j["basis"].get<std::string>();
  if (basis == "monomial") return Poly(read_numbers(j, "coeffs"));
  if (basis == "centered_odd") return CenteredOddPoly(read_numbers(j, "odd_coeffs"));
  throw Error(ErrorCode::InvalidArgument, "unknown basis '" + basis + "'");
}

Poly monomial_from_json(const Json& j) {
  const AnyPoly p = poly_from_json(j);
  if (const auto* m = std::get_if<Poly>(&p)) return *m;
  return from_centered_odd(std::get<CenteredOddPoly>(p));
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qsppoly::json_io
