#include "ghv/report.hpp"

#include <set>

namespace ghv {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

json coefficients(const IntPolynomial& p, int n) { return p.padded(n); }

IntPolynomial polynomial_from(const json& j) { return IntPolynomial(j.get<std::vector<std::int64_t>>()); }

// entries 0, 2, ..., 2*max_j of a polynomial in t
json even_coefficients(const IntPolynomial& p, int max_j) {
  json out = json::array();
  for (int j = 0; j <= max_j; ++j) out.push_back(p[2 * j]);
  return out;
}

IntPolynomial from_even_coefficients(const json& j) {
  std::vector<std::int64_t> c;
  for (std::size_t i = 0; i < j.size(); ++i) {
    c.push_back(j[i].get<std::int64_t>());
    if (i + 1 < j.size()) c.push_back(0);
  }
  return IntPolynomial(std::move(c));
}

json bounds_json(const BoundsReport& b) {
  return {{"h", coefficients(b.h, b.n)},
          {"difference", coefficients(b.difference, b.n)},
          {"palindromic", b.palindromic},
          {"unimodal", b.unimodal},
          {"nonnegative_even_difference", b.nonnegative_even_difference},
          {"difference_palindromic", b.difference_palindromic},
          {"difference_unimodal", b.difference_unimodal},
          {"increment_bounds", b.increment_bounds},
          {"is_minimum", b.is_minimum},
          {"is_cross_polytope", b.is_cross_polytope}};
}

BoundsReport bounds_from_json(const json& j, int n) {
  BoundsReport b;
  b.n = n;
  b.h = polynomial_from(j.at("h"));
  b.difference = polynomial_from(j.at("difference"));
  b.palindromic = j.at("palindromic").get<bool>();
  b.unimodal = j.at("unimodal").get<bool>();
  b.nonnegative_even_difference = j.at("nonnegative_even_difference").get<bool>();
  b.difference_palindromic = j.at("difference_palindromic").get<bool>();
  b.difference_unimodal = j.at("difference_unimodal").get<bool>();
  b.increment_bounds = j.at("increment_bounds").get<bool>();
  b.is_minimum = j.at("is_minimum").get<bool>();
  b.is_cross_polytope = j.at("is_cross_polytope").get<bool>();
  return b;
}

json lefschetz_json(const std::vector<LefschetzRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"q", r.q},
                   {"source_dim", r.source_dim},
                   {"target_dim", r.target_dim},
                   {"rank", r.rank},
                   {"injective_required", r.injective_required},
                   {"surjective_required", r.surjective_required},
                   {"ok", r.ok()}});
  }
  return out;
}

std::vector<LefschetzRow> lefschetz_from_json(const json& j) {
  std::vector<LefschetzRow> rows;
  for (const auto& x : j) {
    LefschetzRow r;
    r.q = x.at("q").get<int>();
    r.source_dim = x.at("source_dim").get<std::size_t>();
    r.target_dim = x.at("target_dim").get<std::size_t>();
    r.rank = x.at("rank").get<std::size_t>();
    r.injective_required = x.at("injective_required").get<bool>();
    r.surjective_required = x.at("surjective_required").get<bool>();
    rows.push_back(r);
  }
  return rows;
}

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::optional<bool> optional_bool_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

json ih_json(const IHReport& r) {
  const int max_j = r.degree_cap / 2;
  json out{{"degree_cap", r.degree_cap},
           {"u", even_coefficients(r.u, max_j)},
           {"v", even_coefficients(r.v, max_j)}};
  if (r.phi) {
    out["phi"] = {{"u_plus", even_coefficients(r.phi->u.plus, max_j)},
                  {"u_minus", even_coefficients(r.phi->u.minus, max_j)},
                  {"v_plus", even_coefficients(r.phi->v.plus, max_j)},
                  {"v_minus", even_coefficients(r.phi->v.minus, max_j)}};
  } else {
    out["phi"] = nullptr;
  }
  out["lefschetz"] = lefschetz_json(r.lefschetz);
  out["lefschetz_minus"] = lefschetz_json(r.lefschetz_minus);
  out["sheaf_axioms_ok"] = r.axioms_ok;
  out["eq1_ok"] = r.eq1_ok;
  out["eq2_ok"] = optional_bool(r.eq2_ok);
  out["eq4_ok"] = optional_bool(r.eq4_ok);
  out["proposition_ok"] = optional_bool(r.proposition_ok);
  out["bettizahlen_ok"] = r.bettizahlen_ok;
  out["lefschetz_ok"] = r.lefschetz_ok;
  if (r.hauptsatz) {
    const auto& hz = *r.hauptsatz;
    out["hauptsatz_via_sheaf"] = {{"minus_dims_match", hz.minus_dims_match},
                                  {"minus_lefschetz_ok", hz.minus_lefschetz_ok},
                                  {"difference_unimodal", hz.difference_unimodal},
                                  {"agrees_with_bounds", hz.agrees_with_bounds},
                                  {"ok", hz.ok()}};
  } else {
    out["hauptsatz_via_sheaf"] = nullptr;
  }
  return out;
}

IHReport ih_from_json(const json& j, int n, const IntPolynomial& h) {
  IHReport r;
  r.n = n;
  r.h = h;
  r.degree_cap = j.at("degree_cap").get<int>();
  r.u = from_even_coefficients(j.at("u"));
  r.v = from_even_coefficients(j.at("v"));
  if (!j.at("phi").is_null()) {
    const auto& p = j.at("phi");
    r.phi = PhiDimensions{{from_even_coefficients(p.at("v_plus")), from_even_coefficients(p.at("v_minus"))},
                          {from_even_coefficients(p.at("u_plus")), from_even_coefficients(p.at("u_minus"))}};
  }
  r.lefschetz = lefschetz_from_json(j.at("lefschetz"));
  r.lefschetz_minus = lefschetz_from_json(j.at("lefschetz_minus"));
  r.axioms_ok = j.at("sheaf_axioms_ok").get<bool>();
  r.eq1_ok = j.at("eq1_ok").get<bool>();
  r.eq2_ok = optional_bool_from(j.at("eq2_ok"));
  r.eq4_ok = optional_bool_from(j.at("eq4_ok"));
  r.proposition_ok = optional_bool_from(j.at("proposition_ok"));
  r.bettizahlen_ok = j.at("bettizahlen_ok").get<bool>();
  r.lefschetz_ok = j.at("lefschetz_ok").get<bool>();
  if (!j.at("hauptsatz_via_sheaf").is_null()) {
    const auto& hz = j.at("hauptsatz_via_sheaf");
    r.hauptsatz = HauptsatzViaSheaf{hz.at("minus_dims_match").get<bool>(), hz.at("minus_lefschetz_ok").get<bool>(),
                                    hz.at("difference_unimodal").get<bool>(), hz.at("agrees_with_bounds").get<bool>()};
  }
  return r;
}

}  // namespace

json scalar_to_json(const Scalar& x, long radicand) {
  if (radicand == 0) {
    if (!x.is_rational()) throw std::invalid_argument("irrational scalar in a rational context");
    return x.rational_part().str();
  }
  return json::array({x.rational_part().str(), x.irrational_part().str()});
}

Scalar scalar_from_json(const json& j, long radicand, const std::string& where) {
  auto rational = [&](const json& s, const std::string& at) {
    if (s.is_number_integer()) return Rational(s.get<long>());
    if (!s.is_string()) fail(at, "expected a rational string \"p/q\"");
    try {
      return Rational::parse(s.get<std::string>());
    } catch (const std::exception& e) {
      fail(at, e.what());
    }
  };
  if (j.is_array()) {
    if (radicand == 0) fail(where, "quadratic pair in a rational file");
    if (j.size() != 2) fail(where, "quadratic scalar must be a pair [\"p/q\", \"r/s\"]");
    return Scalar::quadratic(rational(j[0], where + "[0]"), rational(j[1], where + "[1]"), radicand);
  }
  return Scalar(rational(j, where));
}

PolytopeFile PolytopeFile::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("$", "expected an object");
  static const std::set<std::string> known{"name", "dim", "field", "vertices"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) fail("$." + key, "unknown key");
  }
  PolytopeFile f;
  if (j.contains("name")) {
    if (!j["name"].is_string()) fail("$.name", "expected a string");
    f.name = j["name"].get<std::string>();
  }
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() < 1) {
    fail("$.dim", "expected a positive integer");
  }
  f.dim = j["dim"].get<std::size_t>();
  if (!j.contains("field")) fail("$.field", "missing");
  const auto& field = j["field"];
  if (field.is_string() && field.get<std::string>() == "rational") {
    f.radicand = 0;
  } else if (field.is_object() && field.size() == 1 && field.contains("quadratic") &&
             field["quadratic"].is_number_integer()) {
    f.radicand = field["quadratic"].get<long>();
    if (f.radicand <= 1 || !is_square_free(f.radicand)) {
      fail("$.field.quadratic", "radicand must be a square-free integer > 1");
    }
  } else {
    fail("$.field", "expected \"rational\" or {\"quadratic\": d}");
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) fail("$.vertices", "expected an array");
  const auto& vs = j["vertices"];
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string at = "$.vertices[" + std::to_string(i) + "]";
    if (!vs[i].is_array() || vs[i].size() != f.dim) fail(at, "expected " + std::to_string(f.dim) + " coordinates");
    Vector v;
    for (std::size_t c = 0; c < f.dim; ++c) v.push_back(scalar_from_json(vs[i][c], f.radicand, at + "[" + std::to_string(c) + "]"));
    f.vertices.push_back(std::move(v));
  }
  return f;
}

PolytopeFile PolytopeFile::from_polytope(const Polytope& p, std::string name) {
  PolytopeFile f;
  f.name = std::move(name);
  f.dim = p.dim();
  f.radicand = p.radicand();
  f.vertices = p.vertices();
  return f;
}

json PolytopeFile::to_json() const {
  json j;
  if (!name.empty()) j["name"] = name;
  j["dim"] = dim;
  j["field"] = radicand == 0 ? json("rational") : json{{"quadratic", radicand}};
  json vs = json::array();
  for (const auto& v : vertices) {
    json row = json::array();
    for (const auto& x : v) row.push_back(scalar_to_json(x, radicand));
    vs.push_back(std::move(row));
  }
  j["vertices"] = std::move(vs);
  return j;
}

std::string PolytopeFile::dump() const {
  const json j = to_json();
  std::string out = "{\n";
  for (const auto& [key, value] : j.items()) {
    if (key != "vertices") {
      out += "  " + json(key).dump() + ": " + value.dump() + ",\n";
      continue;
    }
    out += "  \"vertices\": [";
    for (std::size_t i = 0; i < value.size(); ++i) out += (i ? ",\n    " : "\n    ") + value[i].dump();
    out += value.empty() ? "]\n" : "\n  ]\n";
  }
  return out + "}\n";
}

Polytope PolytopeFile::polytope() const {
  try {
    return Polytope::from_vertices(vertices);
  } catch (const InvalidPolytope& e) {
    throw InputError(std::string("invalid polytope: ") + e.what());
  }
}

Prepared prepare(const PolytopeFile& file) {
  auto [p, shift] = centered(file.polytope());
  return {std::move(p), std::move(shift)};
}

std::string Report::failed_check() const {
  for (const auto& [name, ok] : checks) {
    if (!ok) return name;
  }
  return {};
}

json Report::to_json() const {
  const int n = static_cast<int>(input.dim);
  json j;
  j["schema"] = kReportSchemaId;
  j["command"] = command;
  j["input"] = input.to_json();
  if (translation) {
    json t = json::array();
    for (const auto& x : *translation) t.push_back(scalar_to_json(x, input.radicand));
    j["translation"] = std::move(t);
  } else {
    j["translation"] = nullptr;
  }
  j["h"] = coefficients(h, n);
  j["difference"] = coefficients(h - IntPolynomial::one_plus_x_pow(n), n);
  j["bounds"] = bounds ? bounds_json(*bounds) : json(nullptr);
  j["ih"] = ih ? ih_json(*ih) : json(nullptr);
  json c = json::object();
  for (const auto& [name, ok] : checks) c[name] = ok;
  j["checks"] = std::move(c);
  const std::string failed = failed_check();
  j["status"] = failed.empty() ? "ok" : "check_failed";
  j["failed_check"] = failed.empty() ? json(nullptr) : json(failed);
  return j;
}

Report Report::from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.input = PolytopeFile::parse(j.at("input").dump());
  const int n = static_cast<int>(r.input.dim);
  if (!j.at("translation").is_null()) {
    Vector t;
    for (std::size_t i = 0; i < j["translation"].size(); ++i) {
      t.push_back(scalar_from_json(j["translation"][i], r.input.radicand, "$.translation[" + std::to_string(i) + "]"));
    }
    r.translation = std::move(t);
  }
  r.h = polynomial_from(j.at("h"));
  if (!j.at("bounds").is_null()) r.bounds = bounds_from_json(j["bounds"], n);
  if (!j.at("ih").is_null()) r.ih = ih_from_json(j["ih"], n, r.h);
  for (const auto& [name, ok] : j.at("checks").items()) r.checks.emplace_back(name, ok.get<bool>());
  return r;
}

namespace {

Report base_report(const std::string& command, const PolytopeFile& file, Prepared& prepared) {
  Report r;
  r.command = command;
  r.input = file;
  r.translation = prepared.translation;
  return r;
}

void add_h_checks(Report& r, const Fan& fan, int n) {
  r.checks.emplace_back("h_0_and_h_n_are_one", r.h[0] == 1 && r.h[n] == 1 && r.h.degree() == n);
  r.checks.emplace_back("palindromic", is_palindromic(r.h, n));
  r.checks.emplace_back("h_n_minus_1_counts_rays",
                        r.h[n - 1] == static_cast<std::int64_t>(fan.cones_of_dim(1).size()) - n);
}

void add_bounds_checks(Report& r, const BoundsReport& b) {
  r.checks.emplace_back("unimodal", b.unimodal);
  r.checks.emplace_back("nonnegative_even_difference", b.nonnegative_even_difference);
  r.checks.emplace_back("difference_palindromic", b.difference_palindromic);
  r.checks.emplace_back("difference_unimodal", b.difference_unimodal);
  r.checks.emplace_back("increment_bounds", b.increment_bounds);
  r.checks.emplace_back("minimum_iff_cross_polytope", b.is_minimum == b.is_cross_polytope);
}

}  // namespace

Report run_hvector(const PolytopeFile& file) {
  Prepared prepared = prepare(file);
  Report r = base_report("hvector", file, prepared);
  const Fan fan = face_fan(prepared.polytope);
  const int n = static_cast<int>(file.dim);
  r.h = h_polynomial(fan);
  add_h_checks(r, fan, n);
  return r;
}

Report run_check_bounds(const PolytopeFile& file) {
  Prepared prepared = prepare(file);
  if (!is_centrally_symmetric(prepared.polytope)) throw InputError("polytope is not centrally symmetric");
  Report r = base_report("check-bounds", file, prepared);
  const Fan fan = face_fan(prepared.polytope);
  const int n = static_cast<int>(file.dim);
  r.h = h_polynomial(fan);
  add_h_checks(r, fan, n);
  r.bounds = bounds_from_h(r.h, n, is_cross_polytope(prepared.polytope));
  add_bounds_checks(r, *r.bounds);
  return r;
}

Report run_ih(const PolytopeFile& file, int degree_cap, int max_dim) {
  if (static_cast<int>(file.dim) > max_dim) {
    throw InputError("ih is limited to dimension " + std::to_string(max_dim) + " (got " + std::to_string(file.dim) +
                     ")");
  }
  Prepared prepared = prepare(file);
  Report r = base_report("ih", file, prepared);
  const Fan fan = face_fan(prepared.polytope);
  const int n = static_cast<int>(file.dim);
  try {
    r.ih = analyse_ih(prepared.polytope, degree_cap);
  } catch (const DegreeCapTooSmall& e) {
    throw InputError(e.what());
  }
  r.h = r.ih->h;
  add_h_checks(r, fan, n);
  if (is_centrally_symmetric(prepared.polytope)) {
    r.bounds = bounds_from_h(r.h, n, is_cross_polytope(prepared.polytope));
    add_bounds_checks(r, *r.bounds);
  }
  const IHReport& ih = *r.ih;
  r.checks.emplace_back("sheaf_axioms", ih.axioms_ok);
  r.checks.emplace_back("eq1", ih.eq1_ok);
  if (ih.eq2_ok) r.checks.emplace_back("eq2", *ih.eq2_ok);
  if (ih.eq4_ok) r.checks.emplace_back("eq4", *ih.eq4_ok);
  if (ih.proposition_ok) r.checks.emplace_back("proposition", *ih.proposition_ok);
  r.checks.emplace_back("bettizahlen", ih.bettizahlen_ok);
  r.checks.emplace_back("hard_lefschetz", ih.lefschetz_ok);
  if (ih.hauptsatz) r.checks.emplace_back("hauptsatz_via_sheaf", ih.hauptsatz->ok());
  return r;
}

}  // namespace ghv
