#include "dlv/io.hpp"

#include <fstream>
#include <ostream>

#include "dlv/errors.hpp"

namespace dlv {

using nlohmann::json;

json number_to_json(const Number& n) {
  if (n.exact()) return json::array({n.rational()->num, n.rational()->den});
  return n.value();
}

Number number_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
      throw DlvError("rational must be [numerator, denominator]");
    }
    auto num = j[0].get<std::int64_t>(), den = j[1].get<std::int64_t>();
    if (den == 0) throw DlvError("rational with zero denominator");
    return Number(num, den);
  }
  if (j.is_number_integer()) return Number(j.get<std::int64_t>(), 1);
  if (j.is_number()) return Number(j.get<double>());
  if (j.is_string()) {
    auto n = Number::parse(j.get<std::string>());
    if (!n) throw DlvError("cannot parse number '" + j.get<std::string>() + "'");
    return *n;
  }
  throw DlvError("expected a number, got " + j.dump());
}

namespace {

std::vector<Number> numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw DlvError(std::string("model: missing array '") + key + "'");
  std::vector<Number> out;
  for (const auto& v : j[key]) out.push_back(number_from_json(v));
  return out;
}

}  // namespace

json model_to_json(const DlvModel& model) {
  json j;
  j["name"] = model.name();
  j["m"] = model.m();
  json lam = json::array(), a = json::array(), b = json::array();
  for (int i = 0; i < model.m(); ++i) {
    lam.push_back(number_to_json(model.lambda_exact()[i]));
    a.push_back(number_to_json(model.a_exact()[i]));
    json row = json::array();
    for (int k = 0; k < model.m(); ++k) row.push_back(number_to_json(model.b_exact()[i][k]));
    b.push_back(row);
  }
  j["lambda"] = lam;
  j["a"] = a;
  j["b"] = b;
  return j;
}

DlvModel model_from_json(const json& j) {
  if (!j.is_object()) throw DlvError("model: expected an object");
  auto lam = numbers(j, "lambda");
  auto a = numbers(j, "a");
  if (!j.contains("b") || !j["b"].is_array()) throw DlvError("model: missing matrix 'b'");
  std::vector<std::vector<Number>> b;
  for (const auto& row : j["b"]) {
    if (!row.is_array()) throw DlvError("model: 'b' rows must be arrays");
    std::vector<Number> r;
    for (const auto& v : row) r.push_back(number_from_json(v));
    b.push_back(r);
  }
  if (j.contains("m") && j["m"].get<int>() != static_cast<int>(lam.size())) {
    throw DimensionError("model: 'm' does not match the length of lambda");
  }
  return DlvModel::build(lam, a, b, j.value("name", std::string()));
}

json spec_to_json(const SolutionSpec& spec) {
  json j;
  j["id"] = spec.id;
  json p = json::object();
  for (const auto& [k, v] : spec.params) p[k] = number_to_json(v);
  j["params"] = p;
  return j;
}

SolutionSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("id")) throw DlvError("solution spec: missing 'id'");
  SolutionSpec s;
  s.id = j["id"].get<std::string>();
  if (j.contains("params")) {
    for (const auto& [k, v] : j["params"].items()) s.params[k] = number_from_json(v);
  }
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DlvError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DlvError("'" + path + "': " + e.what());
  }
}

void write_state_csv_header(std::ostream& os, int m) {
  os << "t,x";
  for (int i = 1; i <= m; ++i) os << ",u" << i;
  os << '\n';
}

void write_state_rows(std::ostream& os, double t, const std::vector<double>& xs, const std::vector<Vec>& values) {
  for (std::size_t k = 0; k < xs.size(); ++k) {
    os << format_double(t) << ',' << format_double(xs[k]);
    for (const auto& comp : values) os << ',' << format_double(comp[k]);
    os << '\n';
  }
}

void write_grid_csv(std::ostream& os, const ClosedFormSolution& sol, const std::vector<double>& ts,
                    const std::vector<double>& xs) {
  write_state_csv_header(os, sol.m());
  for (double t : ts) {
    for (double x : xs) {
      Vec u = eval(sol, t, x);
      os << format_double(t) << ',' << format_double(x);
      for (double v : u) os << ',' << format_double(v);
      os << '\n';
    }
  }
}

}  // namespace dlv
