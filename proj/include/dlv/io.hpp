#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlv/model.hpp"
#include "dlv/number.hpp"
#include "dlv/solutions.hpp"

namespace dlv {

// Numbers: exact rationals as [num, den], anything else as a plain float.
// Strings "p/q" or decimals are accepted on input.
nlohmann::json number_to_json(const Number& n);
Number number_from_json(const nlohmann::json& j);

// {"name": ..., "m": 2, "lambda": [...], "a": [...], "b": [[...], ...]}
nlohmann::json model_to_json(const DlvModel& model);
DlvModel model_from_json(const nlohmann::json& j);

// {"id": "CH12_TW", "params": {"a": 25, "e": 2}}
struct SolutionSpec {
  std::string id;
  ParamMap params;
};
nlohmann::json spec_to_json(const SolutionSpec& spec);
SolutionSpec spec_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

// Header t,x,u1[,u2[,u3]]; rows over ts (outer) and xs (inner), 17 significant digits.
void write_grid_csv(std::ostream& os, const ClosedFormSolution& sol, const std::vector<double>& ts,
                    const std::vector<double>& xs);
void write_state_csv_header(std::ostream& os, int m);
void write_state_rows(std::ostream& os, double t, const std::vector<double>& xs, const std::vector<Vec>& values);

}  // namespace dlv
