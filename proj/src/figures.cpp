#include "dlv/figures.hpp"

#include <cmath>
#include <fstream>

#include "dlv/errors.hpp"
#include "dlv/io.hpp"

namespace dlv {

ClosedFormSolution FigurePreset::instantiate() const { return dlv::instantiate(solution_id, params); }

const std::vector<FigurePreset>& figure_presets() {
  using N = Number;
  static const std::vector<FigurePreset> presets = [] {
    std::vector<FigurePreset> v;
    v.push_back({"4-1", "CH12_TW", {{"a", 25}, {"e", 2}}, {0, 3, -10, 10}, 31, 101,
                 "three-species front, v survives"});
    v.push_back({"6-1", "CD11_COMP",
                 {{"a1", 3}, {"a2", 4}, {"b", N(1, 2)}, {"c", N(1, 5)}, {"lambda1", 2}, {"lambda2", 1}, {"C2", N(1, 3)}},
                 {0, 3, 0, M_PI / std::sqrt(2.0)}, 31, 101, "competition on the Dirichlet interval, u dominates"});
    // kappa = sqrt(6); zero-flux window [pi/kappa (1/2), pi/kappa (3/2)]
    const double k = std::sqrt(6.0);
    v.push_back({"6-2", "CD21_CASE1",
                 {{"a1", 3}, {"a2", 2}, {"b", N(3, 2)}, {"c", 3}, {"lambda1", N(3, 4)}, {"lambda2", 1},
                  {"C1", -2}, {"C2", 5}, {"alpha0", 2}, {"alpha1", 1}, {"alpha2", 0}},
                 {0, 3, M_PI / k * 0.5, M_PI / k * 1.5}, 31, 101, "competition under zero-flux conditions"});
    const ParamMap cd13 = {{"a1", N(9, 2)}, {"a2", 2},        {"lambda1", 1}, {"lambda2", 2},
                           {"b", N(1, 2)},  {"c", N(3, 4)},   {"e", N(1, 7)}, {"C1", 0}, {"C2", 1}};
    ParamMap f71 = cd13, f72 = cd13;
    f71["alpha"] = -1;
    f71["v0"] = N(3, 2);
    f72["alpha"] = N(3, 2);
    f72["v0"] = 2;
    const double L = M_PI / std::sqrt(5.0);
    v.push_back({"7-1", "CD13_3COMP", f71, {0, 3, 0, L}, 31, 101, "v and w coexist, u dies out"});
    v.push_back({"7-2", "CD13_3COMP", f72, {0, 3, 0, L}, 31, 101, "v dominates, u and w die out"});
    return v;
  }();
  return presets;
}

const FigurePreset& figure_preset(const std::string& fig) {
  for (const auto& p : figure_presets())
    if (p.fig == fig) return p;
  throw DlvError("unknown figure '" + fig + "' (expected 4-1, 6-1, 6-2, 7-1 or 7-2)");
}

std::filesystem::path write_figure(const FigurePreset& p, const std::filesystem::path& dir) {
  const ClosedFormSolution sol = p.instantiate();
  std::filesystem::create_directories(dir);
  const auto path = dir / ("fig_" + p.fig + ".csv");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_grid_csv(os, sol, linspace(p.window.t0, p.window.t1, p.nt), linspace(p.window.x0, p.window.x1, p.nx));
  if (!os) throw std::runtime_error("write to " + path.string() + " failed");
  return path;
}

}  // namespace dlv
