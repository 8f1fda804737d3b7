#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dlv/solutions.hpp"

namespace dlv {

// Figure id -> (solution id, caption parameters, sampling window).
struct FigurePreset {
  std::string fig;
  std::string solution_id;
  ParamMap params;
  Window window;  // t in [0, 3]
  int nt = 31, nx = 101;
  std::string description;

  ClosedFormSolution instantiate() const;
};

const std::vector<FigurePreset>& figure_presets();
const FigurePreset& figure_preset(const std::string& fig);  // DlvError for unknown ids

// Writes <dir>/fig_<id>.csv with columns t,x,u1.. sampled from the closed form; returns the path.
std::filesystem::path write_figure(const FigurePreset& p, const std::filesystem::path& dir);

}  // namespace dlv
