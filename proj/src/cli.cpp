#include "dlv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "dlv/errors.hpp"
#include "dlv/figures.hpp"
#include "dlv/io.hpp"
#include "dlv/model.hpp"
#include "dlv/reduction.hpp"
#include "dlv/simulate.hpp"
#include "dlv/solutions.hpp"
#include "dlv/tanh_engine.hpp"
#include "dlv/verify.hpp"

namespace dlv {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string id;
  bool all = false;
  std::vector<std::string> params;
  std::string model_file, solution, grid, scheme, out, preset, bc;
  double dt = 0.0, T = -1.0, tol = 0.0, perturb = 0.1;
  int stride = 0;
  bool dump = false;
};

const std::set<std::string> kFlags = {"all", "param", "model", "solution", "grid",    "dt",   "T",    "scheme",
                                      "out", "tol",   "preset", "bc",      "stride", "dump", "perturb", "help"};

ParamMap parse_params(const std::vector<std::string>& kv) {
  ParamMap p;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + s + "'");
    const auto v = Number::parse(s.substr(eq + 1));
    if (!v) throw UsageError("cannot parse value of parameter '" + s.substr(0, eq) + "'");
    p[s.substr(0, eq)] = *v;
  }
  return p;
}

double parse_double(const std::string& s, const std::string& what) {
  const auto v = Number::parse(s);
  if (!v) throw UsageError("cannot parse " + what + " '" + s + "'");
  return v->value();
}

Grid1D parse_grid(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) parts.push_back(tok);
  if (parts.size() != 3) throw UsageError("--grid expects A,B,nx, got '" + s + "'");
  const double A = parse_double(parts[0], "grid endpoint"), B = parse_double(parts[1], "grid endpoint");
  const double n = parse_double(parts[2], "node count");
  if (n != std::floor(n)) throw UsageError("node count must be an integer");
  try {
    return Grid1D(A, B, static_cast<int>(n));
  } catch (const DlvError& e) {
    throw UsageError(e.what());
  }
}

ClosedFormSolution make_solution(const std::string& id, const ParamMap& params) {
  if (!is_catalog_id(id)) throw UsageError("unknown solution id '" + id + "' (see 'list')");
  try {
    return instantiate(id, params);
  } catch (const DlvError& e) {
    throw UsageError(e.what());
  }
}

std::string fmt_vec(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + ")";
}

std::string fmt_params(const ParamMap& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : " ") + k + "=" + v.str();
  return s;
}

// "--a 25" becomes "--param a=25" when a is a parameter of the entry named on the command line.
std::vector<std::string> rewrite_param_flags(const std::vector<std::string>& args) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string id;
    if (is_catalog_id(args[i])) id = args[i];
    if (args[i] == "--solution" && i + 1 < args.size() && is_catalog_id(args[i + 1])) id = args[i + 1];
    if (args[i].rfind("--solution=", 0) == 0 && is_catalog_id(args[i].substr(11))) id = args[i].substr(11);
    if (id.empty()) continue;
    const auto& e = catalog_entry(id);
    names.insert(e.free_params.begin(), e.free_params.end());
    names.insert(e.optional_params.begin(), e.optional_params.end());
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--", 0) == 0 && a.size() > 2) {
      const auto eq = a.find('=');
      const std::string name = a.substr(2, eq == std::string::npos ? std::string::npos : eq - 2);
      if (!kFlags.count(name) && names.count(name)) {
        std::string value;
        if (eq != std::string::npos) {
          value = a.substr(eq + 1);
        } else if (i + 1 < args.size()) {
          value = args[++i];
        } else {
          throw UsageError("missing value for --" + name);
        }
        out.push_back("--param");
        out.push_back(name + "=" + value);
        continue;
      }
    }
    out.push_back(a);
  }
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + dir + "': " + ec.message());
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
  return os;
}

int cmd_list(std::ostream& out) {
  for (const auto& e : catalog())
    out << e.id << " m=" << e.m << (e.tanh_type ? " tanh " : " - ") << e.source << "\n";
  return kExitOk;
}

int cmd_show(const Options& o, std::ostream& out) {
  const ClosedFormSolution sol = make_solution(o.id, parse_params(o.params));
  const auto& e = catalog_entry(o.id);
  out << "id " << sol.id << "\n"
      << "source " << e.source << "\n"
      << "m " << sol.m() << "\n"
      << "params " << fmt_params(sol.params) << "\n"
      << "derived " << fmt_params(sol.derived) << "\n"
      << "model " << model_to_json(sol.model).dump() << "\n"
      << "window t=[" << format_double(sol.window.t0) << "," << format_double(sol.window.t1) << "] x=["
      << format_double(sol.window.x0) << "," << format_double(sol.window.x1) << "]\n";
  const auto a = time_asymptote(sol);
  out << "asymptote " << (a ? fmt_vec(*a) : "none") << "\n";
  if (sol.tanh_form) out << "tanh mu=" << format_double(sol.tanh_form->mu) << " alpha=" << format_double(sol.tanh_form->alpha) << "\n";
  for (const auto& r : e.restrictions) out << "restriction " << r << "\n";
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions vo;
  if (o.tol > 0) vo.tol = o.tol;
  VerifyReport r;
  if (o.all) {
    if (!o.id.empty()) throw UsageError("verify takes either an id or --all");
    if (!o.grid.empty()) vo.nx = parse_grid(o.grid).nx;
    r = verify_all(vo);
  } else {
    if (o.id.empty()) throw UsageError("verify needs a solution id or --all");
    ClosedFormSolution sol = make_solution(o.id, parse_params(o.params));
    if (!o.grid.empty()) {
      const Grid1D g = parse_grid(o.grid);
      sol.window.x0 = g.A;
      sol.window.x1 = g.B;
      vo.nx = g.nx;
    }
    out << "derived " << fmt_params(sol.derived) << "\n";
    r = verify_solution(sol, vo);
  }
  write_report(out, r);
  write_summary(out, r);
  if (!o.out.empty()) {
    ensure_dir(o.out);
    auto os = open_out(fs::path(o.out) / ("verify_" + (o.all ? std::string("all") : o.id) + ".txt"));
    write_report(os, r);
    write_summary(os, r);
  }
  return r.ok() ? kExitOk : kExitVerifyFailed;
}

int cmd_tanh(const Options& o, std::ostream& out) {
  const ClosedFormSolution sol = make_solution(o.id, parse_params(o.params));
  if (!sol.tanh_form) throw UsageError(o.id + " is not a tanh-type entry");
  const double tol = o.tol > 0 ? o.tol : 1e-12;
  const InstanceReport rep = verify_tanh_solution(sol);
  out << "degrees";
  for (int d : rep.degrees) out << " " << d;
  out << "\nequations " << rep.equations << "\n"
      << "max_residual " << format_double(rep.max_residual) << "\n"
      << "scaled_residual " << format_double(rep.scaled_residual) << "\n";
  if (o.dump) out << build_system(tanh_ansatz_from_form(sol.model, *sol.tanh_form)).dump();
  const RecoveryResult rec = recover_from_perturbed_seed(sol, o.perturb);
  out << "recovery seed=+" << format_double(o.perturb) << " status=" << status_name(rec.newton.status)
      << " iterations=" << rec.newton.iterations << " max_error=" << format_double(rec.max_error) << "\n";
  const bool ok = rep.max_residual <= tol && rec.newton.ok() && rec.max_error <= 1e-8;
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const ClosedFormSolution sol = make_solution(o.id, parse_params(o.params));
  ReductionTriple tr;
  try {
    tr = reduction_triple(sol);
  } catch (const UnsupportedError& e) {
    throw UsageError(e.what());
  }
  const double tol = o.tol > 0 ? o.tol : 1e-10;
  const ClosedFormSolution lifted = tr.ansatz.lift(tr.profile);
  const double lift = lift_difference(lifted, sol);
  const ConsistencyReport cr = consistency_check(tr.ansatz, tr.profile, sol.window);
  // Integrate the reduced system from the closed-form data at the left end of the profile range.
  const ProfilePoint p0 = tr.profile.eval(tr.profile.lo);
  Vec init = p0.phi;
  if (tr.ansatz.reduced.order == 2) init.insert(init.end(), p0.dphi.begin(), p0.dphi.end());
  const Profile num = integrate_reduced(tr.ansatz.reduced, init, tr.profile.lo, tr.profile.hi);
  double dev = 0.0;
  const auto ws = linspace(tr.profile.lo, num.hi, 201);
  for (double w : ws) {
    const Vec a = num.eval(w).phi, b = tr.profile.eval(w).phi;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]) / (1.0 + std::abs(b[i])));
  }
  out << "ansatz " << ansatz_name(tr.ansatz.id) << "\n"
      << "reduced " << tr.ansatz.reduced.id << " order=" << tr.ansatz.reduced.order << "\n"
      << "lift_difference " << format_double(lift) << "\n"
      << "reduced_residual " << format_double(cr.reduced_residual) << "\n"
      << "pde_residual " << format_double(cr.pde_residual) << "\n"
      << "numeric_profile_deviation " << format_double(dev) << " on [" << format_double(tr.profile.lo) << ","
      << format_double(num.hi) << "]" << (num.partial ? " partial: " + num.diagnostic : "") << "\n";
  if (!o.out.empty()) {
    ensure_dir(o.out);
    auto os = open_out(fs::path(o.out) / ("profile_" + o.id + ".csv"));
    write_profile_csv(os, tr.profile, linspace(tr.profile.lo, tr.profile.hi, 201));
  }
  const bool ok = lift >= 0 && lift <= 1e-12 && cr.reduced_residual <= tol;
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

DlvModel model_from_file(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("model file '" + path + "' not found");
  const auto j = read_json_file(path);
  return model_from_json(j.contains("model") ? j.at("model") : j);
}

int cmd_steady(const Options& o, std::ostream& out) {
  DlvModel model;
  if (!o.model_file.empty()) {
    model = model_from_file(o.model_file);
  } else if (!o.id.empty()) {
    model = make_solution(o.id, parse_params(o.params)).model;
  } else {
    throw UsageError("steady needs a solution id or --model");
  }
  const SteadyStateReport r = steady_states(model);
  for (const auto& s : r.states) {
    out << "steady " << fmt_vec(s.u) << " active";
    for (int i : s.active_set) out << " " << i + 1;
    out << "\n";
  }
  for (const auto& d : r.degenerate) {
    out << "degenerate active";
    for (int i : d.active_set) out << " " << i + 1;
    out << (d.consistent ? " consistent" : " inconsistent") << "\n";
  }
  const NondegeneracyReport nd = nondegeneracy(model);
  if (nd.applicable) {
    for (const auto& [name, ok] : nd.flags) out << "nondegeneracy " << name << " " << (ok ? "ok" : "violated") << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  std::optional<ClosedFormSolution> sol;
  std::optional<Grid1D> grid;
  std::optional<BoundaryCondition> bc;
  std::optional<FieldState> s0;
  DlvModel model;
  SimConfig cfg;
  cfg.T = 1.0;
  cfg.stride = o.stride;
  std::string asym_label;
  Scheme preset_scheme = Scheme::RK4;
  double preset_dt = 0.0;

  const ParamMap params = parse_params(o.params);
  if (!o.preset.empty()) {
    if (o.preset == "front") {
      sol = make_solution("FISHER_FRONT", params);
      const double L = truncation_half_width(*sol);
      grid = Grid1D(-L, L, 801);
      bc = BoundaryCondition::neumann(2);
    } else if (o.preset == "example1") {
      sol = make_solution("CD11_COMP", params);
      grid = Grid1D(0.0, M_PI / sol->derived.at("s").value(), 401);
      const double u = sol->params.at("a1").value() / sol->params.at("b").value();
      bc = BoundaryCondition::dirichlet({u, 0.0}, {u, 0.0});
      asym_label = "(a1/b, 0)";
    } else if (o.preset == "three-species") {
      sol = make_solution("CD13_3COMP", params);
      grid = Grid1D(0.0, M_PI / sol->derived.at("s").value(), 201);
      const auto& p = sol->params;
      const Vec ends = {0.0, p.at("v0").value() / p.at("c").value(),
                        (p.at("a2").value() - p.at("v0").value()) / p.at("e").value()};
      bc = BoundaryCondition::dirichlet(ends, ends);
      cfg.T = 10.0;
      preset_scheme = Scheme::IMEX;
      preset_dt = 1e-3;
      asym_label = "(0, v0/c, (a2-v0)/e)";
    } else {
      throw UsageError("unknown preset '" + o.preset + "' (expected front, example1 or three-species)");
    }
  } else if (!o.model_file.empty()) {
    if (!fs::exists(o.model_file)) throw UsageError("spec file '" + o.model_file + "' not found");
    const auto j = read_json_file(o.model_file);
    if (j.contains("id")) {
      SolutionSpec spec = spec_from_json(j);
      for (const auto& [k, v] : params) spec.params[k] = v;
      sol = make_solution(spec.id, spec.params);
    } else {
      model = model_from_json(j.at("model"));
      if (!j.contains("initial")) throw UsageError("model spec needs an 'initial' state");
      if (o.grid.empty()) throw UsageError("model spec needs --grid");
      grid = parse_grid(o.grid);
      s0 = constant_state(j.at("initial").get<Vec>(), *grid);
      if (j.contains("perturbation")) {
        const double eps = j.at("perturbation").get<double>();
        for (auto& v : s0->values)
          for (int k = 0; k < grid->nx; ++k) v[k] += eps * std::cos(M_PI * k / (grid->nx - 1));
      }
    }
  } else if (!o.solution.empty()) {
    sol = make_solution(o.solution, params);
  } else {
    throw UsageError("simulate needs --solution, --model or --preset");
  }
  if (sol) model = sol->model;
  if (!o.grid.empty()) grid = parse_grid(o.grid);
  if (!grid) grid = Grid1D(sol->window.x0, sol->window.x1, 201);
  if (!o.bc.empty()) {
    if (o.bc == "neumann") {
      bc = BoundaryCondition::neumann(model.m());
    } else if (o.bc == "exact") {
      if (!sol) throw UsageError("--bc exact needs a reference solution");
      bc = BoundaryCondition::from_solution(*sol);
    } else {
      throw UsageError("unknown boundary condition '" + o.bc + "' (expected neumann or exact)");
    }
  }
  if (!bc) bc = sol ? BoundaryCondition::from_solution(*sol) : BoundaryCondition::neumann(model.m());

  if (o.scheme.empty()) {
    cfg.scheme = preset_scheme;
  } else if (o.scheme == "rk4") {
    cfg.scheme = Scheme::RK4;
  } else if (o.scheme == "imex") {
    cfg.scheme = Scheme::IMEX;
  } else {
    throw UsageError("unknown scheme '" + o.scheme + "' (expected rk4 or imex)");
  }
  if (o.T >= 0) cfg.T = o.T;
  const double limit = max_stable_dt(model, *grid);
  if (o.dt > 0) {
    cfg.dt = o.dt;
  } else if (preset_dt > 0 && cfg.scheme == Scheme::IMEX) {
    cfg.dt = preset_dt;
  } else {
    cfg.dt = cfg.scheme == Scheme::RK4 ? 0.8 * limit : 1e-3;
  }
  if (cfg.scheme == Scheme::RK4 && cfg.dt > limit) throw CflError(cfg.dt, limit);

  if (!s0) s0 = init_from_solution(*sol, *grid, 0.0);
  const RunResult res = run(model, *grid, *s0, *bc, cfg);
  out << "scheme " << scheme_name(cfg.scheme) << " dt " << format_double(cfg.dt) << " T " << format_double(cfg.T)
      << " grid [" << format_double(grid->A) << "," << format_double(grid->B) << "] nx " << grid->nx << "\n";
  if (!o.out.empty()) {
    ensure_dir(o.out);
    auto csv = open_out(fs::path(o.out) / "snapshots.csv");
    bool header = true;
    for (const auto& s : res.snapshots) {
      write_snapshot_csv(csv, *grid, s, header);
      header = false;
    }
    auto man = open_out(fs::path(o.out) / "manifest.json");
    write_run_manifest(man, model, *grid, *bc, cfg);
    if (!csv || !man) throw std::runtime_error("write to '" + o.out + "' failed");
  }
  if (res.blew_up) {
    out << res.message << "\n" << "partial trajectory with " << res.snapshots.size() << " snapshots\n";
    return kExitRuntime;
  }
  const FieldState& fin = res.final_state();
  if (sol) {
    const auto [linf, l2] = error_vs_solution(*grid, fin, *sol);
    out << "final t " << format_double(fin.t) << " Linf " << format_double(linf) << " L2 " << format_double(l2) << "\n";
    if (const auto a = time_asymptote(*sol)) {
      double dev = 0.0;
      for (int i = 0; i < model.m(); ++i)
        for (double v : fin.values[i]) dev = std::max(dev, std::abs(v - (*a)[i]));
      out << "asymptote " << (asym_label.empty() ? "" : asym_label + " = ") << fmt_vec(*a) << " max deviation "
          << format_double(dev) << "\n";
    }
  } else {
    for (int i = 0; i < model.m(); ++i) {
      const auto [lo, hi] = std::minmax_element(fin.values[i].begin(), fin.values[i].end());
      out << "u" << i + 1 << " range [" << format_double(*lo) << "," << format_double(*hi) << "]\n";
    }
  }
  return kExitOk;
}

int cmd_figure(const Options& o, std::ostream& out) {
  std::vector<const FigurePreset*> figs;
  if (o.all) {
    for (const auto& p : figure_presets()) figs.push_back(&p);
  } else {
    if (o.id.empty()) throw UsageError("figure needs an id (4-1, 6-1, 6-2, 7-1, 7-2) or --all");
    try {
      figs.push_back(&figure_preset(o.id));
    } catch (const DlvError& e) {
      throw UsageError(e.what());
    }
  }
  const std::string dir = o.out.empty() ? "." : o.out;
  for (const auto* p : figs) {
    fs::path path;
    try {
      path = write_figure(*p, dir);
    } catch (const fs::filesystem_error& e) {
      throw std::runtime_error(e.what());
    }
    out << "fig " << p->fig << " " << p->solution_id << " " << fmt_params(p->instantiate().params) << " -> "
        << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Toolkit for diffusive Lotka-Volterra systems", "dlvkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_params = [&](CLI::App* c) {
    c->add_option("--param", o.params, "parameter k=v (repeatable); --k v also works for entry parameters")
        ->allow_extra_args(false);
  };
  auto* list = app.add_subcommand("list", "list catalog entries");
  auto* show = app.add_subcommand("show", "show an instantiated entry");
  show->add_option("id", o.id)->required();
  add_params(show);
  auto* verify = app.add_subcommand("verify", "residual, asymptote, tanh and invariant-surface checks");
  verify->add_option("id", o.id);
  verify->add_flag("--all", o.all, "every catalog entry and registered operator pair");
  verify->add_option("--grid", o.grid, "A,B,nx: x window and node count");
  verify->add_option("--tol", o.tol, "scaled residual tolerance");
  verify->add_option("--out", o.out, "directory for the report file");
  add_params(verify);
  auto* simulate = app.add_subcommand("simulate", "method-of-lines simulation");
  simulate->add_option("--solution", o.solution, "reference solution id");
  simulate->add_option("--model", o.model_file, "JSON spec: {id, params} or {model, initial}");
  simulate->add_option("--preset", o.preset, "front | example1 | three-species");
  simulate->add_option("--grid", o.grid, "A,B,nx");
  simulate->add_option("--dt", o.dt, "time step");
  simulate->add_option("--T", o.T, "final time");
  simulate->add_option("--scheme", o.scheme, "rk4 | imex");
  simulate->add_option("--bc", o.bc, "neumann | exact");
  simulate->add_option("--stride", o.stride, "snapshot stride");
  simulate->add_option("--out", o.out, "directory for snapshots.csv and manifest.json");
  add_params(simulate);
  auto* tanh = app.add_subcommand("tanh", "tanh-method system for a front entry");
  tanh->add_option("id", o.id)->required();
  tanh->add_flag("--dump", o.dump, "print the coefficient equations");
  tanh->add_option("--perturb", o.perturb, "relative seed perturbation for the recovery run");
  tanh->add_option("--tol", o.tol, "residual tolerance");
  add_params(tanh);
  auto* reduce = app.add_subcommand("reduce", "ansatz reduction of an entry");
  reduce->add_option("id", o.id)->required();
  reduce->add_option("--tol", o.tol, "reduced residual tolerance");
  reduce->add_option("--out", o.out, "directory for the profile CSV");
  add_params(reduce);
  auto* steady = app.add_subcommand("steady", "steady states of a model");
  steady->add_option("id", o.id);
  steady->add_option("--model", o.model_file, "model JSON file");
  add_params(steady);
  auto* figure = app.add_subcommand("figure", "surface CSVs from closed forms");
  figure->add_option("id", o.id);
  figure->add_flag("--all", o.all, "every figure preset");
  figure->add_option("--out", o.out, "output directory");

  try {
    std::vector<std::string> args = rewrite_param_flags(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (list->parsed()) return cmd_list(out);
    if (show->parsed()) return cmd_show(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (tanh->parsed()) return cmd_tanh(o, out);
    if (reduce->parsed()) return cmd_reduce(o, out);
    if (steady->parsed()) return cmd_steady(o, out);
    if (figure->parsed()) return cmd_figure(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CflError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RestrictionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace dlv
