#include "aniso/certify.hpp"
#include "aniso/falsify.hpp"
#include "aniso/law_io.hpp"
#include "aniso/solver.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using aniso::json;

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  bool quiet = false;
};

int fail_parse(const GlobalOpts& g, const std::string& path, const std::string& what) {
  if (!g.quiet) std::cerr << "parse error in " << path << ": " << what << "\n";
  return 2;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);  // nlohmann reports byte offsets in its message
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

json manifest(const std::string& command, const json& config, std::uint64_t seed,
              const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["config_digest"] = aniso::canonical_digest(config);
  m["seed"] = seed;
  m["version"] = kVersion;
  m["timestamp"] = iso_timestamp();
  m["outputs"] = outputs;
  return m;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void emit(const GlobalOpts& g, const json& doc, const std::string& default_name) {
  std::string path = g.out.empty() ? default_name : g.out;
  write_text(path, doc.dump(2) + "\n");
  if (!g.quiet) std::cout << "wrote " << path << "\n";
}

// ---- problem files -----------------------------------------------------------------

aniso::ScalarField2D builtin_field(const std::string& name) {
  const double pi = std::acos(-1.0);
  if (name == "zero") return [](double, double) { return 0.0; };
  if (name == "one") return [](double, double) { return 1.0; };
  if (name == "xlinear") return [](double x, double) { return x; };
  if (name == "cospi") return [pi](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); };
  if (name == "bump")
    return [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  throw std::runtime_error("unknown builtin field: " + name);
}

aniso::Field cells_from_json(const json& j, int nx, int ny) {
  aniso::Field f(nx, ny);
  if (static_cast<int>(j.size()) != nx) throw std::runtime_error("cell array: wrong row count");
  for (int i = 0; i < nx; ++i) {
    if (static_cast<int>(j[i].size()) != ny)
      throw std::runtime_error("cell array: wrong column count");
    for (int jj = 0; jj < ny; ++jj) f(i, jj) = j[i][jj].get<double>();
  }
  return f;
}

struct LoadedProblem {
  aniso::ProblemData prob;
  aniso::SolverConfig cfg;
  std::optional<aniso::StaggeredState> exact;  // set for manufactured cases
  json config;                                 // the raw document (for the manifest)
};

LoadedProblem load_problem(const std::string& path) {
  LoadedProblem lp;
  lp.config = load_json(path);
  std::string base_dir = std::filesystem::path(path).parent_path().string();
  const json& j = lp.config;

  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (s.contains("epsilon_schedule"))
      lp.cfg.epsilon_schedule = s["epsilon_schedule"].get<std::vector<double>>();
    if (s.contains("picard_tol")) lp.cfg.picard_tol = s["picard_tol"].get<double>();
    if (s.contains("max_picard")) lp.cfg.max_picard = s["max_picard"].get<int>();
    if (s.contains("p_floor")) lp.cfg.p_floor = s["p_floor"].get<double>();
  }

  aniso::Grid2D grid;
  if (j.contains("grid")) {
    grid.nx = j["grid"].value("nx", 0);
    grid.ny = j["grid"].value("ny", 0);
    grid.lx = j["grid"].value("lx", 1.0);
    grid.ly = j["grid"].value("ly", 1.0);
  }

  if (j.contains("manufactured")) {
    auto [prob, exact] = aniso::manufactured_case(j["manufactured"].get<std::string>(), grid);
    lp.prob = prob;
    lp.exact = exact;
    return lp;
  }

  grid.validate();
  aniso::ConstitutiveLaw law;
  if (j.contains("law_file")) {
    std::filesystem::path lf = j["law_file"].get<std::string>();
    if (lf.is_relative() && !base_dir.empty()) lf = std::filesystem::path(base_dir) / lf;
    law = aniso::law_from_json(load_json(lf.string()));
  }
  else if (j.contains("law"))
    law = aniso::law_from_json(j["law"]);
  else
    throw std::runtime_error("problem file: missing law/law_file/manufactured");

  auto field_spec = [&](const char* key) -> aniso::ScalarField2D {
    if (!j.contains(key)) return builtin_field("zero");
    const json& spec = j[key];
    if (spec.is_string()) return builtin_field(spec.get<std::string>());
    if (spec.contains("builtin")) return builtin_field(spec["builtin"].get<std::string>());
    return nullptr;  // array form, handled below
  };

  aniso::ScalarField2D ffn = field_spec("f");
  aniso::ScalarField2D pfn = field_spec("psi");
  lp.prob = aniso::discretize(grid, law, ffn ? ffn : builtin_field("zero"),
                              pfn ? pfn : builtin_field("zero"));
  if (!ffn) lp.prob.f = cells_from_json(j["f"]["cells"], grid.nx, grid.ny);
  if (!pfn) {
    const json& p = j["psi"];
    auto arr = [](const json& a) {
      Eigen::ArrayXd v(a.size());
      for (size_t k = 0; k < a.size(); ++k) v[k] = a[k].get<double>();
      return v;
    };
    lp.prob.psi.left = arr(p.at("left"));
    lp.prob.psi.right = arr(p.at("right"));
    lp.prob.psi.bottom = arr(p.at("bottom"));
    lp.prob.psi.top = arr(p.at("top"));
  }
  return lp;
}

// ---- CSV dumps ---------------------------------------------------------------------

std::string csv_cells(const aniso::Grid2D& g, const aniso::Field& q, const char* valname) {
  std::ostringstream os;
  os.precision(17);
  os << "i,j,x,y," << valname << "\n";
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      os << i << ',' << j << ',' << (i + 0.5) * g.hx() << ',' << (j + 0.5) * g.hy() << ','
         << q(i, j) << "\n";
  return os.str();
}

std::string csv_faces(const aniso::Grid2D& g, const aniso::Field& q, bool vertical,
                      const char* valname) {
  std::ostringstream os;
  os.precision(17);
  os << "i,j,x,y," << valname << "\n";
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) {
      double x = vertical ? i * g.hx() : (i + 0.5) * g.hx();
      double y = vertical ? (j + 0.5) * g.hy() : j * g.hy();
      os << i << ',' << j << ',' << x << ',' << y << ',' << q(i, j) << "\n";
    }
  return os.str();
}

// ---- subcommands -------------------------------------------------------------------

int cmd_certify(const GlobalOpts& g, const std::string& config_path) {
  json config;
  aniso::ConstitutiveLaw law;
  try {
    config = load_json(config_path);
    law = aniso::law_from_json(config);
    law.validate();
  } catch (const std::exception& e) {
    return fail_parse(g, config_path, e.what());
  }

  std::vector<aniso::Certificate> certs = aniso::certify_all(law);
  const aniso::Certificate& combined = certs.back();

  json doc;
  doc["certificates"] = json::array();
  for (const auto& c : certs) doc["certificates"].push_back(aniso::certificate_to_json(c));

  // Negative or inconclusive outcomes invoke the falsifier: a concrete violation is the
  // only thing that upgrades "no certificate applies" to NotMonotone.
  int code = 10;
  aniso::Verdict verdict = combined.verdict;
  if (!combined.certified()) {
    aniso::SearchConfig sc;
    sc.seed = g.seed;
    if (auto v = aniso::search_violation(law, sc)) {
      doc["violation"] = aniso::violation_to_json(*v);
      verdict = aniso::Verdict::NotMonotone;
    }
    code = verdict == aniso::Verdict::NotMonotone ? 20 : 10;
  } else {
    code = 0;
  }
  doc["verdict"] = aniso::to_string(verdict);

  std::string out_path = g.out.empty() ? "certify.json" : g.out;
  doc["manifest"] = manifest("certify", config, g.seed, {out_path});
  emit(g, doc, out_path);
  if (!g.quiet) std::cout << "verdict: " << aniso::to_string(combined.verdict) << "\n";
  return code;
}

int cmd_falsify(const GlobalOpts& g, const std::string& config_path, long samples) {
  json config;
  aniso::ConstitutiveLaw law;
  try {
    config = load_json(config_path);
    law = aniso::law_from_json(config);
    law.validate();
  } catch (const std::exception& e) {
    return fail_parse(g, config_path, e.what());
  }

  aniso::SearchConfig sc;
  sc.samples = samples;
  sc.seed = g.seed;
  auto v = aniso::search_violation(law, sc);

  json doc;
  doc["samples"] = samples;
  doc["violation"] = v ? aniso::violation_to_json(*v) : json("none");
  std::string out_path = g.out.empty() ? "falsify.json" : g.out;
  doc["manifest"] = manifest("falsify", config, g.seed, {out_path});
  emit(g, doc, out_path);
  if (!g.quiet)
    std::cout << (v ? "violation found, product " + std::to_string(v->value)
                    : std::string("no violation found"))
              << "\n";
  return v ? 0 : 1;
}

int cmd_solve(const GlobalOpts& g, const std::string& problem_path, const std::string& out_dir,
              bool assume_metadata) {
  LoadedProblem lp;
  try {
    lp = load_problem(problem_path);
  } catch (const std::exception& e) {
    return fail_parse(g, problem_path, e.what());
  }

  // Certification gate: the solver's assumptions require a power-monotone law with known
  // order/constant; certify implicitly unless the user takes responsibility.
  if (!assume_metadata) {
    aniso::Certificate cert = aniso::certify_composite(lp.prob.law);
    if (!cert.power()) {
      if (!g.quiet)
        std::cerr << "law not certifiably power-monotone (" << aniso::to_string(cert.verdict)
                  << "); rerun with --assume-metadata to proceed on user metadata\n";
      return 4;
    }
    aniso::apply_certificate(lp.prob.law, cert);
  } else if (!lp.prob.law.metadata) {
    if (!g.quiet) std::cerr << "--assume-metadata given but the law carries no metadata\n";
    return 4;
  }

  std::string dir = out_dir.empty() ? "." : out_dir;
  auto in_dir = [&](const std::string& name) { return dir + "/" + name; };

  aniso::SolveReport rep;
  try {
    rep = aniso::solve_steady(lp.prob, lp.cfg);
  } catch (const aniso::NoConvergence& nc) {
    std::ostringstream os;
    os.precision(17);
    os << "iteration,residual\n";
    for (size_t k = 0; k < nc.residual_history.size(); ++k)
      os << k << ',' << nc.residual_history[k] << "\n";
    write_text(in_dir("residual_history.csv"), os.str());
    if (!g.quiet) std::cerr << "no convergence: " << nc.what() << "\n";
    return 3;
  }

  const aniso::Grid2D& grid = lp.prob.grid;
  write_text(in_dir("pressure.csv"), csv_cells(grid, rep.state.p, "p"));
  write_text(in_dir("velocity_x.csv"), csv_faces(grid, rep.state.ux, true, "ux"));
  write_text(in_dir("velocity_y.csv"), csv_faces(grid, rep.state.uy, false, "uy"));
  write_text(in_dir("divergence.csv"),
             csv_cells(grid, aniso::divergence(grid, rep.state), "div_u"));

  json doc;
  doc["final_residual"] = rep.final_residual;
  doc["norms"] = {{"u", rep.norm_u},     {"div_u", rep.norm_div}, {"p", rep.norm_p},
                  {"f", rep.norm_f},     {"psi", rep.norm_psi}};
  doc["estimate_ratio"] = rep.estimate_ratio;
  doc["stages"] = json::array();
  for (const auto& st : rep.stages)
    doc["stages"].push_back(
        {{"epsilon", st.epsilon}, {"iterations", st.iterations}, {"residual", st.residual}});
  if (lp.exact) {
    aniso::StaggeredState diff;
    diff.ux = rep.state.ux - lp.exact->ux;
    diff.uy = rep.state.uy - lp.exact->uy;
    diff.p = rep.state.p - lp.exact->p;
    double s = lp.prob.s();
    doc["manufactured_error"] = {{"u", aniso::norm_velocity(grid, diff, s)},
                                 {"p", aniso::norm_cells(grid, diff.p, lp.prob.r())}};
  }
  doc["assume_metadata"] = assume_metadata;
  std::vector<std::string> outputs = {in_dir("report.json"), in_dir("pressure.csv"),
                                      in_dir("velocity_x.csv"), in_dir("velocity_y.csv"),
                                      in_dir("divergence.csv")};
  doc["manifest"] = manifest("solve", lp.config, g.seed, outputs);
  write_text(in_dir("report.json"), doc.dump(2) + "\n");
  if (!g.quiet)
    std::cout << "converged, final residual " << rep.final_residual << ", report in " << dir
              << "\n";
  return 0;
}

int cmd_dependence(const GlobalOpts& g, const std::string& problem_path,
                   const std::string& perturb, const std::vector<double>& scales) {
  LoadedProblem lp;
  try {
    lp = load_problem(problem_path);
  } catch (const std::exception& e) {
    return fail_parse(g, problem_path, e.what());
  }

  aniso::Perturbation pert;
  const double pi = std::acos(-1.0);
  const aniso::Grid2D& grid = lp.prob.grid;
  if (perturb == "f") {
    pert.df = aniso::Field(grid.nx, grid.ny);
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.ny; ++j)
        pert.df(i, j) =
            std::sin(pi * (i + 0.5) * grid.hx()) * std::sin(pi * (j + 0.5) * grid.hy());
  } else if (perturb == "psi") {
    pert.dpsi = aniso::BoundaryTrace::zero(grid);
    for (int j = 0; j < grid.ny; ++j) {
      double y = (j + 0.5) * grid.hy();
      pert.dpsi.left[j] = std::sin(pi * y);
      pert.dpsi.right[j] = std::sin(pi * y);
    }
  } else {
    return fail_parse(g, problem_path, "perturbation must be 'f' or 'psi'");
  }

  aniso::DependenceResult res;
  try {
    res = aniso::dependence_experiment(lp.prob, pert, scales, lp.cfg);
  } catch (const aniso::NoConvergence& nc) {
    if (!g.quiet) std::cerr << "no convergence during dependence sweep: " << nc.what() << "\n";
    return 3;
  }

  std::ostringstream os;
  os.precision(17);
  os << "delta,Delta,slope\n";
  for (const auto& row : res.rows)
    os << row.delta << ',' << row.change << ','
       << (res.slope_defined ? std::to_string(res.slope) : std::string("nan")) << "\n";
  std::string out_path = g.out.empty() ? "dependence.csv" : g.out;
  write_text(out_path, os.str());

  json doc;
  doc["slope_defined"] = res.slope_defined;
  if (res.slope_defined) doc["slope"] = res.slope;
  doc["manifest"] = manifest("dependence", lp.config, g.seed, {out_path});
  write_text(out_path + ".manifest.json", doc.dump(2) + "\n");
  if (!g.quiet) {
    if (res.slope_defined)
      std::cout << "fitted slope " << res.slope << ", table in " << out_path << "\n";
    else
      std::cout << "slope undefined (degenerate table), table in " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic Forchheimer toolbox: certify, falsify, solve, dependence"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "Random seed for sampling-based commands");
  app.add_option("--out", g.out, "Output file (commands with a single output)");
  app.add_option("--format", g.format, "Output format hint (json|csv)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--quiet", g.quiet, "Suppress progress chatter");

  std::string config_path, problem_path, out_dir, perturb = "f";
  long samples = 100000;
  bool assume_metadata = false;
  std::vector<double> scales = {1e-1, 1e-2, 1e-3, 1e-4};

  CLI::App* certify = app.add_subcommand("certify", "Certify monotonicity of a law file");
  certify->add_option("config", config_path, "Law JSON file")->required();

  CLI::App* falsify = app.add_subcommand("falsify", "Search for a monotonicity violation");
  falsify->add_option("config", config_path, "Law JSON file")->required();
  falsify->add_option("--samples", samples, "Sample budget");

  CLI::App* solve = app.add_subcommand("solve", "Solve the steady problem");
  solve->add_option("problem", problem_path, "Problem JSON file")->required();
  solve->add_option("--out-dir", out_dir, "Directory for report and CSV dumps");
  solve->add_flag("--assume-metadata", assume_metadata,
                  "Skip implicit certification and trust the law metadata");

  CLI::App* dependence = app.add_subcommand("dependence", "Data-dependence experiment");
  dependence->add_option("problem", problem_path, "Problem JSON file")->required();
  dependence->add_option("--perturb", perturb, "Which datum to perturb (f|psi)");
  dependence->add_option("--scales", scales, "Perturbation scales");

  CLI11_PARSE(app, argc, argv);

  try {
    if (certify->parsed()) return cmd_certify(g, config_path);
    if (falsify->parsed()) return cmd_falsify(g, config_path, samples);
    if (solve->parsed()) return cmd_solve(g, problem_path, out_dir, assume_metadata);
    if (dependence->parsed()) return cmd_dependence(g, problem_path, perturb, scales);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
