#pragma once

#include "aniso/constitutive.hpp"

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aniso {

using Field = Eigen::ArrayXXd;  // (i, j) indexed, i along x

struct Grid2D {
  int nx = 0, ny = 0;
  double lx = 1.0, ly = 1.0;
  double hx() const { return lx / nx; }
  double hy() const { return ly / ny; }
  void validate() const {
    if (nx < 2 || ny < 2 || lx <= 0 || ly <= 0)
      throw std::invalid_argument("Grid2D: need nx,ny >= 2 and positive lengths");
  }
};

// MAC staggering: u_x on vertical faces (nx+1 x ny), u_y on horizontal faces
// (nx x ny+1), p at cell centers (nx x ny).
struct StaggeredState {
  Field ux, uy, p;
  static StaggeredState zero(const Grid2D& g) {
    StaggeredState s;
    s.ux = Field::Zero(g.nx + 1, g.ny);
    s.uy = Field::Zero(g.nx, g.ny + 1);
    s.p = Field::Zero(g.nx, g.ny);
    return s;
  }
};

// Dirichlet pressure trace sampled at boundary-face midpoints.
struct BoundaryTrace {
  Eigen::ArrayXd left, right;  // size ny
  Eigen::ArrayXd bottom, top;  // size nx
  static BoundaryTrace zero(const Grid2D& g) {
    BoundaryTrace t;
    t.left = t.right = Eigen::ArrayXd::Zero(g.ny);
    t.bottom = t.top = Eigen::ArrayXd::Zero(g.nx);
    return t;
  }
  double max_abs() const;
};

struct ProblemData {
  Grid2D grid;
  ConstitutiveLaw law;
  Field f;            // cell sources
  BoundaryTrace psi;  // pressure trace
  double s() const;   // growth exponent (metadata preferred)
  double r() const { return s() / (s() - 1.0); }
};

struct SolverConfig {
  std::vector<double> epsilon_schedule = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 0.0};
  double picard_tol = 1e-10;
  int max_picard = 500;
  double p_floor = 1e-8;
};

struct StageInfo {
  double epsilon = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

struct SolveReport {
  StaggeredState state;
  std::vector<StageInfo> stages;
  std::vector<StaggeredState> stage_states;
  double final_residual = 0.0;
  double norm_u = 0.0, norm_div = 0.0, norm_p = 0.0;
  double norm_f = 0.0, norm_psi = 0.0;
  double estimate_ratio = 0.0;
};

struct NoConvergence : std::runtime_error {
  std::vector<double> residual_history;
  explicit NoConvergence(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), residual_history(std::move(history)) {}
};

using ScalarField2D = std::function<double(double, double)>;

ProblemData discretize(const Grid2D& grid, const ConstitutiveLaw& law, const ScalarField2D& f_fn,
                       const ScalarField2D& psi_fn);

// Discrete divergence, cellwise.
Field divergence(const Grid2D& g, const StaggeredState& s);

// Reconstructed full velocity at a vertical/horizontal face (tangential part averaged
// from the adjacent faces).
Vec face_velocity_vertical(const Grid2D& g, const StaggeredState& s, int i, int j);
Vec face_velocity_horizontal(const Grid2D& g, const StaggeredState& s, int i, int j);

// Max absolute per-unit-volume residual of the regularized discrete system.
double residual(const ProblemData& prob, const StaggeredState& state, double epsilon);

StaggeredState solve_stage(const ProblemData& prob, const StaggeredState& state0, double epsilon,
                           const SolverConfig& cfg, StageInfo* info = nullptr);

SolveReport solve_steady(const ProblemData& prob, const SolverConfig& cfg = {});

// Manufactured catalog: "M0" (linear law, p = x) and "M1" (F(u) = u + |u|u,
// p = cos(pi x) cos(pi y)); the returned pair solves the discrete system exactly.
std::pair<ProblemData, StaggeredState> manufactured_case(const std::string& name,
                                                         const Grid2D& grid);

// Discrete norms.
double norm_velocity(const Grid2D& g, const StaggeredState& s, double exponent);
double norm_cells(const Grid2D& g, const Field& q, double exponent);
double norm_trace(const Grid2D& g, const BoundaryTrace& psi, double exponent);

struct Perturbation {
  Field df;            // cell-sized, may be zero-sized for none
  BoundaryTrace dpsi;  // trace perturbation
};

struct DependenceRow {
  double delta = 0.0;  // perturbation norm
  double change = 0.0; // solution change in the combined discrete norm
};

struct DependenceResult {
  std::vector<DependenceRow> rows;
  double slope = 0.0;
  bool slope_defined = false;
};

DependenceResult dependence_experiment(const ProblemData& prob, const Perturbation& pert,
                                       const std::vector<double>& scales,
                                       const SolverConfig& cfg = {});

// sup over a probe set of face fields v of (sum_c vol div(v)_c q_c) / ||v||_V with
// ||v||_V the discrete W_s(div) norm. Diagnostic only.
double discrete_infsup_diagnostic(const Grid2D& grid, const Field& q, double s = 3.0);

}  // namespace aniso
