#include "aniso/solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

namespace aniso {
namespace {

double sgnpow(double x, double e) {
  if (x == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(x), e), x);
}

struct FaceRef {
  bool vertical;
  int i, j;
};

std::vector<FaceRef> all_faces(const Grid2D& g) {
  std::vector<FaceRef> faces;
  faces.reserve((g.nx + 1) * g.ny + g.nx * (g.ny + 1));
  for (int i = 0; i <= g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) faces.push_back({true, i, j});
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j <= g.ny; ++j) faces.push_back({false, i, j});
  return faces;
}

double face_weight(const Grid2D& g, const FaceRef& f) {
  double w = g.hx() * g.hy();
  if (f.vertical ? (f.i == 0 || f.i == g.nx) : (f.j == 0 || f.j == g.ny)) w *= 0.5;
  return w;
}

// Cells adjacent to a face with their coupling coefficients: S_f(q) = sum c_k q(cell_k),
// the pairing of the face's test function with the discrete divergence.
struct FaceCells {
  int count = 0;
  int ci[2], cj[2];
  double coeff[2];
};

FaceCells face_cells(const Grid2D& g, const FaceRef& f) {
  FaceCells fc;
  if (f.vertical) {
    double h = g.hy();
    if (f.i > 0) {
      fc.ci[fc.count] = f.i - 1;
      fc.cj[fc.count] = f.j;
      fc.coeff[fc.count++] = +h;
    }
    if (f.i < g.nx) {
      fc.ci[fc.count] = f.i;
      fc.cj[fc.count] = f.j;
      fc.coeff[fc.count++] = -h;
    }
  } else {
    double h = g.hx();
    if (f.j > 0) {
      fc.ci[fc.count] = f.i;
      fc.cj[fc.count] = f.j - 1;
      fc.coeff[fc.count++] = +h;
    }
    if (f.j < g.ny) {
      fc.ci[fc.count] = f.i;
      fc.cj[fc.count] = f.j;
      fc.coeff[fc.count++] = -h;
    }
  }
  return fc;
}

double sface(const Grid2D& g, const FaceRef& f, const Field& q) {
  FaceCells fc = face_cells(g, f);
  double v = 0.0;
  for (int k = 0; k < fc.count; ++k) v += fc.coeff[k] * q(fc.ci[k], fc.cj[k]);
  return v;
}

// Boundary pairing of the pressure trace with the face's test function.
double tpsi(const Grid2D& g, const BoundaryTrace& psi, const FaceRef& f) {
  if (f.vertical) {
    if (f.i == 0) return -psi.left[f.j] * g.hy();
    if (f.i == g.nx) return +psi.right[f.j] * g.hy();
  } else {
    if (f.j == 0) return -psi.bottom[f.i] * g.hx();
    if (f.j == g.ny) return +psi.top[f.i] * g.hx();
  }
  return 0.0;
}

double& face_value(StaggeredState& s, const FaceRef& f) {
  return f.vertical ? s.ux(f.i, f.j) : s.uy(f.i, f.j);
}

double face_value(const StaggeredState& s, const FaceRef& f) {
  return f.vertical ? s.ux(f.i, f.j) : s.uy(f.i, f.j);
}

Vec face_velocity(const Grid2D& g, const StaggeredState& s, const FaceRef& f) {
  return f.vertical ? face_velocity_vertical(g, s, f.i, f.j)
                    : face_velocity_horizontal(g, s, f.i, f.j);
}

int face_component(const FaceRef& f) { return f.vertical ? 0 : 1; }

// Diagonal linearization coefficient at one face: the normal-component derivative of
// the law where it exists (Newton-type), falling back to the magnitude-frozen secant
// coefficient near the origin. Any positive value leaves the Picard fixed point exact
// because the right-hand side carries the matching defect.
double picard_coeff(const ConstitutiveLaw& law, const Vec& uf, int comp) {
  if (uf.norm() > 1e-10) {
    try {
      double d = law.jacobian(uf)(comp, comp);
      if (d > 1e-14) return d;
    } catch (const std::exception&) {
      // non-differentiable point: fall through to the secant coefficient
    }
  }
  double a = 0.0;
  for (const PowerTerm& t : law.terms) {
    double entry = t.A(comp, comp);
    if (t.alpha == 0.0)
      a += entry;
    else
      a += std::pow((t.weight() * uf).norm(), t.alpha) * entry;
  }
  if (law.trilinear) {
    double nu = std::max(uf.norm(), 1e-14);
    a += uf.dot(law.trilinear->A[comp] * uf) / nu;
  }
  return std::max(a, 1e-14);
}

double data_scale(const ProblemData& prob) {
  double fmax = prob.f.size() ? prob.f.abs().maxCoeff() : 0.0;
  return 1.0 + fmax + prob.psi.max_abs();
}

}  // namespace

double BoundaryTrace::max_abs() const {
  auto mx = [](const Eigen::ArrayXd& a) { return a.size() ? a.abs().maxCoeff() : 0.0; };
  return std::max(std::max(mx(left), mx(right)), std::max(mx(bottom), mx(top)));
}

double ProblemData::s() const {
  return law.metadata ? law.metadata->s : law.growth_exponent();
}

ProblemData discretize(const Grid2D& grid, const ConstitutiveLaw& law, const ScalarField2D& f_fn,
                       const ScalarField2D& psi_fn) {
  grid.validate();
  law.validate();
  ProblemData prob;
  prob.grid = grid;
  prob.law = law;
  prob.f = Field::Zero(grid.nx, grid.ny);
  double hx = grid.hx(), hy = grid.hy();
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j)
      prob.f(i, j) = f_fn((i + 0.5) * hx, (j + 0.5) * hy);
  prob.psi = BoundaryTrace::zero(grid);
  for (int j = 0; j < grid.ny; ++j) {
    double y = (j + 0.5) * hy;
    prob.psi.left[j] = psi_fn(0.0, y);
    prob.psi.right[j] = psi_fn(grid.lx, y);
  }
  for (int i = 0; i < grid.nx; ++i) {
    double x = (i + 0.5) * hx;
    prob.psi.bottom[i] = psi_fn(x, 0.0);
    prob.psi.top[i] = psi_fn(x, grid.ly);
  }
  return prob;
}

Field divergence(const Grid2D& g, const StaggeredState& s) {
  Field d(g.nx, g.ny);
  double hx = g.hx(), hy = g.hy();
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j)
      d(i, j) = (s.ux(i + 1, j) - s.ux(i, j)) / hx + (s.uy(i, j + 1) - s.uy(i, j)) / hy;
  return d;
}

Vec face_velocity_vertical(const Grid2D& g, const StaggeredState& s, int i, int j) {
  Vec u(2);
  u[0] = s.ux(i, j);
  double sum = 0.0;
  int cnt = 0;
  for (int ci : {i - 1, i}) {
    if (ci < 0 || ci >= g.nx) continue;
    sum += s.uy(ci, j) + s.uy(ci, j + 1);
    cnt += 2;
  }
  u[1] = sum / cnt;
  return u;
}

Vec face_velocity_horizontal(const Grid2D& g, const StaggeredState& s, int i, int j) {
  Vec u(2);
  u[1] = s.uy(i, j);
  double sum = 0.0;
  int cnt = 0;
  for (int cj : {j - 1, j}) {
    if (cj < 0 || cj >= g.ny) continue;
    sum += s.ux(i, cj) + s.ux(i + 1, cj);
    cnt += 2;
  }
  u[0] = sum / cnt;
  return u;
}

double residual(const ProblemData& prob, const StaggeredState& state, double epsilon) {
  const Grid2D& g = prob.grid;
  double s = prob.s(), r = prob.r();
  Field div = divergence(g, state);
  Field sig_div = div.unaryExpr([&](double d) { return sgnpow(d, s - 1.0); });
  double worst = 0.0;
  for (const FaceRef& f : all_faces(g)) {
    double w = face_weight(g, f);
    Vec uf = face_velocity(g, state, f);
    double F = prob.law.eval(uf)[face_component(f)];
    double rw = w * F + epsilon * sface(g, f, sig_div) - sface(g, f, state.p) +
                tpsi(g, prob.psi, f);
    worst = std::max(worst, std::abs(rw) / w);
  }
  for (int i = 0; i < g.nx; ++i)
    for (int j = 0; j < g.ny; ++j) {
      double rc = epsilon * sgnpow(state.p(i, j), r - 1.0) + div(i, j) - prob.f(i, j);
      worst = std::max(worst, std::abs(rc));
    }
  return worst;
}

StaggeredState solve_stage(const ProblemData& prob, const StaggeredState& state0, double epsilon,
                           const SolverConfig& cfg, StageInfo* info) {
  const Grid2D& g = prob.grid;
  double s = prob.s(), r = prob.r();
  double vol = g.hx() * g.hy();
  double tol = cfg.picard_tol * data_scale(prob);
  std::vector<FaceRef> faces = all_faces(g);
  int nf = static_cast<int>(faces.size());
  int nc = g.nx * g.ny;
  auto cell_id = [&](int i, int j) { return i * g.ny + j; };

  StaggeredState state = state0;
  std::vector<double> history;
  double res = residual(prob, state, epsilon);
  history.push_back(res);
  int stall = 0;
  int it = 0;
  for (; it < cfg.max_picard && res > tol; ++it) {
    Field div = divergence(g, state);

    // Face diagonal and lagged right-hand side for the law part. The regularizing
    // div term is kept implicit below (with frozen |div|^{s-2} coefficients) because
    // it dominates the face diagonal at fine grids.
    Vec adiag(nf), gvec(nf);
    for (int k = 0; k < nf; ++k) {
      const FaceRef& f = faces[k];
      double w = face_weight(g, f);
      Vec uf = face_velocity(g, state, f);
      int comp = face_component(f);
      double a = picard_coeff(prob.law, uf, comp);
      double F = prob.law.eval(uf)[comp];
      adiag[k] = w * a;
      gvec[k] = -(w * (F - a * face_value(state, f)) + tpsi(g, prob.psi, f));
    }

    // Newton coefficient and matching defect for the div regularization:
    // sigma_s(D) ~ kappa D + dref with kappa = (s-1)|D_k|^{s-2}, exact at D = D_k.
    Field kappa_c(g.nx, g.ny), dref(g.nx, g.ny);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        double d = div(i, j);
        kappa_c(i, j) = (s - 1.0) * std::pow(std::abs(d), s - 2.0);
        dref(i, j) = sgnpow(d, s - 1.0) - kappa_c(i, j) * d;
      }
    if (epsilon > 0.0)
      for (int k = 0; k < nf; ++k) gvec[k] -= epsilon * sface(g, faces[k], dref);

    // Cell coefficient (regularized) and defect-corrected right-hand side, so the fixed
    // point satisfies the exact |p|^{r-2} p term.
    Vec ccoef(nc), rhs2(nc);
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        double p = state.p(i, j);
        double creg = std::pow(cfg.p_floor + std::abs(p), r - 2.0);
        int c = cell_id(i, j);
        ccoef[c] = epsilon * vol * creg;
        rhs2[c] = vol * prob.f(i, j) - epsilon * vol * (sgnpow(p, r - 1.0) - creg * p);
      }

    // Coupled linearized system in (u, p):
    //   [ diag(w a) + (eps/vol) S diag(kappa) S^T    -S ] [u]   [g   ]
    //   [ S^T                                         C  ] [p] = [rhs2]
    // with S the face/cell coupling (S^T u = vol * div u) and kappa = |div u_k|^{s-2}.
    // At the Picard fixed point this reproduces the exact nonlinear equations.
    int ntot = nf + nc;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(16 * nf);
    Vec rhs(ntot);
    for (int k = 0; k < nf; ++k) {
      trips.emplace_back(k, k, adiag[k]);
      rhs[k] = gvec[k];
    }
    for (int c = 0; c < nc; ++c) {
      trips.emplace_back(nf + c, nf + c, ccoef[c]);
      rhs[nf + c] = rhs2[c];
    }
    // build per-cell face lists once per iteration for the grad-div block
    std::vector<std::vector<std::pair<int, double>>> cell_faces(nc);
    for (int k = 0; k < nf; ++k) {
      FaceCells fc = face_cells(g, faces[k]);
      for (int a = 0; a < fc.count; ++a)
        cell_faces[cell_id(fc.ci[a], fc.cj[a])].push_back({k, fc.coeff[a]});
    }
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) {
        int c = cell_id(i, j);
        double kappa = kappa_c(i, j);
        for (auto [fa, sa] : cell_faces[c]) {
          trips.emplace_back(fa, nf + c, -sa);    // -S p in the face equations
          trips.emplace_back(nf + c, fa, sa);     // S^T u in the cell equations
          if (epsilon > 0.0 && kappa > 0.0)
            for (auto [fb, sb] : cell_faces[c])
              trips.emplace_back(fa, fb, epsilon * kappa * sa * sb / vol);
        }
      }
    Eigen::SparseMatrix<double> mat(ntot, ntot);
    mat.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(mat);
    if (lu.info() != Eigen::Success)
      throw NoConvergence("solve_stage: linear system factorization failed", history);
    Vec sol = lu.solve(rhs);

    StaggeredState next = state;
    for (int k = 0; k < nf; ++k) face_value(next, faces[k]) = sol[k];
    for (int i = 0; i < g.nx; ++i)
      for (int j = 0; j < g.ny; ++j) next.p(i, j) = sol[nf + cell_id(i, j)];

    // Damped acceptance on the true residual.
    bool accepted = false;
    for (double omega = 1.0; omega > 1.0 / 512.0; omega *= 0.5) {
      StaggeredState cand;
      cand.ux = state.ux + omega * (next.ux - state.ux);
      cand.uy = state.uy + omega * (next.uy - state.uy);
      cand.p = state.p + omega * (next.p - state.p);
      double rc = residual(prob, cand, epsilon);
      if (rc < res * (1.0 - 1e-12)) {
        state = cand;
        res = rc;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (++stall > 15) throw NoConvergence("solve_stage: residual stalled", history);
    } else {
      stall = 0;
    }
    history.push_back(res);
  }
  if (res > tol) throw NoConvergence("solve_stage: max iterations exceeded", history);
  if (info) {
    info->epsilon = epsilon;
    info->iterations = it;
    info->residual = res;
  }
  return state;
}

SolveReport solve_steady(const ProblemData& prob, const SolverConfig& cfg) {
  SolveReport rep;
  StaggeredState state = StaggeredState::zero(prob.grid);
  for (double eps : cfg.epsilon_schedule) {
    StageInfo info;
    state = solve_stage(prob, state, eps, cfg, &info);
    rep.stages.push_back(info);
    rep.stage_states.push_back(state);
  }
  rep.state = state;
  rep.final_residual = rep.stages.empty() ? residual(prob, state, 0.0) : rep.stages.back().residual;
  double s = prob.s(), r = prob.r();
  rep.norm_u = norm_velocity(prob.grid, state, s);
  rep.norm_div = norm_cells(prob.grid, divergence(prob.grid, state), s);
  rep.norm_p = norm_cells(prob.grid, state.p, r);
  rep.norm_f = norm_cells(prob.grid, prob.f, s);
  rep.norm_psi = norm_trace(prob.grid, prob.psi, r);
  double denom = std::pow(rep.norm_f, r - 1.0) + std::pow(rep.norm_f, s - 1.0) +
                 std::pow(rep.norm_psi, r - 1.0) + rep.norm_psi;
  double numer = rep.norm_u + rep.norm_div + rep.norm_p;
  rep.estimate_ratio = (rep.norm_f == 0.0 && rep.norm_psi == 0.0) ? 0.0 : numer / denom;
  return rep;
}

double norm_velocity(const Grid2D& g, const StaggeredState& s, double e) {
  double acc = 0.0;
  for (const FaceRef& f : all_faces(g))
    acc += face_weight(g, f) * std::pow(std::abs(face_value(s, f)), e);
  return std::pow(acc, 1.0 / e);
}

double norm_cells(const Grid2D& g, const Field& q, double e) {
  double vol = g.hx() * g.hy();
  double acc = 0.0;
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) acc += vol * std::pow(std::abs(q(i, j)), e);
  return std::pow(acc, 1.0 / e);
}

double norm_trace(const Grid2D& g, const BoundaryTrace& psi, double e) {
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j)
    acc += g.hy() * (std::pow(std::abs(psi.left[j]), e) + std::pow(std::abs(psi.right[j]), e));
  for (int i = 0; i < g.nx; ++i)
    acc += g.hx() * (std::pow(std::abs(psi.bottom[i]), e) + std::pow(std::abs(psi.top[i]), e));
  return std::pow(acc, 1.0 / e);
}

namespace {

// Scalar monotone solve: find t with F_comp(u with component comp set to t) = target.
double solve_face_scalar(const ConstitutiveLaw& law, Vec uf, int comp, double target) {
  auto phi = [&](double t) {
    uf[comp] = t;
    return law.eval(uf)[comp] - target;
  };
  double cur = uf[comp];
  double span = 1.0 + std::abs(target) + std::abs(cur);
  double lo = cur - span, hi = cur + span;
  for (int k = 0; k < 60 && phi(lo) > 0.0; ++k) lo -= span, span *= 2.0;
  span = 1.0 + std::abs(target) + std::abs(cur);
  for (int k = 0; k < 60 && phi(hi) < 0.0; ++k) hi += span, span *= 2.0;
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    (phi(mid) < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-17 * (1.0 + std::abs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

ConstitutiveLaw isotropic_two_term_law() {
  ConstitutiveLaw law;
  law.dim = 2;
  PowerTerm darcy;
  darcy.A = Mat::Identity(2, 2);
  PowerTerm quad;
  quad.A = Mat::Identity(2, 2);
  quad.alpha = 1.0;
  law.terms = {darcy, quad};
  LawMetadata meta;
  meta.s = 3.0;
  meta.mono_order = 3.0;
  meta.mono_constant = 0.125;  // conservative certificate constant; the sharp one is 1/2
  law.metadata = meta;
  return law;
}

}  // namespace

std::pair<ProblemData, StaggeredState> manufactured_case(const std::string& name,
                                                         const Grid2D& grid) {
  grid.validate();
  const double pi = std::acos(-1.0);
  if (name == "M0") {
    ConstitutiveLaw law;
    law.dim = 2;
    PowerTerm darcy;
    darcy.A = Mat::Identity(2, 2);
    law.terms = {darcy};
    LawMetadata meta;
    meta.s = 2.0;
    law.metadata = meta;
    ProblemData prob = discretize(
        grid, law, [](double, double) { return 0.0; }, [](double x, double) { return x; });
    StaggeredState exact = StaggeredState::zero(grid);
    exact.ux.setConstant(-1.0);
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.ny; ++j) exact.p(i, j) = (i + 0.5) * grid.hx();
    return {prob, exact};
  }
  if (name != "M1") throw std::invalid_argument("manufactured_case: unknown case " + name);

  ConstitutiveLaw law = isotropic_two_term_law();
  auto pfun = [&](double x, double y) { return std::cos(pi * x) * std::cos(pi * y); };
  ProblemData prob = discretize(grid, law, [](double, double) { return 0.0; }, pfun);

  StaggeredState exact = StaggeredState::zero(grid);
  double hx = grid.hx(), hy = grid.hy();
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) exact.p(i, j) = pfun((i + 0.5) * hx, (j + 0.5) * hy);

  // Per-face momentum targets from the prescribed pressure/trace.
  std::vector<FaceRef> faces = all_faces(grid);
  std::vector<double> target(faces.size());
  for (size_t k = 0; k < faces.size(); ++k) {
    const FaceRef& f = faces[k];
    target[k] = (sface(grid, f, exact.p) - tpsi(grid, prob.psi, f)) / face_weight(grid, f);
  }

  // Initial guess from the radial closed-form inverse t + t^2 = |g| of the continuous
  // momentum balance.
  auto radial_component = [&](double gx, double gy, int comp) {
    double gn = std::hypot(gx, gy);
    if (gn == 0.0) return 0.0;
    double t = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * gn));
    return (comp == 0 ? gx : gy) * t / gn;
  };
  for (int i = 0; i <= grid.nx; ++i)
    for (int j = 0; j < grid.ny; ++j) {
      double x = i * hx, y = (j + 0.5) * hy;
      exact.ux(i, j) = radial_component(pi * std::sin(pi * x) * std::cos(pi * y),
                                        pi * std::cos(pi * x) * std::sin(pi * y), 0);
    }
  for (int i = 0; i < grid.nx; ++i)
    for (int j = 0; j <= grid.ny; ++j) {
      double x = (i + 0.5) * hx, y = j * hy;
      exact.uy(i, j) = radial_component(pi * std::sin(pi * x) * std::cos(pi * y),
                                        pi * std::cos(pi * x) * std::sin(pi * y), 1);
    }

  // Sweep the per-face scalar solves until the discrete momentum equations hold to
  // round-off (the tangential averaging couples the faces, so pointwise inversion of
  // the continuous gradient is not exact).
  for (int sweep = 0; sweep < 500; ++sweep) {
    double change = 0.0;
    for (size_t k = 0; k < faces.size(); ++k) {
      const FaceRef& f = faces[k];
      Vec uf = face_velocity(grid, exact, f);
      int comp = face_component(f);
      double t = solve_face_scalar(law, uf, comp, target[k]);
      change = std::max(change, std::abs(t - face_value(exact, f)));
      face_value(exact, f) = t;
    }
    if (change < 1e-14) break;
  }

  prob.f = divergence(grid, exact);
  return {prob, exact};
}

DependenceResult dependence_experiment(const ProblemData& prob, const Perturbation& pert,
                                       const std::vector<double>& scales,
                                       const SolverConfig& cfg) {
  if (prob.s() <= 2.0)
    throw std::invalid_argument("dependence_experiment: requires growth exponent s > 2");
  double s = prob.s(), r = prob.r();
  SolveReport base = solve_steady(prob, cfg);
  bool has_df = pert.df.size() > 0;
  bool has_dpsi = pert.dpsi.left.size() > 0;
  DependenceResult out;
  for (double delta : scales) {
    ProblemData p2 = prob;
    double dnorm = 0.0;
    if (has_df) {
      p2.f += delta * pert.df;
      Field scaled = delta * pert.df;
      dnorm += norm_cells(prob.grid, scaled, s);
    }
    if (has_dpsi) {
      p2.psi.left += delta * pert.dpsi.left;
      p2.psi.right += delta * pert.dpsi.right;
      p2.psi.bottom += delta * pert.dpsi.bottom;
      p2.psi.top += delta * pert.dpsi.top;
      BoundaryTrace scaled;
      scaled.left = delta * pert.dpsi.left;
      scaled.right = delta * pert.dpsi.right;
      scaled.bottom = delta * pert.dpsi.bottom;
      scaled.top = delta * pert.dpsi.top;
      dnorm += norm_trace(prob.grid, scaled, r);
    }
    SolveReport rep = solve_steady(p2, cfg);
    StaggeredState diff;
    diff.ux = rep.state.ux - base.state.ux;
    diff.uy = rep.state.uy - base.state.uy;
    diff.p = rep.state.p - base.state.p;
    double change = norm_velocity(prob.grid, diff, s) +
                    norm_cells(prob.grid, divergence(prob.grid, diff), s) +
                    norm_cells(prob.grid, diff.p, r);
    out.rows.push_back({dnorm, change});
  }
  // slope over the smallest decade of positive perturbations
  double dmin = std::numeric_limits<double>::infinity();
  for (const DependenceRow& row : out.rows)
    if (row.delta > 0.0 && row.change > 0.0) dmin = std::min(dmin, row.delta);
  std::vector<DependenceRow> fit;
  for (const DependenceRow& row : out.rows)
    if (row.delta > 0.0 && row.change > 0.0 && row.delta <= 10.0001 * dmin) fit.push_back(row);
  if (fit.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const DependenceRow& row : fit) {
      double x = std::log(row.delta), y = std::log(row.change);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double n = static_cast<double>(fit.size());
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.slope_defined = true;
  }
  return out;
}

double discrete_infsup_diagnostic(const Grid2D& grid, const Field& q, double s) {
  grid.validate();
  if (q.rows() != grid.nx || q.cols() != grid.ny)
    throw std::invalid_argument("discrete_infsup_diagnostic: field shape mismatch");
  if (q.abs().maxCoeff() == 0.0)
    throw std::invalid_argument("discrete_infsup_diagnostic: field is identically zero");
  std::vector<FaceRef> faces = all_faces(grid);
  double vol = grid.hx() * grid.hy();

  auto rate = [&](const StaggeredState& v) {
    Field dv = divergence(grid, v);
    double pairing = 0.0;
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 0; j < grid.ny; ++j) pairing += vol * dv(i, j) * q(i, j);
    double vnorm = std::pow(std::pow(norm_velocity(grid, v, s), s) +
                                std::pow(norm_cells(grid, dv, s), s),
                            1.0 / s);
    return vnorm == 0.0 ? 0.0 : pairing / vnorm;
  };

  double best = 0.0;
  // discrete-gradient probe
  StaggeredState vg = StaggeredState::zero(grid);
  for (const FaceRef& f : faces) face_value(vg, f) = sface(grid, f, q) / face_weight(grid, f);
  best = std::max(best, std::abs(rate(vg)));
  // single-face probes
  for (const FaceRef& f : faces) {
    StaggeredState v = StaggeredState::zero(grid);
    face_value(v, f) = 1.0;
    best = std::max(best, std::abs(rate(v)));
  }
  return best;
}

}  // namespace aniso
