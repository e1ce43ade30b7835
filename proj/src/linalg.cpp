#include "aniso/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace aniso {

bool is_symmetric(const Mat& A, double tol) {
  if (A.rows() != A.cols()) return false;
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - A.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_diagonal(const Mat& A, double tol) {
  if (A.rows() != A.cols()) return false;
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  Mat off = A;
  off.diagonal().setZero();
  return off.cwiseAbs().maxCoeff() <= tol * scale;
}

double operator_norm(const Mat& A) {
  if (A.rows() == 2 && A.cols() == 2) {
    double f = A.squaredNorm();
    double d = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    double disc = std::max(0.0, f * f - 4.0 * d * d);
    return std::sqrt(0.5 * (f + std::sqrt(disc)));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(A.transpose() * A);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double lambda_min_sym(const Mat& A) {
  if (!is_symmetric(A)) throw std::invalid_argument("lambda_min_sym: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  return es.eigenvalues().minCoeff();
}

double lambda_min_sym_part(const Mat& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("lambda_min_sym_part: matrix not square");
  Mat S = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  return es.eigenvalues().minCoeff();
}

double frobenius(const Mat& A) { return A.norm(); }

Mat sqrt_spd(const Mat& A) {
  if (!is_symmetric(A)) throw std::invalid_argument("sqrt_spd: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(A);
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  Vec ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-12 * scale)
    throw std::invalid_argument("sqrt_spd: matrix has a negative eigenvalue");
  Vec sq = ev.cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace aniso
