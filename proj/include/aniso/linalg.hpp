#pragma once

#include <Eigen/Dense>
#include <vector>

namespace aniso {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Largest singular value. Closed form for 2x2, symmetric eigensolve of A^T A otherwise.
double operator_norm(const Mat& A);

// Smallest eigenvalue of a symmetric matrix. Throws std::invalid_argument if A is not
// symmetric (tolerance 1e-12 relative).
double lambda_min_sym(const Mat& A);

// Smallest eigenvalue of the symmetric part (A + A^T)/2.
double lambda_min_sym_part(const Mat& A);

// Frobenius norm.
double frobenius(const Mat& A);

// Symmetric positive-semidefinite square root. Throws if A is not symmetric or has an
// eigenvalue below -1e-12 * max(1, |A|).
Mat sqrt_spd(const Mat& A);

bool is_symmetric(const Mat& A, double tol = 1e-12);
bool is_diagonal(const Mat& A, double tol = 1e-12);

}  // namespace aniso
