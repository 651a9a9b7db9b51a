#pragma once

#include <Eigen/Dense>

namespace qsppoly::detail {

/// Lawson–Hanson active-set solution of min ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter = 0);

/// Gauss–Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

}  // namespace qsppoly::detail

#include <optional>

namespace qsppoly::detail {

/// min ||E x - f|| subject to G x >= h, E of full column rank; nullopt when
/// the constraints are infeasible. Reduced to least distance programming and
/// solved through nnls.
std::optional<Eigen::VectorXd> lsi(const Eigen::MatrixXd& E, const Eigen::VectorXd& f,
                                   const Eigen::MatrixXd& G, const Eigen::VectorXd& h);

}  // namespace qsppoly::detail
