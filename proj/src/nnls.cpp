#include "nnls.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace qsppoly::detail {

namespace {

// Unconstrained least squares restricted to the passive columns.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<int> cols;
  for (int j = 0; j < static_cast<int>(passive.size()); ++j)
    if (passive[j]) cols.push_back(j);
  Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) Ap.col(static_cast<Eigen::Index>(c)) = A.col(cols[c]);
  const Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(A.cols());
  for (std::size_t c = 0; c < cols.size(); ++c) z(cols[c]) = zp(static_cast<Eigen::Index>(c));
  return z;
}

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter) {
  const Eigen::Index n = A.cols();
  if (max_iter <= 0) max_iter = 3 * static_cast<int>(n) + 30;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 10 * std::numeric_limits<double>::epsilon() * A.norm() *
                     static_cast<double>(std::max(A.rows(), n));

  Eigen::VectorXd w = A.transpose() * (b - A * x);
  for (int outer = 0; outer < max_iter; ++outer) {
    Eigen::Index jmax = -1;
    double wmax = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > wmax) {
        wmax = w(j);
        jmax = j;
      }
    }
    if (jmax < 0) break;
    passive[jmax] = true;

    for (int inner = 0; inner < max_iter; ++inner) {
      const Eigen::VectorXd z = solve_passive(A, b, passive);
      bool all_pos = true;
      for (Eigen::Index j = 0; j < n; ++j)
        if (passive[j] && z(j) <= 0) all_pos = false;
      if (all_pos) {
        x = z;
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0) alpha = std::min(alpha, x(j) / (x(j) - z(j)));
      }
      x += alpha * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0;
        }
      }
    }
    w = A.transpose() * (b - A * x);
  }
  return x;
}

std::optional<Eigen::VectorXd> lsi(const Eigen::MatrixXd& E, const Eigen::VectorXd& f,
                                   const Eigen::MatrixXd& G, const Eigen::VectorXd& h) {
  const Eigen::Index n = E.cols();
  // E = Q R; with z = R x - Q^T f the problem becomes min ||z|| s.t. Gh z >= hh.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(E);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Eigen::VectorXd qtf = (qr.householderQ().transpose() * f).head(n);
  const auto Rt = R.triangularView<Eigen::Upper>();
  // Gh = G R^{-1}, computed as (R^{-T} G^T)^T.
  Eigen::MatrixXd Gh = R.transpose().triangularView<Eigen::Lower>().solve(G.transpose()).transpose();
  Eigen::VectorXd hh = h - Gh * qtf;

  // Rows of a constraint system can be scaled freely; normalize them.
  for (Eigen::Index i = 0; i < Gh.rows(); ++i) {
    const double s = Gh.row(i).norm();
    if (s > 0) {
      Gh.row(i) /= s;
      hh(i) /= s;
    }
  }

  // Least distance programming: nnls on [Gh^T; hh^T] u ~ e_{n+1}.
  const Eigen::Index m = Gh.rows();
  Eigen::MatrixXd M(n + 1, m);
  M.topRows(n) = Gh.transpose();
  M.row(n) = hh.transpose();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
  e(n) = 1;
  const Eigen::VectorXd u = nnls(M, e);
  const Eigen::VectorXd r = M * u - e;
  if (r.norm() < 1e-12 || std::fabs(r(n)) < 1e-14) return std::nullopt;
  const Eigen::VectorXd z = -r.head(n) / r(n);
  Eigen::VectorXd x = Rt.solve(z + qtf);
  // Guard against breakdown of the reduction on ill-conditioned data.
  const Eigen::VectorXd slack = G * x - h;
  const double scale = 1 + h.cwiseAbs().maxCoeff();
  if (slack.minCoeff() < -1e-8 * scale) return std::nullopt;
  return x;
}

void gauss_legendre(int m, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= m; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * k - 1) * z * p1 - (k - 1) * p2) / k;
      }
      dp = m * (z * p0 - p1) / (z * z - 1);
      const double dz = p0 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    nodes(i) = -z;
    nodes(m - 1 - i) = z;
    weights(i) = weights(m - 1 - i) = 2 / ((1 - z * z) * dp * dp);
  }
}

}  // namespace qsppoly::detail
