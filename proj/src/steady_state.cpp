#include "qhe/steady_state.hpp"

#include <cmath>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {
namespace {

double inf_norm(const Eigen::MatrixXcd& M) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < M.cols(); ++j) row += std::abs(M(i, j));
    best = std::fmax(best, row);
  }
  return best;
}

}  // namespace

SteadyStateSolution steady_state_kernel(const Eigen::MatrixXcd& M,
                                        const std::vector<int>& population_indices,
                                        const SteadyStateOptions& opts) {
  if (M.rows() != M.cols() || M.rows() == 0) {
    throw InvalidParams("steady_state: generator must be square and non-empty");
  }
  if (population_indices.empty()) {
    throw InvalidParams("steady_state: population index set is empty");
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv(0);
  if (!(sigma_max > 0.0)) {
    throw DegenerateSteadyState("steady_state: zero generator, every state is stationary");
  }

  int kernel_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < opts.rank_tol * sigma_max) ++kernel_dim;
  }
  if (kernel_dim != 1) {
    throw DegenerateSteadyState("steady_state: kernel dimension is " +
                                std::to_string(kernel_dim) + ", expected 1");
  }

  Eigen::VectorXcd x = svd.matrixV().col(M.cols() - 1);
  Complex trace(0.0, 0.0);
  for (int idx : population_indices) {
    if (idx < 0 || idx >= M.rows()) throw InvalidParams("steady_state: bad population index");
    trace += x(idx);
  }
  if (std::abs(trace) < 1e-12) {
    throw DegenerateSteadyState("steady_state: kernel vector is traceless");
  }
  x /= trace;

  SteadyStateSolution sol;
  sol.state = x;
  const double x_norm = x.cwiseAbs().maxCoeff();
  sol.scaled_residual = (M * x).cwiseAbs().maxCoeff() / (inf_norm(M) * x_norm);
  sol.kernel_gap = sv(sv.size() - 2) / sigma_max;
  if (!(sol.scaled_residual < opts.residual_tol)) {
    throw NumericalFailure("steady_state: scaled residual " +
                           std::to_string(sol.scaled_residual) + " exceeds tolerance");
  }
  return sol;
}

DensityState steady_state(const Generator& M, const SteadyStateOptions& opts) {
  const auto sol = steady_state_kernel(M, {kGG, k00, k11, k22}, opts);
  DensityState s;
  s.v = sol.state;
  return s;
}

}  // namespace qhe
