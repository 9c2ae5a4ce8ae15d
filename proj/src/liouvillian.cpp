#include "qhe/liouvillian.hpp"

#include "qhe/errors.hpp"
#include "qhe/units.hpp"

namespace qhe {

Generator build_generator(const ModelParams& params, double detuning_pump_ev,
                          double detuning_probe_ev) {
  params.validate();

  const double G2 = params.Gamma_2;
  const double Gc = params.Gamma_c;
  const double n2 = params.n_2();
  const double nc = params.n_c();
  const double W = params.Omega_p_rate();
  const double L = params.lambda_rate();
  const double dp = rate_from_energy(detuning_pump_ev);
  const double dk = rate_from_energy(detuning_probe_ev);
  const Complex I(0.0, 1.0);

  Generator M = Generator::Zero();

  // Populations. Cold contact g<->0 carries the factor-2 convention; the
  // 2<->1 contact does not.
  M(kGG, kGG) = -2.0 * Gc * nc;
  M(kGG, k00) = 2.0 * Gc * (nc + 1.0);
  M(kGG, kG2) = I * W;
  M(kGG, k2G) = -I * W;

  M(k00, kGG) = 2.0 * Gc * nc;
  M(k00, k00) = -2.0 * Gc * (nc + 1.0);
  M(k00, k01) = I * L;
  M(k00, k10) = -I * L;

  M(k11, k11) = -G2 * n2;
  M(k11, k22) = G2 * (n2 + 1.0);
  M(k11, k01) = -I * L;
  M(k11, k10) = I * L;

  M(k22, k11) = G2 * n2;
  M(k22, k22) = -G2 * (n2 + 1.0);
  M(k22, kG2) = -I * W;
  M(k22, k2G) = I * W;

  // Pump coherence pair. Decay mixes both bath contacts; the detuning makes
  // the pair rotate in conjugate directions.
  const double gamma_g2 = G2 * (n2 + 1.0) / 2.0 + Gc * nc;
  M(kG2, kG2) = Complex(-gamma_g2, dp);
  M(kG2, kGG) = I * W;
  M(kG2, k22) = -I * W;

  M(k2G, k2G) = Complex(-gamma_g2, -dp);
  M(k2G, kGG) = -I * W;
  M(k2G, k22) = I * W;

  // Probe coherence pair.
  const double gamma_01 = G2 * n2 / 2.0 + Gc * (nc + 1.0);
  M(k01, k01) = Complex(-gamma_01, dk);
  M(k01, k00) = I * L;
  M(k01, k11) = -I * L;

  M(k10, k10) = Complex(-gamma_01, -dk);
  M(k10, k00) = -I * L;
  M(k10, k11) = I * L;

  return M;
}

Complex trace_derivative(const Generator& M, const StateVector& state) {
  const StateVector d = M * state;
  return d[kGG] + d[k00] + d[k11] + d[k22];
}

Eigen::MatrixXcd extract_subsystem(const Eigen::MatrixXcd& M, const std::vector<int>& indices) {
  const auto n = static_cast<Eigen::Index>(indices.size());
  if (n == 0 || n > M.rows()) throw InvalidParams("extract_subsystem: bad index set");
  Eigen::MatrixXcd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const int r = indices[static_cast<std::size_t>(i)];
      const int c = indices[static_cast<std::size_t>(j)];
      if (r < 0 || r >= M.rows() || c < 0 || c >= M.cols()) {
        throw InvalidParams("extract_subsystem: index out of range");
      }
      S(i, j) = M(r, c);
    }
  }
  return S;
}

}  // namespace qhe
