#include "hybridsim/circuit_reduction.hpp"

#include <cmath>
#include <stdexcept>

#include "hybridsim/constants.hpp"

namespace hybridsim {

namespace {
constexpr double kE = constants::e_charge;
constexpr double kHbar = constants::hbar;
}  // namespace

void CircuitParams::validate() const {
  if (C_r <= 0 || C_m <= 0 || C_J <= 0 || C_g <= 0 || C_i <= 0 || C_i2 <= 0 || C_ib <= 0) {
    throw std::invalid_argument("CircuitParams: capacitances must be positive");
  }
  if (L_r <= 0) {
    throw std::invalid_argument("CircuitParams: inductances must be positive");
  }
  if (d_i <= 0 || cavity_length <= 0) {
    throw std::invalid_argument("CircuitParams: lengths must be positive");
  }
}

double SwitchParams::effective_josephson_energy() const {
  return 2.0 * E_Ja * std::cos(constants::pi * flux_ratio);
}

double SwitchParams::effective_inductance() const {
  const double ea = effective_josephson_energy();
  if (ea == 0.0) {
    throw std::domain_error("SwitchParams: L_eff undefined at E_a = 0");
  }
  // (hbar/2e)^2 / (hbar E_a) with E_a in rad/s
  return kHbar / (4.0 * kE * kE * ea);
}

void SwitchParams::validate() const {
  if (E_Ja <= 0) {
    throw std::invalid_argument("SwitchParams: E_Ja must be positive");
  }
  if (flux_ratio < 0.0 || flux_ratio > 1.0) {
    throw std::invalid_argument("SwitchParams: flux_ratio must be in [0, 1]");
  }
}

namespace {

// Capacitance network over (cavity node, qubit node) after the cavity
// inductors are treated as shorts. C_cav collects everything shunting the
// merged cavity node to ground.
Eigen::Matrix2d merged_capacitance_matrix(const CircuitParams& p) {
  const double c_cav = p.C_r + p.C_i + p.C_i2;
  Eigen::Matrix2d c;
  c << c_cav + p.C_m, -p.C_m,
       -p.C_m, p.C_t() + p.C_m;
  return c;
}

}  // namespace

double coupling_csigma(const CircuitParams& p, bool exact) {
  if (!exact) {
    return p.C_r;
  }
  // [C^-1]_{cav,qubit} = (C_m/C_t) / C_Sigma defines C_Sigma exactly.
  const Eigen::Matrix2d c = merged_capacitance_matrix(p);
  const double inv_cq = c.inverse()(0, 1);
  return p.C_m / (p.C_t() * inv_cq);
}

EffectiveCoupling effective_ion_charge_coupling(const CircuitParams& p, bool exact_csigma) {
  p.validate();
  EffectiveCoupling out;
  const double csigma = coupling_csigma(p, exact_csigma);
  out.kappa = kE * kE * p.C_m / (kHbar * csigma * p.C_t() * p.d_i);
  const Eigen::Matrix2d c = merged_capacitance_matrix(p);
  out.charge_qubit_capacitance_correction = 1.0 / c.inverse()(1, 1);
  const double biggest = std::max({p.C_m, p.C_i, p.C_i2, p.C_t()});
  if (p.C_r < 10.0 * biggest) {
    out.regime_warning = true;
    out.warning = "C_r not large compared to C_m, C_i, C_t";
  }
  return out;
}

QuadraticCircuit build_switch_circuit(const CircuitParams& p, const SwitchParams& s) {
  p.validate();
  s.validate();
  if (s.is_off()) {
    throw std::domain_error("switch_off");
  }
  const double l_eff = s.effective_inductance();
  if (l_eff <= 0.0) {
    throw std::domain_error("build_switch_circuit: negative L_eff (E_a < 0) not modeled");
  }

  QuadraticCircuit c;
  c.n_modes = 3;
  // Island mass after eliminating the qubit node: C_a = C_m C_t / (C_m + C_t).
  const double c_a = p.C_m * p.C_t() / (p.C_m + p.C_t());
  c.capacitance_matrix = Eigen::Matrix3d::Zero();
  c.capacitance_matrix(0, 0) = p.C_r / 2.0 + p.C_i + p.C_i2;
  c.capacitance_matrix(1, 1) = p.C_r / 2.0;
  c.capacitance_matrix(2, 2) = c_a;

  Eigen::Matrix3d k = Eigen::Matrix3d::Zero();
  k(0, 0) += 1.0 / p.L_r;
  k(1, 1) += 1.0 / p.L_r;
  k(0, 1) -= 1.0 / p.L_r;
  k(1, 0) -= 1.0 / p.L_r;
  k(1, 1) += 1.0 / l_eff;
  k(2, 2) += 1.0 / l_eff;
  k(1, 2) -= 1.0 / l_eff;
  k(2, 1) -= 1.0 / l_eff;
  c.inverse_inductance_matrix = k;

  c.linear_drive_vector = Eigen::Vector3d(kE / p.d_i, 0.0, 0.0);
  return c;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> secular_modes(const QuadraticCircuit& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.inverse_inductance_matrix);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("secular_modes: eigendecomposition failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

EffectiveCoupling reduce_switch_coupling(const CircuitParams& p, const SwitchParams& s) {
  p.validate();
  s.validate();
  EffectiveCoupling out;

  if (s.is_off()) {
    // Cavity and ion are cut off; integrating the island momentum leaves
    // the qubit charging form over C_m + C_t.
    out.kappa = 0.0;
    out.charge_qubit_capacitance_correction = p.C_m + p.C_t();
    return out;
  }

  // On state: both inductive links are shorts for the slow dynamics, so the
  // cavity ends and the island merge into one node against the qubit.
  // Node capacitances: psi_1 carries C_r/2 + C_i + C_i2, psi_2 carries
  // C_r/2, the island couples to the qubit through C_m.
  const double c_merged = (p.C_r / 2.0 + p.C_i + p.C_i2) + p.C_r / 2.0;
  Eigen::Matrix2d c;
  c << c_merged + p.C_m, -p.C_m,
       -p.C_m, p.C_t() + p.C_m;
  const Eigen::Matrix2d cinv = c.inverse();
  out.kappa = kE * kE * cinv(0, 1) / (kHbar * p.d_i);
  out.charge_qubit_capacitance_correction = 1.0 / cinv(1, 1);

  const double l_eff = s.effective_inductance();
  const double plasma = 1.0 / std::sqrt(std::abs(l_eff) * p.C_r);  // rad/s
  if (plasma <= 10.0 * p.E_J) {
    out.regime_warning = true;
    out.warning = "switch plasma frequency not large compared to E_J";
  }
  return out;
}

double balance_residual(const CircuitParams& p, double V_i, double V_ib, bool exact_csigma) {
  p.validate();
  const double csigma = coupling_csigma(p, exact_csigma);
  return kE * (p.C_m / p.C_t()) * (p.C_i * V_i + p.C_ib * V_ib) / (kHbar * csigma);
}

double quasiparticle_resistance(double R_n, double n_ratio) {
  if (R_n <= 0.0) {
    throw std::invalid_argument("quasiparticle_resistance: R_n must be positive");
  }
  if (n_ratio < 0.0 || n_ratio > 1.0) {
    throw std::invalid_argument("quasiparticle_resistance: ratio outside [0, 1]");
  }
  return R_n * n_ratio;
}

}  // namespace hybridsim
