#pragma once

#include <string>
#include <utility>

#include <Eigen/Dense>

namespace hybridsim {

/*
 * Effective couplings derived from the electrical circuit: the
 * cavity-mediated ion-charge coupling, the dc-SQUID switch via secular-mode
 * diagonalization, the balance-circuit cancellation, and the lumped
 * quasiparticle resistance model.
 *
 * "Integrating out" a circuit node is implemented as exact Gaussian
 * elimination (Schur complement / node merging) on the classical quadratic
 * forms. Energies are angular frequencies (rad/s).
 */

struct CircuitParams {
  double C_r = 3e-15;   // cavity capacitance, F
  double L_r = 3e-13;   // cavity inductance, H
  double C_m = 1e-16;   // cavity-qubit coupling capacitance, F
  double C_J = 1e-16;   // junction capacitance, F
  double C_g = 1e-16;   // gate capacitance, F
  double E_J = 6.283185307179586e10;   // Josephson energy, rad/s (10 GHz)
  double E_c = 6.283185307179586e11;   // charging energy, rad/s (100 GHz)
  double d_i = 20e-6;          // trap electrode distance, m
  double cavity_length = 40e-6;  // m
  double C_i = 2e-17;   // trap drive capacitance, F
  double C_i2 = 2e-17;  // second trap drive capacitance, F
  double C_ib = 2e-17;  // balance capacitance, F

  // C_t = C_J + C_g is always derived, never stored.
  double C_t() const { return C_J + C_g; }
  void validate() const;
};

struct SwitchParams {
  double E_Ja;              // single-junction Josephson energy, rad/s
  double flux_ratio = 0.0;  // Phi_ex / Phi_0 in [0, 1]

  // E_a = 2 E_Ja cos(pi * flux_ratio); vanishes at flux_ratio = 1/2.
  double effective_josephson_energy() const;
  // L_eff = (hbar/2e)^2 / (hbar E_a); defined only when E_a != 0.
  double effective_inductance() const;
  bool is_off() const { return flux_ratio == 0.5; }
  void validate() const;
};

// Quadratic circuit over a set of phase nodes: 1/2 psi_dot^T C psi_dot
// kinetic form plus 1/2 psi^T K psi inductive form, with external charge
// couplings collected in the drive vector (C per meter of ion displacement).
struct QuadraticCircuit {
  int n_modes = 0;
  Eigen::MatrixXd capacitance_matrix;         // F, symmetric positive definite
  Eigen::MatrixXd inverse_inductance_matrix;  // 1/H, symmetric positive semidefinite
  Eigen::VectorXd linear_drive_vector;        // C/m
};

struct EffectiveCoupling {
  // sigma_z^q (x/d_i)-type coupling coefficient: the interaction energy at
  // ion displacement <x> is hbar * kappa * <x>.
  double kappa = 0.0;  // rad/(s m)
  double charge_qubit_capacitance_correction = 0.0;  // F
  bool regime_warning = false;
  std::string warning;
};

// Exact C_Sigma from the merged capacitance network (2-node elimination),
// or the C_Sigma ~= C_r approximation when exact = false.
double coupling_csigma(const CircuitParams& p, bool exact = true);

// Cavity-mediated coupling with the cavity nodes merged (inductor is a
// short at coupling frequencies): kappa = (e^2 / hbar C_Sigma)(C_m/C_t)/d_i.
EffectiveCoupling effective_ion_charge_coupling(const CircuitParams& p,
                                                bool exact_csigma = true);

// Three-mode circuit over (psi_1, psi_2, psi_a) with the SQUID linearized
// to L_eff between modes 2 and a. Throws std::domain_error("switch_off")
// at flux_ratio = 1/2 exactly.
QuadraticCircuit build_switch_circuit(const CircuitParams& p, const SwitchParams& s);

// Eigen-decomposition of the inverse-inductance quadratic form, eigenvalues
// ascending, eigenvectors orthonormal in columns.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> secular_modes(const QuadraticCircuit& c);

// Qubit-ion coupling in the presence of the switch. On-state: node merging
// across both inductive links; off-state (flux_ratio = 1/2): kappa = 0 and
// the qubit charging capacitance becomes C_m + C_t.
EffectiveCoupling reduce_switch_coupling(const CircuitParams& p, const SwitchParams& s);

// sigma_z^q coefficient picked up from the trap drive voltages:
// (e / hbar C_Sigma)(C_m/C_t)(C_i V_i + C_ib V_ib). Zero at the balance
// condition C_i V_i + C_ib V_ib = 0.
double balance_residual(const CircuitParams& p, double V_i, double V_ib,
                        bool exact_csigma = false);

// R_r = R_n * (n_ex / n_0)
double quasiparticle_resistance(double R_n, double n_ratio);

}  // namespace hybridsim
