#pragma once

#include <complex>
#include <vector>

namespace hybridsim {

/*
 * Oscillator-bath treatment of cavity loss: the imaginary-time kernel of the
 * cavity + resistor environment, its retarded continuation, the effective
 * impedance network, the spectral density seen by the charge qubit, and the
 * resulting decoherence rate.
 */

struct BathSpec {
  double R_r = 0.0;          // series resistance, Ohm
  double temperature = 0.1;  // K
  double C_r = 3e-15;        // F
  double C_m = 1e-16;        // F
  double C_t = 2e-16;        // F
  double L_r = 3e-13;        // H

  // omega_r = 2 / sqrt((C_r + C_m) L_r)
  double omega_r() const;
  // C' = (C_r + C_m) / 4, the shunt capacitance of the reduced network
  double shunt_capacitance() const;
  // C_m / 2 C_t
  double coupling_ratio() const;
  // ohmic damping rate gamma_hat = R_r / L_r, calibrated so the retarded
  // continuation of the kernel reproduces the impedance network exactly
  double damping_rate() const;
  // hbar / k_B T
  double thermal_time() const;
  void validate() const;
};

struct SpectralResult {
  std::vector<double> omega_grid;           // rad/s
  std::vector<std::complex<double>> z_eff;  // Ohm
  std::vector<double> j_eff;                // rad/s
  double gamma_rq = 0.0;                    // s^-1
  double fdt_consistency = 0.0;             // J_eff(0+)/R_k, must equal gamma_rq
};

// Imaginary-time kernel k(tau) as the symmetric Matsubara sum, with the
// instantaneous (contact) term subtracted so the sum converges absolutely:
//   k(tau) = -pref * (omega_r^2 / hbar beta) * sum_n cos(nu_n tau) / D(nu_n)
//   D(nu)  = nu^2 + |nu| gamma_hat + omega_r^2,  nu_n = 2 pi n / hbar beta
//   pref   = (C_m/2C_t)^2 * 4 / (C_r + C_m)
// The sum doubles n_max until the relative change is below rel_tol.
double matsubara_kernel(const BathSpec& spec, double tau, int n_max = 1024,
                        double rel_tol = 1e-6);

// Closed form of the kernel transform on the Matsubara axis,
// k_tilde(i nu_n); real nu argument.
double matsubara_transform(const BathSpec& spec, double nu);

// Z_eff(omega) = [i omega C' + 1/(i omega L_r + R_r)]^-1.
// Throws std::domain_error on the lossless poles (omega = 0 or the LC
// resonance with R_r = 0).
std::complex<double> effective_impedance(const BathSpec& spec, double omega);

// J_eff(omega) = (C_m/2C_t)^2 omega Re[Z_eff(omega)] coth(hbar omega / 2 k_B T)
double effective_spectral_density(const BathSpec& spec, double omega);

// omega -> 0 limit: (C_m/2C_t)^2 R_r 2 k_B T / hbar
double spectral_density_zero_limit(const BathSpec& spec);

// Second route to J_eff: retarded continuation of the Matsubara transform at
// i nu -> omega + i delta, symmetrized by the thermal coth factor.
// delta defaults to 1e-6 * omega_r; richardson extrapolates delta -> 0.
double spectral_density_from_kernel(const BathSpec& spec, double omega,
                                    double delta = -1.0, bool richardson = false);

struct ChargeDecoherence {
  double gamma_rq = 0.0;          // (R_r/R_k)(2 k_B T/hbar)(C_m/2C_t)^2, s^-1
  double fdt_consistency = 0.0;   // J_eff(0+)/R_k
};
ChargeDecoherence charge_decoherence_rate(const BathSpec& spec);

// R_r that reproduces a target gamma_rq at the given temperature and ratio.
double back_solve_resistance(const BathSpec& spec, double gamma_target);

SpectralResult compute_spectrum(const BathSpec& spec, const std::vector<double>& omega_grid);

}  // namespace hybridsim
