#pragma once

#include <cstdint>
#include <vector>

namespace hybridsim {

/*
 * 1/f charge-noise synthesis, the flip-modulated gate protocol, and the
 * dephasing-phase statistics.
 *
 * Spectrum convention: delta_V^2(omega) is the symmetric two-sided density
 * with <dV^2> = integral dV^2(omega) domega / 2pi over both signs of omega,
 * i.e. (1/pi) * integral over [omega_min, omega_max].
 */

enum class SpectrumKind { one_over_f, white, tabulated };

struct NoiseModel {
  SpectrumKind kind = SpectrumKind::one_over_f;
  // one_over_f: dV^2(omega) = amplitude / |omega|  (amplitude in V^2)
  // white:      dV^2(omega) = amplitude            (V^2 s)
  double amplitude = 0.0;
  double omega_min = 0.0;  // rad/s
  double omega_max = 0.0;  // rad/s
  // E_c C_g / 2e, (rad/s) per volt
  double coupling_prefactor = 0.0;
  // tabulated spectra: (omega [rad/s], psd [V^2 s]) samples, log-log
  // interpolated inside [omega_min, omega_max]
  std::vector<double> tab_omega;
  std::vector<double> tab_psd;

  double psd(double omega) const;
  // integral of psd over [w1, w2] (analytic for white and 1/f)
  double band_power(double w1, double w2) const;
  void validate() const;
};

struct FlipProtocol {
  double interval = 0.0;    // tau, seconds
  double total_time = 0.0;  // t, seconds
  bool enabled = true;

  // number of +/- flip pairs, t / 2 tau
  int flip_pairs() const;
  void validate() const;
};

struct NoiseTrajectory {
  std::vector<double> times;   // uniform grid from 0
  std::vector<double> values;  // volts
  std::uint64_t seed = 0;
};

// Stationary Gaussian synthesis: frequency bins spanning
// [omega_min, omega_max] (log-spaced for 1/f and tabulated, linear for
// white), one stratified-random frequency per bin per seed, independent
// Gaussian quadrature amplitudes. Deterministic for a fixed seed.
NoiseTrajectory synthesize_trajectory(const NoiseModel& model, double duration,
                                      double dt, std::uint64_t seed, int bins = 0);

// Square-wave flip function: +1 on [2n tau, 2n tau + tau), -1 on the next
// interval. Disabled protocols return +1 everywhere.
int g_function(const FlipProtocol& protocol, double t);

// phase = prefactor * integral dV(t') g(t') dt' over [0, total_time].
// Accumulated per flip pair so a constant offset cancels exactly.
double stochastic_phase(const NoiseTrajectory& traj, const FlipProtocol& protocol,
                        const NoiseModel& model);

struct PhaseVariance {
  // Long-time harmonic-sum variance consistent with the square-wave Fourier
  // series: pref^2 (8/pi^2) sum_{odd n} dV^2(n pi/tau) / n^2 * t.
  double variance = 0.0;  // rad^2
  // As-printed variant: pref^2 (2/pi^2) sum_n dV^2(2 pi n/tau)/n^2 * t over
  // all n (white noise -> pref^2 S0 t / 3 via sum 1/n^2 = pi^2/6) and its
  // odd-n restriction (pi^2/8). Reported alongside; see decisions notes.
  double variance_printed_all_n = 0.0;
  double variance_printed_odd_n = 0.0;
  double fundamental = 0.0;  // omega_1 = pi / tau
  int terms = 0;
  bool low_frequency_warning = false;  // omega_1 * t not >> 1
};
PhaseVariance phase_variance(const NoiseModel& model, const FlipProtocol& protocol);

// Unmodulated variance of phi_v(t) = pref * integral dV, and the modulated
// finite-time double-integral (filter-function) form. Both are band-limited
// spectral integrals; the second is the cross-check for the harmonic sum.
double phase_variance_unmodulated(const NoiseModel& model, double t);
double phase_variance_filter_integral(const NoiseModel& model, const FlipProtocol& protocol);

struct DephasingRate {
  double rate = 0.0;           // s^-1, variance slope / 2
  double bound = 0.0;          // pref^2 dv2_max / 2, same harmonic convention
  double rate_printed = 0.0;   // printed-constant variant of the rate
  double bound_printed = 0.0;  // pref^2 dv2_max / 3
  double dv2_max = 0.0;        // max psd over [omega_1, 100 omega_1]
};
DephasingRate decoherence_rate(const NoiseModel& model, const FlipProtocol& protocol);

}  // namespace hybridsim
