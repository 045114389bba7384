#include "hybridsim/cavity_dissipation.hpp"

#include <cmath>
#include <stdexcept>

#include "hybridsim/constants.hpp"

namespace hybridsim {

namespace {
constexpr double kHbar = constants::hbar;
constexpr double kB = constants::k_boltzmann;
using complexd = std::complex<double>;
}  // namespace

double BathSpec::omega_r() const { return 2.0 / std::sqrt((C_r + C_m) * L_r); }
double BathSpec::shunt_capacitance() const { return (C_r + C_m) / 4.0; }
double BathSpec::coupling_ratio() const { return C_m / (2.0 * C_t); }
double BathSpec::damping_rate() const { return R_r / L_r; }
double BathSpec::thermal_time() const { return kHbar / (kB * temperature); }

void BathSpec::validate() const {
  if (temperature <= 0) throw std::invalid_argument("BathSpec: temperature must be positive");
  if (R_r < 0) throw std::invalid_argument("BathSpec: R_r must be nonnegative");
  if (C_r <= 0 || C_m <= 0 || C_t <= 0 || L_r <= 0) {
    throw std::invalid_argument("BathSpec: circuit elements must be positive");
  }
}

namespace {

double kernel_prefactor(const BathSpec& s) {
  const double ratio = s.coupling_ratio();
  return ratio * ratio * 4.0 / (s.C_r + s.C_m);
}

}  // namespace

double matsubara_kernel(const BathSpec& spec, double tau, int n_max, double rel_tol) {
  spec.validate();
  const double hbeta = spec.thermal_time();
  const double wr2 = spec.omega_r() * spec.omega_r();
  const double gam = spec.damping_rate();
  const double nu1 = constants::two_pi / hbeta;

  // the kernel is periodic on the thermal circle and even in tau
  const double theta = nu1 * std::fmod(std::abs(tau), hbeta);

  // Split off the 1/nu^2 asymptote, which sums in closed form:
  // sum_{n>=1} cos(n theta)/n^2 = pi^2/6 - pi theta/2 + theta^2/4.
  // The corrected summand decays like 1/n^3, so plain doubling converges.
  const double asym = (2.0 / (nu1 * nu1)) *
                      (constants::pi * constants::pi / 6.0 -
                       constants::pi * theta / 2.0 + theta * theta / 4.0);

  auto add_range = [&](double acc, long long lo, long long hi) {
    for (long long n = lo; n <= hi; ++n) {
      const double nu = nu1 * static_cast<double>(n);
      const double d = nu * nu + nu * gam + wr2;
      acc += 2.0 * std::cos(static_cast<double>(n) * theta) * (1.0 / d - 1.0 / (nu * nu));
    }
    return acc;
  };

  long long n_hi = std::max(16, n_max);
  double corrected = add_range(0.0, 1, n_hi);
  const long long n_cap = 1LL << 26;
  while (true) {
    const double total = 1.0 / wr2 + corrected + asym;
    const double prev_total = total;
    if (2 * n_hi > n_cap) {
      throw std::runtime_error("matsubara_kernel: sum did not converge at requested tolerance");
    }
    corrected = add_range(corrected, n_hi + 1, 2 * n_hi);
    n_hi *= 2;
    const double cur_total = 1.0 / wr2 + corrected + asym;
    if (std::abs(cur_total - prev_total) < rel_tol * std::abs(cur_total)) {
      return -kernel_prefactor(spec) * wr2 / hbeta * cur_total;
    }
  }
}

double matsubara_transform(const BathSpec& spec, double nu) {
  spec.validate();
  const double a = std::abs(nu);
  const double wr2 = spec.omega_r() * spec.omega_r();
  const double gam = spec.damping_rate();
  const double ratio = spec.coupling_ratio();
  return ratio * ratio / spec.shunt_capacitance() * (a * a + a * gam) / (a * a + a * gam + wr2);
}

complexd effective_impedance(const BathSpec& spec, double omega) {
  spec.validate();
  if (omega < 0) throw std::invalid_argument("effective_impedance: omega must be >= 0");
  const double cp = spec.shunt_capacitance();
  if (omega == 0.0) {
    if (spec.R_r == 0.0) throw std::domain_error("effective_impedance: pole at omega = 0 with R_r = 0");
    return {spec.R_r, 0.0};
  }
  const complexd series = complexd(spec.R_r, omega * spec.L_r);
  const complexd den = complexd(0.0, omega * cp) + 1.0 / series;
  if (std::abs(den) < 1e-12 * omega * cp) {
    throw std::domain_error("effective_impedance: lossless LC pole");
  }
  return 1.0 / den;
}

double effective_spectral_density(const BathSpec& spec, double omega) {
  if (omega <= 0) throw std::invalid_argument("effective_spectral_density: omega must be > 0");
  const double ratio = spec.coupling_ratio();
  const double re_z = std::real(effective_impedance(spec, omega));
  const double x = kHbar * omega / (2.0 * kB * spec.temperature);
  return ratio * ratio * omega * re_z / std::tanh(x);
}

double spectral_density_zero_limit(const BathSpec& spec) {
  spec.validate();
  const double ratio = spec.coupling_ratio();
  return ratio * ratio * spec.R_r * 2.0 * kB * spec.temperature / kHbar;
}

namespace {

// Im of the continuation i nu_n -> omega + i delta of the kernel transform,
// on the branch where the dissipative part comes out positive.
double im_retarded(const BathSpec& spec, double omega, double delta) {
  const complexd s(delta, omega);
  const double wr2 = spec.omega_r() * spec.omega_r();
  const double gam = spec.damping_rate();
  const double ratio = spec.coupling_ratio();
  const complexd val = ratio * ratio / spec.shunt_capacitance() * (s * s + s * gam) / (s * s + s * gam + wr2);
  return std::imag(val);
}

}  // namespace

double spectral_density_from_kernel(const BathSpec& spec, double omega, double delta,
                                    bool richardson) {
  spec.validate();
  if (omega <= 0) throw std::invalid_argument("spectral_density_from_kernel: omega must be > 0");
  if (delta <= 0) delta = 1e-6 * spec.omega_r();
  double im = im_retarded(spec, omega, delta);
  if (richardson) {
    im = 2.0 * im_retarded(spec, omega, delta / 2.0) - im;
  }
  const double x = kHbar * omega / (2.0 * kB * spec.temperature);
  return im / std::tanh(x);
}

ChargeDecoherence charge_decoherence_rate(const BathSpec& spec) {
  spec.validate();
  ChargeDecoherence out;
  const double ratio = spec.coupling_ratio();
  out.gamma_rq = spec.R_r / constants::quantum_resistance * 2.0 * kB * spec.temperature / kHbar *
                 ratio * ratio;
  out.fdt_consistency = spectral_density_zero_limit(spec) / constants::quantum_resistance;
  return out;
}

double back_solve_resistance(const BathSpec& spec, double gamma_target) {
  const double ratio = spec.coupling_ratio();
  return gamma_target * constants::quantum_resistance * kHbar /
         (2.0 * kB * spec.temperature * ratio * ratio);
}

SpectralResult compute_spectrum(const BathSpec& spec, const std::vector<double>& omega_grid) {
  SpectralResult out;
  out.omega_grid = omega_grid;
  out.z_eff.reserve(omega_grid.size());
  out.j_eff.reserve(omega_grid.size());
  for (double w : omega_grid) {
    out.z_eff.push_back(effective_impedance(spec, w));
    out.j_eff.push_back(effective_spectral_density(spec, w));
  }
  const ChargeDecoherence dec = charge_decoherence_rate(spec);
  out.gamma_rq = dec.gamma_rq;
  out.fdt_consistency = dec.fdt_consistency;
  return out;
}

}  // namespace hybridsim
