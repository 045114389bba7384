#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hybridsim/cavity_dissipation.hpp"
#include "hybridsim/constants.hpp"

using namespace hybridsim;
namespace cs = hybridsim::constants;

namespace {

BathSpec reference_bath(double r = 0.031) {
  BathSpec b;
  b.R_r = r;
  b.temperature = 0.1;
  b.C_r = 3e-15;
  b.C_m = 1e-16;
  b.C_t = 2e-16;
  b.L_r = 3e-13;
  return b;
}

}  // namespace

TEST_CASE("kernel against the zero-damping coth sum") {
  BathSpec b = reference_bath(0.0);
  const double k0 = matsubara_kernel(b, 0.0);

  // sum_n omega_r^2/(nu_n^2 + omega_r^2) = (hbar beta omega_r / 2) coth(hbar beta omega_r / 2)
  const double hbeta = b.thermal_time();
  const double wr = b.omega_r();
  const double ratio = b.coupling_ratio();
  const double pref = ratio * ratio * 4.0 / (b.C_r + b.C_m);
  const double oracle = -pref * (wr / 2.0) / std::tanh(hbeta * wr / 2.0);
  CHECK(std::abs(k0 / oracle - 1.0) < 1e-4);
}

TEST_CASE("kernel symmetry and convergence") {
  BathSpec b = reference_bath();
  const double tau = 0.2 * b.thermal_time();
  CHECK(matsubara_kernel(b, tau) == doctest::Approx(matsubara_kernel(b, -tau)).epsilon(1e-10));

  const double coarse = matsubara_kernel(b, tau, 1024, 1e-6);
  const double fine = matsubara_kernel(b, tau, 2048, 1e-8);
  CHECK(std::abs(coarse / fine - 1.0) < 1e-5);
}

TEST_CASE("kernel transform reproduces the network on the imaginary axis") {
  BathSpec b = reference_bath();
  const double ratio = b.coupling_ratio();
  for (double nu : {1e10, 1e12, 1e13, 1e14}) {
    // s Z(s) on the real s axis from the network elements directly
    const double cp = b.shunt_capacitance();
    const double z = (nu * b.L_r + b.R_r) / (nu * nu * b.L_r * cp + nu * b.R_r * cp + 1.0);
    const double target = ratio * ratio * nu * z;
    CHECK(matsubara_transform(b, nu) == doctest::Approx(target).epsilon(1e-12));
  }
}

TEST_CASE("effective impedance limits") {
  BathSpec b = reference_bath();

  // omega well below the cavity resonance: Z_eff ~ R_r
  const double w_low = 1e-4 / std::sqrt(b.L_r * b.C_r);
  CHECK(std::abs(effective_impedance(b, w_low)) == doctest::Approx(b.R_r).epsilon(0.01));

  // lossless LC pole
  BathSpec lossless = reference_bath(0.0);
  const double w_res = 1.0 / std::sqrt(lossless.L_r * lossless.shunt_capacitance());
  CHECK_THROWS_AS(effective_impedance(lossless, w_res), std::domain_error);
  CHECK_THROWS_AS(effective_impedance(lossless, 0.0), std::domain_error);

  // capacitive shunt at high frequency
  const double w_hi = 1e3 * lossless.omega_r();
  const double expect = 1.0 / (w_hi * lossless.shunt_capacitance());
  CHECK(std::abs(effective_impedance(b, w_hi)) == doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("spectral density limits") {
  BathSpec b = reference_bath();
  const double ratio = b.coupling_ratio();

  // omega -> 0: omega coth(hbar omega/2kT) -> 2kT/hbar
  const double w_tiny = 1e-8 * b.omega_r();
  const double j_small = effective_spectral_density(b, w_tiny);
  const double j_limit = spectral_density_zero_limit(b);
  CHECK(j_small == doctest::Approx(j_limit).epsilon(1e-4));
  CHECK(j_limit == doctest::Approx(ratio * ratio * b.R_r * 2.0 * cs::k_boltzmann *
                                   b.temperature / cs::hbar));

  // T -> 0 at fixed omega: coth -> 1
  BathSpec cold = reference_bath();
  cold.temperature = 1e-5;
  const double w = 0.05 * b.omega_r();
  const double re_z = std::real(effective_impedance(cold, w));
  CHECK(effective_spectral_density(cold, w) ==
        doctest::Approx(ratio * ratio * w * re_z).epsilon(1e-9));
}

TEST_CASE("two-route consistency over the low-frequency window") {
  BathSpec b = reference_bath();
  const double wr = b.omega_r();
  for (int i = 0; i <= 20; ++i) {
    const double w = 1e-3 * wr * std::pow(100.0, i / 20.0);
    const double direct = effective_spectral_density(b, w);
    const double continued = spectral_density_from_kernel(b, w);
    CHECK(std::abs(continued / direct - 1.0) < 0.02);
  }
  // richardson extrapolation tightens delta -> 0
  const double w = 0.01 * wr;
  const double rich = spectral_density_from_kernel(b, w, 1e-4 * wr, true);
  CHECK(std::abs(rich / effective_spectral_density(b, w) - 1.0) < 1e-4);
}

TEST_CASE("charge decoherence rate") {
  BathSpec b = reference_bath(0.0);
  CHECK(charge_decoherence_rate(b).gamma_rq == 0.0);

  // C_m/2C_t = 1/4, T = 100 mK, back-solved resistance near 0.031 Ohm
  BathSpec paper = reference_bath();
  const double r_solved = back_solve_resistance(paper, 5e4);
  CHECK(r_solved == doctest::Approx(0.031).epsilon(0.02));

  paper.R_r = r_solved;
  ChargeDecoherence dec = charge_decoherence_rate(paper);
  CHECK(dec.gamma_rq == doctest::Approx(5e4).epsilon(1e-9));
  CHECK(std::abs(dec.fdt_consistency / dec.gamma_rq - 1.0) < 1e-10);

  // linear in R_r and T
  BathSpec doubled = paper;
  doubled.R_r *= 2.0;
  CHECK(charge_decoherence_rate(doubled).gamma_rq == doctest::Approx(2.0 * dec.gamma_rq));
  doubled = paper;
  doubled.temperature *= 3.0;
  CHECK(charge_decoherence_rate(doubled).gamma_rq == doctest::Approx(3.0 * dec.gamma_rq));
}

TEST_CASE("lossless kernel poles sit at the cavity resonance") {
  // with gamma_hat = 0 the transform denominator vanishes at nu^2 = -omega_r^2,
  // i.e. the retarded response peaks sharply at omega_r
  BathSpec b = reference_bath(0.0);
  const double wr = b.omega_r();
  const double near = std::abs(spectral_density_from_kernel(reference_bath(1e-8), wr, 1e-9 * wr));
  const double far = std::abs(spectral_density_from_kernel(reference_bath(1e-8), 0.5 * wr, 1e-9 * wr));
  CHECK(near > 1e4 * far);
}

TEST_CASE("spectrum table") {
  BathSpec b = reference_bath();
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(1e-3 * b.omega_r() * i);
  SpectralResult res = compute_spectrum(b, grid);
  CHECK(res.j_eff.size() == grid.size());
  for (double j : res.j_eff) CHECK(j >= 0.0);
  CHECK(std::abs(res.z_eff.front().real() - b.R_r) < 0.01 * b.R_r);
}
