#include "hybridsim/charge_noise.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "hybridsim/constants.hpp"
#include "hybridsim/rng.hpp"

namespace hybridsim {

namespace {
constexpr double kPi = constants::pi;
}

double NoiseModel::psd(double omega) const {
  const double w = std::abs(omega);
  if (w < omega_min || w > omega_max) return 0.0;
  switch (kind) {
    case SpectrumKind::white: return amplitude;
    case SpectrumKind::one_over_f: return amplitude / w;
    case SpectrumKind::tabulated: {
      // log-log interpolation between samples
      if (tab_omega.empty()) return 0.0;
      if (w <= tab_omega.front()) return tab_psd.front();
      if (w >= tab_omega.back()) return tab_psd.back();
      auto it = std::upper_bound(tab_omega.begin(), tab_omega.end(), w);
      const std::size_t i = static_cast<std::size_t>(it - tab_omega.begin());
      const double w0 = tab_omega[i - 1], w1 = tab_omega[i];
      const double p0 = tab_psd[i - 1], p1 = tab_psd[i];
      if (p0 <= 0.0 || p1 <= 0.0) {
        const double f = (w - w0) / (w1 - w0);
        return p0 + f * (p1 - p0);
      }
      const double f = std::log(w / w0) / std::log(w1 / w0);
      return p0 * std::pow(p1 / p0, f);
    }
  }
  return 0.0;
}

double NoiseModel::band_power(double w1, double w2) const {
  const double a = std::max(w1, omega_min);
  const double b = std::min(w2, omega_max);
  if (b <= a) return 0.0;
  switch (kind) {
    case SpectrumKind::white: return amplitude * (b - a);
    case SpectrumKind::one_over_f: return amplitude * std::log(b / a);
    case SpectrumKind::tabulated: {
      // trapezoid on a log grid
      const int n = 64;
      double sum = 0.0;
      double wprev = a, pprev = psd(a);
      for (int i = 1; i <= n; ++i) {
        const double w = a * std::pow(b / a, static_cast<double>(i) / n);
        const double p = psd(w);
        sum += 0.5 * (p + pprev) * (w - wprev);
        wprev = w;
        pprev = p;
      }
      return sum;
    }
  }
  return 0.0;
}

void NoiseModel::validate() const {
  if (!(omega_min < omega_max)) {
    throw std::invalid_argument("NoiseModel: omega_min must be below omega_max");
  }
  if (omega_min <= 0.0) {
    throw std::invalid_argument("NoiseModel: cutoffs must be positive");
  }
  if (amplitude < 0.0) {
    throw std::invalid_argument("NoiseModel: amplitude must be nonnegative");
  }
  if (kind == SpectrumKind::tabulated) {
    if (tab_omega.size() != tab_psd.size() || tab_omega.size() < 2) {
      throw std::invalid_argument("NoiseModel: tabulated spectrum needs matching samples");
    }
    for (double p : tab_psd) {
      if (p < 0.0) throw std::invalid_argument("NoiseModel: tabulated psd must be nonnegative");
    }
    if (!std::is_sorted(tab_omega.begin(), tab_omega.end())) {
      throw std::invalid_argument("NoiseModel: tabulated omegas must be sorted");
    }
  }
}

int FlipProtocol::flip_pairs() const {
  return static_cast<int>(std::llround(total_time / (2.0 * interval)));
}

void FlipProtocol::validate() const {
  if (total_time <= 0.0) throw std::invalid_argument("FlipProtocol: total_time must be positive");
  if (!enabled) return;
  if (interval <= 0.0) throw std::invalid_argument("FlipProtocol: interval must be positive");
  const double ratio = total_time / interval;
  const long long n = std::llround(ratio);
  if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio || n < 2 || n % 2 != 0) {
    throw std::invalid_argument("FlipProtocol: t/tau must be an even integer >= 2");
  }
}

NoiseTrajectory synthesize_trajectory(const NoiseModel& model, double duration,
                                      double dt, std::uint64_t seed, int bins) {
  model.validate();
  if (duration <= 0.0 || dt <= 0.0) {
    throw std::invalid_argument("synthesize_trajectory: duration and dt must be positive");
  }
  if (dt >= constants::two_pi / (10.0 * model.omega_max)) {
    throw std::invalid_argument("synthesize_trajectory: dt too coarse for omega_max");
  }

  if (bins <= 0) {
    if (model.kind == SpectrumKind::white) {
      bins = 512;
    } else {
      const double decades = std::log10(model.omega_max / model.omega_min);
      bins = std::max(64, static_cast<int>(std::ceil(120.0 * decades)));
    }
  }

  // Bin edges: linear for white, logarithmic otherwise.
  std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) {
    const double f = static_cast<double>(i) / bins;
    edges[static_cast<std::size_t>(i)] =
        model.kind == SpectrumKind::white
            ? model.omega_min + f * (model.omega_max - model.omega_min)
            : model.omega_min * std::pow(model.omega_max / model.omega_min, f);
  }

  Rng rng(seed);
  std::vector<double> omega(static_cast<std::size_t>(bins));
  std::vector<double> amp_c(static_cast<std::size_t>(bins));
  std::vector<double> amp_s(static_cast<std::size_t>(bins));
  for (int k = 0; k < bins; ++k) {
    const double w1 = edges[static_cast<std::size_t>(k)];
    const double w2 = edges[static_cast<std::size_t>(k) + 1];
    // stratified frequency draw keeps the ensemble spectrum unbiased
    omega[static_cast<std::size_t>(k)] = w1 + rng.uniform() * (w2 - w1);
    const double sigma = std::sqrt(model.band_power(w1, w2) / kPi);
    amp_c[static_cast<std::size_t>(k)] = sigma * rng.normal();
    amp_s[static_cast<std::size_t>(k)] = sigma * rng.normal();
  }

  const std::size_t n_samples = static_cast<std::size_t>(std::ceil(duration / dt)) + 1;
  NoiseTrajectory traj;
  traj.seed = seed;
  traj.times.resize(n_samples);
  traj.values.assign(n_samples, 0.0);

  // incremental rotation per bin; avoids n_samples * bins trig calls
  std::vector<double> c(static_cast<std::size_t>(bins)), s(static_cast<std::size_t>(bins));
  std::vector<double> dc(static_cast<std::size_t>(bins)), ds(static_cast<std::size_t>(bins));
  for (int k = 0; k < bins; ++k) {
    c[static_cast<std::size_t>(k)] = 1.0;
    s[static_cast<std::size_t>(k)] = 0.0;
    dc[static_cast<std::size_t>(k)] = std::cos(omega[static_cast<std::size_t>(k)] * dt);
    ds[static_cast<std::size_t>(k)] = std::sin(omega[static_cast<std::size_t>(k)] * dt);
  }
  for (std::size_t i = 0; i < n_samples; ++i) {
    traj.times[i] = static_cast<double>(i) * dt;
    double v = 0.0;
    for (int k = 0; k < bins; ++k) {
      const std::size_t ku = static_cast<std::size_t>(k);
      v += amp_c[ku] * c[ku] + amp_s[ku] * s[ku];
      const double cn = c[ku] * dc[ku] - s[ku] * ds[ku];
      s[ku] = s[ku] * dc[ku] + c[ku] * ds[ku];
      c[ku] = cn;
    }
    traj.values[i] = v;
  }
  return traj;
}

int g_function(const FlipProtocol& protocol, double t) {
  if (!protocol.enabled) return 1;
  if (t < 0.0 || t >= protocol.total_time) {
    throw std::invalid_argument("g_function: time outside [0, total_time)");
  }
  const long long k = static_cast<long long>(std::floor(t / protocol.interval));
  return (k % 2 == 0) ? 1 : -1;
}

double stochastic_phase(const NoiseTrajectory& traj, const FlipProtocol& protocol,
                        const NoiseModel& model) {
  protocol.validate();
  if (traj.times.size() < 2 || traj.times.front() > 0.0) {
    throw std::invalid_argument("stochastic_phase: trajectory does not cover [0, t]");
  }
  const double dt = traj.times[1] - traj.times[0];
  const double t_end = protocol.total_time;
  if (traj.times.back() < t_end - 0.5 * dt) {
    throw std::invalid_argument("stochastic_phase: trajectory does not cover [0, t]");
  }

  if (!protocol.enabled) {
    const std::size_t n_int = static_cast<std::size_t>(std::llround(t_end / dt));
    if (n_int + 1 > traj.values.size()) {
      throw std::invalid_argument("stochastic_phase: trajectory does not cover [0, t]");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n_int; ++i) {
      sum += 0.5 * (traj.values[i] + traj.values[i + 1]) * dt;
    }
    return model.coupling_prefactor * sum;
  }

  const double steps_per_flip_d = protocol.interval / dt;
  const long long steps_per_flip = std::llround(steps_per_flip_d);
  if (steps_per_flip < 1 ||
      std::abs(steps_per_flip_d - static_cast<double>(steps_per_flip)) > 1e-9 * steps_per_flip_d) {
    throw std::invalid_argument("stochastic_phase: flip interval must align with the sample grid");
  }

  // Sum each +/- block with the identical ordering, then difference; a
  // constant trajectory then cancels to exactly zero per pair.
  const int pairs = protocol.flip_pairs();
  double total = 0.0;
  std::size_t idx = 0;
  for (int p = 0; p < pairs; ++p) {
    double plus = 0.0, minus = 0.0;
    for (long long i = 0; i < steps_per_flip; ++i, ++idx) {
      plus += 0.5 * (traj.values[idx] + traj.values[idx + 1]);
    }
    for (long long i = 0; i < steps_per_flip; ++i, ++idx) {
      minus += 0.5 * (traj.values[idx] + traj.values[idx + 1]);
    }
    total += (plus - minus) * dt;
  }
  return model.coupling_prefactor * total;
}

PhaseVariance phase_variance(const NoiseModel& model, const FlipProtocol& protocol) {
  model.validate();
  protocol.validate();
  PhaseVariance out;
  const double pref2 = model.coupling_prefactor * model.coupling_prefactor;
  const double t = protocol.total_time;

  if (!protocol.enabled) {
    out.variance = phase_variance_unmodulated(model, t);
    out.variance_printed_all_n = out.variance;
    out.variance_printed_odd_n = out.variance;
    return out;
  }

  const double w1 = kPi / protocol.interval;
  out.fundamental = w1;
  out.low_frequency_warning = (w1 * t < 10.0);

  // odd harmonics of the true square wave, band-limited
  double sum_odd = 0.0;
  int terms = 0;
  for (long long n = 1;; n += 2) {
    const double wn = static_cast<double>(n) * w1;
    if (wn > model.omega_max) break;
    const double term = model.psd(wn) / (static_cast<double>(n) * static_cast<double>(n));
    sum_odd += term;
    ++terms;
    if (term < 1e-8 * sum_odd && n > 20) break;
  }
  out.terms = terms;
  out.variance = pref2 * (8.0 / (kPi * kPi)) * sum_odd * t;

  // as-printed variants: harmonics at 2 pi n / tau, coefficient 2/pi^2
  const double w1p = constants::two_pi / protocol.interval;
  double sum_all = 0.0, sum_podd = 0.0;
  for (long long n = 1;; ++n) {
    const double wn = static_cast<double>(n) * w1p;
    if (wn > model.omega_max) break;
    const double term = model.psd(wn) / (static_cast<double>(n) * static_cast<double>(n));
    sum_all += term;
    if (n % 2 == 1) sum_podd += term;
    if (term < 1e-8 * sum_all && n > 20) break;
  }
  out.variance_printed_all_n = pref2 * (2.0 / (kPi * kPi)) * sum_all * t;
  out.variance_printed_odd_n = pref2 * (2.0 / (kPi * kPi)) * sum_podd * t;
  return out;
}

namespace {

// |integral_0^t g(t') e^{i omega t'} dt'|^2 for the square wave with
// half-period tau; direct per-segment series (stable at the harmonics).
double filter_gain(double omega, double tau, int segments) {
  const std::complex<double> iw(0.0, omega);
  std::complex<double> g(0.0, 0.0);
  for (int k = 0; k < segments; ++k) {
    const double t0 = k * tau;
    const double t1 = t0 + tau;
    const std::complex<double> seg =
        (std::exp(iw * t1) - std::exp(iw * t0)) / iw;
    g += (k % 2 == 0) ? seg : -seg;
  }
  return std::norm(g);
}

}  // namespace

double phase_variance_unmodulated(const NoiseModel& model, double t) {
  model.validate();
  const double pref2 = model.coupling_prefactor * model.coupling_prefactor;
  // (1/pi) integral psd(w) * 4 sin^2(w t/2) / w^2 dw on a log grid
  const int n = 4000;
  double sum = 0.0;
  double wprev = model.omega_min;
  auto integrand = [&](double w) {
    const double s = std::sin(0.5 * w * t);
    return model.psd(w) * 4.0 * s * s / (w * w);
  };
  double fprev = integrand(wprev);
  for (int i = 1; i <= n; ++i) {
    const double w = model.omega_min *
                     std::pow(model.omega_max / model.omega_min, static_cast<double>(i) / n);
    const double f = integrand(w);
    sum += 0.5 * (f + fprev) * (w - wprev);
    wprev = w;
    fprev = f;
  }
  return pref2 * sum / kPi;
}

double phase_variance_filter_integral(const NoiseModel& model, const FlipProtocol& protocol) {
  model.validate();
  protocol.validate();
  const double pref2 = model.coupling_prefactor * model.coupling_prefactor;
  if (!protocol.enabled) return phase_variance_unmodulated(model, protocol.total_time);

  const double tau = protocol.interval;
  const double t = protocol.total_time;
  const int segments = static_cast<int>(std::llround(t / tau));

  // log grid below the first harmonic region, linear (resolving the 2 pi/t
  // peak structure) above
  const double w_split = std::min(0.2 * kPi / t, model.omega_max);
  double sum = 0.0;
  auto integrand = [&](double w) { return model.psd(w) * filter_gain(w, tau, segments); };

  double wprev = model.omega_min;
  double fprev = integrand(wprev);
  if (w_split > model.omega_min) {
    const int n_log = 300;
    for (int i = 1; i <= n_log; ++i) {
      const double w =
          model.omega_min * std::pow(w_split / model.omega_min, static_cast<double>(i) / n_log);
      const double f = integrand(w);
      sum += 0.5 * (f + fprev) * (w - wprev);
      wprev = w;
      fprev = f;
    }
  }
  const double dw = constants::two_pi / (80.0 * t);
  for (double w = wprev + dw; w < model.omega_max + dw; w += dw) {
    const double wc = std::min(w, model.omega_max);
    const double f = integrand(wc);
    sum += 0.5 * (f + fprev) * (wc - wprev);
    wprev = wc;
    fprev = f;
    if (wc >= model.omega_max) break;
  }
  return pref2 * sum / kPi;
}

DephasingRate decoherence_rate(const NoiseModel& model, const FlipProtocol& protocol) {
  DephasingRate out;
  const PhaseVariance var = phase_variance(model, protocol);
  const double pref2 = model.coupling_prefactor * model.coupling_prefactor;
  const double t = protocol.total_time;
  out.rate = 0.5 * var.variance / t;
  out.rate_printed = 0.5 * var.variance_printed_all_n / t;

  if (!protocol.enabled) return out;

  // max spectral density over [omega_1, 100 omega_1]
  const double w1 = var.fundamental;
  double dv2max = 0.0;
  const int n_scan = 400;
  for (int i = 0; i <= n_scan; ++i) {
    const double w = w1 * std::pow(100.0, static_cast<double>(i) / n_scan);
    dv2max = std::max(dv2max, model.psd(w));
  }
  out.dv2_max = dv2max;
  out.bound = pref2 * dv2max / 2.0;
  out.bound_printed = pref2 * dv2max / 3.0;
  return out;
}

}  // namespace hybridsim
