#include "hybridsim/gate_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "hybridsim/constants.hpp"

namespace hybridsim {

namespace {
constexpr double kHbar = constants::hbar;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
const complexd kI(0.0, 1.0);
}  // namespace

void IonParams::validate() const {
  if (mass <= 0) throw std::invalid_argument("IonParams: mass must be positive");
  if (trap_frequency < 0) throw std::invalid_argument("IonParams: trap frequency must be >= 0");
  if (photon_momentum <= 0) throw std::invalid_argument("IonParams: photon momentum must be positive");
}

double PulseSchedule::total_time() const {
  double t = 0.0;
  for (const Segment& s : segments) {
    if (s.kind != Segment::Kind::kick) t += std::abs(s.duration);
  }
  return t;
}

bool PulseSchedule::even_kick_parity() const {
  long long flips = 0;
  for (const Segment& s : segments) {
    if (s.kind == Segment::Kind::kick) flips += std::llabs(s.kick_count);
  }
  return flips % 2 == 0;
}

PulseSchedule canonical_schedule(long long n1, long long n2, double tau1,
                                 double t1, double t2) {
  if (t1 <= 0 || t2 <= 0) throw std::invalid_argument("canonical_schedule: free times must be positive");
  if (tau1 <= 0) throw std::invalid_argument("canonical_schedule: tau1 must be positive");
  if (n1 <= 0 || n2 <= 0) throw std::invalid_argument("canonical_schedule: kick counts must be positive");

  // commensurability: n2 = n1 t1 / t2 must be the supplied integer
  const double n2_required = static_cast<double>(n1) * t1 / t2;
  if (std::abs(n2_required - static_cast<double>(n2)) > 1e-9 * n2_required) {
    throw std::invalid_argument("canonical_schedule: n1 t1 / t2 is not the supplied n2");
  }
  const double tau2 = tau1 * t1 / t2;
  const double taum = tau1 + tau2;

  // free evolutions of t1 and t2 separate the window edges; each kick block
  // sits at the center of its coupling window
  const double gap1 = t1;
  const double gap2 = t2;

  PulseSchedule sch;
  sch.canonical = true;
  sch.n1 = n1;
  sch.n2 = n2;
  sch.tau1 = tau1;
  sch.tau2 = tau2;
  sch.t1 = t1;
  sch.t2 = t2;

  auto coupling = [](double d) { return Segment{Segment::Kind::coupling, 0, d}; };
  auto kick = [](long long n) { return Segment{Segment::Kind::kick, n, 0.0}; };
  auto free_ev = [](double d) { return Segment{Segment::Kind::free_evolution, 0, d}; };

  sch.segments = {
      coupling(tau1 / 2.0), kick(n1), coupling(tau1 / 2.0),
      free_ev(gap1),
      coupling(-taum / 2.0), kick(-(n1 + n2)), coupling(-taum / 2.0),
      free_ev(gap2),
      coupling(tau2 / 2.0), kick(n2), coupling(tau2 / 2.0),
  };
  return sch;
}

// ---------------------------------------------------------------------------
// Fock propagation
// ---------------------------------------------------------------------------

namespace {

struct SectorRun {
  Matrix unitary;                  // 2N x 2N over (charge x motion)
  std::array<complexd, 2> z;       // q = +1, -1 overlaps after removing U0(T)
  double max_leakage = 0.0;
};

// Propagates one ion-internal sector. Kick blocks act as the net
// displacement exp(-i n s dk x) with their pi-pulse parity tracked by the
// caller through the even-parity requirement.
SectorRun propagate_sector(const PulseSchedule& schedule, const IonParams& ion,
                           double kappa, const HilbertSpace& space,
                           const StateVector& psi0, int s, double residual_josephson,
                           double leakage_bound) {
  const int n = space.fock_dim;
  const int dim = 2 * n;
  const double omega = ion.trap_frequency;
  const double x0 = std::sqrt(kHbar / (2.0 * ion.mass * omega));

  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix x_op = x0 * (a + a.adjoint());

  Eigen::SelfAdjointEigenSolver<Matrix> xe(x_op);
  if (xe.info() != Eigen::Success) throw std::runtime_error("run_gate_fock: x eigenbasis failed");

  auto embed_charge = [&](const Matrix& block_p, const Matrix& block_m) {
    Matrix out = Matrix::Zero(dim, dim);
    out.topLeftCorner(n, n) = block_p;
    out.bottomRightCorner(n, n) = block_m;
    return out;
  };

  // coupling Hamiltonians for both window signs, built lazily
  std::array<Matrix, 2> coup_vecs;
  std::array<Eigen::VectorXd, 2> coup_vals;
  std::array<bool, 2> coup_ready{false, false};
  auto coupling_eigs = [&](int sign_idx) {
    if (!coup_ready[static_cast<std::size_t>(sign_idx)]) {
      const double sign = sign_idx == 0 ? 1.0 : -1.0;
      Matrix h_num = omega * a.adjoint() * a;
      Matrix h = embed_charge(h_num + sign * kappa * x_op, h_num - sign * kappa * x_op);
      if (residual_josephson != 0.0) {
        // tunneling term mixes the charge blocks
        h.topRightCorner(n, n) += 0.5 * residual_josephson * Matrix::Identity(n, n);
        h.bottomLeftCorner(n, n) += 0.5 * residual_josephson * Matrix::Identity(n, n);
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(h);
      if (es.info() != Eigen::Success) throw std::runtime_error("run_gate_fock: eigensolve failed");
      coup_vecs[static_cast<std::size_t>(sign_idx)] = es.eigenvectors();
      coup_vals[static_cast<std::size_t>(sign_idx)] = es.eigenvalues();
      coup_ready[static_cast<std::size_t>(sign_idx)] = true;
    }
    return sign_idx;
  };

  auto expm_diag = [&](const Matrix& vecs, const Eigen::VectorXd& vals, double t) {
    Vector ph(vals.size());
    for (int i = 0; i < vals.size(); ++i) ph(i) = std::exp(-kI * vals(i) * t);
    return Matrix(vecs * ph.asDiagonal() * vecs.adjoint());
  };

  SectorRun run;
  run.unitary = Matrix::Identity(dim, dim);
  std::array<Vector, 2> states;
  states[0] = Vector::Zero(dim);
  states[0].head(n) = psi0.v;
  states[1] = Vector::Zero(dim);
  states[1].tail(n) = psi0.v;

  auto leakage_of = [&](const Vector& v) {
    double pop = 0.0;
    for (int q = 0; q < 2; ++q) {
      for (int k = n - 2; k < n; ++k) pop += std::norm(v(q * n + k));
    }
    return pop;
  };

  for (const Segment& seg : schedule.segments) {
    Matrix u;
    switch (seg.kind) {
      case Segment::Kind::kick: {
        const double c = static_cast<double>(seg.kick_count) * s * ion.photon_momentum;
        Vector ph(n);
        for (int i = 0; i < n; ++i) ph(i) = std::exp(-kI * c * xe.eigenvalues()(i));
        const Matrix kick_n = xe.eigenvectors() * ph.asDiagonal() * xe.eigenvectors().adjoint();
        u = embed_charge(kick_n, kick_n);
        break;
      }
      case Segment::Kind::coupling: {
        const int idx = coupling_eigs(seg.duration >= 0 ? 0 : 1);
        u = expm_diag(coup_vecs[static_cast<std::size_t>(idx)],
                      coup_vals[static_cast<std::size_t>(idx)], std::abs(seg.duration));
        break;
      }
      case Segment::Kind::free_evolution: {
        Vector ph(dim);
        for (int q = 0; q < 2; ++q) {
          for (int k = 0; k < n; ++k) {
            ph(q * n + k) = std::exp(-kI * omega * static_cast<double>(k) * seg.duration);
          }
        }
        u = Matrix(ph.asDiagonal());
        break;
      }
    }
    run.unitary = u * run.unitary;
    for (auto& st : states) {
      st = u * st;
      const double leak = leakage_of(st);
      run.max_leakage = std::max(run.max_leakage, leak);
      if (leak > leakage_bound) {
        throw std::runtime_error("run_gate_fock: Fock leakage exceeds bound");
      }
    }
  }

  // remove U0(T) and project the q-diagonal overlaps
  const double t_total = schedule.total_time();
  Vector u0dag(n);
  for (int k = 0; k < n; ++k) u0dag(k) = std::exp(kI * omega * static_cast<double>(k) * t_total);
  for (int q = 0; q < 2; ++q) {
    const Matrix block = run.unitary.block(q * n, q * n, n, n);
    const Vector rotated = u0dag.asDiagonal() * psi0.v;  // U0^dag |psi0>
    run.z[static_cast<std::size_t>(q)] = psi0.v.dot(Vector(block * rotated));
  }
  return run;
}

}  // namespace

GateResult run_gate_fock(const PulseSchedule& schedule, const IonParams& ion,
                         const EffectiveCoupling& coupling, const HilbertSpace& space,
                         const StateVector& initial_motional, double residual_josephson,
                         double leakage_bound) {
  ion.validate();
  if (ion.trap_frequency <= 0) {
    throw std::invalid_argument("run_gate_fock: Fock propagation needs trap_frequency > 0");
  }
  if (initial_motional.dim() != space.fock_dim) {
    throw std::invalid_argument("run_gate_fock: initial state dimension mismatch");
  }
  if (!schedule.even_kick_parity()) {
    throw std::invalid_argument("run_gate_fock: total kick parity must be even");
  }
  if (schedule.canonical) {
    const double lhs = static_cast<double>(schedule.n1) * schedule.t1;
    const double rhs = static_cast<double>(schedule.n2) * schedule.t2;
    if (std::abs(lhs - rhs) > 1e-9 * std::abs(lhs)) {
      throw std::invalid_argument("run_gate_fock: commensurability violation");
    }
  }

  const int n = space.fock_dim;
  GateResult result;
  result.gate_time = schedule.total_time();

  const SectorRun plus = propagate_sector(schedule, ion, coupling.kappa, space,
                                          initial_motional, +1, residual_josephson, leakage_bound);
  const SectorRun minus = propagate_sector(schedule, ion, coupling.kappa, space,
                                           initial_motional, -1, residual_josephson, leakage_bound);
  result.max_leakage = std::max(plus.max_leakage, minus.max_leakage);

  // order (s,q) = (+,+), (+,-), (-,+), (-,-)
  result.sector_overlaps = {plus.z[0], plus.z[1], minus.z[0], minus.z[1]};
  for (int k = 0; k < 4; ++k) {
    result.sector_phases[static_cast<std::size_t>(k)] =
        std::arg(result.sector_overlaps[static_cast<std::size_t>(k)]);
  }

  const complexd prod = result.sector_overlaps[0] * result.sector_overlaps[3] *
                        std::conj(result.sector_overlaps[1]) * std::conj(result.sector_overlaps[2]);
  result.alpha = -std::arg(prod) / 4.0;

  complexd acc(0.0, 0.0);
  const double sq[4] = {1.0, -1.0, -1.0, 1.0};
  for (int k = 0; k < 4; ++k) {
    acc += result.sector_overlaps[static_cast<std::size_t>(k)] *
           std::exp(kI * result.alpha * sq[k]);
  }
  result.phi0 = std::arg(acc);
  result.infidelity = 1.0 - std::norm(acc / 4.0);

  Matrix total = Matrix::Zero(4 * n, 4 * n);
  total.topLeftCorner(2 * n, 2 * n) = plus.unitary;
  total.bottomRightCorner(2 * n, 2 * n) = minus.unitary;
  result.total_unitary = make_operator(std::move(total));
  return result;
}

// ---------------------------------------------------------------------------
// Displacement-record oracle
// ---------------------------------------------------------------------------

namespace {

struct LoopEvent {
  complexd beta;
  double phase = 0.0;
};

// window [u, v] with coupling strength g (rad/(s m)) in the rotating frame
LoopEvent window_event(double g, double u, double v, double omega, double x_scale,
                       double mass) {
  LoopEvent ev;
  const double d = v - u;
  if (omega > 0.0) {
    const complexd ewv = std::exp(kI * omega * v);
    const complexd ewu = std::exp(kI * omega * u);
    ev.beta = -g * x_scale * (ewv - ewu) / omega;
    ev.phase = g * g * x_scale * x_scale * (d - std::sin(omega * d) / omega) / omega;
  } else {
    ev.beta = g * complexd(kHbar * (v * v - u * u) / (4.0 * mass * x_scale), -x_scale * d);
    ev.phase = kHbar * g * g * d * d * d / (12.0 * mass);
  }
  return ev;
}

LoopEvent kick_event(double c, double t, double omega, double x_scale, double mass) {
  LoopEvent ev;
  if (omega > 0.0) {
    ev.beta = -kI * c * x_scale * std::exp(kI * omega * t);
  } else {
    ev.beta = c * complexd(kHbar * t / (2.0 * mass * x_scale), -x_scale);
  }
  return ev;
}

}  // namespace

SectorLoop displacement_loop(const PulseSchedule& schedule, const IonParams& ion,
                             double kappa, double omega_nu, int s, int q) {
  ion.validate();
  const double t_total = schedule.total_time();
  const double x_scale = omega_nu > 0.0
                             ? std::sqrt(kHbar / (2.0 * ion.mass * omega_nu))
                             : std::sqrt(kHbar * std::max(t_total, 1e-30) / (2.0 * ion.mass));

  DisplacementRecord rec;
  double clock = 0.0;
  for (const Segment& seg : schedule.segments) {
    switch (seg.kind) {
      case Segment::Kind::kick: {
        const double c = static_cast<double>(seg.kick_count) * s * ion.photon_momentum;
        const LoopEvent ev = kick_event(c, clock, omega_nu, x_scale, ion.mass);
        rec = compose_displacements({ev.beta, ev.phase}, rec);
        break;
      }
      case Segment::Kind::coupling: {
        const double g = (seg.duration >= 0 ? 1.0 : -1.0) * q * kappa;
        const double d = std::abs(seg.duration);
        const LoopEvent ev = window_event(g, clock, clock + d, omega_nu, x_scale, ion.mass);
        rec = compose_displacements({ev.beta, ev.phase}, rec);
        clock += d;
        break;
      }
      case Segment::Kind::free_evolution:
        clock += seg.duration;
        break;
    }
  }
  return {rec.alpha, rec.phase};
}

double displacement_loop_alpha(const PulseSchedule& schedule, const IonParams& ion,
                               double kappa, double omega_nu) {
  const double pp = displacement_loop(schedule, ion, kappa, omega_nu, +1, +1).phase;
  const double pm = displacement_loop(schedule, ion, kappa, omega_nu, +1, -1).phase;
  const double mp = displacement_loop(schedule, ion, kappa, omega_nu, -1, +1).phase;
  const double mm = displacement_loop(schedule, ion, kappa, omega_nu, -1, -1).phase;
  return -(pp + mm - pm - mp) / 4.0;
}

// ---------------------------------------------------------------------------
// Closed-form phase
// ---------------------------------------------------------------------------

namespace {

// impulse-weighted separation of a kick at time k from a window [u, v]
double pair_separation(double k, double u, double v) {
  if (k <= u || k >= v) return std::abs(0.5 * (u + v) - k);
  const double a = k - u;
  const double b = v - k;
  return (a * a + b * b) / (2.0 * (v - u));
}

}  // namespace

double analytic_loop_phase(const PulseSchedule& schedule, const IonParams& ion,
                           double kappa) {
  if (!schedule.canonical) {
    throw std::invalid_argument("analytic_loop_phase: canonical schedule required");
  }
  const double tau1 = schedule.tau1, tau2 = schedule.tau2;
  const double t1 = schedule.t1, t2 = schedule.t2;
  const double taum = tau1 + tau2;

  const double w_start[3] = {0.0, tau1 + t1, tau1 + t1 + taum + t2};
  const double w_size[3] = {tau1, taum, tau2};
  const double w_signed[3] = {tau1, -taum, tau2};
  const double n_signed[3] = {static_cast<double>(schedule.n1),
                              -static_cast<double>(schedule.n1 + schedule.n2),
                              static_cast<double>(schedule.n2)};

  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double k = w_start[j] + 0.5 * w_size[j];  // kick at its window center
    for (int w = 0; w < 3; ++w) {
      sum += n_signed[j] * w_signed[w] *
             pair_separation(k, w_start[w], w_start[w] + w_size[w]);
    }
  }
  return -kHbar * ion.photon_momentum * kappa / (2.0 * ion.mass) * sum;
}

AnalyticPhase analytic_phase(const PulseSchedule& schedule, const IonParams& ion,
                             const CircuitParams& circuit) {
  circuit.validate();
  AnalyticPhase out;
  const double e2 = constants::e_charge * constants::e_charge;
  const double csigma = coupling_csigma(circuit, true);
  const double kappa_junction = e2 / (kHbar * csigma * circuit.d_i);
  const double kappa_total = e2 * circuit.C_m / (kHbar * csigma * circuit.C_t() * circuit.d_i);
  out.alpha_ct_junction = analytic_loop_phase(schedule, ion, kappa_junction);
  out.alpha_ct_total = analytic_loop_phase(schedule, ion, kappa_total);
  out.alpha_flat_estimate = e2 * ion.photon_momentum * schedule.tau1 *
                            static_cast<double>(schedule.n1) * schedule.t1 * schedule.t2 /
                            (2.0 * circuit.C_r * ion.mass * circuit.d_i * circuit.d_i *
                             (schedule.t1 + schedule.t2));
  return out;
}

// ---------------------------------------------------------------------------
// Fidelity scaling sweep
// ---------------------------------------------------------------------------

ScalingSweep fidelity_scaling_sweep(const IonParams& ion, const EffectiveCoupling& coupling,
                                    const std::vector<double>& omega_nu_t_values) {
  if (omega_nu_t_values.size() < 3) {
    throw std::invalid_argument("fidelity_scaling_sweep: need at least 3 points");
  }
  for (double v : omega_nu_t_values) {
    if (v < 0.999e-3 || v > 1.001e-1) {
      throw std::invalid_argument("fidelity_scaling_sweep: omega_nu_t outside (1e-3, 1e-1)");
    }
  }

  // asymmetric shape so the loop's first moment stays open; the strengths
  // are held fixed in ladder units across the sweep
  const double t1 = 10e-9, t2 = 2.0 * t1, tau1 = 0.35 * t1;
  const long long n1 = 2, n2 = 1;
  const double kick_unit = 0.35;    // dk * x0 per pulse
  const double coup_unit = 0.30;    // kappa * x0 * tau1
  const PulseSchedule base = canonical_schedule(n1, n2, tau1, t1, t2);
  const double t_total = base.total_time();

  const HilbertSpace space(64);
  const StateVector psi0 = fock_state(space.fock_dim, 0);

  ScalingSweep sweep;
  sweep.omega_nu_t = omega_nu_t_values;
  sweep.infidelities.reserve(omega_nu_t_values.size());
  for (double v : omega_nu_t_values) {
    IonParams p = ion;
    p.trap_frequency = v / t_total;
    const double x0 = std::sqrt(kHbar / (2.0 * p.mass * p.trap_frequency));
    p.photon_momentum = kick_unit / x0;
    EffectiveCoupling c = coupling;
    c.kappa = coup_unit / (x0 * tau1);
    const GateResult res = run_gate_fock(base, p, c, space, psi0);
    sweep.infidelities.push_back(res.infidelity);
    sweep.alpha_numeric.push_back(res.alpha);
    sweep.alpha_analytic.push_back(analytic_loop_phase(base, p, c.kappa));
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double npts = static_cast<double>(omega_nu_t_values.size());
  for (std::size_t i = 0; i < omega_nu_t_values.size(); ++i) {
    const double x = std::log(omega_nu_t_values[i]);
    const double y = std::log(std::max(sweep.infidelities[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  sweep.fitted_exponent = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
  return sweep;
}

// ---------------------------------------------------------------------------
// Swap composition and bystander ion
// ---------------------------------------------------------------------------

OperatorMatrix compose_swap(const OperatorMatrix& phase_gate) {
  if (phase_gate.dim() != 4) {
    throw std::invalid_argument("compose_swap: expected a 4x4 two-qubit gate");
  }
  const Matrix& u = phase_gate.m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j && std::abs(u(i, j)) > 1e-9) {
        throw std::invalid_argument("compose_swap: input is not a controlled phase");
      }
    }
  }
  const complexd prod = u(0, 0) * u(3, 3) * std::conj(u(1, 1)) * std::conj(u(2, 2));
  const double alpha = -std::arg(prod) / 4.0;
  if (std::abs(std::abs(alpha) - constants::pi / 4.0) > 1e-6) {
    throw std::invalid_argument("compose_swap: input is not a pi/4 controlled phase");
  }

  // strip the global phase so the diagonal is exp(-i alpha s q)
  const complexd phase0 = u(0, 0) * std::exp(kI * alpha);
  Matrix cp = u / phase0;

  Matrix s_gate = Matrix::Zero(2, 2);
  s_gate(0, 0) = 1.0;
  s_gate(1, 1) = kI;
  Matrix h_gate(2, 2);
  h_gate << 1, 1, 1, -1;
  h_gate /= std::sqrt(2.0);
  const Matrix id2 = Matrix::Identity(2, 2);

  auto kron2 = [](const Matrix& a, const Matrix& b) {
    Matrix out(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block(i * 2, j * 2, 2, 2) = a(i, j) * b;
    return out;
  };

  // CZ from the pi/4 phase: e^{+-i pi/4} (S^dag x S^dag resp. S x S) U'
  Matrix cz;
  if (alpha > 0) {
    cz = std::exp(kI * constants::pi / 4.0) *
         kron2(s_gate.adjoint(), s_gate.adjoint()) * cp;
  } else {
    cz = std::exp(-kI * constants::pi / 4.0) * kron2(s_gate, s_gate) * cp;
  }

  const Matrix cnot12 = kron2(id2, h_gate) * cz * kron2(id2, h_gate);
  const Matrix cnot21 = kron2(h_gate, id2) * cz * kron2(h_gate, id2);
  return make_operator(cnot12 * cnot21 * cnot12);
}

double bystander_check(const PulseSchedule& schedule, const HilbertSpace& space) {
  const int n = space.fock_dim;
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const double t_full = schedule.total_time();
  if (t_full <= 0.0) return 0.0;
  const double omega = constants::two_pi / t_full;  // O(1) phases over the gate
  const OperatorMatrix h_free = make_operator(omega * a.adjoint() * a, true);

  // the non-addressed ion sees neither kicks nor coupling
  Matrix u_b = Matrix::Identity(n, n);
  double t_total = 0.0;
  for (const Segment& seg : schedule.segments) {
    if (seg.kind == Segment::Kind::kick) continue;
    const double d = std::abs(seg.duration);
    u_b = matrix_exponential(h_free, -kI * d).m * u_b;
    t_total += d;
  }
  const Matrix u0 = matrix_exponential(h_free, -kI * t_total).m;
  const Matrix rel = u_b * u0.adjoint();
  const complexd phase = rel(0, 0) / std::abs(rel(0, 0));
  return max_abs(rel - phase * Matrix::Identity(n, n));
}

}  // namespace hybridsim
