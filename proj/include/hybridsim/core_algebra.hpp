#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace hybridsim {

using complexd = std::complex<double>;

/*
 * Operator and state algebra on the composite Hilbert space
 * (ion internal) x (charge) x (motional Fock), in that tensor order
 * throughout. All energies are angular frequencies (rad/s).
 */

struct HilbertSpace {
  int ion_internal_dim = 2;
  int charge_dim = 2;
  int fock_dim = 64;  // motional truncation, N >= 2

  explicit HilbertSpace(int fock_dim_in = 64);
  int total_dim() const { return ion_internal_dim * charge_dim * fock_dim; }
};

enum class Factor { ion, charge, motion };

// Dense complex operator. `hermitian` is a hint used to pick the
// eigendecomposition path in matrix_exponential.
struct OperatorMatrix {
  Eigen::MatrixXcd m;
  bool hermitian = false;

  int dim() const { return static_cast<int>(m.rows()); }
};

struct StateVector {
  Eigen::VectorXcd v;

  int dim() const { return static_cast<int>(v.size()); }
  double norm() const { return v.norm(); }
};

// Phase-space displacement with accumulated global phase, in dimensionless
// ladder-operator units: D(alpha) = exp(alpha a^dag - conj(alpha) a).
// Composition convention is fixed to D(a)D(b) = e^{i Im(a conj(b))} D(a+b).
struct DisplacementRecord {
  complexd alpha{0.0, 0.0};
  double phase = 0.0;
};

OperatorMatrix make_operator(Eigen::MatrixXcd m, bool hermitian = false);

OperatorMatrix pauli_x();
OperatorMatrix pauli_z();
OperatorMatrix identity_op(int dim);

// a|n> = sqrt(n)|n-1> on the truncated Fock factor; creation is the
// conjugate transpose. Rejects fock_dim < 2.
std::pair<OperatorMatrix, OperatorMatrix> build_ladder_ops(const HilbertSpace& space);

// op (x) identity on the other factors, respecting the fixed factor order.
OperatorMatrix embed(const HilbertSpace& space, Factor factor, const OperatorMatrix& op);

// exp(scale * op). Hermitian-flagged operators go through an
// eigendecomposition; anything else through scaling-and-squaring.
// Dimension capped (default 256).
OperatorMatrix matrix_exponential(const OperatorMatrix& op, complexd scale,
                                  int dim_cap = 256);

// Record of the operator product D(a) * D(b), i.e. b applied first:
//   alpha = a.alpha + b.alpha
//   phase = a.phase + b.phase + Im(a.alpha * conj(b.alpha))
DisplacementRecord compose_displacements(const DisplacementRecord& a,
                                         const DisplacementRecord& b);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);

// Motional-factor states (dimension = fock_dim).
StateVector fock_state(int fock_dim, int n);
StateVector coherent_state(int fock_dim, complexd alpha);

// max |A_ij| over all entries
double max_abs(const Eigen::MatrixXcd& m);

// Population of the top `levels` Fock levels of a motional state; used as
// the truncation leakage monitor.
double top_level_population(const StateVector& motional, int levels = 2);

}  // namespace hybridsim
