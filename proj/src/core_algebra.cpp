#include "hybridsim/core_algebra.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace hybridsim {

HilbertSpace::HilbertSpace(int fock_dim_in) : fock_dim(fock_dim_in) {
  if (fock_dim < 2) {
    throw std::invalid_argument("HilbertSpace: fock_dim must be >= 2");
  }
}

OperatorMatrix make_operator(Eigen::MatrixXcd m, bool hermitian) {
  return OperatorMatrix{std::move(m), hermitian};
}

OperatorMatrix pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return {m, true};
}

OperatorMatrix pauli_z() {
  Eigen::MatrixXcd m(2, 2);
  m << 1, 0, 0, -1;
  return {m, true};
}

OperatorMatrix identity_op(int dim) {
  return {Eigen::MatrixXcd::Identity(dim, dim), true};
}

std::pair<OperatorMatrix, OperatorMatrix> build_ladder_ops(const HilbertSpace& space) {
  const int n = space.fock_dim;
  if (n < 2) {
    throw std::invalid_argument("build_ladder_ops: fock_dim must be >= 2");
  }
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    a(k - 1, k) = std::sqrt(static_cast<double>(k));
  }
  return {make_operator(a), make_operator(a.adjoint())};
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

OperatorMatrix embed(const HilbertSpace& space, Factor factor, const OperatorMatrix& op) {
  const int expected = factor == Factor::ion      ? space.ion_internal_dim
                       : factor == Factor::charge ? space.charge_dim
                                                  : space.fock_dim;
  if (op.dim() != expected) {
    throw std::invalid_argument("embed: operator dimension does not match factor");
  }
  const Eigen::MatrixXcd id_ion = Eigen::MatrixXcd::Identity(space.ion_internal_dim, space.ion_internal_dim);
  const Eigen::MatrixXcd id_charge = Eigen::MatrixXcd::Identity(space.charge_dim, space.charge_dim);
  const Eigen::MatrixXcd id_motion = Eigen::MatrixXcd::Identity(space.fock_dim, space.fock_dim);

  Eigen::MatrixXcd out;
  switch (factor) {
    case Factor::ion: out = kron(op.m, kron(id_charge, id_motion)); break;
    case Factor::charge: out = kron(id_ion, kron(op.m, id_motion)); break;
    case Factor::motion: out = kron(id_ion, kron(id_charge, op.m)); break;
  }
  return {out, op.hermitian};
}

OperatorMatrix matrix_exponential(const OperatorMatrix& op, complexd scale, int dim_cap) {
  if (op.dim() > dim_cap) {
    throw std::invalid_argument("matrix_exponential: dimension exceeds cap");
  }
  if (op.hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.m);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("matrix_exponential: eigendecomposition failed");
    }
    const Eigen::VectorXd& lam = es.eigenvalues();
    Eigen::VectorXcd expl(lam.size());
    for (int i = 0; i < lam.size(); ++i) {
      expl(i) = std::exp(scale * lam(i));
    }
    Eigen::MatrixXcd out = es.eigenvectors() * expl.asDiagonal() * es.eigenvectors().adjoint();
    return make_operator(std::move(out));
  }
  Eigen::MatrixXcd scaled = scale * op.m;
  return make_operator(scaled.exp());
}

DisplacementRecord compose_displacements(const DisplacementRecord& a,
                                         const DisplacementRecord& b) {
  DisplacementRecord out;
  out.alpha = a.alpha + b.alpha;
  out.phase = a.phase + b.phase + std::imag(a.alpha * std::conj(b.alpha));
  return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const complexd overlap = a.v.dot(b.v);
  return std::norm(overlap);
}

StateVector fock_state(int fock_dim, int n) {
  if (n < 0 || n >= fock_dim) {
    throw std::invalid_argument("fock_state: level outside truncated basis");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(fock_dim);
  v(n) = 1.0;
  return {v};
}

StateVector coherent_state(int fock_dim, complexd alpha) {
  Eigen::VectorXcd v(fock_dim);
  // c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)
  complexd c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < fock_dim; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  v.normalize();  // absorb the truncated tail
  return {v};
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.cwiseAbs().maxCoeff();
}

double top_level_population(const StateVector& motional, int levels) {
  const int n = motional.dim();
  double pop = 0.0;
  for (int k = std::max(0, n - levels); k < n; ++k) {
    pop += std::norm(motional.v(k));
  }
  return pop;
}

}  // namespace hybridsim
