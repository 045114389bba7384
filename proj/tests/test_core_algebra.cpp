#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hybridsim/constants.hpp"
#include "hybridsim/core_algebra.hpp"

using namespace hybridsim;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace {
const complexd I(0.0, 1.0);

Matrix random_matrix(int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = complexd(dist(gen), dist(gen));
  return m;
}
}  // namespace

TEST_CASE("ladder operators on the truncated basis") {
  HilbertSpace small(2);
  auto [a2, adag2] = build_ladder_ops(small);
  CHECK(a2.m(0, 1) == complexd(1.0, 0.0));
  CHECK(a2.m(0, 0) == complexd(0.0, 0.0));
  CHECK(a2.m(1, 0) == complexd(0.0, 0.0));
  CHECK(a2.m(1, 1) == complexd(0.0, 0.0));

  HilbertSpace four(4);
  auto [a4, adag4] = build_ladder_ops(four);
  CHECK(std::abs(a4.m(2, 3) - std::sqrt(3.0)) < 1e-14);
  CHECK(max_abs(adag4.m - a4.m.adjoint()) == 0.0);

  CHECK_THROWS_AS(HilbertSpace(1), std::invalid_argument);
}

TEST_CASE("commutator truncation artifact sits in the last diagonal entry") {
  const int n = 16;
  HilbertSpace space(n);
  auto [a, adag] = build_ladder_ops(space);
  Matrix comm = a.m * adag.m - adag.m * a.m - Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == n - 1 && j == n - 1) {
        CHECK(std::abs(comm(i, j) - complexd(-n, 0.0)) < 1e-12);
      } else {
        CHECK(std::abs(comm(i, j)) < 1e-14);
      }
    }
  }
}

TEST_CASE("embedding respects the factor order and is a homomorphism") {
  HilbertSpace space(4);
  const int total = space.total_dim();

  OperatorMatrix id = embed(space, Factor::charge, identity_op(2));
  CHECK(max_abs(id.m - Matrix::Identity(total, total)) == 0.0);

  OperatorMatrix zq = embed(space, Factor::charge, pauli_z());
  OperatorMatrix zs = embed(space, Factor::ion, pauli_z());
  CHECK(max_abs(zq.m * zs.m - zs.m * zq.m) == 0.0);
  CHECK(std::abs(zq.m.trace()) < 1e-14);
  CHECK(std::abs(zs.m.trace()) < 1e-14);

  // embed(AB) = embed(A) embed(B) on the same factor
  Matrix a = random_matrix(4, 11);
  Matrix b = random_matrix(4, 12);
  OperatorMatrix lhs = embed(space, Factor::motion, make_operator(a * b));
  OperatorMatrix rhs_a = embed(space, Factor::motion, make_operator(a));
  OperatorMatrix rhs_b = embed(space, Factor::motion, make_operator(b));
  CHECK(max_abs(lhs.m - rhs_a.m * rhs_b.m) < 1e-12);

  CHECK_THROWS_AS(embed(space, Factor::ion, identity_op(4)), std::invalid_argument);
}

TEST_CASE("matrix exponential basics") {
  Matrix a = random_matrix(6, 3);
  OperatorMatrix op = make_operator(a);
  OperatorMatrix zero = matrix_exponential(op, 0.0);
  CHECK(max_abs(zero.m - Matrix::Identity(6, 6)) < 1e-14);

  // exp(-i pi sigma_x / 2) = -i sigma_x
  OperatorMatrix rot = matrix_exponential(pauli_x(), -I * constants::pi / 2.0);
  CHECK(max_abs(rot.m - complexd(0.0, -1.0) * pauli_x().m) < 1e-12);

  OperatorMatrix big = make_operator(Matrix::Identity(300, 300));
  CHECK_THROWS_AS(matrix_exponential(big, 1.0), std::invalid_argument);
}

TEST_CASE("scaling-and-squaring agrees with the eigendecomposition oracle") {
  // anti-hermitian G = -iH: the general path on G must match exp(-iH)
  Matrix r = random_matrix(8, 21);
  Matrix h = 0.5 * (r + r.adjoint());
  Matrix g = -I * h;

  OperatorMatrix general = matrix_exponential(make_operator(g, false), 1.0);
  OperatorMatrix oracle = matrix_exponential(make_operator(h, true), -I);
  CHECK(max_abs(general.m - oracle.m) < 1e-10);

  Matrix closure = general.m * general.m.adjoint() - Matrix::Identity(8, 8);
  CHECK(max_abs(closure) < 1e-10);
}

TEST_CASE("propagators from hermitian generators stay unitary") {
  std::mt19937 gen(5);
  std::normal_distribution<double> dist(0.0, 1.0);
  HilbertSpace space(8);
  const int total = space.total_dim();
  Matrix r = random_matrix(total, 7);
  OperatorMatrix h = make_operator(0.5 * (r + r.adjoint()), true);
  OperatorMatrix u = matrix_exponential(h, -I * 0.37);
  CHECK(max_abs(u.m * u.m.adjoint() - Matrix::Identity(total, total)) < 1e-9);

  Vector psi(total);
  for (int i = 0; i < total; ++i) psi(i) = complexd(dist(gen), dist(gen));
  psi.normalize();
  for (int k = 0; k < 20; ++k) psi = u.m * psi;
  CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
}

TEST_CASE("displacement composition law") {
  DisplacementRecord id{};
  DisplacementRecord b{complexd(0.7, -0.2), 0.0};
  DisplacementRecord out = compose_displacements(id, b);
  CHECK(out.alpha == b.alpha);
  CHECK(out.phase == 0.0);

  // alpha = 1, beta = i: phase contribution Im(1 * conj(i)) = -1
  DisplacementRecord a1{complexd(1.0, 0.0), 0.0};
  DisplacementRecord b1{complexd(0.0, 1.0), 0.0};
  CHECK(compose_displacements(a1, b1).phase == doctest::Approx(-1.0));

  // associativity
  DisplacementRecord c1{complexd(-0.3, 0.5), 0.2};
  DisplacementRecord lhs = compose_displacements(compose_displacements(a1, b1), c1);
  DisplacementRecord rhs = compose_displacements(a1, compose_displacements(b1, c1));
  CHECK(lhs.alpha == rhs.alpha);
  CHECK(lhs.phase == doctest::Approx(rhs.phase).epsilon(1e-14));
}

TEST_CASE("closed loop phase matches truncated-Fock propagation") {
  const int n = 64;
  HilbertSpace space(n);
  auto [a, adag] = build_ladder_ops(space);

  auto displacement = [&](complexd beta) {
    Matrix gen = beta * adag.m - std::conj(beta) * a.m;
    return matrix_exponential(make_operator(gen, false), 1.0).m;
  };

  const complexd betas[4] = {complexd(0.9, 0.0), complexd(0.0, 0.8),
                             complexd(-0.9, 0.0), complexd(0.0, -0.8)};

  DisplacementRecord rec{};
  for (const complexd& b : betas) rec = compose_displacements({b, 0.0}, rec);
  CHECK(std::abs(rec.alpha) < 1e-15);
  // rectangle loop: phase = 2ab, twice the alpha-plane area
  CHECK(rec.phase == doctest::Approx(2.0 * 0.9 * 0.8).epsilon(1e-12));

  StateVector psi = coherent_state(n, complexd(0.4, 0.1));
  Vector final_state = psi.v;
  for (const complexd& b : betas) final_state = displacement(b) * final_state;
  const complexd overlap = psi.v.dot(final_state);
  CHECK(std::abs(std::arg(overlap) - rec.phase) < 1e-6);
  CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-8);
}

TEST_CASE("fidelity") {
  StateVector psi = coherent_state(32, complexd(0.5, 0.2));
  CHECK(fidelity(psi, psi) == doctest::Approx(1.0));

  StateVector f0 = fock_state(32, 0);
  StateVector f1 = fock_state(32, 1);
  CHECK(fidelity(f0, f1) == 0.0);

  StateVector rotated{psi.v * std::exp(complexd(0.0, 1.234))};
  CHECK(fidelity(psi, rotated) == doctest::Approx(1.0));

  CHECK_THROWS_AS(fidelity(f0, fock_state(16, 0)), std::invalid_argument);
}
