#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "amconv/many_particle.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace amconv;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd comm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return a * b - b * a; }

}  // namespace

TEST_SUITE("many-particle") {

TEST_CASE("generators equal the projected Fock-space operators") {
  for (int n = 2; n <= 12; n += 2) {
    const auto g = build_generators(basis_states(n));
    const auto o = oracle::Fock(n).generators();
    CHECK((g.kx.entries - o.kx).norm() <= 1e-12);
    CHECK((g.ky.entries - o.ky).norm() <= 1e-12);
    CHECK((g.kz.entries - o.kz).norm() <= 1e-12);
    CHECK((g.kplus.entries - o.kplus).norm() <= 1e-12);
    CHECK((g.kminus.entries - o.kminus).norm() <= 1e-12);
  }
}

TEST_CASE("small explicit matrices") {
  const auto g2 = build_generators(basis_states(2));
  CHECK(g2.kz.entries(0, 0).real() == -0.5);
  CHECK(g2.kz.entries(1, 1).real() == 0.5);
  CHECK(std::abs(g2.kx.entries(0, 1) - cd(0.5, 0)) <= 1e-15);
  CHECK(std::abs(g2.kx.entries(1, 0) - cd(0.5, 0)) <= 1e-15);
  // N=4: <m=1|K+|m=0> = sqrt(3)
  const auto b4 = basis_states(4);
  const auto g4 = build_generators(b4);
  CHECK(std::abs(g4.kplus.entries(2, 1) - cd(std::sqrt(3.0), 0)) <= 1e-14);
  CHECK(ladder_element(b4, 1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  for (int n = 2; n <= 30; n += 2) {
    const auto b = basis_states(n);
    const auto g = build_generators(b);
    for (int k = 0; k < b.dimension(); ++k) CHECK(g.kz.entries(k, k).real() == b.m_values[k]);
    CHECK(g.kx.label == OperatorLabel::Kx);
    CHECK((g.kplus.entries.adjoint() - g.kminus.entries).norm() <= 1e-14);
  }
}

TEST_CASE("structure polynomial") {
  for (double N : {2.0, 10.0, 37.0}) {
    CHECK(structure_polynomial(0, N, N) == doctest::Approx(-1 - N / 4));
    CHECK(structure_polynomial(N / 4, N, N) == doctest::Approx(-1 + N));
  }
  for (int n = 2; n <= 20; n += 2) {
    const auto g = build_generators(basis_states(n));
    const Eigen::MatrixXcd F = structure_polynomial(g.kz.entries, n);
    CHECK((comm(g.kplus.entries, g.kminus.entries) - F).norm() <= 1e-10);
  }
}

TEST_CASE("deformed commutation relations") {
  const cd i(0, 1);
  for (int n = 2; n <= 20; n += 2) {
    const auto g = build_generators(basis_states(n));
    const auto &x = g.kx.entries, &y = g.ky.entries, &z = g.kz.entries;
    const Eigen::MatrixXcd F = structure_polynomial(z, n);
    CHECK((comm(z, g.kplus.entries) - g.kplus.entries).norm() <= 1e-10);
    CHECK((comm(z, g.kminus.entries) + g.kminus.entries).norm() <= 1e-10);
    CHECK((comm(z, x) - i * y).norm() <= 1e-10);
    CHECK((comm(y, z) - i * x).norm() <= 1e-10);
    CHECK((comm(x, y) - 0.5 * i * F).norm() <= 1e-10);
  }
}

TEST_CASE("hamiltonian matrix") {
  const auto h2 = build_hamiltonian(make_params(0.7, 1.3, 2));
  CHECK(h2.entries(0, 0).real() == doctest::Approx(-0.35));
  CHECK(h2.entries(1, 1).real() == doctest::Approx(0.35));
  CHECK(h2.entries(0, 1).real() == doctest::Approx(0.65));
  CHECK(h2.label == OperatorLabel::H);

  const auto h4 = build_hamiltonian(make_params(0, 1, 4));
  const auto o = oracle::Fock(4).generators();
  CHECK((h4.entries - o.kx).norm() <= 1e-14);
  CHECK(h4.entries(1, 0).real() == doctest::Approx(0.5 * std::sqrt(2.0 * 1 * 2) / 2));
  CHECK(h4.entries(2, 1).real() == doctest::Approx(0.5 * std::sqrt(3.0 * 4 * 1) / 2));

  const auto hv0 = build_hamiltonian(make_params(2, 0, 12));
  CHECK((hv0.entries - hv0.entries.diagonal().asDiagonal().toDenseMatrix()).norm() == 0.0);

  const auto tri = hamiltonian_tridiagonal(make_params(0.3, -0.8, 16));
  CHECK((tri.dense() - build_hamiltonian(make_params(0.3, -0.8, 16)).entries).norm() <= 1e-15);
}

TEST_CASE("two-level closed form") {
  for (double eps : {-2.0, 0.0, 0.5, 3.0}) {
    for (double v : {-1.0, 0.0, 0.25, 2.0}) {
      const auto s = exact_spectrum(build_hamiltonian(make_params(eps, v, 2)), false);
      const double half = 0.5 * std::hypot(eps, v);
      CHECK(std::abs(s.values[0] + half) <= 1e-12);
      CHECK(std::abs(s.values[1] - half) <= 1e-12);
    }
  }
}

TEST_CASE("decoupled spectrum is equidistant") {
  const auto s = exact_spectrum(hamiltonian_tridiagonal(make_params(1.5, 0, 20)), false);
  for (int k = 0; k < 11; ++k) CHECK(s.values[k] == doctest::Approx(1.5 * (k - 5)));
}

TEST_CASE("K_x spectrum for N=50 is symmetric and denser in the middle") {
  const auto g = build_generators(basis_states(50));
  const auto s = exact_spectrum(g.kx, true);
  REQUIRE(s.values.size() == 26);
  double sum = 0;
  for (double x : s.values) sum += x;
  CHECK(std::abs(sum) <= 1e-9);
  for (int k = 0; k < 26; ++k) CHECK(s.values[k] == doctest::Approx(-s.values[25 - k]).epsilon(1e-10));
  CHECK(s.values[13] - s.values[12] < s.values[25] - s.values[24]);
  const Eigen::MatrixXcd gram = s.vectors.adjoint() * s.vectors;
  CHECK((gram - Eigen::MatrixXcd::Identity(26, 26)).norm() <= 1e-10);
  // isospectral with K_y
  const auto sy = exact_spectrum(g.ky, false);
  for (int k = 0; k < 26; ++k) CHECK(std::abs(sy.values[k] - s.values[k]) <= 1e-10);
}

TEST_CASE("non-hermitian input is rejected") {
  OperatorMatrix m;
  m.entries = Eigen::MatrixXcd::Zero(2, 2);
  m.entries(0, 1) = 1.0;
  CHECK_THROWS(exact_spectrum(m, false));
}

TEST_CASE("dense path matches the tridiagonal path") {
  const auto p = make_params(0.4, 1.1, 30);
  const auto a = exact_spectrum(build_hamiltonian(p), true);
  const auto b = exact_spectrum(hamiltonian_tridiagonal(p), true);
  OperatorMatrix full = build_hamiltonian(p);
  full.entries(0, 5) += 1e-3;  // breaks tridiagonality, keep hermitian
  full.entries(5, 0) += 1e-3;
  const auto c = exact_spectrum(full, false);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(full.entries);
  for (int k = 0; k < 16; ++k) {
    CHECK(a.values[k] == doctest::Approx(b.values[k]).epsilon(1e-12));
    CHECK(c.values[k] == doctest::Approx(ref.eigenvalues()[k]).epsilon(1e-12));
  }
}

TEST_CASE("casimir is a scalar on the sector") {
  for (int n = 2; n <= 40; n += 2) {
    const auto b = basis_states(n);
    const auto g = build_generators(b);
    const auto c = casimir_matrix(b);
    CHECK(c.label == OperatorLabel::C);
    CHECK(hermiticity_defect(c.entries) <= 1e-12);
    const auto h = build_hamiltonian(make_params(1, 1, n));
    CHECK(comm(c.entries, h.entries).norm() / h.entries.norm() <= 1e-10);
    CHECK(comm(c.entries, g.kx.entries).norm() <= 1e-10);
    CHECK(comm(c.entries, g.ky.entries).norm() <= 1e-10);
    CHECK(comm(c.entries, g.kz.entries).norm() <= 1e-10);
    const auto s = exact_spectrum(c, false);
    CHECK(s.values.back() - s.values.front() <= 1e-10);
    CHECK(s.values.front() == doctest::Approx((n * n + 6.0 * n + 8) / 16).epsilon(1e-12));
    if (n <= 12) {
      // the K_x^2 + K_y^2 form built from oracle generators
      const auto o = oracle::Fock(n).generators();
      CHECK((oracle::casimir_second_form(o, n) - c.entries).norm() <= 1e-10);
    }
  }
}

TEST_CASE("time evolution") {
  // v = 0: phases only
  const auto p0 = make_params(1.3, 0, 10);
  const auto h0 = build_hamiltonian(p0);
  const double times[] = {0.0, 0.7, 5.0};
  const auto psi = evolve_state(h0, basis_state(10, 4), times);
  const double m = basis_states(10).m_values[4];
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(psi[i].amplitudes[4] - std::exp(cd(0, -1.3 * m * times[i]))) <= 1e-12);
    CHECK(std::abs(psi[i].amplitudes.norm() - 1) <= 1e-12);
  }

  // unitarity and energy for a random state
  std::mt19937 rng(3);
  const auto p = make_params(0.8, 1.0, 24);
  const auto h = build_hamiltonian(p);
  const auto g = build_generators(basis_states(24));
  const auto start = make_state(oracle::random_state(13, rng), 24);
  std::vector<double> ts;
  for (int k = 0; k <= 100; ++k) ts.push_back(k);
  const auto traj = evolve_state(h, start, ts);
  const double e0 = observables(start, g, p).energy;
  for (const auto& s : traj) {
    CHECK(std::abs(s.amplitudes.norm() - 1) <= 1e-12);
    CHECK(std::abs(observables(s, g, p).energy - e0) <= 1e-10);
  }

  // propagator agrees with a dense matrix exponential by its eigenbasis
  SpectralPropagator prop(h);
  const auto later = prop.evolve(start, 2.5);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.entries);
  Eigen::VectorXcd phase(13);
  for (int k = 0; k < 13; ++k) phase[k] = std::exp(cd(0, -2.5 * es.eigenvalues()[k]));
  const Eigen::VectorXcd ref = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint() * start.amplitudes;
  CHECK((later.amplitudes - ref).norm() <= 1e-10);

  CHECK_THROWS_AS(evolve_state(h, basis_state(10, 0), ts), std::invalid_argument);
}

TEST_CASE("moments of basis states") {
  for (int n : {2, 8, 30}) {
    const auto g = build_generators(basis_states(n));
    const auto p = make_params(0, 1, n);
    const auto top = observables(basis_state(n, n / 2), g, p);
    CHECK(top.kz == doctest::Approx(n / 4.0));
    CHECK(top.kx == 0.0);
    CHECK(top.ky == 0.0);
    CHECK(observables(basis_state(n, 0), g, p).kz == doctest::Approx(-n / 4.0));
  }
}

TEST_CASE("moment conservation law on random states") {
  std::mt19937 rng(99);
  for (int n = 2; n <= 40; n += 2) {
    const auto g = build_generators(basis_states(n));
    const auto p = make_params(0.5, 1, n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto s = make_state(oracle::random_state(n / 2 + 1, rng), n);
      const auto m = observables(s, g, p);
      CHECK(std::abs(moment_conservation_residual(m, n)) <= 1e-9);
      const double lhs = m.kx2 + m.ky2;
      CHECK(std::abs(lhs - oracle::moment_law_rhs(m.kz, m.kz2, m.kz3, n)) <= 1e-9);
    }
  }
}

TEST_CASE("heisenberg equations by centred differences") {
  const auto p = make_params(1.0, 1.0, 20);
  const auto g = build_generators(basis_states(20));
  const auto h = build_hamiltonian(p);
  std::mt19937 rng(1);
  const auto s0 = make_state(oracle::random_state(11, rng), 20);
  const double t0 = 0.9;
  auto err_at = [&](double dt) {
    const double ts[] = {t0 - dt, t0, t0 + dt};
    const auto st = evolve_state(h, s0, ts);
    const auto a = observables(st[0], g, p), c = observables(st[1], g, p), b = observables(st[2], g, p);
    const double dx = (b.kx - a.kx) / (2 * dt), dz = (b.kz - a.kz) / (2 * dt), dy = (b.ky - a.ky) / (2 * dt);
    return std::array<double, 3>{std::abs(dx + p.epsilon * c.ky), std::abs(dz - p.v * c.ky),
                                 std::abs(dy - heisenberg_dky_dt(c, p))};
  };
  const auto e1 = err_at(1e-2), e2 = err_at(5e-3);
  for (int k = 0; k < 3; ++k) {
    CHECK(e1[k] < 1e-3);
    CHECK(e1[k] / e2[k] == doctest::Approx(4.0).epsilon(0.2));
  }
}

TEST_CASE("variational ground states") {
  for (int n : {2, 6, 20}) {
    const auto b = basis_states(n);
    const auto atoms = variational_ground_state({0, -1, 0}, b);
    CHECK(std::abs(std::abs(atoms.state.amplitudes[n / 2]) - 1) <= 1e-12);
    const auto mol = variational_ground_state({0, 1, 0}, b);
    CHECK(std::abs(std::abs(mol.state.amplitudes[0]) - 1) <= 1e-12);
    CHECK_FALSE(mol.degenerate);
  }
  // c != 0 gives a complex hermitian operator; its ground state is an eigenvector
  const auto b = basis_states(16);
  const VariationalSpec spec{0.3, -0.2, 0.9};
  const auto vs = variational_ground_state(spec, b);
  const auto g = build_generators(b);
  const Eigen::MatrixXcd K = spec.a * g.kx.entries + spec.b * g.kz.entries + spec.c * g.ky.entries;
  CHECK((variational_operator(spec, b).dense() - K).norm() <= 1e-13);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(K);
  const cd e0 = vs.state.amplitudes.dot(K * vs.state.amplitudes);
  CHECK(e0.real() == doctest::Approx(es.eigenvalues()[0]).epsilon(1e-12));
  CHECK(std::abs(vs.state.amplitudes.norm() - 1) <= 1e-12);
  CHECK_THROWS(variational_ground_state({0, 0, 0}, b));
}

}  // TEST_SUITE
