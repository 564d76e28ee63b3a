#include "amconv/many_particle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace amconv {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

bool is_tridiagonal(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (std::abs(i - j) > 1 && m(i, j) != cd{0.0, 0.0}) return false;
    }
  }
  return true;
}

HermitianTridiagonal to_tridiagonal(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  HermitianTridiagonal t;
  t.diagonal.resize(n);
  t.lower.resize(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) t.diagonal[k] = m(k, k).real();
  // Average the two triangles so a tiny Hermiticity defect does not bias.
  for (int k = 0; k + 1 < n; ++k) {
    t.lower[k] = 0.5 * (m(k + 1, k) + std::conj(m(k, k + 1)));
  }
  return t;
}

}  // namespace

std::string_view to_string(OperatorLabel label) {
  switch (label) {
    case OperatorLabel::Kx: return "Kx";
    case OperatorLabel::Ky: return "Ky";
    case OperatorLabel::Kz: return "Kz";
    case OperatorLabel::Kplus: return "Kplus";
    case OperatorLabel::Kminus: return "Kminus";
    case OperatorLabel::H: return "H";
    case OperatorLabel::C: return "C";
    case OperatorLabel::Custom: return "custom";
  }
  return "custom";
}

double ladder_element(const KzBasis& basis, int k) {
  const double n_a = basis.atom_counts.at(k);
  const double n_b = basis.molecule_counts.at(k);
  return std::sqrt((n_a + 1.0) * (n_a + 2.0) * n_b / basis.n_particles);
}

Generators build_generators(const KzBasis& basis) {
  const int n = basis.dimension();
  Generators g;
  g.n_particles = basis.n_particles;

  Eigen::MatrixXcd kplus = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd kz = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) kz(k, k) = basis.m_values[k];
  for (int k = 0; k + 1 < n; ++k) kplus(k + 1, k) = ladder_element(basis, k);
  const Eigen::MatrixXcd kminus = kplus.adjoint();

  g.kplus = {kplus, OperatorLabel::Kplus};
  g.kminus = {kminus, OperatorLabel::Kminus};
  g.kz = {kz, OperatorLabel::Kz};
  g.kx = {0.5 * (kplus + kminus), OperatorLabel::Kx};
  g.ky = {(kplus - kminus) / (2.0 * kI), OperatorLabel::Ky};
  return g;
}

double structure_polynomial(double kz, double n_hat, double big_n) {
  return -n_hat / big_n - (n_hat + 4.0 * kz) * (n_hat - 12.0 * kz) / (4.0 * big_n);
}

Eigen::MatrixXcd structure_polynomial(const Eigen::MatrixXcd& kz, int n_particles) {
  const double big_n = n_particles;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(kz.rows(), kz.cols());
  const Eigen::MatrixXcd n_hat = big_n * id;
  return -id - (n_hat + 4.0 * kz) * (n_hat - 12.0 * kz) / (4.0 * big_n);
}

HermitianTridiagonal hamiltonian_tridiagonal(const ModelParams& params) {
  const KzBasis basis = basis_states(params.n_particles);
  const int n = basis.dimension();
  HermitianTridiagonal h;
  h.diagonal.resize(n);
  h.lower.resize(n - 1);
  for (int k = 0; k < n; ++k) h.diagonal[k] = params.epsilon * basis.m_values[k];
  for (int k = 0; k + 1 < n; ++k) h.lower[k] = 0.5 * params.v * ladder_element(basis, k);
  return h;
}

OperatorMatrix build_hamiltonian(const ModelParams& params) {
  return {hamiltonian_tridiagonal(params).dense(), OperatorLabel::H};
}

OperatorMatrix casimir_matrix(const KzBasis& basis) {
  const Generators g = build_generators(basis);
  const double big_n = basis.n_particles;
  const Eigen::MatrixXcd& kz = g.kz.entries;
  const Eigen::MatrixXcd kz2 = kz * kz;
  const Eigen::MatrixXcd c = g.kminus.entries * g.kplus.entries +
                             (4.0 / big_n) * kz2 * kz +
                             ((big_n + 6.0) / big_n) * kz2 +
                             ((8.0 - big_n * big_n) / (4.0 * big_n)) * kz;
  return {c, OperatorLabel::C};
}

double hermiticity_defect(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).norm() / std::max(1.0, m.norm());
}

Spectrum exact_spectrum(const OperatorMatrix& op, bool want_vectors) {
  if (op.entries.rows() != op.entries.cols()) {
    throw std::invalid_argument("exact_spectrum: matrix is not square");
  }
  if (hermiticity_defect(op.entries) > 1e-12) {
    throw std::invalid_argument("exact_spectrum: matrix is not Hermitian");
  }
  if (is_tridiagonal(op.entries)) {
    return hermitian_tridiagonal_eigen(to_tridiagonal(op.entries), want_vectors);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      op.entries, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("exact_spectrum: dense eigensolver failed");
  }
  Spectrum s;
  const auto& ev = solver.eigenvalues();
  s.values.assign(ev.data(), ev.data() + ev.size());
  if (want_vectors) s.vectors = solver.eigenvectors();
  return s;
}

Spectrum exact_spectrum(const HermitianTridiagonal& op, bool want_vectors) {
  return hermitian_tridiagonal_eigen(op, want_vectors);
}

QuantumState make_state(Eigen::VectorXcd amplitudes, int n_particles) {
  require_even_particle_number(n_particles);
  if (amplitudes.size() != n_particles / 2 + 1) {
    throw std::invalid_argument("state size does not match N/2 + 1");
  }
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("state has zero or non-finite norm");
  }
  return {amplitudes / norm, n_particles};
}

QuantumState basis_state(int n_particles, int k) {
  require_even_particle_number(n_particles);
  const int dim = n_particles / 2 + 1;
  if (k < 0 || k >= dim) throw std::out_of_range("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k) = 1.0;
  return {v, n_particles};
}

SpectralPropagator::SpectralPropagator(const OperatorMatrix& hamiltonian)
    : spectrum_(exact_spectrum(hamiltonian, true)) {}

QuantumState SpectralPropagator::evolve(const QuantumState& psi0, double t) const {
  if (psi0.amplitudes.size() != spectrum_.vectors.rows()) {
    throw std::invalid_argument("evolve: state and Hamiltonian dimensions differ");
  }
  Eigen::VectorXcd coeff = spectrum_.vectors.adjoint() * psi0.amplitudes;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) {
    coeff(k) *= std::exp(-kI * spectrum_.values[k] * t);
  }
  return {spectrum_.vectors * coeff, psi0.n_particles};
}

std::vector<QuantumState> evolve_state(const OperatorMatrix& hamiltonian,
                                       const QuantumState& psi0,
                                       std::span<const double> times) {
  const SpectralPropagator prop(hamiltonian);
  std::vector<QuantumState> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(prop.evolve(psi0, t));
  return out;
}

MomentSet observables(const QuantumState& psi, const Generators& gens,
                      const ModelParams& params) {
  const Eigen::VectorXcd& a = psi.amplitudes;
  if (a.size() != gens.kz.dimension()) {
    throw std::invalid_argument("observables: dimension mismatch");
  }
  const Eigen::VectorXcd x = gens.kx.entries * a;
  const Eigen::VectorXcd y = gens.ky.entries * a;
  const Eigen::VectorXcd z = gens.kz.entries * a;
  MomentSet m;
  m.kx = a.dot(x).real();
  m.ky = a.dot(y).real();
  m.kz = a.dot(z).real();
  m.kx2 = x.squaredNorm();
  m.ky2 = y.squaredNorm();
  m.kz2 = z.squaredNorm();
  m.kz3 = z.dot(gens.kz.entries * z).real();
  m.energy = params.epsilon * m.kz + params.v * m.kx;
  return m;
}

double moment_conservation_residual(const MomentSet& m, int n_particles) {
  const double n = n_particles;
  const double rhs = -2.0 * m.kz / n + m.kz + n * m.kz / 4.0 - m.kz2 -
                     4.0 * m.kz3 / n + n * n / 16.0 + n / 4.0;
  return m.kx2 + m.ky2 - rhs;
}

double heisenberg_dky_dt(const MomentSet& m, const ModelParams& params) {
  const double n = params.n_particles;
  return params.epsilon * m.kx + 0.5 * params.v +
         params.v / (8.0 * n) * (n * n - 8.0 * n * m.kz - 48.0 * m.kz2);
}

HermitianTridiagonal variational_operator(const VariationalSpec& spec,
                                          const KzBasis& basis) {
  if (spec.a == 0.0 && spec.b == 0.0 && spec.c == 0.0) {
    throw std::invalid_argument("variational spec (a, b, c) must not vanish");
  }
  const int n = basis.dimension();
  HermitianTridiagonal t;
  t.diagonal.resize(n);
  t.lower.resize(n - 1);
  for (int k = 0; k < n; ++k) t.diagonal[k] = spec.b * basis.m_values[k];
  // <k+1| a K_x + c K_y |k> = (a - i c) * ladder / 2
  for (int k = 0; k + 1 < n; ++k) {
    t.lower[k] = 0.5 * cd{spec.a, -spec.c} * ladder_element(basis, k);
  }
  return t;
}

VariationalState variational_ground_state(const VariationalSpec& spec,
                                          const KzBasis& basis) {
  const Spectrum s = hermitian_tridiagonal_eigen(variational_operator(spec, basis), true);
  VariationalState out;
  out.state = {s.vectors.col(0), basis.n_particles};
  out.gap = s.values.size() > 1 ? s.values[1] - s.values[0] : 0.0;
  out.degenerate = s.values.size() > 1 && out.gap < 1e-12;
  return out;
}

}  // namespace amconv
