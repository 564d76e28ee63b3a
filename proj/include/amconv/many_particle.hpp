// Exact many-particle treatment on the fixed-N sector: deformed SU(2)
// generators, Hamiltonian, Casimir, spectra, time evolution and moments.
#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "amconv/model.hpp"
#include "amconv/tridiagonal.hpp"

namespace amconv {

enum class OperatorLabel { Kx, Ky, Kz, Kplus, Kminus, H, C, Custom };

std::string_view to_string(OperatorLabel label);

struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  OperatorLabel label = OperatorLabel::Custom;

  int dimension() const { return static_cast<int>(entries.rows()); }
};

struct Generators {
  OperatorMatrix kx;
  OperatorMatrix ky;
  OperatorMatrix kz;
  OperatorMatrix kplus;
  OperatorMatrix kminus;
  int n_particles = 2;
};

/// <k+1| K_+ |k> on the K_z basis: sqrt((n_a+1)(n_a+2) n_b / N) with the
/// occupation numbers of basis state k.
double ladder_element(const KzBasis& basis, int k);

Generators build_generators(const KzBasis& basis);

/// F(K_z, N_hat) = -N_hat/N - (N_hat + 4 K_z)(N_hat - 12 K_z) / (4N).
double structure_polynomial(double kz, double n_hat, double big_n);

/// F evaluated on a matrix K_z with N_hat -> N * identity.
Eigen::MatrixXcd structure_polynomial(const Eigen::MatrixXcd& kz, int n_particles);

/// H = eps K_z + v K_x as diagonals; used for large N.
HermitianTridiagonal hamiltonian_tridiagonal(const ModelParams& params);

OperatorMatrix build_hamiltonian(const ModelParams& params);

/// C = K_- K_+ + (4/N) K_z^3 + ((N+6)/N) K_z^2 + ((8 - N^2)/(4N)) K_z.
OperatorMatrix casimir_matrix(const KzBasis& basis);

/// Relative Hermiticity defect ||A - A^H|| / max(1, ||A||).
double hermiticity_defect(const Eigen::MatrixXcd& m);

/// All eigenvalues (ascending) and optionally orthonormal eigenvectors.
/// Tridiagonal input takes the QL fast path, anything else goes through a
/// dense Hermitian solver. Throws std::invalid_argument for non-Hermitian
/// input.
Spectrum exact_spectrum(const OperatorMatrix& op, bool want_vectors);
Spectrum exact_spectrum(const HermitianTridiagonal& op, bool want_vectors);

struct QuantumState {
  Eigen::VectorXcd amplitudes;
  int n_particles = 2;
};

/// Normalises the given amplitudes. Throws on a zero vector or a size that
/// does not match N/2 + 1.
QuantumState make_state(Eigen::VectorXcd amplitudes, int n_particles);

/// |m> for the basis index k (k = 0 is m = -N/4).
QuantumState basis_state(int n_particles, int k);

/// Exact propagator exp(-iHt) built from one eigendecomposition of H.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const OperatorMatrix& hamiltonian);

  QuantumState evolve(const QuantumState& psi0, double t) const;
  const Spectrum& spectrum() const { return spectrum_; }

 private:
  Spectrum spectrum_;
};

std::vector<QuantumState> evolve_state(const OperatorMatrix& hamiltonian,
                                       const QuantumState& psi0,
                                       std::span<const double> times);

struct MomentSet {
  double kx = 0, ky = 0, kz = 0;
  double kx2 = 0, ky2 = 0, kz2 = 0, kz3 = 0;
  double energy = 0;
};

MomentSet observables(const QuantumState& psi, const Generators& gens,
                      const ModelParams& params);

/// <K_x^2> + <K_y^2> minus the right-hand side of the moment conservation
/// law with N_hat -> N. Vanishes for every state of the fixed-N sector.
double moment_conservation_residual(const MomentSet& moments, int n_particles);

/// d<K_y>/dt from the Heisenberg equation with N_hat -> N.
double heisenberg_dky_dt(const MomentSet& moments, const ModelParams& params);

/// Coefficients of K = a K_x + b K_z + c K_y.
struct VariationalSpec {
  double a = 0, b = 0, c = 0;
};

struct VariationalState {
  QuantumState state;
  double gap = 0;           // E_1 - E_0
  bool degenerate = false;  // gap < 1e-12; lowest eigensolver index returned
};

/// Matrix a K_x + b K_z + c K_y as a Hermitian tridiagonal.
HermitianTridiagonal variational_operator(const VariationalSpec& spec,
                                          const KzBasis& basis);

VariationalState variational_ground_state(const VariationalSpec& spec,
                                          const KzBasis& basis);

}  // namespace amconv
