// Parameters, K_z basis bookkeeping and teardrop geometry for the two-mode
// atom-molecule conversion model  H = eps*K_z + v*K_x.
#pragma once

#include <optional>
#include <vector>

namespace amconv {

/// Tolerance used when a coordinate p is checked against [-1/2, 1/2].
inline constexpr double kEndpointTolerance = 1e-12;

struct ModelParams {
  double epsilon = 0.0;  // 2*eps_a - eps_b after the zero-energy shift
  double v = 0.0;        // conversion strength
  int n_particles = 2;   // even, >= 2
  double eta = 0.5;      // 1 / (N/2 + 1)
  std::optional<double> epsilon_a;
  std::optional<double> epsilon_b;

  /// Hilbert space dimension N/2 + 1.
  int dimension() const { return n_particles / 2 + 1; }
};

/// Throws std::domain_error unless n is even and >= 2.
void require_even_particle_number(int n_particles);

ModelParams make_params(double epsilon, double v, int n_particles);

/// Builds parameters from the raw mode energies, epsilon = 2*eps_a - eps_b.
ModelParams make_params_from_modes(double epsilon_a, double epsilon_b, double v,
                                   int n_particles);

/// eta = 1 / (N/2 + 1).
double semiclassical_eta(int n_particles);

/// Eigenbasis of K_z for fixed particle number, ascending in m
/// (molecule-dominated states first).
struct KzBasis {
  int n_particles = 2;
  std::vector<double> m_values;
  std::vector<int> atom_counts;      // n_a = 2m + N/2
  std::vector<int> molecule_counts;  // n_b = N/4 - m

  int dimension() const { return static_cast<int>(m_values.size()); }
};

KzBasis basis_states(int n_particles);

/// r^2(p) = (1 - 2p)(1 + 2p)^2 / 4; no domain check.
double teardrop_radius_squared(double p);

/// r(p) for p in [-1/2, 1/2]; throws std::domain_error outside the
/// tolerance band. Points inside the band are clamped.
double teardrop_radius(double p);

/// dr/dp, finite for p in (-1/2, 1/2).
double teardrop_radius_derivative(double p);

/// Euclidean distance from (x, z) to the cross-section curve x = +-r(z),
/// z in [-1/2, 1/2], of the teardrop in the s_x-s_z plane.
double teardrop_section_distance(double x, double z);

}  // namespace amconv
