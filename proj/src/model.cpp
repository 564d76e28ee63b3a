#include "amconv/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/tools/minima.hpp>

namespace amconv {

void require_even_particle_number(int n_particles) {
  if (n_particles < 2 || n_particles % 2 != 0) {
    throw std::domain_error("N must be even and >= 2 (got " +
                            std::to_string(n_particles) +
                            "); only even particle numbers are supported");
  }
}

double semiclassical_eta(int n_particles) {
  require_even_particle_number(n_particles);
  return 1.0 / (n_particles / 2 + 1);
}

ModelParams make_params(double epsilon, double v, int n_particles) {
  require_even_particle_number(n_particles);
  if (!std::isfinite(epsilon) || !std::isfinite(v)) {
    throw std::domain_error("epsilon and v must be finite");
  }
  ModelParams params;
  params.epsilon = epsilon;
  params.v = v;
  params.n_particles = n_particles;
  params.eta = semiclassical_eta(n_particles);
  return params;
}

ModelParams make_params_from_modes(double epsilon_a, double epsilon_b, double v,
                                   int n_particles) {
  ModelParams params = make_params(2.0 * epsilon_a - epsilon_b, v, n_particles);
  params.epsilon_a = epsilon_a;
  params.epsilon_b = epsilon_b;
  return params;
}

KzBasis basis_states(int n_particles) {
  require_even_particle_number(n_particles);
  KzBasis basis;
  basis.n_particles = n_particles;
  const int dim = n_particles / 2 + 1;
  basis.m_values.reserve(dim);
  basis.atom_counts.reserve(dim);
  basis.molecule_counts.reserve(dim);
  // k counts atom pairs: n_a = 2k, n_b = N/2 - k, m = (n_a - 2 n_b) / 4.
  for (int k = 0; k < dim; ++k) {
    const int n_a = 2 * k;
    const int n_b = n_particles / 2 - k;
    basis.atom_counts.push_back(n_a);
    basis.molecule_counts.push_back(n_b);
    basis.m_values.push_back((n_a - 2.0 * n_b) / 4.0);
  }
  return basis;
}

double teardrop_radius_squared(double p) {
  return 0.25 * (1.0 - 2.0 * p) * (1.0 + 2.0 * p) * (1.0 + 2.0 * p);
}

double teardrop_radius(double p) {
  if (!(p >= -0.5 - kEndpointTolerance && p <= 0.5 + kEndpointTolerance)) {
    throw std::domain_error("p = " + std::to_string(p) +
                            " lies outside [-1/2, 1/2]");
  }
  p = std::clamp(p, -0.5, 0.5);
  return 0.5 * (1.0 + 2.0 * p) * std::sqrt(1.0 - 2.0 * p);
}

double teardrop_radius_derivative(double p) {
  // r = (1+2p) sqrt(1-2p) / 2
  const double s = std::sqrt(1.0 - 2.0 * p);
  return s - 0.5 * (1.0 + 2.0 * p) / s;
}

double teardrop_section_distance(double x, double z) {
  const double ax = std::abs(x);  // curve is symmetric in x
  auto dist2 = [&](double p) {
    const double dx = ax - teardrop_radius(p), dz = z - p;
    return dx * dx + dz * dz;
  };
  constexpr int kSamples = 2000;
  int best = 0;
  double best_d = dist2(-0.5);
  for (int i = 1; i <= kSamples; ++i) {
    const double d = dist2(-0.5 + double(i) / kSamples);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  const double lo = -0.5 + double(std::max(best - 1, 0)) / kSamples;
  const double hi = -0.5 + double(std::min(best + 1, kSamples)) / kSamples;
  auto [p, d2] = boost::math::tools::brent_find_minima(dist2, lo, hi, 50);
  (void)p;
  return std::sqrt(std::min(d2, best_d));
}

}  // namespace amconv
