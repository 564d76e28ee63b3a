// Subcommand driver and the table-producing analyses behind it. The analyses
// are exposed so the acceptance checks and figure presets reuse them.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amconv/many_particle.hpp"
#include "amconv/mean_field.hpp"
#include "amconv/model.hpp"
#include "cli/table.hpp"

namespace amconv::cli {

struct EpsilonSweep {
  double start = -4;
  double end = 4;
  int steps = 81;

  std::vector<double> values() const;
};

/// Parses "a:b:steps"; throws std::invalid_argument on bad syntax or steps < 2.
EpsilonSweep parse_sweep(const std::string& text);

/// Initial condition shared by the two trajectory commands: a variational
/// Hamiltonian for the many-particle side and the matching surface point.
struct InitialCondition {
  std::string name;
  VariationalSpec spec;
  BlochPoint point;
};

/// ground-kx | ground-minus-kx | ground-kz | ground-minus-kz | bloch:x,y,z.
/// Bloch input must lie on the surface within 1e-6; it is then projected.
InitialCondition parse_init(const std::string& text);

std::vector<double> time_grid(double t_max, int samples);

struct CompareSummary {
  double max_abs_error = 0;
  double max_error_over_mean_spacing = 0;
  double max_error_over_local_spacing = 0;
  double worst_local_epsilon = 0;
  int worst_local_level = 0;
  double mid_mean_error = 0;     // many-particle units, levels n/(L-1) in [1/4, 3/4]
  double mid_mean_error_mf = 0;  // same, rescaled by eta
  double max_bound_violation = 0;  // eta*E outside the fixed-point energy range
};

/// Exact vs semiclassical levels over an epsilon sweep (long format, one row
/// per epsilon and level).
TableArtifact compare_spectra(int n_particles, double v, const std::vector<double>& epsilons,
                              CompareSummary* summary = nullptr);

struct DosHistogram {
  TableArtifact table;
  std::vector<bool> excluded;  // edge bins and the two bins nearest the separatrix
  double max_rel_deviation = 0;  // over bins not excluded
};

/// Equal-width histogram of the exact spectrum, count / bin width, against
/// the bin-averaged T / 2pi.
DosHistogram dos_histogram(const ModelParams& params, int bins);

/// Overlap sum_m |psi_exact(m)| w(m) of a WKB envelope with the exact
/// eigenvector of the same level.
double wkb_overlap(int level, const ModelParams& params, TableArtifact* table = nullptr);

/// (eta<K_x>, eta<K_z>) of variational ground states along the teardrop
/// profile a = +-r(b), c = 0, b in [-1/2, 1/2].
TableArtifact coherent_surface(int n_particles, int samples, double* max_distance = nullptr);

/// Exact expectation values from the variational state of `init`, next to
/// the mean-field trajectory from the matching surface point.
TableArtifact mp_trajectory_table(const ModelParams& params, const InitialCondition& init,
                                  const std::vector<double>& times);

std::string version();

/// Full command line entry point. Returns 0 on success, 1 on numerical
/// failure, 2 on usage errors.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace amconv::cli
