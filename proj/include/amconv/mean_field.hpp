// Mean-field limit: flow on the teardrop surface s_x^2 + s_y^2 = r^2(s_z),
// its fixed points, the canonical (p, q) chart and the two nonlinear
// Schroedinger formulations.
#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "amconv/model.hpp"

namespace amconv {

struct BlochPoint {
  double sx = 0, sy = 0, sz = 0;
};

struct CanonicalPoint {
  double p = 0;  // = s_z
  double q = 0;  // angle in [0, 2pi)
};

using BlochVector = std::array<double, 3>;

/// s_x^2 + s_y^2 - r^2(s_z).
double surface_residual(const BlochPoint& s);

/// Validating constructor: s_z in [-1/2, 1/2] and surface residual <= tol.
BlochPoint make_bloch_point(double sx, double sy, double sz, double tol = 1e-10);

/// Time derivative of (s_x, s_y, s_z) under H = eps s_z + v s_x.
BlochVector mf_rhs(const BlochPoint& s, const ModelParams& params);

double mf_energy(const BlochPoint& s, const ModelParams& params);
double mf_energy(const CanonicalPoint& c, const ModelParams& params);

/// (dp/dt, dq/dt) = (-dH/dq, dH/dp).
std::array<double, 2> canonical_rhs(const CanonicalPoint& c, const ModelParams& params);

/// Throws std::domain_error at the vertices, where the angle is undefined.
CanonicalPoint to_canonical(const BlochPoint& s);
BlochPoint from_canonical(const CanonicalPoint& c);

enum class Stability { Elliptic, Saddle, Degenerate };

const char* to_string(Stability s);

struct FixedPoint {
  BlochPoint location;
  double sz_root = 0;
  Stability stability = Stability::Degenerate;
  double energy = 0;
};

/// (1/2 + s_z)^2 [v^2/4 - eps^2 - (3v^2 - 2eps^2) s_z + 9 v^2 s_z^2].
double fixed_point_polynomial(double sz, const ModelParams& params);

/// All fixed points on the surface, tip first, the rest ascending in s_z.
/// Requires (eps, v) != (0, 0).
std::vector<FixedPoint> fixed_points(const ModelParams& params);

/// Smallest and largest mean-field energy, i.e. the fixed-point extremes.
struct EnergyRange {
  double min = 0;
  double max = 0;
};
EnergyRange mf_energy_range(const ModelParams& params);

/// Critical coupling sqrt(2)|v| of the transcritical bifurcation at the tip.
double critical_epsilon(double v);

struct Trajectory {
  std::vector<double> times;
  std::vector<BlochPoint> points;
  double energy_drift = 0;   // max |H(t) - H(0)|
  double surface_drift = 0;  // max |surface_residual(s(t))|
};

/// Integrates the mean-field flow and samples it at `times`
/// (times[0] is the initial time).
Trajectory integrate_trajectory(const BlochPoint& s0, std::span<const double> times,
                                const ModelParams& params, double tol = 1e-10);

/// Uniform sampling of [0, t_max] with `samples` points.
Trajectory integrate_trajectory(const BlochPoint& s0, double t_max, int samples,
                                const ModelParams& params, double tol = 1e-10);

/// Integrates Hamilton's equations in the (p, q) chart.
std::vector<CanonicalPoint> integrate_canonical(const CanonicalPoint& c0,
                                                std::span<const double> times,
                                                const ModelParams& params,
                                                double tol = 1e-10);

/// Point of the surface minimising a s_x + b s_z + c s_y, the mean-field
/// counterpart of the variational ground states.
BlochPoint surface_minimizer(double a, double b, double c);

// Mean-field wave functions. The psi variant is normalised as
// |psi_a|^2 + 2|psi_b|^2 = 2, the chi variant (chi_a ~ psi_a^2) as
// |chi_a| + 2|chi_b|^2 = 2.
enum class WavefunctionVariant { Psi, Chi };

struct MeanFieldWavefunction {
  WavefunctionVariant variant = WavefunctionVariant::Psi;
  std::complex<double> a;
  std::complex<double> b;
};

double wavefunction_norm(const MeanFieldWavefunction& w);

/// Validates the normalisation to 1e-10.
MeanFieldWavefunction make_wavefunction(WavefunctionVariant variant,
                                        std::complex<double> a,
                                        std::complex<double> b);

/// A wave function of the requested variant projecting onto s.
MeanFieldWavefunction wavefunction_from_bloch(const BlochPoint& s,
                                              WavefunctionVariant variant);

/// Time derivative (da/dt, db/dt) of the nonlinear Schroedinger flow.
MeanFieldWavefunction nls_rhs(const MeanFieldWavefunction& w, const ModelParams& params);

BlochPoint bloch_projection(const MeanFieldWavefunction& w);

/// Tighter default than the Bloch flow: the norm drifts linearly with the
/// step error and is expected to hold to 1e-9 over t = 50.
std::vector<MeanFieldWavefunction> integrate_wavefunction(
    const MeanFieldWavefunction& w0, std::span<const double> times,
    const ModelParams& params, double tol = 1e-12);

}  // namespace amconv
