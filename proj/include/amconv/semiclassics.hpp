// Semiclassical (Bohr-Sommerfeld / WKB) reconstruction of many-particle
// spectra, level densities and eigenvector envelopes from the mean-field
// phase space.
//
// Energies called `e` are rescaled mean-field energies, e = eta * E, where E
// is the many-particle energy. Public results report both scales.
#pragma once

#include <array>
#include <vector>

#include "amconv/model.hpp"

namespace amconv {

/// U^-(p) <= U^+(p): extrema of H(p, q) over the angle q. Uses |v| so the
/// ordering holds for either sign of the coupling.
struct PotentialCurves {
  double epsilon = 0;
  double v = 0;

  double lower(double p) const;
  double upper(double p) const;
};

PotentialCurves potential_curves(const ModelParams& params);

/// Real roots of a x^3 + b x^2 + c x + d (a != 0), ascending, by the
/// trigonometric method with one Newton polish per root. Throws
/// std::runtime_error if the roots are not all real (beyond `tol` on the
/// normalised discriminant argument).
std::array<double, 3> real_cubic_roots(double a, double b, double c, double d,
                                       double tol = 1e-8);

/// Coefficients (p^3, p^2, p, 1) of the turning-point cubic at energy e.
std::array<double, 4> turning_point_cubic(double e, const ModelParams& params);

enum class Branch { Lower, Upper };

struct TurningPoints {
  double p_zero = 0;   // third root, <= -1/2
  double p_minus = 0;  // -1/2 <= p_minus <= p_plus <= 1/2
  double p_plus = 0;
  Branch branch_minus = Branch::Lower;
  Branch branch_plus = Branch::Lower;
  double energy = 0;
};

/// Throws std::domain_error when e lies outside the mean-field energy range
/// (tolerance 1e-10) and std::runtime_error if the cubic does not have three
/// real roots with one left of the surface.
TurningPoints turning_points(double e, const ModelParams& params);

/// q(p) = arccos(2(e - eps p) / (|v| sqrt((1-2p)(1+2p)^2))), argument clamped.
double orbit_angle(double e, double p, const ModelParams& params);

/// Integral of q(p) from p_minus to p_upper (clamped to [p_minus, p_plus]).
double partial_angle_integral(const TurningPoints& tp, double p_upper,
                              const ModelParams& params);

/// Phase-space area enclosed by the orbit of energy e; 0 at the minimum
/// energy, 2 pi at the maximum.
double action(double e, const ModelParams& params);

struct SemiclassicalLevel {
  int n = 0;
  double energy_mp = 0;  // many-particle scale E
  double energy_mf = 0;  // e = eta * E
  double action = 0;
};

struct SemiclassicalSpectrum {
  std::vector<SemiclassicalLevel> levels;
  double eta = 0;
};

/// Solves S(e_n) = 2 pi eta (n + 1/2) for n = 0 .. N/2 by bisection.
SemiclassicalSpectrum quantize(const ModelParams& params);

/// Complete elliptic integral of the first kind K(m), parameter convention
/// (K(m) = int_0^{pi/2} dt / sqrt(1 - m sin^2 t)), via the arithmetic-geometric
/// mean. Returns +infinity for m >= 1; throws std::domain_error for m < 0.
double elliptic_k(double m);

/// Period of the orbit with energy e (requires v != 0). Returns +infinity on
/// the subcritical separatrix through the tip. At the energy extremes it
/// returns the small-oscillation period.
double period(double e, const ModelParams& params);

/// Many-particle density of states dn/dE = T(e) / 2pi at e = eta E.
double density_of_states(double e, const ModelParams& params);

/// Average of dn/dE over the many-particle energy window [e_lo, e_hi] / eta,
/// computed from the enclosed-area difference.
double mean_density_of_states(double e_lo, double e_hi, const ModelParams& params);

/// Separatrix energy -eps/2 when the tip is a saddle, otherwise NaN.
double separatrix_energy(const ModelParams& params);

struct WKBState {
  int level = 0;
  double energy_mf = 0;
  std::vector<double> m_values;
  std::vector<double> amplitudes;  // non-negative, unit L2 norm
  std::vector<bool> unreliable;    // within the turning-point guard band
  int allowed_first = -1;          // first/last grid index inside (p_-, p_+)
  int allowed_last = -1;
};

/// Discrete WKB envelope |psi_cl(eta m)| of level n on the K_z grid.
WKBState wkb_state(int n, const ModelParams& params);
WKBState wkb_state(int n, const ModelParams& params,
                   const SemiclassicalSpectrum& spectrum);

}  // namespace amconv
