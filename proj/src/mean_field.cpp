#include "amconv/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ode.hpp"

namespace amconv {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double q) {
  q = std::fmod(q, kTwoPi);
  return q < 0 ? q + kTwoPi : q;
}

// Hessian determinant of H(p, q) at a fixed point with sin q = 0 and r > 0.
// H_pq vanishes there, H_pp = v r'' cos q, H_qq = -v r cos q.
double chart_hessian_det(double p, double sx, double v) {
  const double r = teardrop_radius(p);
  const double u = 1.0 - 2.0 * p;
  const double r2 = (6.0 * p - 5.0) / (2.0 * u * std::sqrt(u));
  const double cos_q = sx / r;
  return (v * r2 * cos_q) * (-v * r * cos_q);
}

}  // namespace

double surface_residual(const BlochPoint& s) {
  return s.sx * s.sx + s.sy * s.sy - teardrop_radius_squared(s.sz);
}

BlochPoint make_bloch_point(double sx, double sy, double sz, double tol) {
  if (!(sz >= -0.5 - kEndpointTolerance && sz <= 0.5 + kEndpointTolerance)) {
    throw std::domain_error("s_z must lie in [-1/2, 1/2]");
  }
  BlochPoint s{sx, sy, std::clamp(sz, -0.5, 0.5)};
  const double res = surface_residual(s);
  if (std::abs(res) > tol) {
    throw std::domain_error("point is off the teardrop surface (residual " +
                            std::to_string(res) + ")");
  }
  return s;
}

BlochVector mf_rhs(const BlochPoint& s, const ModelParams& params) {
  const double e = params.epsilon;
  const double v = params.v;
  return {-e * s.sy, e * s.sx + 0.25 * v * (1.0 - 4.0 * s.sz - 12.0 * s.sz * s.sz),
          v * s.sy};
}

double mf_energy(const BlochPoint& s, const ModelParams& params) {
  return params.epsilon * s.sz + params.v * s.sx;
}

double mf_energy(const CanonicalPoint& c, const ModelParams& params) {
  return params.epsilon * c.p + params.v * teardrop_radius(c.p) * std::cos(c.q);
}

std::array<double, 2> canonical_rhs(const CanonicalPoint& c, const ModelParams& params) {
  const double r = teardrop_radius(c.p);
  return {params.v * r * std::sin(c.q),
          params.epsilon + params.v * teardrop_radius_derivative(c.p) * std::cos(c.q)};
}

CanonicalPoint to_canonical(const BlochPoint& s) {
  const double r = teardrop_radius(s.sz);
  if (r <= 1e-12) throw std::domain_error("angle undefined at r=0");
  return {std::clamp(s.sz, -0.5, 0.5), wrap_angle(std::atan2(s.sy, s.sx))};
}

BlochPoint from_canonical(const CanonicalPoint& c) {
  const double r = teardrop_radius(c.p);
  return {r * std::cos(c.q), r * std::sin(c.q), std::clamp(c.p, -0.5, 0.5)};
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Elliptic: return "elliptic";
    case Stability::Saddle: return "saddle";
    case Stability::Degenerate: return "degenerate";
  }
  return "degenerate";
}

double fixed_point_polynomial(double sz, const ModelParams& params) {
  const double e2 = params.epsilon * params.epsilon;
  const double v2 = params.v * params.v;
  const double t = 0.5 + sz;
  return t * t * (0.25 * v2 - e2 - (3.0 * v2 - 2.0 * e2) * sz + 9.0 * v2 * sz * sz);
}

double critical_epsilon(double v) { return std::numbers::sqrt2 * std::abs(v); }

std::vector<FixedPoint> fixed_points(const ModelParams& params) {
  const double eps = params.epsilon;
  const double v = params.v;
  if (eps == 0.0 && v == 0.0) {
    throw std::domain_error("fixed_points requires v != 0 or epsilon != 0");
  }
  std::vector<FixedPoint> out;

  // The tip is always stationary. Its type follows the transcritical
  // criterion, the chart being singular there.
  FixedPoint tip;
  tip.location = {0.0, 0.0, -0.5};
  tip.sz_root = -0.5;
  tip.energy = -0.5 * eps;
  const double crit = critical_epsilon(v);
  const double gap = std::abs(eps) - crit;
  tip.stability = std::abs(gap) <= 1e-9 ? Stability::Degenerate
                  : gap < 0             ? Stability::Saddle
                                        : Stability::Elliptic;
  out.push_back(tip);

  // Roots of the bracketed quadratic factor A s^2 + B s + C.
  const double v2 = v * v;
  const double e2 = eps * eps;
  const double qa = 9.0 * v2;
  const double qb = -(3.0 * v2 - 2.0 * e2);
  const double qc = 0.25 * v2 - e2;
  std::vector<double> roots;
  if (qa == 0.0) {
    roots.push_back(-qc / qb);
  } else {
    // Discriminant simplifies to 4 eps^2 (eps^2 + 6 v^2) >= 0.
    const double sq = 2.0 * std::abs(eps) * std::sqrt(e2 + 6.0 * v2);
    if (sq == 0.0) {
      roots.push_back(-qb / (2.0 * qa));
    } else {
      const double q = -0.5 * (qb + std::copysign(sq, qb));
      roots.push_back(q / qa);
      roots.push_back(qc / q);
    }
  }
  std::sort(roots.begin(), roots.end());

  for (double s : roots) {
    if (s < -0.5 - 1e-12 || s > 0.5 + 1e-12) continue;
    // A root at the tip is the tip itself (bifurcation point).
    if (std::abs(s + 0.5) <= 1e-12) continue;
    s = std::min(s, 0.5);
    const double r = teardrop_radius(s);
    std::vector<double> sx_values;
    if (eps == 0.0) {
      sx_values = {-r, r};
    } else {
      // eps s_x = -(v/4)(1 + 2s)(1 - 6s); magnitude fixed by the surface.
      const double rhs = -0.25 * v * (1.0 + 2.0 * s) * (1.0 - 6.0 * s) / eps;
      sx_values = {std::copysign(r, rhs)};
    }
    for (double sx : sx_values) {
      FixedPoint fp;
      fp.location = {sx, 0.0, s};
      fp.sz_root = s;
      fp.energy = eps * s + v * sx;
      if (r <= 1e-12) {
        // Smooth pole at s_z = 1/2, an energy extremum.
        fp.stability = Stability::Elliptic;
      } else {
        const double det = chart_hessian_det(s, sx, v);
        fp.stability = std::abs(det) <= 1e-12 ? Stability::Degenerate
                       : det > 0              ? Stability::Elliptic
                                              : Stability::Saddle;
      }
      out.push_back(fp);
    }
  }
  return out;
}

EnergyRange mf_energy_range(const ModelParams& params) {
  const auto fps = fixed_points(params);
  EnergyRange range{fps.front().energy, fps.front().energy};
  for (const auto& fp : fps) {
    range.min = std::min(range.min, fp.energy);
    range.max = std::max(range.max, fp.energy);
  }
  return range;
}

Trajectory integrate_trajectory(const BlochPoint& s0, std::span<const double> times,
                                const ModelParams& params, double tol) {
  if (std::abs(surface_residual(s0)) > 1e-10) {
    throw std::domain_error("initial point is off the teardrop surface");
  }
  auto rhs = [&params](const std::array<double, 3>& y) {
    return mf_rhs(BlochPoint{y[0], y[1], y[2]}, params);
  };
  const auto states = detail::integrate_at<3>(rhs, {s0.sx, s0.sy, s0.sz}, times, tol);

  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.points.reserve(states.size());
  const double h0 = mf_energy(s0, params);
  for (const auto& y : states) {
    const BlochPoint s{y[0], y[1], y[2]};
    traj.points.push_back(s);
    traj.energy_drift = std::max(traj.energy_drift, std::abs(mf_energy(s, params) - h0));
    traj.surface_drift = std::max(traj.surface_drift, std::abs(surface_residual(s)));
  }
  return traj;
}

Trajectory integrate_trajectory(const BlochPoint& s0, double t_max, int samples,
                                const ModelParams& params, double tol) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) times[i] = t_max * i / (samples - 1);
  return integrate_trajectory(s0, times, params, tol);
}

std::vector<CanonicalPoint> integrate_canonical(const CanonicalPoint& c0,
                                                std::span<const double> times,
                                                const ModelParams& params,
                                                double tol) {
  auto rhs = [&params](const std::array<double, 2>& y) {
    return canonical_rhs(CanonicalPoint{y[0], y[1]}, params);
  };
  const auto states = detail::integrate_at<2>(rhs, {c0.p, c0.q}, times, tol);
  std::vector<CanonicalPoint> out;
  out.reserve(states.size());
  for (const auto& y : states) out.push_back({y[0], wrap_angle(y[1])});
  return out;
}

BlochPoint surface_minimizer(double a, double b, double c) {
  const double rho = std::hypot(a, c);
  double p;
  if (rho == 0.0) {
    p = b > 0 ? -0.5 : 0.5;
  } else {
    // f(p) = b p - rho r(p) is convex; bisect f'(p) = b - rho r'(p).
    auto slope = [&](double x) { return b - rho * teardrop_radius_derivative(x); };
    double lo = -0.5, hi = 0.5;
    if (slope(lo) >= 0.0) {
      hi = lo;
    } else {
      for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (slope(mid) < 0.0 ? lo : hi) = mid;
      }
    }
    p = 0.5 * (lo + hi);
  }
  const double r = teardrop_radius(p);
  // a cos q + c sin q is minimal at q = atan2(c, a) + pi.
  const double q = rho == 0.0 ? 0.0 : std::atan2(c, a) + std::numbers::pi;
  return {r * std::cos(q), r * std::sin(q), p};
}

double wavefunction_norm(const MeanFieldWavefunction& w) {
  const double na = w.variant == WavefunctionVariant::Psi ? std::norm(w.a) : std::abs(w.a);
  return na + 2.0 * std::norm(w.b);
}

MeanFieldWavefunction make_wavefunction(WavefunctionVariant variant, cd a, cd b) {
  MeanFieldWavefunction w{variant, a, b};
  if (std::abs(wavefunction_norm(w) - 2.0) > 1e-10) {
    throw std::domain_error("mean-field wave function is not normalised to 2");
  }
  return w;
}

MeanFieldWavefunction wavefunction_from_bloch(const BlochPoint& s,
                                              WavefunctionVariant variant) {
  const double sz = std::clamp(s.sz, -0.5, 0.5);
  const double q = std::atan2(s.sy, s.sx);
  const cd b = std::sqrt(0.5 * (1.0 - 2.0 * sz)) * std::exp(kI * q);
  const double atoms = 1.0 + 2.0 * sz;  // |psi_a|^2 = |chi_a|
  const cd a = variant == WavefunctionVariant::Psi ? std::sqrt(atoms) : atoms;
  return {variant, a, b};
}

MeanFieldWavefunction nls_rhs(const MeanFieldWavefunction& w, const ModelParams& params) {
  const double e = params.epsilon;
  const double v = params.v;
  const double rt2 = std::numbers::sqrt2;
  MeanFieldWavefunction d{w.variant, 0.0, 0.0};
  if (w.variant == WavefunctionVariant::Psi) {
    d.a = -kI * (0.25 * e * w.a + (v / rt2) * std::conj(w.a) * w.b);
    d.b = -kI * ((v / (2.0 * rt2)) * w.a * w.a - 0.5 * e * w.b);
  } else {
    d.a = -kI * (0.5 * e * w.a + rt2 * v * std::abs(w.a) * w.b);
    d.b = -kI * ((v / (2.0 * rt2)) * w.a - 0.5 * e * w.b);
  }
  return d;
}

BlochPoint bloch_projection(const MeanFieldWavefunction& w) {
  const double rt2 = std::numbers::sqrt2;
  if (w.variant == WavefunctionVariant::Psi) {
    const cd t = std::conj(w.a) * std::conj(w.a) * w.b / rt2;
    return {t.real(), t.imag(), 0.25 * (std::norm(w.a) - 2.0 * std::norm(w.b))};
  }
  const cd t = std::conj(w.a) * w.b / rt2;
  return {t.real(), t.imag(), 0.25 * (std::abs(w.a) - 2.0 * std::norm(w.b))};
}

std::vector<MeanFieldWavefunction> integrate_wavefunction(
    const MeanFieldWavefunction& w0, std::span<const double> times,
    const ModelParams& params, double tol) {
  const auto variant = w0.variant;
  auto rhs = [&params, variant](const std::array<double, 4>& y) {
    const auto d = nls_rhs({variant, {y[0], y[1]}, {y[2], y[3]}}, params);
    return std::array<double, 4>{d.a.real(), d.a.imag(), d.b.real(), d.b.imag()};
  };
  const auto states = detail::integrate_at<4>(
      rhs, {w0.a.real(), w0.a.imag(), w0.b.real(), w0.b.imag()}, times, tol);
  std::vector<MeanFieldWavefunction> out;
  out.reserve(states.size());
  for (const auto& y : states) out.push_back({variant, {y[0], y[1]}, {y[2], y[3]}});
  return out;
}

}  // namespace amconv
