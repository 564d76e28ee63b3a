#include "amconv/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "amconv/mean_field.hpp"
#include "quadrature.hpp"

namespace amconv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Beyond this ratio of eps^2 / (2 v^2) the normalised cubic is dominated by
// its quadratic term and the trigonometric roots lose the physical pair to
// cancellation.
constexpr double kTrigConditionLimit = 1e4;

double horner(const std::array<double, 4>& c, double p) {
  return ((c[0] * p + c[1]) * p + c[2]) * p + c[3];
}

double shape(double p) { return (1.0 - 2.0 * p) * (1.0 + 2.0 * p) * (1.0 + 2.0 * p); }

// Physical roots of the cubic in [-1/2, 1/2] by bisection on either side of
// its local minimum.
std::array<double, 2> bracketed_physical_roots(const std::array<double, 4>& c) {
  // P'(p) = 3 c0 p^2 + 2 c1 p + c2; the larger root is the local minimum.
  const double qa = 3.0 * c[0], qb = 2.0 * c[1], qc = c[2];
  const double disc = std::max(qb * qb - 4.0 * qa * qc, 0.0);
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  const double r1 = q / qa;
  const double r2 = q != 0.0 ? qc / q : r1;
  const double pmin = std::clamp(std::max(r1, r2), -0.5, 0.5);

  if (horner(c, pmin) > 1e-14) {
    throw std::runtime_error("turning-point cubic has no root on the surface");
  }
  // Left root: P(-1/2) >= 0 and P(pmin) <= 0.
  double lo = -0.5, hi = pmin;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (horner(c, mid) > 0.0 ? lo : hi) = mid;
  }
  const double left = horner(c, -0.5) <= 0.0 ? -0.5 : 0.5 * (lo + hi);
  lo = pmin;
  hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (horner(c, mid) > 0.0 ? hi : lo) = mid;
  }
  const double right = horner(c, 0.5) <= 0.0 ? 0.5 : 0.5 * (lo + hi);
  return {left, right};
}

Branch classify(double e, double p, const PotentialCurves& u) {
  const double du = std::abs(e - u.upper(p));
  const double dl = std::abs(e - u.lower(p));
  return du < dl ? Branch::Upper : Branch::Lower;
}

}  // namespace

double PotentialCurves::lower(double p) const {
  return epsilon * p - 0.5 * std::abs(v) * std::sqrt(std::max(shape(p), 0.0));
}

double PotentialCurves::upper(double p) const {
  return epsilon * p + 0.5 * std::abs(v) * std::sqrt(std::max(shape(p), 0.0));
}

PotentialCurves potential_curves(const ModelParams& params) {
  return {params.epsilon, params.v};
}

std::array<double, 3> real_cubic_roots(double a, double b, double c, double d,
                                       double tol) {
  if (a == 0.0) throw std::invalid_argument("leading cubic coefficient is zero");
  const double bb = b / a, cc = c / a, dd = d / a;
  // x = t - bb/3 gives t^3 + P t + Q.
  const double shift = bb / 3.0;
  const double P = cc - bb * bb / 3.0;
  const double Q = 2.0 * bb * bb * bb / 27.0 - bb * cc / 3.0 + dd;

  std::array<double, 3> roots;
  const double scale = std::max({1.0, std::abs(bb), std::abs(cc), std::abs(dd)});
  if (std::abs(P) <= 1e-14 * scale * scale) {
    if (std::abs(Q) > 1e-10 * scale * scale * scale) {
      throw std::runtime_error("cubic has complex roots");
    }
    roots = {-shift, -shift, -shift};
  } else {
    if (P > 0.0) throw std::runtime_error("cubic has complex roots");
    double arg = 1.5 * Q / P * std::sqrt(-3.0 / P);
    if (std::abs(arg) > 1.0 + tol) {
      throw std::runtime_error("cubic has complex roots (argument " +
                               std::to_string(arg) + ")");
    }
    arg = std::clamp(arg, -1.0, 1.0);
    const double amp = 2.0 * std::sqrt(-P / 3.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots[k] = amp * std::cos(phi - 2.0 * kPi * k / 3.0) - shift;
    }
  }
  // One Newton step each, skipped at (near) multiple roots.
  for (double& x : roots) {
    const double f = ((a * x + b) * x + c) * x + d;
    const double df = (3.0 * a * x + 2.0 * b) * x + c;
    if (std::abs(df) > 1e-8 * std::abs(a) * scale) {
      const double step = f / df;
      if (std::abs(step) < 1e-6 * scale) x -= step;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::array<double, 4> turning_point_cubic(double e, const ModelParams& params) {
  const double v2 = params.v * params.v;
  const double eps = params.epsilon;
  return {2.0 * v2, v2 + eps * eps, -(0.5 * v2 + 2.0 * eps * e), e * e - 0.25 * v2};
}

TurningPoints turning_points(double e, const ModelParams& params) {
  const EnergyRange range = mf_energy_range(params);
  if (e < range.min - 1e-10 || e > range.max + 1e-10) {
    throw std::domain_error("energy " + std::to_string(e) +
                            " outside the mean-field range [" +
                            std::to_string(range.min) + ", " +
                            std::to_string(range.max) + "]");
  }
  e = std::clamp(e, range.min, range.max);
  const PotentialCurves u = potential_curves(params);
  const double v = std::abs(params.v);
  const double eps = params.epsilon;

  TurningPoints tp;
  tp.energy = e;
  if (v == 0.0) {
    // Orbits are circles of constant p = e / eps.
    const double p = std::clamp(e / eps, -0.5, 0.5);
    tp.p_zero = -kInf;
    tp.p_minus = tp.p_plus = p;
    tp.branch_minus = Branch::Lower;
    tp.branch_plus = Branch::Upper;
    return tp;
  }

  const auto c = turning_point_cubic(e, params);
  if (eps * eps / (2.0 * v * v) > kTrigConditionLimit) {
    const auto pr = bracketed_physical_roots(c);
    tp.p_minus = pr[0];
    tp.p_plus = pr[1];
    tp.p_zero = -c[1] / c[0] - tp.p_minus - tp.p_plus;
  } else {
    const auto roots = real_cubic_roots(c[0], c[1], c[2], c[3]);
    constexpr double slack = 1e-7;
    if (roots[0] > -0.5 + slack || roots[1] < -0.5 - slack || roots[2] > 0.5 + slack) {
      throw std::runtime_error("turning-point roots violate p0 <= -1/2 <= p- <= p+ <= 1/2");
    }
    tp.p_zero = std::min(roots[0], -0.5);
    tp.p_minus = std::clamp(roots[1], -0.5, 0.5);
    tp.p_plus = std::clamp(roots[2], -0.5, 0.5);
  }

  // At a vertex both curves meet and either tag gives the same area.
  tp.branch_minus = classify(e, tp.p_minus, u);
  tp.branch_plus = classify(e, tp.p_plus, u);
  return tp;
}

double orbit_angle(double e, double p, const ModelParams& params) {
  const double g = shape(p);
  const double num = e - params.epsilon * p;
  const double den = std::abs(params.v) * std::sqrt(std::max(g, 0.0));
  if (den <= 0.0) return num > 0 ? 0.0 : (num < 0 ? kPi : 0.5 * kPi);
  return std::acos(std::clamp(2.0 * num / den, -1.0, 1.0));
}

double partial_angle_integral(const TurningPoints& tp, double p_upper,
                              const ModelParams& params) {
  const double half = 0.5 * (tp.p_plus - tp.p_minus);
  if (half <= 0.0) return 0.0;
  const double mid = 0.5 * (tp.p_plus + tp.p_minus);
  const double t_end = std::asin(std::clamp((p_upper - mid) / half, -1.0, 1.0));
  const double e = tp.energy;
  // p = mid + half sin t removes the square-root behaviour at the ends.
  auto f = [&](double t) {
    return orbit_angle(e, mid + half * std::sin(t), params) * half * std::cos(t);
  };
  return detail::integrate_adaptive(f, -0.5 * kPi, t_end, 1e-11);
}

double action(double e, const ModelParams& params) {
  const double eps = params.epsilon;
  if (params.v == 0.0) {
    if (eps == 0.0) throw std::domain_error("action undefined for eps = v = 0");
    const double x = std::clamp(e / eps, -0.5, 0.5);
    return eps > 0 ? 2.0 * kPi * (x + 0.5) : 2.0 * kPi * (0.5 - x);
  }
  const TurningPoints tp = turning_points(e, params);
  const double tilde = partial_angle_integral(tp, tp.p_plus, params);
  double s;
  if (tp.branch_minus == Branch::Lower && tp.branch_plus == Branch::Lower) {
    s = 2.0 * kPi * (tp.p_plus - tp.p_minus) - 2.0 * tilde;
  } else if (tp.branch_minus == Branch::Lower) {
    s = 2.0 * kPi * (0.5 - tp.p_minus) - 2.0 * tilde;
  } else if (tp.branch_plus == Branch::Lower) {
    s = 2.0 * kPi * (0.5 + tp.p_plus) - 2.0 * tilde;
  } else {
    s = 2.0 * kPi - 2.0 * tilde;
  }
  return std::clamp(s, 0.0, 2.0 * kPi);
}

SemiclassicalSpectrum quantize(const ModelParams& params) {
  if (params.v == 0.0 && params.epsilon == 0.0) {
    throw std::domain_error("quantize requires v != 0 or epsilon != 0");
  }
  const EnergyRange range = mf_energy_range(params);
  const double width = range.max - range.min;
  const double delta = 1e-13 * width;
  const double eta = params.eta;

  SemiclassicalSpectrum out;
  out.eta = eta;
  const int levels = params.n_particles / 2 + 1;
  out.levels.reserve(levels);
  double lo_start = range.min + delta;
  for (int n = 0; n < levels; ++n) {
    const double target = 2.0 * kPi * eta * (n + 0.5);
    // Levels are ascending, so the previous solution brackets from below.
    double lo = lo_start, hi = range.max - delta;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi || hi - lo <= 1e-15 * std::max(1.0, width)) break;
      (action(mid, params) < target ? lo : hi) = mid;
    }
    const double e = 0.5 * (lo + hi);
    out.levels.push_back({n, e / eta, e, action(e, params)});
    lo_start = lo;
  }
  return out;
}

double elliptic_k(double m) {
  if (!(m >= 0.0)) throw std::domain_error("elliptic_k: parameter m must be >= 0");
  if (m >= 1.0) return kInf;
  double a = 1.0;
  double b = std::sqrt(1.0 - m);
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

double separatrix_energy(const ModelParams& params) {
  return std::abs(params.epsilon) < critical_epsilon(params.v)
             ? -0.5 * params.epsilon
             : std::numeric_limits<double>::quiet_NaN();
}

double period(double e, const ModelParams& params) {
  const double v = std::abs(params.v);
  if (v == 0.0) throw std::domain_error("period requires v != 0");
  const double sep = separatrix_energy(params);
  if (std::isfinite(sep) && std::abs(e - sep) <= 1e-12 * std::max(1.0, std::abs(sep))) {
    return kInf;
  }
  const TurningPoints tp = turning_points(e, params);
  const double span = tp.p_plus - tp.p_zero;
  if (!(span > 0.0)) return kInf;
  const double m = std::max(0.0, (tp.p_plus - tp.p_minus) / span);
  const double k = elliptic_k(m);
  if (!std::isfinite(k)) return kInf;
  return 2.0 * std::numbers::sqrt2 * k / (v * std::sqrt(span));
}

double density_of_states(double e, const ModelParams& params) {
  return period(e, params) / (2.0 * kPi);
}

double mean_density_of_states(double e_lo, double e_hi, const ModelParams& params) {
  if (!(e_hi > e_lo)) throw std::invalid_argument("empty energy window");
  return (action(e_hi, params) - action(e_lo, params)) / (2.0 * kPi * (e_hi - e_lo));
}

WKBState wkb_state(int n, const ModelParams& params) {
  return wkb_state(n, params, quantize(params));
}

WKBState wkb_state(int n, const ModelParams& params,
                   const SemiclassicalSpectrum& spectrum) {
  if (n < 0 || n >= static_cast<int>(spectrum.levels.size())) {
    throw std::out_of_range("wkb_state: level index out of range");
  }
  if (params.v == 0.0) throw std::domain_error("wkb_state requires v != 0");
  const double eta = params.eta;
  const double e = spectrum.levels[n].energy_mf;
  const double v = std::abs(params.v);
  const double eps = params.epsilon;
  const TurningPoints tp = turning_points(e, params);

  double t = period(e, params);
  if (!std::isfinite(t)) t = 1.0;  // only the overall scale, removed below

  auto classical_density = [&](double p) {
    const double gap = 0.25 * v * v * shape(p) - (e - eps * p) * (e - eps * p);
    return 1.0 / (2.0 * t * std::sqrt(std::abs(gap)));
  };
  // Local wave number vanishes at p_-: pi - q if p_- lies on U^-, else q.
  const bool lower_start = tp.branch_minus == Branch::Lower;
  auto phase = [&](double p) {
    const double tilde = partial_angle_integral(tp, p, params);
    const double integral = lower_start ? kPi * (p - tp.p_minus) - tilde : tilde;
    return integral / eta - 0.25 * kPi;
  };
  auto decay_rate = [&](double p) {
    const double den = v * std::sqrt(std::max(shape(p), 0.0));
    const double x = den > 0.0 ? std::abs(2.0 * (e - eps * p) / den) : kInf;
    return x > 1.0 ? std::acosh(x) : 0.0;
  };

  const double guard = 2.0 * eta;
  const double mid = 0.5 * (tp.p_minus + tp.p_plus);
  const KzBasis basis = basis_states(params.n_particles);

  WKBState out;
  out.level = n;
  out.energy_mf = e;
  out.m_values = basis.m_values;
  out.amplitudes.assign(basis.dimension(), 0.0);
  out.unreliable.assign(basis.dimension(), false);

  double norm2 = 0.0;
  for (int k = 0; k < basis.dimension(); ++k) {
    const double p = eta * basis.m_values[k];
    const double d_minus = std::abs(p - tp.p_minus);
    const double d_plus = std::abs(p - tp.p_plus);
    const bool flagged = std::min(d_minus, d_plus) < guard;
    // Inside the guard band the density prefactor is taken at the band edge
    // (or the centre of a narrow window) to keep it finite.
    double p_density = p;
    if (flagged) {
      p_density = d_minus <= d_plus ? std::min(tp.p_minus + guard, mid)
                                    : std::max(tp.p_plus - guard, mid);
    }
    const double w = classical_density(p_density);
    double amp2;
    if (p > tp.p_minus && p < tp.p_plus) {
      const double c = std::cos(phase(p));
      amp2 = 2.0 * w * c * c;
      if (out.allowed_first < 0) out.allowed_first = k;
      out.allowed_last = k;
    } else {
      const double integral = p <= tp.p_minus
                                  ? detail::integrate_adaptive(decay_rate, p, tp.p_minus, 1e-10)
                                  : detail::integrate_adaptive(decay_rate, tp.p_plus, p, 1e-10);
      amp2 = 0.5 * w * std::exp(-2.0 * integral / eta);
    }
    if (!std::isfinite(amp2)) amp2 = 0.0;
    out.amplitudes[k] = std::sqrt(amp2);
    out.unreliable[k] = flagged;
    norm2 += amp2;
  }
  if (norm2 > 0.0) {
    const double s = 1.0 / std::sqrt(norm2);
    for (double& a : out.amplitudes) a *= s;
  }
  return out;
}

}  // namespace amconv
