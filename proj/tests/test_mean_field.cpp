#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "amconv/mean_field.hpp"
#include "doctest.h"

using namespace amconv;
using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

namespace {

BlochPoint on_surface(double p, double q) { return from_canonical({p, q}); }

double dist(const BlochPoint& a, const BlochPoint& b) {
  return std::sqrt((a.sx - b.sx) * (a.sx - b.sx) + (a.sy - b.sy) * (a.sy - b.sy) +
                   (a.sz - b.sz) * (a.sz - b.sz));
}

}  // namespace

TEST_SUITE("mean-field") {

TEST_CASE("flow examples") {
  const auto p = make_params(0, 1, 2);
  auto d = mf_rhs(make_bloch_point(0.5, 0, 0), p);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(0.25));
  CHECK(d[2] == 0.0);
  d = mf_rhs(make_bloch_point(std::sqrt(8.0 / 27), 0, 1.0 / 6), p);
  for (double x : d) CHECK(std::abs(x) <= 1e-15);
}

TEST_CASE("flow is tangent to the surface") {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> up(-0.5, 0.5), uq(0, 2 * pi), ue(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const auto s = on_surface(up(rng), uq(rng));
    const auto p = make_params(ue(rng), ue(rng), 2);
    const auto d = mf_rhs(s, p);
    const double dr2 = 0.5 * (1 + 2 * s.sz) * (1 - 6 * s.sz);
    CHECK(std::abs(2 * s.sx * d[0] + 2 * s.sy * d[1] - dr2 * d[2]) <= 1e-13);
  }
}

TEST_CASE("energy in both charts") {
  const auto p1 = make_params(1.7, 0.6, 2);
  CHECK(mf_energy(make_bloch_point(0, 0, -0.5), p1) == doctest::Approx(-0.85));
  const auto p0 = make_params(0, 1, 2);
  CHECK(mf_energy(make_bloch_point(std::sqrt(8.0 / 27), 0, 1.0 / 6), p0) ==
        doctest::Approx(2 * std::sqrt(6.0) / 9).epsilon(1e-14));
  CHECK(std::abs(mf_energy(CanonicalPoint{0, pi / 2}, make_params(1, 1, 2))) <= 1e-15);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> up(-0.5, 0.5), uq(0, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    const CanonicalPoint c{up(rng), uq(rng)};
    CHECK(std::abs(mf_energy(c, p1) - mf_energy(from_canonical(c), p1)) <= 1e-12);
  }
}

TEST_CASE("chart conversions") {
  const auto s = from_canonical({0, 0});
  CHECK(s.sx == doctest::Approx(0.5));
  CHECK(s.sy == 0.0);
  const auto c = to_canonical(make_bloch_point(0, 0.5, 0));
  CHECK(c.p == 0.0);
  CHECK(c.q == doctest::Approx(pi / 2));
  CHECK_THROWS_WITH_AS(to_canonical(make_bloch_point(0, 0, -0.5)), "angle undefined at r=0",
                       std::domain_error);
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> up(-0.49, 0.49), uq(0, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    const CanonicalPoint a{up(rng), uq(rng)};
    const auto b = to_canonical(from_canonical(a));
    CHECK(std::abs(b.p - a.p) <= 1e-12);
    CHECK(std::abs(std::remainder(b.q - a.q, 2 * pi)) <= 1e-12);
    CHECK(b.q >= 0.0);
    CHECK(b.q < 2 * pi);
  }
  CHECK_THROWS_AS(make_bloch_point(0.5, 0.5, 0), std::domain_error);
}

TEST_CASE("poisson brackets close on the generators") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> up(-0.45, 0.45), uq(0, 2 * pi);
  const double h = 1e-6;
  using F = BlochPoint (*)(double, double);
  F f = [](double p, double q) { return from_canonical({p, q}); };
  for (int i = 0; i < 100; ++i) {
    const double p = up(rng), q = uq(rng);
    const auto dp_plus = f(p + h, q), dp_minus = f(p - h, q);
    const auto dq_plus = f(p, q + h), dq_minus = f(p, q - h);
    auto d = [&](double BlochPoint::*comp, bool wrt_p) {
      return wrt_p ? (dp_plus.*comp - dp_minus.*comp) / (2 * h) : (dq_plus.*comp - dq_minus.*comp) / (2 * h);
    };
    auto bracket = [&](double BlochPoint::*a, double BlochPoint::*b) {
      return d(a, true) * d(b, false) - d(a, false) * d(b, true);
    };
    const auto s = f(p, q);
    CHECK(std::abs(bracket(&BlochPoint::sx, &BlochPoint::sy) - 0.25 * (1 - 4 * p - 12 * p * p)) <= 1e-6);
    CHECK(std::abs(bracket(&BlochPoint::sy, &BlochPoint::sz) + s.sx) <= 1e-6);
    CHECK(std::abs(bracket(&BlochPoint::sz, &BlochPoint::sx) + s.sy) <= 1e-6);
  }
}

TEST_CASE("fixed points at eps = 0") {
  const auto fps = fixed_points(make_params(0, 1, 2));
  REQUIRE(fps.size() == 3);
  CHECK(fps[0].location.sz == -0.5);
  CHECK(fps[0].stability == Stability::Saddle);
  for (int k = 1; k < 3; ++k) {
    CHECK(fps[k].location.sz == doctest::Approx(1.0 / 6));
    CHECK(std::abs(fps[k].location.sx) == doctest::Approx(std::sqrt(8.0 / 27)));
    CHECK(fps[k].stability == Stability::Elliptic);
  }
  CHECK(fps[1].location.sx * fps[2].location.sx < 0);
}

TEST_CASE("fixed points at eps = 2") {
  const auto p = make_params(2, 1, 2);
  const auto fps = fixed_points(p);
  REQUIRE(fps.size() == 2);
  CHECK(fps[0].stability == Stability::Elliptic);
  CHECK(fps[1].location.sz == doctest::Approx((-5 + std::sqrt(160.0)) / 18).epsilon(1e-12));
  CHECK(fps[1].stability == Stability::Elliptic);
}

TEST_CASE("fixed point invariants across the bifurcation") {
  for (double v : {1.0, -0.7, 2.5}) {
    for (int i = -60; i <= 60; ++i) {
      const double eps = 0.05 * i * std::abs(v);
      if (eps == 0 && v == 0) continue;
      const auto p = make_params(eps, v, 2);
      const auto fps = fixed_points(p);
      const double crit = critical_epsilon(v);
      if (std::abs(std::abs(eps) - crit) > 1e-9) {
        CHECK(fps.size() == (std::abs(eps) < crit ? 3u : 2u));
      }
      for (const auto& fp : fps) {
        CHECK(std::abs(surface_residual(fp.location)) <= 1e-12);
        const auto d = mf_rhs(fp.location, p);
        for (double x : d) CHECK(std::abs(x) <= 1e-9);
        CHECK(std::abs(fixed_point_polynomial(fp.sz_root, p)) <= 1e-10);
        CHECK(fp.energy == doctest::Approx(mf_energy(fp.location, p)).epsilon(1e-14));
        CHECK(fp.location.sy == 0.0);
      }
      CHECK(fps[0].stability == (std::abs(eps) < crit ? Stability::Saddle : Stability::Elliptic));
    }
  }
  CHECK(fixed_points(make_params(1.414, 1, 2)).size() == 3);
  CHECK(fixed_points(make_params(1.415, 1, 2)).size() == 2);
  CHECK(fixed_points(make_params(std::sqrt(2.0), 1, 2))[0].stability == Stability::Degenerate);
  CHECK_THROWS(fixed_points(make_params(0, 0, 2)));
}

TEST_CASE("energy range is spanned by fixed points") {
  for (double eps : {-3.0, -1.0, 0.0, 0.7, 2.0}) {
    const auto p = make_params(eps, 1, 2);
    const auto r = mf_energy_range(p);
    double lo = 1e9, hi = -1e9;
    for (const auto& fp : fixed_points(p)) {
      lo = std::min(lo, fp.energy);
      hi = std::max(hi, fp.energy);
    }
    CHECK(r.min == doctest::Approx(lo));
    CHECK(r.max == doctest::Approx(hi));
    // brute force over the surface
    double bmin = 1e9, bmax = -1e9;
    for (int i = 0; i <= 400; ++i)
      for (int j = 0; j < 64; ++j) {
        const double e = mf_energy(CanonicalPoint{-0.5 + i / 400.0, 2 * pi * j / 64}, p);
        bmin = std::min(bmin, e);
        bmax = std::max(bmax, e);
      }
    CHECK(r.min <= bmin + 1e-12);
    CHECK(r.max >= bmax - 1e-12);
    CHECK(r.min >= bmin - 1e-3);
  }
}

TEST_CASE("trajectories conserve energy and the surface") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> up(-0.45, 0.45), uq(0, 2 * pi);
  for (double eps : {0.0, 1.0, 2.0}) {
    const auto p = make_params(eps, 1, 2);
    for (int k = 0; k < 4; ++k) {
      const auto tr = integrate_trajectory(on_surface(up(rng), uq(rng)), 100.0, 501, p, 1e-10);
      CHECK(tr.energy_drift <= 1e-8);
      CHECK(tr.surface_drift <= 1e-8);
      CHECK(tr.times.size() == 501);
      CHECK(tr.times.back() == 100.0);
    }
  }
  // fixed point stays put
  const auto p = make_params(0.5, 1, 2);
  const auto fp = fixed_points(p)[1];
  const auto tr = integrate_trajectory(fp.location, 20.0, 21, p);
  for (const auto& s : tr.points) CHECK(dist(s, fp.location) <= 1e-9);
  CHECK_THROWS_AS(integrate_trajectory(BlochPoint{0.3, 0.3, 0.3}, 1.0, 3, p), std::domain_error);
}

TEST_CASE("supercritical oscillation near the tip has period sqrt(2) pi") {
  const auto p = make_params(2, 1, 2);
  const auto tr = integrate_trajectory(on_surface(-0.5 + 1e-4, 0.0), 30.0, 30001, p);
  // mean of s_z, then upward crossings
  double mean = 0;
  for (const auto& s : tr.points) mean += s.sz;
  mean /= tr.points.size();
  std::vector<double> ups;
  for (std::size_t i = 1; i < tr.points.size(); ++i) {
    const double a = tr.points[i - 1].sz - mean, b = tr.points[i].sz - mean;
    if (a < 0 && b >= 0) ups.push_back(tr.times[i - 1] + (tr.times[i] - tr.times[i - 1]) * (-a) / (b - a));
  }
  REQUIRE(ups.size() >= 3);
  const double period = (ups.back() - ups.front()) / (ups.size() - 1);
  CHECK(period == doctest::Approx(std::sqrt(2.0) * pi).epsilon(0.01));
}

TEST_CASE("orbits next to the subcritical separatrix approach the tip without crossing") {
  const auto p = make_params(0, 1, 2);
  // separatrix is s_x = 0 here; a start exactly on it is at the mercy of
  // round-off at the cusp, so straddle it instead
  for (double sx : {-1e-4, 1e-4}) {
    const double sz0 = 0.3;
    const double sy0 = std::sqrt(teardrop_radius_squared(sz0) - sx * sx);
    const auto tr = integrate_trajectory(make_bloch_point(sx, sy0, sz0), 40.0, 4001, p);
    double lowest = 1;
    for (const auto& s : tr.points) {
      CHECK(s.sz >= -0.5);
      lowest = std::min(lowest, s.sz);
    }
    // closest approach where r(s_z) = |s_x|, i.e. 1 + 2 s_z ~ |s_x|
    CHECK(lowest < -0.4999);
    CHECK(lowest > -0.5 + 0.25 * std::abs(sx));
  }
}

TEST_CASE("canonical flow matches the Bloch flow") {
  const auto p = make_params(1.0, 1, 2);
  std::vector<double> ts;
  for (int i = 0; i <= 200; ++i) ts.push_back(0.05 * i);
  const CanonicalPoint c0{0.1, 1.0};
  const auto can = integrate_canonical(c0, ts, p);
  const auto blo = integrate_trajectory(from_canonical(c0), ts, p);
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(dist(from_canonical(can[i]), blo.points[i]) <= 1e-8);
  // canonical rhs equals the Hamiltonian gradient
  const double h = 1e-6;
  const CanonicalPoint c{0.2, 0.7};
  const auto r = canonical_rhs(c, p);
  const double dHdq = (mf_energy(CanonicalPoint{c.p, c.q + h}, p) - mf_energy(CanonicalPoint{c.p, c.q - h}, p)) / (2 * h);
  const double dHdp = (mf_energy(CanonicalPoint{c.p + h, c.q}, p) - mf_energy(CanonicalPoint{c.p - h, c.q}, p)) / (2 * h);
  CHECK(r[0] == doctest::Approx(-dHdq).epsilon(1e-7));
  CHECK(r[1] == doctest::Approx(dHdp).epsilon(1e-7));
}

TEST_CASE("wave function projections") {
  const auto atoms = make_wavefunction(WavefunctionVariant::Psi, std::sqrt(2.0), 0.0);
  auto s = bloch_projection(atoms);
  CHECK(s.sz == doctest::Approx(0.5));
  CHECK(s.sx == 0.0);
  const auto mol = make_wavefunction(WavefunctionVariant::Psi, 0.0, 1.0);
  s = bloch_projection(mol);
  CHECK(s.sz == doctest::Approx(-0.5));
  const auto p = make_params(0.8, 1, 2);
  const auto d = nls_rhs(mol, p);
  const auto moved = bloch_projection(make_wavefunction(WavefunctionVariant::Psi, mol.a + 1e-7 * d.a, mol.b + 1e-7 * d.b));
  CHECK(dist(moved, s) <= 1e-12);

  const auto mix = make_wavefunction(WavefunctionVariant::Psi, 1.0, 1.0 / std::sqrt(2.0));
  s = bloch_projection(mix);
  CHECK(std::abs(surface_residual(s)) <= 1e-12);
  CHECK(s.sx == doctest::Approx(0.5));

  CHECK_THROWS_AS(make_wavefunction(WavefunctionVariant::Psi, 1.0, 0.0), std::domain_error);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> up(-0.5, 0.5), uq(0, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    const auto b = on_surface(up(rng), uq(rng));
    for (auto var : {WavefunctionVariant::Psi, WavefunctionVariant::Chi}) {
      const auto w = wavefunction_from_bloch(b, var);
      CHECK(std::abs(wavefunction_norm(w) - 2) <= 1e-10);
      CHECK(dist(bloch_projection(w), b) <= 1e-12);
    }
  }
}

TEST_CASE("projected nonlinear Schroedinger flow reproduces the Bloch flow") {
  std::mt19937 rng(10);
  std::uniform_real_distribution<double> up(-0.45, 0.45), uq(0, 2 * pi);
  for (double eps : {0.0, 1.3}) {
    const auto p = make_params(eps, 1, 2);
    for (int i = 0; i < 10; ++i) {
      const auto b = on_surface(up(rng), uq(rng));
      const auto mf = mf_rhs(b, p);
      for (auto var : {WavefunctionVariant::Psi, WavefunctionVariant::Chi}) {
        const auto w = wavefunction_from_bloch(b, var);
        const auto d = nls_rhs(w, p);
        const double h = 1e-6;
        const auto fwd = bloch_projection({var, w.a + h * d.a, w.b + h * d.b});
        const auto bwd = bloch_projection({var, w.a - h * d.a, w.b - h * d.b});
        CHECK((fwd.sx - bwd.sx) / (2 * h) == doctest::Approx(mf[0]).epsilon(1e-6));
        CHECK((fwd.sy - bwd.sy) / (2 * h) == doctest::Approx(mf[1]).epsilon(1e-6));
        CHECK((fwd.sz - bwd.sz) / (2 * h) == doctest::Approx(mf[2]).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("psi and chi trajectories agree") {
  const auto p = make_params(0.6, 1, 2);
  std::vector<double> ts;
  for (int i = 0; i <= 100; ++i) ts.push_back(0.2 * i);
  const auto b0 = on_surface(0.05, 2.0);
  const auto psi = integrate_wavefunction(wavefunction_from_bloch(b0, WavefunctionVariant::Psi), ts, p);
  const auto chi = integrate_wavefunction(wavefunction_from_bloch(b0, WavefunctionVariant::Chi), ts, p);
  const auto ref = integrate_trajectory(b0, ts, p);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(dist(bloch_projection(psi[i]), bloch_projection(chi[i])) <= 1e-8);
    CHECK(dist(bloch_projection(psi[i]), ref.points[i]) <= 1e-8);
  }
  // norm over a longer run
  std::vector<double> long_ts;
  for (int i = 0; i <= 50; ++i) long_ts.push_back(i);
  for (const auto& w : integrate_wavefunction(wavefunction_from_bloch(b0, WavefunctionVariant::Psi), long_ts, p)) {
    CHECK(std::abs(wavefunction_norm(w) - 2) <= 1e-9);
  }
}

TEST_CASE("surface minimiser") {
  // ground of -K_z is the top, of +K_z the tip
  CHECK(surface_minimizer(0, -1, 0).sz == 0.5);
  CHECK(surface_minimizer(0, 1, 0).sz == -0.5);
  // brute force
  std::mt19937 rng(13);
  std::normal_distribution<double> g;
  for (int i = 0; i < 30; ++i) {
    const double a = g(rng), b = g(rng), c = g(rng);
    const auto s = surface_minimizer(a, b, c);
    const double best = a * s.sx + b * s.sz + c * s.sy;
    for (int k = 0; k <= 200; ++k)
      for (int j = 0; j < 60; ++j) {
        const auto t = on_surface(-0.5 + k / 200.0, 2 * pi * j / 60);
        CHECK(best <= a * t.sx + b * t.sz + c * t.sy + 1e-12);
      }
  }
}

}  // TEST_SUITE
