#include "cli/figures.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "amconv/many_particle.hpp"
#include "amconv/mean_field.hpp"
#include "amconv/semiclassics.hpp"
#include "cli/commands.hpp"

namespace amconv::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string tag(double x) {
  std::string s = format_number(x);
  for (char& c : s) {
    if (c == '-') c = 'm';
    if (c == '.') c = 'p';
  }
  return s;
}

struct Writer {
  const FigureOptions& opt;
  std::string id;
  std::vector<std::string> written;

  void operator()(TableArtifact t, const std::string& variant) {
    t.set_meta("tool", "amconv " + version());
    t.set_meta("figure", id);
    const std::string path =
        opt.out_dir + "/" + id + (variant.empty() ? "" : "_" + variant) + extension(opt.format);
    write_table(t, path, opt.format);
    written.push_back(path);
  }
};

std::vector<int> particle_numbers(const FigureOptions& o, std::vector<int> defaults) {
  if (o.n_override) return {*o.n_override};
  return defaults;
}

std::vector<double> epsilons(const FigureOptions& o, std::vector<double> defaults) {
  if (o.epsilon_override) return {*o.epsilon_override};
  return defaults;
}

std::vector<double> sweep_grid() { return EpsilonSweep{-4, 4, 161}.values(); }

void fig1(Writer& w) {
  for (int n : particle_numbers(w.opt, {50})) {
    const KzBasis basis = basis_states(n);
    const Generators g = build_generators(basis);
    const auto kx = exact_spectrum(g.kx, false).values;
    const auto ky = exact_spectrum(g.ky, false).values;
    const double eta = semiclassical_eta(n);
    TableArtifact t({"n", "kx", "ky", "eta_kx"});
    t.plot_y = {"kx"};
    for (std::size_t k = 0; k < kx.size(); ++k) t.add_row({double(k), kx[k], ky[k], eta * kx[k]});
    t.set_meta("N", std::to_string(n));
    w(t, "N" + std::to_string(n));
  }
}

void fig2(Writer& w) {
  const auto grid = sweep_grid();
  for (int n : particle_numbers(w.opt, {10, 50})) {
    TableArtifact t({"epsilon", "n", "E", "eta_E"});
    t.plot_y = {"E"};
    t.plot_group = "n";
    for (double eps : grid) {
      const ModelParams p = make_params(eps, 1, n);
      const auto values = exact_spectrum(hamiltonian_tridiagonal(p), false).values;
      for (std::size_t k = 0; k < values.size(); ++k) t.add_row({eps, double(k), values[k], p.eta * values[k]});
    }
    t.set_meta("N", std::to_string(n));
    t.set_meta("v", "1");
    w(t, "N" + std::to_string(n));
  }
  // Mean-field fixed-point energies against eta*E, the bounding comparison.
  const int n_mf = w.opt.n_override.value_or(30);
  TableArtifact t({"epsilon", "e_tip", "e_fixed_1", "e_fixed_2", "eta_E_min", "eta_E_max"});
  for (double eps : grid) {
    const ModelParams p = make_params(eps, 1, n_mf);
    const auto fps = fixed_points(p);
    double e[3] = {kNaN, kNaN, kNaN};
    for (std::size_t k = 0; k < fps.size() && k < 3; ++k) e[k] = fps[k].energy;
    const auto values = exact_spectrum(hamiltonian_tridiagonal(p), false).values;
    t.add_row({eps, e[0], e[1], e[2], p.eta * values.front(), p.eta * values.back()});
  }
  t.set_meta("N", std::to_string(n_mf));
  w(t, "mf_energies");
}

void fig3(Writer& w) {
  const auto times = time_grid(20, 401);
  for (double eps : epsilons(w.opt, {0, 1, 2})) {
    const ModelParams p = make_params(eps, 1, 2);
    TableArtifact t({"trajectory", "t", "sx", "sy", "sz", "energy"});
    t.plot_x = "t";
    t.plot_y = {"sz"};
    t.plot_group = "trajectory";
    int id = 0;
    for (double p0 : {-0.45, -0.3, -0.1, 0.1, 0.3, 0.45}) {
      const BlochPoint s0 = from_canonical({p0, 0.0});
      const Trajectory tr = integrate_trajectory(s0, times, p);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const auto& s = tr.points[i];
        t.add_row({double(id), times[i], s.sx, s.sy, s.sz, mf_energy(s, p)});
      }
      ++id;
    }
    t.set_meta("epsilon", format_number(eps));
    t.set_meta("v", "1");
    w(t, "eps" + tag(eps));
  }
}

void fig4(Writer& w) {
  const auto times = time_grid(20, 401);
  struct Case {
    double eps;
    const char* init;
  };
  std::vector<Case> cases = {{1, "ground-kx"}, {1, "ground-minus-kx"}, {0, "ground-minus-kz"}};
  for (const auto& c : cases) {
    if (w.opt.epsilon_override && *w.opt.epsilon_override != c.eps) continue;
    for (int n : particle_numbers(w.opt, {20, 100, 500})) {
      const InitialCondition init = parse_init(c.init);
      TableArtifact t = mp_trajectory_table(make_params(c.eps, 1, n), init, times);
      w(t, "eps" + tag(c.eps) + "_" + c.init + "_N" + std::to_string(n));
    }
  }
}

void fig5(Writer& w) {
  for (int n : particle_numbers(w.opt, {2, 4, 10, 100})) {
    w(coherent_surface(n, 201), "N" + std::to_string(n));
  }
}

void fig6(Writer& w) {
  for (double eps : epsilons(w.opt, {0, 2})) {
    const ModelParams p = make_params(eps, 1, 2);
    const PotentialCurves u = potential_curves(p);
    TableArtifact curves({"p", "U_minus", "U_plus"});
    for (int i = 0; i <= 400; ++i) {
      const double x = -0.5 + i / 400.0;
      curves.add_row({x, u.lower(x), u.upper(x)});
    }
    curves.set_meta("epsilon", format_number(eps));
    w(curves, "potential_eps" + tag(eps));

    TableArtifact portrait({"p", "q", "H"});
    portrait.plot_x = "q";
    portrait.plot_y = {"H"};
    portrait.plot_group = "p";
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 100; ++j) {
        const CanonicalPoint c{-0.5 + i / 100.0, 2 * std::numbers::pi * j / 100.0};
        portrait.add_row({c.p, c.q, mf_energy(c, p)});
      }
    }
    portrait.set_meta("epsilon", format_number(eps));
    w(portrait, "portrait_eps" + tag(eps));

    // One highlighted orbit, a third of the way up the energy range.
    const EnergyRange r = mf_energy_range(p);
    const double e = r.min + (r.max - r.min) / 3;
    const TurningPoints tp = turning_points(e, p);
    TableArtifact orbit({"p", "q_upper", "q_lower"});
    for (int i = 0; i <= 200; ++i) {
      const double x = tp.p_minus + (tp.p_plus - tp.p_minus) * i / 200.0;
      const double q = orbit_angle(e, x, p);
      orbit.add_row({x, q, 2 * std::numbers::pi - q});
    }
    orbit.set_meta("epsilon", format_number(eps));
    orbit.set_meta("e", format_number(e));
    orbit.set_meta("p_minus", format_number(tp.p_minus));
    orbit.set_meta("p_plus", format_number(tp.p_plus));
    w(orbit, "orbit_eps" + tag(eps));
  }
}

void fig7(Writer& w) {
  const auto grid = w.opt.epsilon_override ? std::vector<double>{*w.opt.epsilon_override}
                                           : EpsilonSweep{-4, 4, 81}.values();
  for (int n : particle_numbers(w.opt, {4, 20})) {
    TableArtifact t = compare_spectra(n, 1, grid);
    t.set_meta("N", std::to_string(n));
    t.set_meta("v", "1");
    w(t, "N" + std::to_string(n));
  }
}

void fig8(Writer& w) {
  const int n = w.opt.n_override.value_or(10000);
  for (double eps : epsilons(w.opt, {0, 1, 2, 5})) {
    const ModelParams p = make_params(eps, 1, n);
    DosHistogram h = dos_histogram(p, w.opt.bins);
    if (n != 10000) h.table.set_meta("note", "non-default N");
    w(h.table, "eps" + tag(eps) + "_hist");

    const EnergyRange r = mf_energy_range(p);
    TableArtifact curve({"E", "eta_E", "dn_dE"});
    for (int i = 0; i <= 400; ++i) {
      const double e = r.min + (r.max - r.min) * i / 400.0;
      curve.add_row({e / p.eta, e, period(e, p) / (2 * std::numbers::pi)});
    }
    curve.set_meta("epsilon", format_number(eps));
    curve.set_meta("N", std::to_string(n));
    w(curve, "eps" + tag(eps) + "_curve");
  }
}

void fig9(Writer& w) {
  const int n = w.opt.n_override.value_or(40);
  const double eps = w.opt.epsilon_override.value_or(0.5);
  const ModelParams p = make_params(eps, 1, n);
  for (int level : {1, 3, 10}) {
    if (level > n / 2) continue;
    TableArtifact t;
    wkb_overlap(level, p, &t);
    w(t, "n" + std::to_string(level));
  }
}

}  // namespace

std::vector<std::string> write_figure(const std::string& id, const FigureOptions& options) {
  Writer w{options, id, {}};
  if (id == "fig1") fig1(w);
  else if (id == "fig2") fig2(w);
  else if (id == "fig3") fig3(w);
  else if (id == "fig4") fig4(w);
  else if (id == "fig5") fig5(w);
  else if (id == "fig6") fig6(w);
  else if (id == "fig7") fig7(w);
  else if (id == "fig8") fig8(w);
  else if (id == "fig9") fig9(w);
  else throw std::invalid_argument("unknown figure id '" + id + "' (fig1 .. fig9)");
  return w.written;
}

}  // namespace amconv::cli
