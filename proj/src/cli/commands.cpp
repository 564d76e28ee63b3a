#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "amconv/semiclassics.hpp"
#include "cli/figures.hpp"

#ifndef AMCONV_VERSION
#define AMCONV_VERSION "0.0.0"
#endif

namespace amconv::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Thrown for bad user input that only shows up after parsing.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string num(double x) { return format_number(x); }

void stamp(TableArtifact& t, const std::string& command, const ModelParams* p) {
  t.set_meta("tool", "amconv " + version());
  t.set_meta("command", command);
  if (p) {
    t.set_meta("N", std::to_string(p->n_particles));
    t.set_meta("epsilon", num(p->epsilon));
    t.set_meta("v", num(p->v));
    t.set_meta("eta", num(p->eta));
  }
}

double stability_code(Stability s) {
  switch (s) {
    case Stability::Elliptic: return 0;
    case Stability::Saddle: return 1;
    case Stability::Degenerate: return 2;
  }
  return 2;
}

}  // namespace

std::string version() { return AMCONV_VERSION; }

std::vector<double> EpsilonSweep::values() const {
  std::vector<double> out(steps);
  for (int i = 0; i < steps; ++i) {
    out[i] = i == steps - 1 ? end : start + (end - start) * i / (steps - 1);
  }
  return out;
}

EpsilonSweep parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("epsilon range must be a:b:steps, got '" + text + "'");
  EpsilonSweep s;
  try {
    std::size_t used = 0;
    s.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("");
    s.end = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("");
    s.steps = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("epsilon range must be a:b:steps, got '" + text + "'");
  }
  if (s.steps < 2) throw std::invalid_argument("epsilon range needs steps >= 2");
  if (!std::isfinite(s.start) || !std::isfinite(s.end)) {
    throw std::invalid_argument("epsilon range bounds must be finite");
  }
  return s;
}

InitialCondition parse_init(const std::string& text) {
  InitialCondition init;
  init.name = text;
  if (text == "ground-kx") {
    init.spec = {1, 0, 0};
  } else if (text == "ground-minus-kx") {
    init.spec = {-1, 0, 0};
  } else if (text == "ground-kz") {
    init.spec = {0, 1, 0};
  } else if (text == "ground-minus-kz") {
    init.spec = {0, -1, 0};
  } else if (text.rfind("bloch:", 0) == 0) {
    std::vector<double> xyz;
    std::stringstream ss(text.substr(6));
    std::string item;
    try {
      while (std::getline(ss, item, ',')) xyz.push_back(std::stod(item));
    } catch (const std::exception&) {
      xyz.clear();
    }
    if (xyz.size() != 3) throw std::invalid_argument("--init bloch:x,y,z needs three numbers");
    const BlochPoint raw = make_bloch_point(xyz[0], xyz[1], xyz[2], 1e-6);
    // Snap onto the surface at fixed s_z.
    const double r = teardrop_radius(raw.sz);
    const double rho = std::hypot(raw.sx, raw.sy);
    BlochPoint s{rho > 0 ? raw.sx * r / rho : r, rho > 0 ? raw.sy * r / rho : 0.0, raw.sz};
    // Minus the outward normal of s_x^2 + s_y^2 - r^2(s_z) = 0.
    const double dr2 = 0.5 * (1 + 2 * s.sz) * (1 - 6 * s.sz);
    init.spec = {-2 * s.sx, dr2, -2 * s.sy};
    if (s.sz <= -0.5 + 1e-12) init.spec = {0, 1, 0};
    init.point = s;
    return init;
  } else {
    throw std::invalid_argument("unknown --init '" + text + "'");
  }
  init.point = surface_minimizer(init.spec.a, init.spec.b, init.spec.c);
  return init;
}

std::vector<double> time_grid(double t_max, int samples) {
  if (samples < 2) throw std::invalid_argument("--samples must be >= 2");
  if (!(t_max > 0) || !std::isfinite(t_max)) throw std::invalid_argument("--t-max must be > 0");
  std::vector<double> t(samples);
  for (int i = 0; i < samples; ++i) t[i] = t_max * i / (samples - 1);
  return t;
}

TableArtifact compare_spectra(int n_particles, double v, const std::vector<double>& epsilons,
                              CompareSummary* summary) {
  TableArtifact t({"epsilon", "n", "E_exact", "E_semiclassical", "abs_error", "mean_spacing",
                   "local_spacing", "eta_E_exact", "eta_E_semiclassical", "e_bound_min",
                   "e_bound_max"});
  t.plot_y = {"E_exact", "E_semiclassical"};
  t.plot_group = "n";
  stamp(t, "compare", nullptr);
  t.set_meta("N", std::to_string(n_particles));
  t.set_meta("v", num(v));
  CompareSummary s;
  double mid_sum = 0, mid_sum_mf = 0;
  int mid_count = 0;
  for (double eps : epsilons) {
    const ModelParams p = make_params(eps, v, n_particles);
    const auto exact = exact_spectrum(hamiltonian_tridiagonal(p), false).values;
    const auto sc = quantize(p);
    const EnergyRange bounds = v == 0.0 ? EnergyRange{-std::abs(eps) / 2, std::abs(eps) / 2}
                                        : mf_energy_range(p);
    const int L = static_cast<int>(exact.size());
    const double mean = (exact.back() - exact.front()) / (L - 1);
    for (int n = 0; n < L; ++n) {
      double local;
      if (n == 0) local = exact[1] - exact[0];
      else if (n == L - 1) local = exact[L - 1] - exact[L - 2];
      else local = 0.5 * (exact[n + 1] - exact[n - 1]);
      const double E_sc = sc.levels[n].energy_mp;
      const double err = std::abs(E_sc - exact[n]);
      t.add_row({eps, double(n), exact[n], E_sc, err, mean, local, p.eta * exact[n],
                 sc.levels[n].energy_mf, bounds.min, bounds.max});
      s.max_abs_error = std::max(s.max_abs_error, err);
      if (mean > 0) s.max_error_over_mean_spacing = std::max(s.max_error_over_mean_spacing, err / mean);
      if (local > 0 && err / local > s.max_error_over_local_spacing) {
        s.max_error_over_local_spacing = err / local;
        s.worst_local_epsilon = eps;
        s.worst_local_level = n;
      }
      const double frac = double(n) / (L - 1);
      if (frac >= 0.25 && frac <= 0.75) {
        mid_sum += err;
        mid_sum_mf += err * p.eta;
        ++mid_count;
      }
      const double e = p.eta * exact[n];
      s.max_bound_violation =
          std::max({s.max_bound_violation, bounds.min - e, e - bounds.max});
    }
  }
  if (mid_count) {
    s.mid_mean_error = mid_sum / mid_count;
    s.mid_mean_error_mf = mid_sum_mf / mid_count;
  }
  t.set_meta("max_abs_error", num(s.max_abs_error));
  t.set_meta("max_error_over_mean_spacing", num(s.max_error_over_mean_spacing));
  t.set_meta("max_error_over_local_spacing", num(s.max_error_over_local_spacing));
  t.set_meta("mid_spectrum_mean_error", num(s.mid_mean_error));
  t.set_meta("max_bound_violation", num(s.max_bound_violation));
  if (summary) *summary = s;
  return t;
}

DosHistogram dos_histogram(const ModelParams& params, int bins) {
  if (bins < 3) throw std::invalid_argument("need at least 3 bins");
  const auto levels = exact_spectrum(hamiltonian_tridiagonal(params), false).values;
  const double lo = levels.front(), hi = levels.back();
  const double width = (hi - lo) / bins;
  std::vector<int> counts(bins, 0);
  for (double E : levels) {
    int k = static_cast<int>((E - lo) / width);
    counts[std::clamp(k, 0, bins - 1)]++;
  }
  DosHistogram h;
  h.excluded.assign(bins, false);
  h.excluded.front() = h.excluded.back() = true;
  const double e_sep = separatrix_energy(params);
  if (std::isfinite(e_sep)) {
    const double E_sep = e_sep / params.eta;
    std::vector<int> order(bins);
    std::iota(order.begin(), order.end(), 0);
    auto centre_dist = [&](int k) { return std::abs(lo + (k + 0.5) * width - E_sep); };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return centre_dist(a) < centre_dist(b); });
    h.excluded[order[0]] = h.excluded[order[1]] = true;
  }
  h.table = TableArtifact({"E_lo", "E_hi", "E_centre", "eta_E_centre", "count", "histogram_dn_dE",
                           "analytic_dn_dE_bin", "analytic_dn_dE_centre", "rel_deviation",
                           "excluded"});
  h.table.plot_x = "E_centre";
  h.table.plot_y = {"histogram_dn_dE", "analytic_dn_dE_bin"};
  for (int k = 0; k < bins; ++k) {
    const double a = lo + k * width, b = k == bins - 1 ? hi : lo + (k + 1) * width;
    const double c = 0.5 * (a + b);
    const double hist = counts[k] / width;
    const double model = mean_density_of_states(params.eta * a, params.eta * b, params);
    double centre = kNaN;
    try {
      centre = density_of_states(params.eta * c, params);
    } catch (const std::exception&) {
    }
    const double rel = model > 0 ? std::abs(hist - model) / model : kNaN;
    if (!h.excluded[k] && std::isfinite(rel)) h.max_rel_deviation = std::max(h.max_rel_deviation, rel);
    h.table.add_row({a, b, c, params.eta * c, double(counts[k]), hist, model, centre, rel,
                     h.excluded[k] ? 1.0 : 0.0});
  }
  stamp(h.table, "dos-histogram", &params);
  h.table.set_meta("bins", std::to_string(bins));
  h.table.set_meta("separatrix_e", num(e_sep));
  h.table.set_meta("max_rel_deviation", num(h.max_rel_deviation));
  return h;
}

double wkb_overlap(int level, const ModelParams& params, TableArtifact* table) {
  const auto exact = exact_spectrum(hamiltonian_tridiagonal(params), true);
  if (level < 0 || level >= static_cast<int>(exact.values.size())) {
    throw std::invalid_argument("level out of range");
  }
  const WKBState w = wkb_state(level, params);
  const Eigen::VectorXd ex = exact.vectors.col(level).cwiseAbs();
  double overlap = 0;
  for (int k = 0; k < ex.size(); ++k) overlap += ex[k] * w.amplitudes[k];
  if (table) {
    *table = TableArtifact({"m", "p", "exact_abs", "wkb", "unreliable"});
    table->plot_y = {"exact_abs", "wkb"};
    for (int k = 0; k < ex.size(); ++k) {
      table->add_row({w.m_values[k], params.eta * w.m_values[k], ex[k], w.amplitudes[k],
                      w.unreliable[k] ? 1.0 : 0.0});
    }
    stamp(*table, "wkb-state", &params);
    table->set_meta("level", std::to_string(level));
    table->set_meta("E_semiclassical", num(w.energy_mf / params.eta));
    table->set_meta("E_exact", num(exact.values[level]));
    table->set_meta("overlap", num(overlap));
  }
  return overlap;
}

TableArtifact coherent_surface(int n_particles, int samples, double* max_distance) {
  if (samples < 2) throw std::invalid_argument("--samples must be >= 2");
  const KzBasis basis = basis_states(n_particles);
  const Generators gens = build_generators(basis);
  const ModelParams p = make_params(0, 0, n_particles);
  TableArtifact t({"branch", "b", "a", "eta_kx", "eta_kz", "surface_distance"});
  t.plot_x = "eta_kx";
  t.plot_y = {"eta_kz"};
  t.plot_group = "branch";
  double worst = 0;
  for (int sign : {1, -1}) {
    for (int i = 0; i < samples; ++i) {
      const double b = -0.5 + double(i) / (samples - 1);
      const double a = sign * teardrop_radius(b);
      if (a == 0.0 && b == 0.0) continue;
      const auto vs = variational_ground_state({a, b, 0.0}, basis);
      const MomentSet m = observables(vs.state, gens, p);
      const double x = p.eta * m.kx, z = p.eta * m.kz;
      const double d = teardrop_section_distance(x, z);
      worst = std::max(worst, d);
      t.add_row({double(sign), b, a, x, z, d});
    }
  }
  stamp(t, "coherent-surface", nullptr);
  t.set_meta("N", std::to_string(n_particles));
  t.set_meta("eta", num(p.eta));
  t.set_meta("max_surface_distance", num(worst));
  if (max_distance) *max_distance = worst;
  return t;
}

namespace {

struct Options {
  int n = 20;
  double epsilon = 0;
  double v = 1;
  std::string out;
  std::string format = "csv";
  double t_max = 20;
  int samples = 401;
  std::string init = "ground-kx";
  std::string sweep;
  int level = 0;
  std::optional<double> energy;
  std::string figure;
  int bins = 40;
  std::optional<int> n_override;
  std::optional<double> epsilon_override;
};

void add_common(CLI::App* sub, Options& o, bool with_n = true, bool with_model = true) {
  if (with_n) sub->add_option("--n", o.n, "particle number (even, >= 2)")->capture_default_str();
  if (with_model) {
    sub->add_option("--epsilon", o.epsilon, "detuning")->capture_default_str();
    sub->add_option("--v", o.v, "conversion coupling")->capture_default_str();
  }
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--format", o.format, "csv | json | svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
}

void add_trajectory(CLI::App* sub, Options& o) {
  sub->add_option("--t-max", o.t_max, "final time")->capture_default_str();
  sub->add_option("--samples", o.samples, "number of output times")->capture_default_str();
  sub->add_option("--init", o.init,
                  "ground-kx | ground-minus-kx | ground-kz | ground-minus-kz | bloch:x,y,z")
      ->capture_default_str();
}

void add_sweep(CLI::App* sub, Options& o) {
  sub->add_option("--epsilon-range", o.sweep, "a:b:steps");
}

void check_writable(const std::string& path) {
  if (path.empty() || path == "-") return;
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw UsageError("output path '" + path + "' is not writable");
}

TableArtifact cmd_spectrum(const ModelParams& p) {
  const auto values = exact_spectrum(hamiltonian_tridiagonal(p), false).values;
  TableArtifact t({"n", "E", "eta_E"});
  t.plot_y = {"E"};
  for (std::size_t k = 0; k < values.size(); ++k) t.add_row({double(k), values[k], p.eta * values[k]});
  stamp(t, "spectrum", &p);
  return t;
}

TableArtifact cmd_kx_spectrum(int n) {
  const KzBasis basis = basis_states(n);
  const Generators g = build_generators(basis);
  const auto kx = exact_spectrum(g.kx, false).values;
  const auto ky = exact_spectrum(g.ky, false).values;
  const double eta = semiclassical_eta(n);
  TableArtifact t({"n", "kx", "ky", "eta_kx"});
  for (std::size_t k = 0; k < kx.size(); ++k) t.add_row({double(k), kx[k], ky[k], eta * kx[k]});
  stamp(t, "kx-spectrum", nullptr);
  t.set_meta("N", std::to_string(n));
  return t;
}

TableArtifact cmd_sweep_spectrum(int n, double v, const EpsilonSweep& sw) {
  TableArtifact t({"epsilon", "n", "E", "eta_E"});
  t.plot_y = {"E"};
  t.plot_group = "n";
  for (double eps : sw.values()) {
    const ModelParams p = make_params(eps, v, n);
    const auto values = exact_spectrum(hamiltonian_tridiagonal(p), false).values;
    for (std::size_t k = 0; k < values.size(); ++k) {
      t.add_row({eps, double(k), values[k], p.eta * values[k]});
    }
  }
  stamp(t, "sweep-spectrum", nullptr);
  t.set_meta("N", std::to_string(n));
  t.set_meta("v", num(v));
  return t;
}

TableArtifact cmd_quantize(const ModelParams& p) {
  const auto sc = quantize(p);
  const auto exact = exact_spectrum(hamiltonian_tridiagonal(p), false).values;
  TableArtifact t({"n", "E_semiclassical", "eta_E_semiclassical", "action", "E_exact", "abs_error"});
  for (const auto& lvl : sc.levels) {
    t.add_row({double(lvl.n), lvl.energy_mp, lvl.energy_mf, lvl.action, exact[lvl.n],
               std::abs(lvl.energy_mp - exact[lvl.n])});
  }
  stamp(t, "quantize", &p);
  return t;
}

TableArtifact cmd_dos(const ModelParams& p, int samples) {
  if (p.v == 0.0) throw UsageError("dos needs v != 0");
  if (samples < 3) throw UsageError("--samples must be >= 3");
  const EnergyRange r = mf_energy_range(p);
  TableArtifact t({"e", "E", "period", "dn_dE"});
  for (int i = 0; i < samples; ++i) {
    const double e = r.min + (r.max - r.min) * i / (samples - 1);
    const double T = period(e, p);
    t.add_row({e, e / p.eta, T, T / (2 * std::numbers::pi)});
  }
  stamp(t, "dos", &p);
  t.set_meta("separatrix_e", num(separatrix_energy(p)));
  return t;
}

TableArtifact cmd_period(const ModelParams& p, std::optional<double> energy, int samples) {
  if (p.v == 0.0) throw UsageError("period needs v != 0");
  TableArtifact t({"e", "period"});
  if (energy) {
    t.add_row({*energy, period(*energy, p)});
  } else {
    if (samples < 2) throw UsageError("--samples must be >= 2");
    const EnergyRange r = mf_energy_range(p);
    for (int i = 0; i < samples; ++i) {
      const double e = r.min + (r.max - r.min) * i / (samples - 1);
      t.add_row({e, period(e, p)});
    }
  }
  stamp(t, "period", &p);
  return t;
}

TableArtifact cmd_fixed_points(double v, const std::vector<double>& epsilons) {
  TableArtifact t({"epsilon", "sx", "sy", "sz", "energy", "stability", "tip"});
  t.plot_y = {"energy"};
  for (double eps : epsilons) {
    const ModelParams p = make_params(eps, v, 2);
    for (const auto& fp : fixed_points(p)) {
      t.add_row({eps, fp.location.sx, fp.location.sy, fp.location.sz, fp.energy,
                 stability_code(fp.stability), fp.location.sz <= -0.5 + 1e-12 ? 1.0 : 0.0});
    }
  }
  stamp(t, "fixed-points", nullptr);
  t.set_meta("v", num(v));
  t.set_meta("stability_codes", "0=elliptic 1=saddle 2=degenerate");
  return t;
}

TableArtifact cmd_mf_trajectory(const ModelParams& p, const InitialCondition& init,
                                const std::vector<double>& times) {
  const Trajectory tr = integrate_trajectory(init.point, times, p);
  TableArtifact t({"t", "sx", "sy", "sz", "energy", "surface_residual"});
  t.plot_y = {"sx", "sy", "sz"};
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    const auto& s = tr.points[i];
    t.add_row({tr.times[i], s.sx, s.sy, s.sz, mf_energy(s, p), surface_residual(s)});
  }
  stamp(t, "mf-trajectory", &p);
  t.set_meta("init", init.name);
  t.set_meta("energy_drift", num(tr.energy_drift));
  t.set_meta("surface_drift", num(tr.surface_drift));
  return t;
}

}  // namespace

TableArtifact mp_trajectory_table(const ModelParams& p, const InitialCondition& init,
                                  const std::vector<double>& times) {
  const KzBasis basis = basis_states(p.n_particles);
  const Generators gens = build_generators(basis);
  const auto vs = variational_ground_state(init.spec, basis);
  const auto states = evolve_state(build_hamiltonian(p), vs.state, times);
  const Trajectory mf = integrate_trajectory(init.point, times, p);
  TableArtifact t({"t", "eta_kx", "eta_ky", "eta_kz", "energy", "norm", "mf_sx", "mf_sy", "mf_sz"});
  t.plot_y = {"eta_kx", "eta_kz", "mf_sx", "mf_sz"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const MomentSet m = observables(states[i], gens, p);
    t.add_row({times[i], p.eta * m.kx, p.eta * m.ky, p.eta * m.kz, m.energy,
               states[i].amplitudes.norm(), mf.points[i].sx, mf.points[i].sy, mf.points[i].sz});
  }
  stamp(t, "mp-trajectory", &p);
  t.set_meta("init", init.name);
  t.set_meta("variational_gap", num(vs.gap));
  return t;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Atom-molecule conversion: exact, mean-field and semiclassical spectra"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  Options o;

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of H = eps K_z + v K_x");
  add_common(spectrum, o);
  auto* kx = app.add_subcommand("kx-spectrum", "eigenvalues of K_x (and K_y)");
  add_common(kx, o, true, false);
  auto* sweep = app.add_subcommand("sweep-spectrum", "spectrum over an epsilon sweep");
  add_common(sweep, o);
  add_sweep(sweep, o);
  auto* quant = app.add_subcommand("quantize", "semiclassical levels from the enclosed area");
  add_common(quant, o);
  auto* dos = app.add_subcommand("dos", "density of states T/2pi over the energy range");
  add_common(dos, o);
  dos->add_option("--samples", o.samples, "energy samples")->capture_default_str();
  auto* per = app.add_subcommand("period", "mean-field orbit period");
  add_common(per, o);
  per->add_option("--energy", o.energy, "rescaled energy e = eta E (default: grid)");
  per->add_option("--samples", o.samples, "energy samples")->capture_default_str();
  auto* fps = app.add_subcommand("fixed-points", "mean-field fixed points and stability");
  add_common(fps, o, false, true);
  add_sweep(fps, o);
  auto* mft = app.add_subcommand("mf-trajectory", "mean-field trajectory on the teardrop");
  add_common(mft, o, false, true);
  add_trajectory(mft, o);
  auto* mpt = app.add_subcommand("mp-trajectory", "exact many-particle expectation values");
  add_common(mpt, o);
  add_trajectory(mpt, o);
  auto* wkb = app.add_subcommand("wkb-state", "WKB envelope against the exact eigenvector");
  add_common(wkb, o);
  wkb->add_option("--level", o.level, "level index n")->capture_default_str();
  auto* coh = app.add_subcommand("coherent-surface", "variational states against the teardrop");
  add_common(coh, o, true, false);
  coh->add_option("--samples", o.samples, "b samples per branch")->capture_default_str();
  auto* cmp = app.add_subcommand("compare", "exact vs semiclassical levels over a sweep");
  add_common(cmp, o);
  add_sweep(cmp, o);
  auto* fig = app.add_subcommand("figure", "write figure data presets fig1..fig9");
  fig->add_option("id", o.figure, "fig1 .. fig9")->required();
  fig->add_option("--out", o.out, "output directory")->capture_default_str();
  fig->add_option("--format", o.format, "csv | json | svg")
      ->check(CLI::IsMember({"csv", "json", "svg"}))
      ->capture_default_str();
  fig->add_option("--n", o.n_override, "override the particle number");
  fig->add_option("--epsilon", o.epsilon_override, "restrict to one epsilon value");
  fig->add_option("--bins", o.bins, "histogram bins (fig8)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format format = parse_format(o.format);
    auto params = [&] { return make_params(o.epsilon, o.v, o.n); };
    auto sweep_values = [&](CLI::App* sub) {
      if (sub->count("--epsilon-range")) return parse_sweep(o.sweep).values();
      return std::vector<double>{o.epsilon};
    };
    if (*fig) {
      FigureOptions fo;
      fo.out_dir = o.out.empty() ? "." : o.out;
      fo.format = format;
      fo.n_override = o.n_override;
      fo.epsilon_override = o.epsilon_override;
      fo.bins = o.bins;
      std::error_code ec;
      std::filesystem::create_directories(fo.out_dir, ec);
      if (!std::filesystem::is_directory(fo.out_dir)) {
        throw UsageError("cannot create output directory '" + fo.out_dir + "'");
      }
      for (const auto& f : write_figure(o.figure, fo)) std::cout << f << '\n';
      return 0;
    }
    check_writable(o.out);
    TableArtifact t;
    if (*spectrum) {
      t = cmd_spectrum(params());
    } else if (*kx) {
      t = cmd_kx_spectrum(o.n);
    } else if (*sweep) {
      const EpsilonSweep sw = sweep->count("--epsilon-range") ? parse_sweep(o.sweep)
                                                              : EpsilonSweep{};
      make_params(0, o.v, o.n);  // validate N before the loop
      t = cmd_sweep_spectrum(o.n, o.v, sw);
    } else if (*quant) {
      t = cmd_quantize(params());
    } else if (*dos) {
      t = cmd_dos(params(), o.samples);
    } else if (*per) {
      t = cmd_period(params(), o.energy, o.samples);
    } else if (*fps) {
      t = cmd_fixed_points(o.v, sweep_values(fps));
    } else if (*mft) {
      t = cmd_mf_trajectory(make_params(o.epsilon, o.v, 2), parse_init(o.init),
                            time_grid(o.t_max, o.samples));
    } else if (*mpt) {
      t = mp_trajectory_table(params(), parse_init(o.init), time_grid(o.t_max, o.samples));
    } else if (*wkb) {
      wkb_overlap(o.level, params(), &t);
    } else if (*coh) {
      t = coherent_surface(o.n, o.samples);
    } else if (*cmp) {
      make_params(0, o.v, o.n);
      const auto eps = cmp->count("--epsilon-range") ? parse_sweep(o.sweep).values()
                                                      : std::vector<double>{o.epsilon};
      t = compare_spectra(o.n, o.v, eps);
    }
    write_table(t, o.out, format);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("amconv");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace amconv::cli
