#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "amconv/many_particle.hpp"
#include "amconv/mean_field.hpp"
#include "amconv/model.hpp"
#include "amconv/semiclassics.hpp"

namespace py = pybind11;
using namespace amconv;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> bloch_rows(const std::vector<BlochPoint>& pts) {
  py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{3}});
  auto m = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m(i, 0) = pts[i].sx;
    m(i, 1) = pts[i].sy;
    m(i, 2) = pts[i].sz;
  }
  return out;
}

BlochPoint to_bloch(const std::array<double, 3>& s) { return make_bloch_point(s[0], s[1], s[2], 1e-8); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Atom-molecule conversion: exact, mean-field and semiclassical spectra and dynamics";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<ModelParams>(m, "ModelParams")
      .def_readonly("epsilon", &ModelParams::epsilon)
      .def_readonly("v", &ModelParams::v)
      .def_readonly("n_particles", &ModelParams::n_particles)
      .def_readonly("eta", &ModelParams::eta)
      .def_property_readonly("dimension", &ModelParams::dimension)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(epsilon=" + std::to_string(p.epsilon) + ", v=" + std::to_string(p.v) +
               ", n_particles=" + std::to_string(p.n_particles) + ")";
      });

  m.def("make_params", &make_params, py::arg("epsilon"), py::arg("v"), py::arg("n_particles"));
  m.def("teardrop_radius", &teardrop_radius, py::arg("p"));

  m.def(
      "exact_spectrum",
      [](const ModelParams& p) { return to_array(exact_spectrum(hamiltonian_tridiagonal(p), false).values); },
      py::arg("params"), "Ascending eigenvalues of the many-particle Hamiltonian.");
  m.def(
      "exact_eigenvectors",
      [](const ModelParams& p) {
        const auto s = exact_spectrum(hamiltonian_tridiagonal(p), true);
        const int d = static_cast<int>(s.values.size());
        py::array_t<std::complex<double>> v({d, d});
        auto w = v.mutable_unchecked<2>();
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) w(i, j) = s.vectors(i, j);
        return py::make_tuple(to_array(s.values), v);
      },
      py::arg("params"), "(values, vectors) with eigenvectors in columns, K_z basis ascending.");
  m.def(
      "kx_spectrum",
      [](int n) {
        const auto g = build_generators(basis_states(n));
        return to_array(exact_spectrum(g.kx, false).values);
      },
      py::arg("n_particles"));

  m.def(
      "quantize",
      [](const ModelParams& p) {
        const auto s = quantize(p);
        std::vector<double> mp, mf;
        for (const auto& l : s.levels) {
          mp.push_back(l.energy_mp);
          mf.push_back(l.energy_mf);
        }
        return py::make_tuple(to_array(mp), to_array(mf));
      },
      py::arg("params"), "Semiclassical levels as (E, eta*E).");
  m.def("action", &action, py::arg("e"), py::arg("params"));
  m.def("period", &period, py::arg("e"), py::arg("params"));
  m.def("density_of_states", &density_of_states, py::arg("e"), py::arg("params"));
  m.def("elliptic_k", &elliptic_k, py::arg("m"));
  m.def("separatrix_energy", &separatrix_energy, py::arg("params"));
  m.def(
      "turning_points",
      [](double e, const ModelParams& p) {
        const auto tp = turning_points(e, p);
        return py::make_tuple(tp.p_minus, tp.p_plus);
      },
      py::arg("e"), py::arg("params"));
  m.def(
      "energy_range",
      [](const ModelParams& p) {
        const auto r = mf_energy_range(p);
        return py::make_tuple(r.min, r.max);
      },
      py::arg("params"));

  m.def(
      "fixed_points",
      [](const ModelParams& p) {
        py::list out;
        for (const auto& f : fixed_points(p)) {
          py::dict d;
          d["location"] = py::make_tuple(f.location.sx, f.location.sy, f.location.sz);
          d["energy"] = f.energy;
          d["stability"] = std::string(to_string(f.stability));
          out.append(d);
        }
        return out;
      },
      py::arg("params"));

  m.def(
      "mf_trajectory",
      [](const std::array<double, 3>& s0, double t_max, int samples, const ModelParams& p, double tol) {
        const auto tr = integrate_trajectory(to_bloch(s0), t_max, samples, p, tol);
        return py::make_tuple(to_array(tr.times), bloch_rows(tr.points));
      },
      py::arg("s0"), py::arg("t_max"), py::arg("samples"), py::arg("params"), py::arg("tol") = 1e-10,
      "Mean-field path on the teardrop; returns (times, points[samples, 3]).");

  m.def(
      "mp_trajectory",
      [](const std::array<double, 3>& spec, const std::vector<double>& times, const ModelParams& p) {
        const KzBasis basis = basis_states(p.n_particles);
        const auto g = build_generators(basis);
        const auto start = variational_ground_state({spec[0], spec[1], spec[2]}, basis).state;
        const auto states = evolve_state(build_hamiltonian(p), start, times);
        std::vector<BlochPoint> rows;
        for (const auto& s : states) {
          const auto o = observables(s, g, p);
          rows.push_back({p.eta * o.kx, p.eta * o.ky, p.eta * o.kz});
        }
        return bloch_rows(rows);
      },
      py::arg("spec"), py::arg("times"), py::arg("params"),
      "eta * (<K_x>, <K_y>, <K_z>) along exact evolution from the ground state of a K_x + b K_z + c K_y.");

  m.def(
      "wkb_state",
      [](int level, const ModelParams& p) {
        const auto w = wkb_state(level, p);
        return py::make_tuple(to_array(w.m_values), to_array(w.amplitudes));
      },
      py::arg("level"), py::arg("params"));
}
