// Adaptive Runge-Kutta-Fehlberg 7(8) driver shared by the mean-field flows.
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/numeric/odeint.hpp>

namespace amconv::detail {

/// Integrates dy/dt = rhs(y) and returns y at each of `times` (ascending,
/// times[0] is the initial time). Throws std::runtime_error when the step
/// size controller stalls.
template <std::size_t K, class Rhs>
std::vector<std::array<double, K>> integrate_at(const Rhs& rhs,
                                                std::array<double, K> y0,
                                                std::span<const double> times,
                                                double tol, int max_steps = 500000) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, K>;

  std::vector<State> out;
  out.reserve(times.size());
  if (times.empty()) return out;
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] >= times[i - 1])) {
      throw std::invalid_argument("sample times must be non-decreasing");
    }
  }

  auto system = [&rhs](const State& y, State& dydt, double /*t*/) { dydt = rhs(y); };
  auto observer = [&out](const State& y, double /*t*/) { out.push_back(y); };
  auto stepper =
      odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());

  const double span = times.back() - times.front();
  const double dt0 = span > 0 ? std::min(1e-3, span / 16) : 1e-3;
  try {
    odeint::integrate_times(stepper, system, y0, times.begin(), times.end(), dt0,
                            observer, odeint::max_step_checker(max_steps));
  } catch (const odeint::odeint_error& err) {
    std::ostringstream msg;
    msg << "adaptive integrator failed after " << out.size() << " of "
        << times.size() << " samples (state";
    for (double c : y0) msg << ' ' << c;
    msg << "): " << err.what();
    throw std::runtime_error(msg.str());
  }
  return out;
}

}  // namespace amconv::detail
