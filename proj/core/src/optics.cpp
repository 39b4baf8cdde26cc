// Copyright 2026 The eitsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eitsim/optics.hpp"

#include <algorithm>
#include <cmath>

#include "eitsim/error.hpp"
#include "eitsim/steadystate.hpp"

namespace eitsim {
namespace {

void require_gamma21(double gamma21) {
  if (!(gamma21 > 0.0) || !std::isfinite(gamma21)) {
    throw ValidationError("gamma21 must be positive");
  }
}

template <typename F>
SpectralCurve tabulate(const std::vector<double>& nu, F&& f) {
  SpectralCurve c;
  c.axis = nu;
  c.chi.reserve(nu.size());
  for (double v : nu) c.chi.push_back(f(v));
  return c;
}

// Nonuniform three-point derivative at i from neighbours i - s and i + s.
double central(const std::vector<double>& x, const std::vector<double>& y, std::size_t i,
               std::size_t s) {
  const double h1 = x[i] - x[i - s];
  const double h2 = x[i + s] - x[i];
  return (h1 * h1 * y[i + s] - h2 * h2 * y[i - s] + (h2 * h2 - h1 * h1) * y[i]) /
         (h1 * h2 * (h1 + h2));
}

}  // namespace

SpectralCurve susceptibility_two_level(const std::vector<double>& nu_a, double gamma21) {
  require_gamma21(gamma21);
  return tabulate(nu_a, [&](double v) {
    return gamma21 * qss_two_level(1.0, v, gamma21, 0.0).element(2);
  });
}

SpectralCurve susceptibility_three_level(const std::vector<double>& nu_a, double nu_b,
                                         Complex omega_b, double gamma21, double gamma31) {
  require_gamma21(gamma21);
  return tabulate(nu_a, [&](double v) {
    return gamma21 * qss_three_level(1.0, omega_b, v, nu_b, gamma21, gamma31).element(2);
  });
}

SpectralCurve susceptibility_four_level(const std::vector<double>& nu_a, double nu_b,
                                        double nu_c, Complex omega_b, Complex omega_c,
                                        double gamma21, double gamma31, double gamma41) {
  require_gamma21(gamma21);
  return tabulate(nu_a, [&](double v) {
    return gamma21 * qss_four_level(1.0, omega_b, omega_c, v, nu_b, nu_c, gamma21, gamma31,
                                    gamma41)
                         .element(2);
  });
}

SpectralCurve kerr_susceptibility_shape(const std::vector<double>& nu_a, double nu_b,
                                        double nu_c, Complex omega_b, double gamma21,
                                        double gamma31, double gamma41) {
  require_gamma21(gamma21);
  const double b2 = std::norm(omega_b);
  SpectralCurve c = tabulate(nu_a, [&](double v) {
    const Complex d2(v, gamma21), d3(v - nu_b, gamma31), d4(v - nu_b + nu_c, gamma41);
    const Complex q = d2 * d3 - b2;
    const Complex den = d4 * q * q;
    if (den == 0.0) throw NumericalError("singular parameters");
    return -gamma21 * b2 / den;
  });
  c.normalization = "d chi / d|Omega_c|^2 at Omega_c = 0";
  return c;
}

double transparency_fwhm(Complex omega_b, double gamma21) {
  if (!(gamma21 >= 0.0)) throw ValidationError("transparency_fwhm: gamma21 must be >= 0");
  const double b2 = std::norm(omega_b);
  if (b2 == 0.0) return 0.0;
  return 4.0 * b2 / (std::sqrt(4.0 * b2 + gamma21 * gamma21) + gamma21);
}

ResonantDiagnostics resonant_diagnostics(Complex omega_b, double gamma21, double gamma31) {
  require_gamma21(gamma21);
  if (!(gamma31 >= 0.0)) throw ValidationError("resonant_diagnostics: gamma31 must be >= 0");
  const double b2 = std::norm(omega_b);
  const double g = gamma21 * gamma31;
  ResonantDiagnostics r;
  const double s = b2 + g;
  if (s == 0.0) {
    r.kappa_ratio = 1.0;
    r.dispersion_shape = -1.0 / gamma21;
  } else {
    r.kappa_ratio = g / s;
    r.dispersion_shape = gamma21 * (b2 - gamma31 * gamma31) / (s * s);
  }
  r.optimal_omega_b = std::sqrt(g + 2.0 * gamma31 * gamma31);
  return r;
}

EtaKappa eta_kappa(const SpectralCurve& curve, double scale) {
  if (curve.axis.size() != curve.chi.size()) {
    throw ValidationError("eta_kappa: axis and chi lengths differ");
  }
  if (!std::isfinite(scale)) throw ValidationError("eta_kappa: scale must be finite");
  const std::size_t n = curve.axis.size();
  EtaKappa out;
  out.eta.resize(n);
  out.kappa.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex chi = scale * curve.chi[i];
    const double e2 = 1.0 + chi.real();
    if (!(e2 > 0.0)) throw ValidationError("unphysical susceptibility magnitude");
    out.eta[i] = std::sqrt(e2);
    out.kappa[i] = chi.imag() / out.eta[i];
  }
  out.deta_dnu.assign(n, 0.0);
  if (n < 2) return out;
  const auto& x = curve.axis;
  for (std::size_t i = 1; i + 1 < n; ++i) out.deta_dnu[i] = central(x, out.eta, i, 1);
  out.deta_dnu[0] = (out.eta[1] - out.eta[0]) / (x[1] - x[0]);
  out.deta_dnu[n - 1] = (out.eta[n - 1] - out.eta[n - 2]) / (x[n - 1] - x[n - 2]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double coarse = central(x, out.eta, i, 2);
    out.derivative_error =
        std::max(out.derivative_error, std::abs(out.deta_dnu[i] - coarse) / 3.0);
  }
  return out;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step) || step <= 0.0 ||
      stop < start) {
    throw ValidationError("grid: need finite start <= stop and step > 0");
  }
  const double count = std::floor((stop - start) / step + 1e-9);
  if (count > 1e8) throw ValidationError("grid: too many points");
  std::vector<double> g;
  const auto n = static_cast<std::size_t>(count);
  g.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.push_back(start + static_cast<double>(i) * step);
  return g;
}

}  // namespace eitsim
