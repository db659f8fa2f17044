#include "nsh/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace nsh {

std::string to_string(FibrationClass c) {
  switch (c) {
    case FibrationClass::Monotonous: return "monotonous";
    case FibrationClass::Degenerate: return "degenerate";
    case FibrationClass::NonMonotonous: return "non-monotonous";
  }
  return "?";
}

FibrationData classify_qbd(double Q, double B0, double D, const Params& p) {
  if (!(Q > 0.0)) throw std::invalid_argument("fibration: Q must be positive (zero field?)");
  FibrationData f;
  f.sign_flipped = B0 < 0.0;
  f.B0 = std::abs(B0);
  f.Q = Q;
  f.D = D;
  f.B = p.beta * f.B0;

  if (f.B0 > 0.0 && D > 0.0) {
    f.I = f.B0 / std::sqrt(Q * D);
    f.s = p.beta * f.I / 2.0;
  }

  // int v^3 = 0: no positive critical points, monotonous by convention
  if (!(f.B > 0.0) || !(D > 0.0)) {
    f.classification = FibrationClass::Monotonous;
    return f;
  }

  const double disc = f.B * f.B - 4.0 * Q * D;
  const double rel = disc / (f.B * f.B + 4.0 * Q * D);
  if (std::abs(rel) <= 1e-12) {
    f.classification = FibrationClass::Degenerate;
    const double t = f.B / (2.0 * D);
    f.t1 = f.t2 = t;
    f.H_at_t1 = f.H_at_t2 = f.H_at(t);
    return f;
  }
  if (rel < 0.0) {
    f.classification = FibrationClass::Monotonous;
    return f;
  }
  f.classification = FibrationClass::NonMonotonous;
  const double sq = std::sqrt(disc);
  f.t1 = (f.B - sq) / (2.0 * D);
  f.t2 = (f.B + sq) / (2.0 * D);
  f.ridge_t = f.t1;
  f.H_at_t1 = f.H_at(*f.t1);
  f.H_at_t2 = f.H_at(*f.t2);
  f.f_s = f_of_s(*f.s);
  f.E_ridge = Q * Q * Q / (3.0 * p.beta * p.beta * f.B0 * f.B0) * (*f.f_s);
  return f;
}

FibrationData fibration_classify(const SpectralField& v, const Params& p) {
  const double Q = quadratic_form_Q(v, p);
  if (!(Q > 0.0)) throw std::invalid_argument("fibration_classify: zero field");
  const double B0 = integral_power(v, 3);
  const double D = integral_power(v, 4);
  return classify_qbd(Q, B0, D, p);
}

double energy_E(const SpectralField& u, const Params& p) {
  const double Q = quadratic_form_Q(u, p);
  const double B0 = integral_power(u, 3);
  const double D = integral_power(u, 4);
  return Q / 2.0 - p.beta * B0 / 3.0 + D / 4.0;
}

double functional_L(const SpectralField& u, const Params& p) {
  return quadratic_form_Q(u, p) - p.beta * integral_power(u, 3) + integral_power(u, 4);
}

double functional_H(const SpectralField& u, const Params& p) {
  return 2.0 * quadratic_form_Q(u, p) - 3.0 * p.beta * integral_power(u, 3) +
         4.0 * integral_power(u, 4);
}

double functional_K0(const SpectralField& u, const Params& p) {
  return p.beta * integral_power(u, 3) / 6.0 - integral_power(u, 4) / 4.0;
}

double functional_K1(const SpectralField& u, const Params& p) {
  return p.beta * integral_power(u, 3) / 2.0 - integral_power(u, 4);
}

double functional_I(const SpectralField& v, const Params& p) {
  const double Q = quadratic_form_Q(v, p);
  if (!(Q > 0.0)) throw std::invalid_argument("functional_I: zero field");
  const double B0 = integral_power(v, 3);
  if (B0 == 0.0) return 0.0;
  const double D = integral_power(v, 4);
  return B0 / std::sqrt(Q * D);
}

SpectralField gradient_dE(const SpectralField& u, const Params& p) {
  auto vals = u.grid_values();
  for (double& x : vals) x = -p.beta * x * x + x * x * x;
  auto nl = u.basis().from_grid(vals);
  const auto& modes = u.basis().modes();
  const auto& c = u.coeffs();
  for (size_t j = 0; j < nl.size(); ++j) {
    const double d = modes[j].mu - 1.0;
    nl[j] += (d * d - p.alpha) * c[j];
  }
  return SpectralField(u.basis_ptr(), std::move(nl));
}

double f_of_s(double s) {
  if (!(s >= 1.0)) throw std::invalid_argument("f_of_s: s must be >= 1");
  const double w = std::sqrt((s - 1.0) * (s + 1.0)) / s;
  const double one_w = 1.0 + w;
  return (1.0 + 3.0 * w) / (one_w * one_w * one_w);
}

RidgeFormula ridge_energy_formula(const SpectralField& v, const Params& p) {
  auto f = fibration_classify(v, p);
  if (f.sign_flipped)
    throw std::invalid_argument("ridge_energy_formula: int v^3 must be positive");
  if (f.classification != FibrationClass::NonMonotonous)
    throw std::invalid_argument("ridge_energy_formula: fibration is not non-monotonous");
  return {*f.ridge_t, *f.E_ridge};
}

CoercivityReport coercivity_check(const SpectralField& v, const Params& p,
                                  int grid_points) {
  CoercivityReport r;
  auto f = fibration_classify(v, p);
  r.classification = f.classification;
  r.applies = true;
  if (f.classification == FibrationClass::Monotonous) {
    const double E = f.phi(1.0);
    r.monotonous_slack = E - f.Q / 18.0;
    r.passed = r.monotonous_slack >= -1e-12 * f.Q;
    return r;
  }
  // ridge case: project onto the ridge (or the degenerate double root), then
  // sample E[t u] - Q[t u]/12 over t in [0, 1]
  const double tt = f.classification == FibrationClass::Degenerate ? *f.t1 : *f.ridge_t;
  double min_slack = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = tt * static_cast<double>(i) / (grid_points - 1);
    const double slack = f.phi(t) - f.Q * t * t / 12.0;
    if (i == 0 || slack < min_slack) min_slack = slack;
  }
  r.min_ridge_slack = min_slack;
  r.passed = min_slack >= -1e-12 * f.Q * tt * tt;
  return r;
}

}  // namespace nsh
