#pragma once

#include <optional>
#include <string>

#include "nsh/field.hpp"

namespace nsh {

enum class FibrationClass { Monotonous, Degenerate, NonMonotonous };

std::string to_string(FibrationClass c);

// Data of the quartic fibration phi_v(t) = E[t v] = Q t^2/2 - B t^3/3 + D t^4/4
// with Q = Q[v], B = beta*int v^3, D = int v^4, after the sign of v has been
// normalized so that int v^3 >= 0.
struct FibrationData {
  double Q = 0.0;
  double B0 = 0.0;  // int v^3 (after sign normalization)
  double D = 0.0;   // int v^4
  double B = 0.0;   // beta * B0
  bool sign_flipped = false;
  FibrationClass classification = FibrationClass::Monotonous;
  std::optional<double> t1, t2;   // Nehari scaling factors, t1 <= t2
  std::optional<double> ridge_t;  // = t1 (minus-sign root)
  double I = 0.0;                 // int v^3 / sqrt(Q int v^4); 0 when B0 = 0
  std::optional<double> s;        // beta * I / 2, when B0 > 0
  std::optional<double> f_s;      // f(s), when non-monotonous
  std::optional<double> E_ridge;  // Q^3/(3 beta^2 B0^2) * f(s)
  std::optional<double> H_at_t1, H_at_t2;

  // fibration polynomials
  double phi(double t) const { return Q * t * t / 2 - B * t * t * t / 3 + D * t * t * t * t / 4; }
  double L_at(double t) const { return Q * t * t - B * t * t * t + D * t * t * t * t; }
  double H_at(double t) const { return 2 * Q * t * t - 3 * B * t * t * t + 4 * D * t * t * t * t; }
  double K0_at(double t) const { return B * t * t * t / 6 - D * t * t * t * t / 4; }
  double K1_at(double t) const { return B * t * t * t / 2 - D * t * t * t * t; }
};

// Classification from raw (Q, int v^3, int v^4).
FibrationData classify_qbd(double Q, double B0, double D, const Params& p);

// Computes Q, B0, D of the field and classifies; flips sign when int v^3 < 0.
FibrationData fibration_classify(const SpectralField& v, const Params& p);

// Energy and derived functionals.
double energy_E(const SpectralField& u, const Params& p);
double functional_L(const SpectralField& u, const Params& p);
double functional_H(const SpectralField& u, const Params& p);
double functional_K0(const SpectralField& u, const Params& p);
double functional_K1(const SpectralField& u, const Params& p);

// Scale-invariant ratio I[v] = int v^3 / sqrt(Q[v] int v^4); I[tv] = sign(t) I[v].
double functional_I(const SpectralField& v, const Params& p);

// Riesz representer of dE[u] in coefficient space:
// g_j = ((mu_j-1)^2 - alpha) c_j + coeff_j(-beta u^2 + u^3).
SpectralField gradient_dE(const SpectralField& u, const Params& p);

// f(s) = (1 + 3 w)/(1 + w)^3 with w = sqrt(1 - s^{-2}), evaluated stably via
// w = sqrt((s-1)(s+1))/s; domain s >= 1; f(1) = 1, f -> 1/2.
double f_of_s(double s);

// Ridge scaling factor and energy by the closed form
// E[t~ v] = Q^3/(3 beta^2 (int v^3)^2) * f(beta I / 2).
struct RidgeFormula {
  double t_ridge;
  double energy;
};
RidgeFormula ridge_energy_formula(const SpectralField& v, const Params& p);

// Coercivity report: E >= Q/18 for monotonous directions; E[t v~] >= Q[t v~]/12
// on a t-grid in [0,1] after ridge projection.
struct CoercivityReport {
  FibrationClass classification;
  bool applies = false;            // false when B0 = 0 edge conventions kick in
  double monotonous_slack = 0.0;   // E - Q/18 (monotonous case)
  double min_ridge_slack = 0.0;    // min over grid of E[t u] - Q[t u]/12
  bool passed = false;
};
CoercivityReport coercivity_check(const SpectralField& v, const Params& p,
                                  int grid_points = 11);

}  // namespace nsh
