#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nsh/basis.hpp"

namespace nsh {

// PDE parameters of the stationary problem (Delta+1)^2 u - alpha u - beta u^2 + u^3 = 0.
struct Params {
  double alpha;
  double beta;
  Params(double a, double b);
};

// A function on the domain stored by its coefficients in the orthonormal
// eigenbasis. Value semantics; basis shared.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(std::shared_ptr<const Basis> basis, std::vector<double> coeffs);
  static SpectralField zero(std::shared_ptr<const Basis> basis);
  static SpectralField constant(std::shared_ptr<const Basis> basis, double value);

  const Basis& basis() const { return *basis_; }
  std::shared_ptr<const Basis> basis_ptr() const { return basis_; }
  const std::vector<double>& coeffs() const { return c_; }
  std::vector<double>& coeffs() { return c_; }

  std::vector<double> grid_values() const { return basis_->to_grid(c_); }

  double norm_l2() const;  // = sqrt(int u^2) by Parseval
  double mean() const;     // volume average

  SpectralField& operator*=(double t);
  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  friend SpectralField operator*(double t, SpectralField f) { return f *= t; }

  bool finite() const;

 private:
  std::shared_ptr<const Basis> basis_;
  std::vector<double> c_;
};

SpectralField field_from_grid(std::shared_ptr<const Basis> basis,
                              const std::vector<double>& values);

// Samples a pointwise function of Cartesian coordinates onto the collocation
// grid and band-limits it.
SpectralField field_from_function(std::shared_ptr<const Basis> basis,
                                  const std::function<double(const std::array<double, 3>&)>& f);

double inner_l2(const SpectralField& a, const SpectralField& b);

// int_Omega u^m dx, m in {2,3,4}; exact for band-limited u (collocation grid
// integrates products of four band-limited factors exactly).
double integral_power(const SpectralField& u, int m);

// Q[u] = int (Delta u + u)^2 - alpha u^2 = sum ((mu_j - 1)^2 - alpha) c_j^2.
double quadratic_form_Q(const SpectralField& u, const Params& p);

// Sobolev norm ||u||^2_{W^2_2} = sum (mu^2 + mu + 1) c^2 (Parseval form).
double norm_w22_sq(const SpectralField& u);

// (c, C) with c ||u||^2 <= Q[u] <= C ||u||^2 over the represented modes.
std::pair<double, double> norm_equivalence_constants(const DomainSpec& domain,
                                                     int N, const Params& p);

// Radial plateau: 1 on |x - x_c| <= r - 1/2 - width, quintic smoothstep down to
// 0 at |x - x_c| = r - 1/2; band-limited onto the basis. The supporting ball of
// radius r must fit inside the domain.
SpectralField build_plateau_bump(std::shared_ptr<const Basis> basis, double r,
                                 double width = 0.5);

// Largest r such that the ball of radius r around the cell center fits.
double max_bump_radius(const DomainSpec& domain);

// Relative strong-form residual ||(Delta+1)^2 u - alpha u - beta u^2 + u^3||_L2
// divided by the sum of the term norms; computed exactly in a 3N-band basis.
double strong_residual(const SpectralField& u, const Params& p);

}  // namespace nsh
