#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "nsh/domain.hpp"

namespace nsh {

// One entry per stored coefficient. For the box basis the mode is the cosine
// multi-index (all k_i >= 0). For the torus basis each half-lattice vector k
// appears twice (cosine part then sine part); the constant mode once.
struct Mode {
  std::array<int, 3> k{0, 0, 0};
  double mu = 0.0;       // Neumann-Laplacian eigenvalue of this mode
  bool sine = false;     // torus only: sine member of the pair
};

// L2-orthonormal eigenbasis of -Delta on the domain, with collocation grid
// and quadrature chosen so that all integrals of products of up to four
// band-limited factors are exact up to rounding:
//   box   : half-integer (midpoint) grid, M = 2N+1 points per axis;
//   torus : uniform grid on the unit parameter cell, M = 4N+1 per axis.
// Fields are stored as real coefficient vectors against this basis, so
// Parseval holds exactly: int u^2 = sum c_j^2, int |D^2 u|^2 = sum mu_j^2 c_j^2.
class Basis {
 public:
  static std::shared_ptr<const Basis> create(const DomainSpec& domain, int N);
  // Explicit grid override (points per axis); must satisfy the exactness
  // preconditions above for the intended use.
  static std::shared_ptr<const Basis> create(const DomainSpec& domain, int N,
                                             int grid_per_axis);

  const DomainSpec& domain() const { return domain_; }
  int bandwidth() const { return N_; }
  int dim() const { return domain_.n; }
  int grid_per_axis() const { return M_; }
  int n_coeffs() const { return static_cast<int>(modes_.size()); }
  long n_grid() const { return n_grid_; }
  double cell_volume() const { return volume_; }
  double quad_weight() const { return weight_; }

  const std::vector<Mode>& modes() const { return modes_; }
  double mu(int j) const { return modes_[j].mu; }

  // Synthesis: coefficients -> values on the collocation grid.
  std::vector<double> to_grid(const std::vector<double>& coeffs) const;
  // Analysis: grid values -> coefficients (exact L2 projection for
  // band-limited data).
  std::vector<double> from_grid(const std::vector<double>& values) const;

  double integrate(const std::vector<double>& values) const;

  // Cartesian coordinates of a flat grid index (axis 0 slowest).
  std::array<double, 3> grid_point(long flat) const;

  // Index of the constant mode (always 0) and its basis value 1/sqrt(V).
  double constant_mode_value() const;

  // Torus only: phase-shift by y0 in lattice parameter coordinates
  // (u(x) -> u(x + A_R y0)); exact in coefficient space.
  std::vector<double> shift_coeffs(const std::vector<double>& coeffs,
                                   const std::array<double, 3>& y0) const;

 private:
  Basis(const DomainSpec& domain, int N, int M);

  void build_box();
  void build_torus();

  DomainSpec domain_;
  int N_ = 0;
  int M_ = 0;
  long n_grid_ = 0;
  double volume_ = 0.0;
  double weight_ = 0.0;
  std::vector<Mode> modes_;

  // box: per-axis synthesis matrix phi[a][k*M + t] = nu_k cos(k pi (t+1/2)/M)
  std::vector<std::vector<double>> phi_;
  // torus: per-axis tables cos/sin(2 pi k t / M), k = 0..N
  std::vector<double> tcos_, tsin_;
  // torus: flat index into the complex working array for each mode pair
  std::vector<long> pair_slot_;
};

}  // namespace nsh
