#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsh/functionals.hpp"
#include "nsh/rng.hpp"

namespace nsh {

// Nonzero constant critical points c_- < c_+ (roots of (1-alpha) - beta c + c^2)
// with their second-variation coefficients and energies over the domain.
struct ConstantSolutions {
  double c_minus = 0.0, c_plus = 0.0;
  double m_minus = 0.0, m_plus = 0.0;  // -alpha - 2 beta c + 3 c^2
  double E_minus = 0.0, E_plus = 0.0;  // energies over the given domain
};

ConstantSolutions constant_solutions(const Params& p, const DomainSpec& domain);

// Energy density of the constant c: (1-alpha)c^2/2 - beta c^3/3 + c^4/4.
double constant_energy_density(const Params& p, double c);

// d^2 E[c](h, h) = int (Delta h + h)^2 + (-alpha - 2 beta c + 3 c^2) int h^2.
double second_variation_at_constant(const Params& p, double c,
                                    const SpectralField& h);

struct SobolevOptions {
  int restarts = 8;          // random starts, in addition to the deterministic ones
  uint64_t seed = 2024;
  int max_iters = 20000;
  double tol = 1e-10;        // relative quotient decrease threshold
  int stall_window = 50;
  bool bump_start = true;    // seed the localized branch
};

struct SobolevEntry {
  int m = 0;
  double value = 0.0;
  SpectralField minimizer;
  bool converged = false;
  int iterations = 0;       // total across restarts
  int best_restart = -1;
  std::vector<double> restart_best;  // running best after each restart
  std::string bound_side = "upper";  // truncation shrinks the admissible set
};

// Multistart descent for S_m = inf sqrt(Q[u]) / |int u^m|^{1/m}; the result is
// an upper bound on the continuum constant.
SobolevEntry sobolev_constant(std::shared_ptr<const Basis> basis, const Params& p,
                              int m, const SobolevOptions& opts = {});

struct SobolevConstants {
  SobolevEntry S2, S3, S4;
};

SobolevConstants sobolev_constants(std::shared_ptr<const Basis> basis,
                                   const Params& p,
                                   const SobolevOptions& opts = {});

struct Thresholds {
  double beta_min_constants = 0.0;  // 2 sqrt(1-alpha)
  double beta0 = 0.0;               // 2 max{sqrt(1-alpha), S3^3/S4^2}
  double beta_star_estimate = 0.0;  // max of beta0 over the R sweep
  double beta_nehari_empty = 0.0;   // 2 S2
  std::vector<double> sweep_R;
  std::vector<double> sweep_beta0;
};

Thresholds thresholds(const Params& p, const DomainSpec& domain, int N,
                      const std::vector<double>& R_sweep,
                      const SobolevOptions& opts = {});

}  // namespace nsh
