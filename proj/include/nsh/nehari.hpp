#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsh/equilibria.hpp"
#include "nsh/functionals.hpp"

namespace nsh {

// Scales v onto the ridge of the Nehari manifold: t~ = (B - sqrt(B^2-4QD))/2D.
// The sign of v is normalized first so that int v^3 > 0.
struct RidgeProjection {
  double t;
  SpectralField field;
  bool sign_flipped;
};
RidgeProjection ridge_project(const SpectralField& v, const Params& p);

// Pullback from the rear slope: t* in (0,1] with t* u on the ridge (or its
// end) and K0[t* u] <= K0[u]. u must satisfy L <= 0, H <= 0, K1 >= 0.
struct Pullback {
  double t;
  SpectralField field;
};
Pullback pullback(const SpectralField& u, const Params& p);

struct RidgeOptions {
  int starts = 12;
  uint64_t seed = 1;
  double tol_grad = 1e-6;    // ||dE[U]|| / ||U||
  double tol_rel_G = 1e-12;  // relative decrease defining a stalled iterate
  int stall_window = 25;
  int max_iters = 20000;
  std::vector<SpectralField> extra_seeds;  // appended after the stock seeds
  bool log_iterations = true;
};

enum class SolveStatus { Converged, EmptyManifold, NotConverged };
std::string to_string(SolveStatus s);

struct StartSummary {
  int index = 0;
  std::string kind;
  std::string status;  // "converged" | "discarded-monotonous" | "not-converged"
  int iterations = 0;
  double energy = 0.0;
  double grad_rel = 0.0;
};

struct IterationRecord {
  int start = 0;
  int iter = 0;
  double G = 0.0;          // reduced energy via the uniformized formula
  double E_quartic = 0.0;  // same energy via the quartic fibration polynomial
  double grad_rel = 0.0;
  double step = 0.0;
};

struct InequalityReport {
  double lemma3_min_slack = 0.0;    // min_t E[tU] - Q[tU]/12, relative to Q[U]
  double lemma4_ratio = 0.0;        // beta ||U||_L4 / (S2 S4), >= 1 expected
  double lemma4_slack = 0.0;        // ||U||_L4 - S2 S4 / beta
  double h_strict_slack = 0.0;      // -H[U] - 1e-8 Q[U]
  bool not_on_N0 = false;
  double energy_growth_bound = 0.0;  // S3^6/(3 beta^2)
  double energy_growth_slack = 0.0;  // bound - E[U]
  double s4_quarter_bound = 0.0;     // S4^4/12 (reference; no contradiction off N0)
  double S2 = 0.0, S3 = 0.0, S4 = 0.0;
  bool all_passed = false;
};

struct IrreducibilityReport {
  std::vector<double> axis_energy_fraction;
  std::vector<bool> axis_verdict;
  double threshold = 1e-3;
  double constant_test = 0.0;  // ||U - mean(U)|| / ||U||
  double E_U = 0.0;
  std::optional<double> E_c_minus;
  std::optional<double> bump_bound;  // R-independent E[t~ v_bump], when defined
};

struct NehariResult {
  SolveStatus status = SolveStatus::EmptyManifold;
  SpectralField U;
  double energy = 0.0;
  double Q_value = 0.0;
  double H_value = 0.0;
  double L_rel = 0.0;     // |L[U]| / Q[U]
  double grad_rel = 0.0;  // ||dE[U]|| / ||U||
  FibrationData fibration;
  std::vector<StartSummary> starts;
  std::vector<IterationRecord> iterations;
  int winning_start = -1;
  int n_monotonous_starts = 0;
  int n_converged_starts = 0;
  // filled by the orchestration layer when constants are available
  std::optional<InequalityReport> inequalities;
  std::optional<IrreducibilityReport> diagnostics;
};

// Minimizes the scale-invariant reduced energy G(v) = E[t~(v) v] over
// directions on the Q-sphere by preconditioned projected descent with Armijo
// backtracking; multistart. Returns the lowest-energy converged run.
NehariResult minimize_ridge(std::shared_ptr<const Basis> basis, const Params& p,
                            const RidgeOptions& opts = {});

// Inequality suite of Lemmata 3/4 plus the strict-ridge certification and the
// energy growth bound, evaluated with the supplied measured constants.
InequalityReport verify_solution(const SpectralField& U, const Params& p,
                                 const SobolevConstants& consts);

IrreducibilityReport irreducibility_diagnostics(const SpectralField& U,
                                                const Params& p);

// E[t~ v_bump] for the widest plateau bump that fits this domain, when its
// fibration is non-monotonous at these parameters.
std::optional<double> plateau_bound(std::shared_ptr<const Basis> basis,
                                    const Params& p);

}  // namespace nsh
