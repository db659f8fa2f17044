#include "nsh/nehari.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace nsh {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::EmptyManifold: return "empty-manifold";
    case SolveStatus::NotConverged: return "not-converged";
  }
  return "?";
}

RidgeProjection ridge_project(const SpectralField& v, const Params& p) {
  auto f = fibration_classify(v, p);
  if (f.classification != FibrationClass::NonMonotonous)
    throw std::invalid_argument(
        "ridge_project: fibration is not non-monotonous (beta too small or bad direction)");
  RidgeProjection rp{*f.ridge_t, v, f.sign_flipped};
  if (f.sign_flipped) rp.field *= -1.0;
  rp.field *= rp.t;
  return rp;
}

Pullback pullback(const SpectralField& u, const Params& p) {
  const double Q = quadratic_form_Q(u, p);
  if (!(Q > 0.0)) throw std::invalid_argument("pullback: zero field");
  const double B0 = integral_power(u, 3);
  const double D = integral_power(u, 4);
  const double L = Q - p.beta * B0 + D;
  const double H = 2.0 * Q - 3.0 * p.beta * B0 + 4.0 * D;
  const double K1 = p.beta * B0 / 2.0 - D;
  const double tol = 1e-10 * Q;
  if (L > tol || H > tol || K1 < -tol)
    throw std::invalid_argument("pullback: field is not on the rear slope (L<=0, H<=0, K1>=0)");

  Pullback pb{1.0, u};
  if (L >= -tol) return pb;  // already on the ridge or its end

  // L[u] < 0: the fibration of u has its nondegenerate maximum in (0,1)
  auto f = classify_qbd(Q, B0, D, p);
  if (f.classification != FibrationClass::NonMonotonous || f.sign_flipped)
    throw std::logic_error("pullback: inconsistent fibration state");
  pb.t = *f.ridge_t;
  pb.field *= pb.t;

  const double K0_u = f.K0_at(1.0);
  const double K0_t = f.K0_at(pb.t);
  if (K0_t > K0_u + 1e-12 * (std::abs(K0_u) + 1.0))
    throw std::logic_error("pullback: K0 comparison failed");
  return pb;
}

namespace {

struct StartState {
  std::string kind;
  SpectralField v;
};

// Builds the stock multistart seeds: constant direction, plateau bump,
// per-axis stripes near unit wavenumber, a hexagon-like three-wave pattern,
// then band-limited random noise up to the requested count.
std::vector<StartState> build_seeds(const std::shared_ptr<const Basis>& basis,
                                    const RidgeOptions& opts) {
  std::vector<StartState> seeds;
  const int n = basis->dim();

  seeds.push_back({"constant", SpectralField::constant(basis, 1.0)});

  const double rmax = max_bump_radius(basis->domain());
  if (rmax > 1.8) {
    const double w = std::min(4.0, rmax / 3.0);
    seeds.push_back({"bump", build_plateau_bump(basis, rmax * 0.98, w)});
  }

  // stripes: single mode along each axis with mu closest to 1, plus a
  // constant component so that int v^3 > 0
  const auto& modes = basis->modes();
  for (int a = 0; a < n; ++a) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (size_t j = 1; j < modes.size(); ++j) {
      if (modes[j].sine) continue;
      bool axis_only = true;
      for (int b = 0; b < n; ++b)
        if (b != a && modes[j].k[b] != 0) axis_only = false;
      if (!axis_only || modes[j].k[a] == 0) continue;
      const double d = std::abs(modes[j].mu - 1.0);
      if (d < bd) {
        bd = d;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) continue;
    auto f = SpectralField::zero(basis);
    f.coeffs()[best] = 1.0;
    f.coeffs()[0] = 0.45;
    char name[32];
    std::snprintf(name, sizeof name, "stripe-%d", a);
    seeds.push_back({name, std::move(f)});
  }

  if (n >= 2) {
    // three-wave pattern in the (x1, x2) plane at unit wavenumber
    auto hex = field_from_function(basis, [](const std::array<double, 3>& x) {
      const double q = 1.0;
      const double c1 = std::cos(q * x[0]);
      const double c2 = std::cos(q * (-0.5 * x[0] + 0.8660254037844386 * x[1]));
      const double c3 = std::cos(q * (-0.5 * x[0] - 0.8660254037844386 * x[1]));
      return c1 + c2 + c3 + 0.45;
    });
    seeds.push_back({"hexagon", std::move(hex)});
  }

  int idx = 0;
  while (static_cast<int>(seeds.size()) < opts.starts) {
    Rng rng(opts.seed + 104729u * static_cast<uint64_t>(++idx));
    auto f = random_field(basis, rng, 1.0, 2.0);
    f.coeffs()[0] = std::abs(f.coeffs()[0]);  // bias toward int v^3 > 0
    char name[32];
    std::snprintf(name, sizeof name, "random-%d", idx);
    seeds.push_back({name, std::move(f)});
  }
  for (size_t e = 0; e < opts.extra_seeds.size(); ++e) {
    char name[32];
    std::snprintf(name, sizeof name, "extra-%zu", e);
    seeds.push_back({name, opts.extra_seeds[e]});
  }
  return seeds;
}

struct RunResult {
  StartSummary summary;
  SpectralField v;  // final direction, Q-normalized, int v^3 > 0
  std::vector<IterationRecord> log;
  bool viable = false;     // start had a non-monotonous fibration
  bool converged = false;
  double G = std::numeric_limits<double>::infinity();
};

// One descent run over directions on the Q-sphere. The reduced energy
// G(v) = E[t~(v) v] is minimized; its flat gradient is t~ dE[t~ v], which is
// preconditioned by the diagonal of Q (the Q-metric Riemannian gradient, and
// automatically tangent to the Q-sphere by scale invariance).
RunResult run_start(int index, const StartState& start, const Params& p,
                    const RidgeOptions& opts) {
  RunResult rr;
  rr.summary.index = index;
  rr.summary.kind = start.kind;

  const auto basis = start.v.basis_ptr();
  const auto& modes = basis->modes();
  const int nc = basis->n_coeffs();
  const double w = basis->quad_weight();

  std::vector<double> A(nc);
  for (int j = 0; j < nc; ++j) {
    const double d = modes[j].mu - 1.0;
    A[j] = d * d - p.alpha;
  }

  SpectralField v = start.v;
  {
    const double Q = quadratic_form_Q(v, p);
    if (!(Q > 0.0)) {
      rr.summary.status = "discarded-monotonous";
      return rr;
    }
    v *= 1.0 / std::sqrt(Q);
    if (integral_power(v, 3) < 0.0) v *= -1.0;
  }

  auto qbd_of = [&](const std::vector<double>& gv) {
    double b0 = 0.0, d4 = 0.0;
    for (double x : gv) {
      const double x2 = x * x;
      b0 += x2 * x;
      d4 += x2 * x2;
    }
    return std::pair<double, double>{w * b0, w * d4};
  };

  auto vals = v.grid_values();
  auto [B0, D] = qbd_of(vals);
  FibrationData fib;
  try {
    fib = classify_qbd(quadratic_form_Q(v, p), B0, D, p);
  } catch (const std::exception&) {
    rr.summary.status = "discarded-monotonous";
    return rr;
  }
  if (fib.classification != FibrationClass::NonMonotonous) {
    rr.summary.status = "discarded-monotonous";
    return rr;
  }

  double G = *fib.E_ridge;
  double best_window = G;
  int since_improve = 0;
  double step = 1.0;
  int it = 0;
  double grad_rel = std::numeric_limits<double>::infinity();

  for (; it < opts.max_iters; ++it) {
    const double tt = *fib.ridge_t;
    // gradient of E at U = t~ v from the cached direction values
    std::vector<double> nl(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) {
      const double x = tt * vals[i];
      nl[i] = -p.beta * x * x + x * x * x;
    }
    auto g = basis->from_grid(nl);
    const auto& cv = v.coeffs();
    double gnorm2 = 0.0, vnorm2 = 0.0;
    for (int j = 0; j < nc; ++j) {
      g[j] += A[j] * tt * cv[j];
      gnorm2 += g[j] * g[j];
      vnorm2 += cv[j] * cv[j];
    }
    grad_rel = std::sqrt(gnorm2) / (tt * std::sqrt(vnorm2));

    if (opts.log_iterations)
      rr.log.push_back({index, it, G, fib.phi(tt), grad_rel, step});

    const bool stalled = since_improve >= opts.stall_window;
    if (stalled && grad_rel <= opts.tol_grad) {
      rr.converged = true;
      break;
    }

    // Q-metric gradient of G; descent direction
    std::vector<double> dir(nc);
    double dec = 0.0;
    for (int j = 0; j < nc; ++j) {
      const double gG = tt * g[j];
      dir[j] = gG / A[j];
      dec += gG * dir[j];
    }

    bool accepted = false;
    for (int ls = 0; ls < 60 && !accepted; ++ls) {
      SpectralField trial = v;
      auto& tc = trial.coeffs();
      for (int j = 0; j < nc; ++j) tc[j] -= step * dir[j];
      const double Qt = quadratic_form_Q(trial, p);
      if (Qt > 0.0) {
        trial *= 1.0 / std::sqrt(Qt);
        auto tvals = trial.grid_values();
        auto [tB0, tD] = qbd_of(tvals);
        FibrationData tfib = classify_qbd(1.0, tB0, tD, p);
        if (tfib.classification == FibrationClass::NonMonotonous) {
          if (tfib.sign_flipped) {
            trial *= -1.0;
            for (double& x : tvals) x = -x;
            tfib.sign_flipped = false;
          }
          const double Gt = *tfib.E_ridge;
          if (Gt <= G - 1e-4 * step * dec) {
            v = std::move(trial);
            vals = std::move(tvals);
            fib = tfib;
            const double Gprev = G;
            G = Gt;
            accepted = true;
            step = std::min(step * 2.0, 1e6);
            if (G < best_window - opts.tol_rel_G * std::abs(Gprev)) {
              best_window = G;
              since_improve = 0;
            } else {
              ++since_improve;
            }
            break;
          }
        }
      }
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (!accepted) {
      // no admissible decrease left; settle at the current point
      ++since_improve;
      if (grad_rel <= opts.tol_grad) {
        rr.converged = true;
        ++it;
        break;
      }
      if (step < 1e-18) break;
    }
  }

  rr.viable = true;
  rr.v = std::move(v);
  rr.G = G;
  rr.summary.iterations = it;
  rr.summary.energy = G;
  rr.summary.grad_rel = grad_rel;
  rr.summary.status = rr.converged ? "converged" : "not-converged";
  return rr;
}

}  // namespace

NehariResult minimize_ridge(std::shared_ptr<const Basis> basis, const Params& p,
                            const RidgeOptions& opts) {
  NehariResult res;
  auto seeds = build_seeds(basis, opts);
  std::vector<RunResult> runs(seeds.size());
  parallel_for_index(static_cast<int>(seeds.size()), [&](int i) {
    runs[i] = run_start(i, seeds[i], p, opts);
  });

  int best = -1;
  bool best_converged = false;
  for (size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    res.starts.push_back(r.summary);
    for (const auto& rec : r.log) res.iterations.push_back(rec);
    if (!r.viable) {
      ++res.n_monotonous_starts;
      continue;
    }
    if (r.converged) ++res.n_converged_starts;
    const bool better =
        best < 0 ||
        (r.converged && !best_converged) ||
        (r.converged == best_converged && r.G < runs[best].G);
    if (better) {
      best = static_cast<int>(i);
      best_converged = r.converged;
    }
  }

  if (best < 0) {
    res.status = SolveStatus::EmptyManifold;
    return res;
  }

  res.status = best_converged ? SolveStatus::Converged : SolveStatus::NotConverged;
  res.winning_start = best;

  // final exact diagnostics from fresh transforms
  auto rp = ridge_project(runs[best].v, p);
  res.U = rp.field;
  res.fibration = fibration_classify(res.U, p);
  res.Q_value = quadratic_form_Q(res.U, p);
  const double L = functional_L(res.U, p);
  res.H_value = functional_H(res.U, p);
  res.L_rel = std::abs(L) / res.Q_value;
  res.energy = energy_E(res.U, p);
  auto g = gradient_dE(res.U, p);
  res.grad_rel = g.norm_l2() / res.U.norm_l2();
  return res;
}

InequalityReport verify_solution(const SpectralField& U, const Params& p,
                                 const SobolevConstants& consts) {
  InequalityReport r;
  r.S2 = consts.S2.value;
  r.S3 = consts.S3.value;
  r.S4 = consts.S4.value;

  // re-project exactly onto the ridge before the Lemma 3 sampling
  auto fib = fibration_classify(U, p);
  const double Q = fib.Q;
  double min_slack = std::numeric_limits<double>::infinity();
  if (fib.classification == FibrationClass::NonMonotonous) {
    const double tt = *fib.ridge_t;
    for (int i = 0; i <= 10; ++i) {
      const double t = tt * i / 10.0;
      const double slack = fib.phi(t) - Q * t * t / 12.0;
      min_slack = std::min(min_slack, slack / (Q * tt * tt));
    }
  } else {
    min_slack = std::numeric_limits<double>::quiet_NaN();
  }
  r.lemma3_min_slack = min_slack;

  const double D = integral_power(U, 4);
  const double l4 = std::pow(D, 0.25);
  r.lemma4_ratio = p.beta * l4 / (r.S2 * r.S4);
  r.lemma4_slack = l4 - r.S2 * r.S4 / p.beta;

  const double H = functional_H(U, p);
  const double QU = quadratic_form_Q(U, p);
  r.h_strict_slack = -H - 1e-8 * QU;
  r.not_on_N0 = r.h_strict_slack >= 0.0;

  const double E = energy_E(U, p);
  r.energy_growth_bound = std::pow(r.S3, 6) / (3.0 * p.beta * p.beta);
  r.energy_growth_slack = r.energy_growth_bound - E;
  r.s4_quarter_bound = std::pow(r.S4, 4) / 12.0;

  r.all_passed = (min_slack >= -1e-10) && (r.lemma4_ratio >= 1.0 - 1e-10) &&
                 r.not_on_N0 && (r.energy_growth_slack >= -1e-10);
  return r;
}

IrreducibilityReport irreducibility_diagnostics(const SpectralField& U,
                                                const Params& p) {
  IrreducibilityReport rep;
  const auto& basis = U.basis();
  const auto& modes = basis.modes();
  const auto& c = U.coeffs();
  const int n = basis.dim();

  double total = 0.0;
  std::vector<double> axis(n, 0.0);
  double nonconst = 0.0;
  for (size_t j = 0; j < c.size(); ++j) {
    const double e = c[j] * c[j];
    total += e;
    bool is_const = true;
    for (int a = 0; a < n; ++a)
      if (modes[j].k[a] != 0) is_const = false;
    if (!is_const) nonconst += e;
    for (int a = 0; a < n; ++a)
      if (modes[j].k[a] != 0) axis[a] += e;
  }
  for (int a = 0; a < n; ++a) {
    const double frac = total > 0.0 ? axis[a] / total : 0.0;
    rep.axis_energy_fraction.push_back(frac);
    rep.axis_verdict.push_back(frac > rep.threshold);
  }
  rep.constant_test = total > 0.0 ? std::sqrt(nonconst / total) : 0.0;
  rep.E_U = energy_E(U, p);
  if (p.beta > 2.0 * std::sqrt(1.0 - p.alpha)) {
    auto cs = constant_solutions(p, basis.domain());
    rep.E_c_minus = cs.E_minus;
  }
  rep.bump_bound = plateau_bound(U.basis_ptr(), p);
  return rep;
}

std::optional<double> plateau_bound(std::shared_ptr<const Basis> basis,
                                    const Params& p) {
  const double rmax = max_bump_radius(basis->domain());
  if (rmax < 1.8) return std::nullopt;
  const double r = rmax * 0.98;
  const double w = std::min(4.0, r / 3.0);
  try {
    auto bump = build_plateau_bump(basis, r, w);
    auto fib = fibration_classify(bump, p);
    if (fib.classification != FibrationClass::NonMonotonous) return std::nullopt;
    return *fib.E_ridge;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace nsh
