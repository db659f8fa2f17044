#include "nsh/equilibria.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsh {

ConstantSolutions constant_solutions(const Params& p, const DomainSpec& domain) {
  const double one_a = 1.0 - p.alpha;
  if (!(p.beta > 2.0 * std::sqrt(one_a)))
    throw std::invalid_argument("beta <= 2 sqrt(1-alpha): no constant solutions");
  const double disc = p.beta * p.beta - 4.0 * one_a;
  const double sq = std::sqrt(disc);
  ConstantSolutions cs;
  cs.c_plus = (p.beta + sq) / 2.0;
  cs.c_minus = (p.beta - sq) / 2.0;
  cs.m_minus = -3.0 + 2.0 * p.alpha + p.beta * cs.c_minus;
  cs.m_plus = -3.0 + 2.0 * p.alpha + p.beta * cs.c_plus;
  const double vol = domain.volume();
  cs.E_minus = vol * constant_energy_density(p, cs.c_minus);
  cs.E_plus = vol * constant_energy_density(p, cs.c_plus);
  return cs;
}

double constant_energy_density(const Params& p, double c) {
  return (1.0 - p.alpha) * c * c / 2.0 - p.beta * c * c * c / 3.0 +
         c * c * c * c / 4.0;
}

double second_variation_at_constant(const Params& p, double c,
                                    const SpectralField& h) {
  const double m = -p.alpha - 2.0 * p.beta * c + 3.0 * c * c;
  const auto& modes = h.basis().modes();
  const auto& ch = h.coeffs();
  double quad = 0.0, mass = 0.0;
  for (size_t j = 0; j < ch.size(); ++j) {
    const double d = modes[j].mu - 1.0;
    quad += d * d * ch[j] * ch[j];
    mass += ch[j] * ch[j];
  }
  return quad + m * mass;
}

namespace {

// log-quotient F(u) = (1/2) log Q - (1/m) log |int u^m| minimized by
// preconditioned descent on the Q-sphere. Returns quotient and iterations.
struct DescentResult {
  double quotient = 0.0;
  SpectralField u;
  int iterations = 0;
  bool converged = false;
};

DescentResult sobolev_descent(SpectralField u, const Params& p, int m,
                              const SobolevOptions& opts) {
  const auto& basis = u.basis();
  const auto& modes = basis.modes();
  const int nc = basis.n_coeffs();

  std::vector<double> A(nc);
  for (int j = 0; j < nc; ++j) {
    const double d = modes[j].mu - 1.0;
    A[j] = d * d - p.alpha;
  }

  auto q_norm = [&](SpectralField& v) {
    const double Q = quadratic_form_Q(v, p);
    v *= 1.0 / std::sqrt(Q);
  };
  q_norm(u);

  auto quotient_of = [&](const SpectralField& v) {
    const double Q = quadratic_form_Q(v, p);
    const double im = integral_power(v, m);
    if (im == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(Q) / std::pow(std::abs(im), 1.0 / m);
  };

  // sign convention for odd powers
  if (m % 2 == 1 && integral_power(u, m) < 0.0) u *= -1.0;

  double q = quotient_of(u);
  double best_q_window = q;
  int since_improve = 0;
  double step = 1.0;
  DescentResult res;
  int it = 0;
  for (; it < opts.max_iters; ++it) {
    const double Q = quadratic_form_Q(u, p);  // == 1 after normalization
    const double im = integral_power(u, m);
    if (!(std::abs(im) > 0.0)) break;  // dead direction

    // gradient of log-quotient and its preconditioned form
    auto vals = u.grid_values();
    for (double& x : vals) {
      double pw = 1.0;
      for (int k = 0; k < m - 1; ++k) pw *= x;
      x = pw;
    }
    auto gm = basis.from_grid(vals);  // coeffs of u^{m-1}
    const auto& c = u.coeffs();
    std::vector<double> grad(nc), dir(nc);
    double gnorm2 = 0.0, dec = 0.0;
    for (int j = 0; j < nc; ++j) {
      grad[j] = A[j] * c[j] / Q - gm[j] / im;
      dir[j] = grad[j] / A[j];
      gnorm2 += grad[j] * grad[j];
      dec += grad[j] * dir[j];  // positive: descent direction
    }
    if (gnorm2 == 0.0) break;

    // Armijo backtracking on the log-quotient
    const double F = std::log(q);
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      SpectralField trial = u;
      auto& tc = trial.coeffs();
      for (int j = 0; j < nc; ++j) tc[j] -= step * dir[j];
      const double Qt = quadratic_form_Q(trial, p);
      if (!(Qt > 0.0)) {
        step *= 0.5;
        continue;
      }
      trial *= 1.0 / std::sqrt(Qt);
      const double qt = quotient_of(trial);
      if (std::isfinite(qt) && std::log(qt) <= F - 1e-4 * step * dec) {
        u = std::move(trial);
        if (m % 2 == 1 && integral_power(u, m) < 0.0) u *= -1.0;
        q = qt;
        accepted = true;
        step *= 2.0;
        break;
      }
      step *= 0.5;
      if (step < 1e-18) break;
    }
    if (!accepted) break;

    if (q < best_q_window * (1.0 - opts.tol)) {
      best_q_window = q;
      since_improve = 0;
    } else {
      ++since_improve;
      if (since_improve >= opts.stall_window) {
        res.converged = true;
        break;
      }
    }
  }
  res.quotient = q;
  res.u = std::move(u);
  res.iterations = it;
  return res;
}

}  // namespace

SobolevEntry sobolev_constant(std::shared_ptr<const Basis> basis, const Params& p,
                              int m, const SobolevOptions& opts) {
  if (m < 2 || m > 4) throw std::invalid_argument("sobolev_constant: m must be 2, 3 or 4");
  SobolevEntry e;
  e.m = m;

  std::vector<SpectralField> starts;
  starts.push_back(SpectralField::constant(basis, 1.0));
  if (opts.bump_start) {
    const double rmax = max_bump_radius(basis->domain());
    if (rmax > 2.0) {
      const double w = std::min(4.0, rmax / 3.0);
      starts.push_back(build_plateau_bump(basis, rmax * 0.98, w));
    }
  }
  for (int i = 0; i < opts.restarts; ++i) {
    Rng rng(opts.seed + 7919u * static_cast<uint64_t>(i + 1));
    starts.push_back(random_field(basis, rng, 1.0, 2.0));
  }

  std::vector<DescentResult> results(starts.size());
  parallel_for_index(static_cast<int>(starts.size()), [&](int i) {
    results[i] = sobolev_descent(starts[i], p, m, opts);
  });

  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < results.size(); ++i) {
    e.iterations += results[i].iterations;
    if (std::isfinite(results[i].quotient) && results[i].quotient < best) {
      best = results[i].quotient;
      e.best_restart = static_cast<int>(i);
      e.minimizer = results[i].u;
      e.converged = results[i].converged;
    }
    e.restart_best.push_back(best);
  }
  e.value = best;
  if (!std::isfinite(best))
    throw std::runtime_error("sobolev_constant: all restarts failed");
  return e;
}

SobolevConstants sobolev_constants(std::shared_ptr<const Basis> basis,
                                   const Params& p, const SobolevOptions& opts) {
  SobolevConstants sc;
  sc.S2 = sobolev_constant(basis, p, 2, opts);
  sc.S3 = sobolev_constant(basis, p, 3, opts);
  sc.S4 = sobolev_constant(basis, p, 4, opts);
  return sc;
}

Thresholds thresholds(const Params& p, const DomainSpec& domain, int N,
                      const std::vector<double>& R_sweep,
                      const SobolevOptions& opts) {
  Thresholds th;
  th.beta_min_constants = 2.0 * std::sqrt(1.0 - p.alpha);

  auto beta0_of = [&](const DomainSpec& d) {
    auto basis = Basis::create(d, N);
    auto S3 = sobolev_constant(basis, p, 3, opts);
    auto S4 = sobolev_constant(basis, p, 4, opts);
    const double s_term = std::pow(S3.value, 3) / (S4.value * S4.value);
    return 2.0 * std::max(std::sqrt(1.0 - p.alpha), s_term);
  };

  th.beta0 = beta0_of(domain);
  th.beta_star_estimate = th.beta0;
  for (double R : R_sweep) {
    const double b = beta0_of(with_stretch(domain, R * domain.stretch));
    th.sweep_R.push_back(R);
    th.sweep_beta0.push_back(b);
    th.beta_star_estimate = std::max(th.beta_star_estimate, b);
  }
  auto basis = Basis::create(domain, N);
  th.beta_nehari_empty = 2.0 * sobolev_constant(basis, p, 2, opts).value;
  return th;
}

}  // namespace nsh
