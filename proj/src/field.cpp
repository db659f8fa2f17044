#include "nsh/field.hpp"

#include <cmath>
#include <stdexcept>

namespace nsh {

Params::Params(double a, double b) : alpha(a), beta(b) {
  if (!(a < 0.0)) throw std::invalid_argument("alpha must be negative");
  if (!(b > 0.0)) throw std::invalid_argument("beta must be positive");
}

SpectralField::SpectralField(std::shared_ptr<const Basis> basis,
                             std::vector<double> coeffs)
    : basis_(std::move(basis)), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != basis_->n_coeffs())
    throw std::invalid_argument("coefficient count does not match basis");
}

SpectralField SpectralField::zero(std::shared_ptr<const Basis> basis) {
  std::vector<double> c(basis->n_coeffs(), 0.0);
  return SpectralField(std::move(basis), std::move(c));
}

SpectralField SpectralField::constant(std::shared_ptr<const Basis> basis,
                                      double value) {
  std::vector<double> c(basis->n_coeffs(), 0.0);
  c[0] = value * std::sqrt(basis->cell_volume());
  return SpectralField(std::move(basis), std::move(c));
}

double SpectralField::norm_l2() const {
  double s = 0.0;
  for (double x : c_) s += x * x;
  return std::sqrt(s);
}

double SpectralField::mean() const {
  return c_[0] / std::sqrt(basis_->cell_volume());
}

SpectralField& SpectralField::operator*=(double t) {
  for (double& x : c_) x *= t;
  return *this;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

bool SpectralField::finite() const {
  for (double x : c_)
    if (!std::isfinite(x)) return false;
  return true;
}

SpectralField field_from_grid(std::shared_ptr<const Basis> basis,
                              const std::vector<double>& values) {
  auto c = basis->from_grid(values);
  return SpectralField(std::move(basis), std::move(c));
}

SpectralField field_from_function(
    std::shared_ptr<const Basis> basis,
    const std::function<double(const std::array<double, 3>&)>& f) {
  std::vector<double> v(basis->n_grid());
  for (long i = 0; i < basis->n_grid(); ++i) v[i] = f(basis->grid_point(i));
  return field_from_grid(std::move(basis), v);
}

double inner_l2(const SpectralField& a, const SpectralField& b) {
  double s = 0.0;
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (size_t i = 0; i < ca.size(); ++i) s += ca[i] * cb[i];
  return s;
}

double integral_power(const SpectralField& u, int m) {
  if (m < 2 || m > 4) throw std::invalid_argument("integral_power: m must be 2, 3 or 4");
  if (!u.finite()) throw std::invalid_argument("integral_power: non-finite field");
  auto v = u.grid_values();
  double s = 0.0;
  if (m == 2)
    for (double x : v) s += x * x;
  else if (m == 3)
    for (double x : v) s += x * x * x;
  else
    for (double x : v) s += (x * x) * (x * x);
  return u.basis().quad_weight() * s;
}

double quadratic_form_Q(const SpectralField& u, const Params& p) {
  const auto& c = u.coeffs();
  const auto& modes = u.basis().modes();
  double s = 0.0;
  for (size_t j = 0; j < c.size(); ++j) {
    const double d = modes[j].mu - 1.0;
    s += (d * d - p.alpha) * c[j] * c[j];
  }
  return s;
}

double norm_w22_sq(const SpectralField& u) {
  const auto& c = u.coeffs();
  const auto& modes = u.basis().modes();
  double s = 0.0;
  for (size_t j = 0; j < c.size(); ++j) {
    const double mu = modes[j].mu;
    s += (mu * mu + mu + 1.0) * c[j] * c[j];
  }
  return s;
}

std::pair<double, double> norm_equivalence_constants(const DomainSpec& domain,
                                                     int N, const Params& p) {
  auto basis = Basis::create(domain, N);
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& m : basis->modes()) {
    const double d = m.mu - 1.0;
    const double ratio = (d * d - p.alpha) / (m.mu * m.mu + m.mu + 1.0);
    if (first) {
      lo = hi = ratio;
      first = false;
    } else {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  return {lo, hi};
}

double max_bump_radius(const DomainSpec& domain) {
  if (domain.is_box()) {
    double r = domain.length(0) / 2.0;
    for (int a = 1; a < domain.n; ++a) r = std::min(r, domain.length(a) / 2.0);
    return r;
  }
  // inradius of the centered parallelepiped: half the min distance between
  // opposite faces, i.e. half of 1/|row of A^{-T}| ... use dual columns:
  // distance between faces normal to dual vector g_k is 2*pi/|g_k|.
  double r = 0.0;
  const double two_pi = 6.283185307179586476925286766559;
  for (int a = 0; a < domain.n; ++a) {
    const auto g = domain.dual_generator(a);
    const double gl = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    const double half_gap = two_pi / gl / 2.0;
    r = (a == 0) ? half_gap : std::min(r, half_gap);
  }
  return r;
}

SpectralField build_plateau_bump(std::shared_ptr<const Basis> basis, double r,
                                 double width) {
  const auto& dom = basis->domain();
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
  const double a = r - 0.5 - width;  // plateau radius
  if (!(a > 0.0))
    throw std::invalid_argument("bump radius too small for the transition width");
  if (r > max_bump_radius(dom) * (1.0 + 1e-12))
    throw std::invalid_argument("ball of radius r does not fit in the domain");

  std::array<double, 3> xc{0.0, 0.0, 0.0};
  if (dom.is_box()) {
    for (int i = 0; i < dom.n; ++i) xc[i] = dom.length(i) / 2.0;
  } else {
    for (int c = 0; c < dom.n; ++c) {
      const auto h = dom.generator(c);
      for (int i = 0; i < dom.n; ++i) xc[i] += 0.5 * h[i];
    }
  }
  const double b = r - 0.5;  // outer radius
  auto profile = [&](const std::array<double, 3>& x) {
    double d2 = 0.0;
    for (int i = 0; i < dom.n; ++i) {
      const double dx = x[i] - xc[i];
      d2 += dx * dx;
    }
    const double rho = std::sqrt(d2);
    if (rho <= a) return 1.0;
    if (rho >= b) return 0.0;
    const double t = (rho - a) / width;
    const double s = t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    return 1.0 - s;
  };
  return field_from_function(std::move(basis), profile);
}

double strong_residual(const SpectralField& u, const Params& p) {
  const auto& dom = u.basis().domain();
  const int N = u.basis().bandwidth();
  const int Nb = 3 * N;
  const int Mb = dom.is_box() ? (3 * N + 1) : (6 * N + 1);
  auto big = Basis::create(dom, Nb, Mb);

  // embed u into the 3N band
  std::vector<double> cb(big->n_coeffs(), 0.0);
  {
    const auto& small_modes = u.basis().modes();
    const auto& big_modes = big->modes();
    // build an index for big modes
    // box: k lexicographic with base Nb+1; torus: pairs in half-space order.
    if (dom.is_box()) {
      long stride[3] = {1, 1, 1};
      for (int a = dom.n - 2; a >= 0; --a) stride[a] = stride[a + 1] * (Nb + 1);
      for (size_t j = 0; j < small_modes.size(); ++j) {
        long idx = 0;
        for (int a = 0; a < dom.n; ++a) idx += small_modes[j].k[a] * stride[a];
        cb[idx] = u.coeffs()[j];
      }
    } else {
      // map via lexicographic order of half-space vectors
      size_t bj = 1;
      for (size_t j = 1; j < small_modes.size(); j += 2) {
        while (bj < big_modes.size() && !(big_modes[bj].k == small_modes[j].k))
          bj += 2;
        cb[bj] = u.coeffs()[j];
        cb[bj + 1] = u.coeffs()[j + 1];
      }
    }
  }
  SpectralField ub(big, cb);
  auto vals = ub.grid_values();

  // nonlinear part -beta u^2 + u^3, projected exactly onto the 3N band
  std::vector<double> nl(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    const double v = vals[i];
    nl[i] = -p.beta * v * v + v * v * v;
  }
  auto nlc = big->from_grid(nl);

  // residual coefficients and term norms
  double rr = 0.0, lin2 = 0.0, quad2 = 0.0, cub2 = 0.0;
  const auto& modes = big->modes();
  for (size_t j = 0; j < nlc.size(); ++j) {
    const double d = modes[j].mu - 1.0;
    const double lin = (d * d - p.alpha) * cb[j];
    const double res = lin + nlc[j];
    rr += res * res;
    lin2 += lin * lin;
  }
  // norms of beta u^2 and u^3 separately for the denominator scale
  std::vector<double> w2(vals.size()), w3(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    w2[i] = vals[i] * vals[i];
    w3[i] = vals[i] * vals[i] * vals[i];
  }
  auto c2 = big->from_grid(w2);
  auto c3 = big->from_grid(w3);
  for (double x : c2) quad2 += x * x;
  for (double x : c3) cub2 += x * x;

  const double denom = std::sqrt(lin2) + p.beta * std::sqrt(quad2) + std::sqrt(cub2);
  if (denom == 0.0) return 0.0;
  return std::sqrt(rr) / denom;
}

}  // namespace nsh
