#include "nsh/domain.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nsh {

namespace {

double det_n(const std::vector<double>& a, int n) {
  // column-major, n <= 3
  if (n == 1) return a[0];
  if (n == 2) return a[0] * a[3] - a[1] * a[2];
  return a[0] * (a[4] * a[8] - a[5] * a[7]) -
         a[3] * (a[1] * a[8] - a[2] * a[7]) +
         a[6] * (a[1] * a[5] - a[2] * a[4]);
}

// Inverse-transpose columns of A, times 2*pi: rows of A^{-1} scaled.
std::array<double, 3> inv_transpose_col(const std::vector<double>& a, int n,
                                        int col) {
  std::array<double, 3> r{0.0, 0.0, 0.0};
  const double d = det_n(a, n);
  if (n == 1) {
    r[0] = 1.0 / a[0];
  } else if (n == 2) {
    // A^{-1} = (1/d) [a22 -a12; -a21 a11]; column col of A^{-T} = row col of A^{-1}
    if (col == 0) {
      r[0] = a[3] / d;
      r[1] = -a[2] / d;
    } else {
      r[0] = -a[1] / d;
      r[1] = a[0] / d;
    }
  } else {
    // cofactor row of A^{-1}
    auto at = [&](int i, int j) { return a[j * 3 + i]; };
    int i = col;
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3;
      int j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[j] = (at(i1, j1) * at(i2, j2) - at(i1, j2) * at(i2, j1)) / d;
    }
  }
  return r;
}

}  // namespace

double DomainSpec::base_volume() const {
  if (is_box()) {
    double v = 1.0;
    for (double l : lengths) v *= l;
    return v;
  }
  return std::abs(det_n(generators, n));
}

double DomainSpec::volume() const {
  return std::pow(stretch, n) * base_volume();
}

double DomainSpec::length(int axis) const {
  if (!is_box()) throw std::logic_error("length(): not a box domain");
  return stretch * lengths.at(axis);
}

std::array<double, 3> DomainSpec::generator(int col) const {
  if (!is_torus()) throw std::logic_error("generator(): not a torus domain");
  std::array<double, 3> g{0.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) g[i] = stretch * generators.at(col * n + i);
  return g;
}

std::array<double, 3> DomainSpec::dual_generator(int col) const {
  if (!is_torus()) throw std::logic_error("dual_generator(): not a torus domain");
  auto r = inv_transpose_col(generators, n, col);
  const double two_pi = 6.283185307179586476925286766559;
  for (int i = 0; i < n; ++i) r[i] *= two_pi / stretch;
  return r;
}

std::string DomainSpec::describe() const {
  char buf[256];
  if (is_box()) {
    std::string s = "box[";
    for (int i = 0; i < n; ++i) {
      std::snprintf(buf, sizeof buf, "%s%.6g", i ? "," : "", length(i));
      s += buf;
    }
    return s + "]";
  }
  std::snprintf(buf, sizeof buf, "torus[n=%d, R=%.6g]", n, stretch);
  return buf;
}

DomainSpec make_box(const std::vector<double>& lengths, double R) {
  DomainSpec d;
  d.kind = DomainKind::NeumannBox;
  d.n = static_cast<int>(lengths.size());
  d.lengths = lengths;
  d.stretch = R;
  if (d.n < 1 || d.n > 3)
    throw std::invalid_argument("domain dimension must be 1, 2 or 3");
  for (double l : lengths)
    if (!(l > 0.0)) throw std::invalid_argument("box side lengths must be positive");
  if (!(R > 0.0)) throw std::invalid_argument("stretch factor must be positive");
  return d;
}

DomainSpec make_torus(int n, const std::vector<double>& generators, double R) {
  DomainSpec d;
  d.kind = DomainKind::SkewTorus;
  d.n = n;
  d.generators = generators;
  d.stretch = R;
  if (n < 1 || n > 3)
    throw std::invalid_argument("domain dimension must be 1, 2 or 3");
  if (static_cast<int>(generators.size()) != n * n)
    throw std::invalid_argument("generator matrix must be n x n");
  if (!(R > 0.0)) throw std::invalid_argument("stretch factor must be positive");
  const double d0 = det_n(generators, n);
  double scale = 0.0;
  for (double g : generators) scale = std::max(scale, std::abs(g));
  if (scale == 0.0 || std::abs(d0) < 1e-14 * std::pow(scale, n))
    throw std::invalid_argument("generator matrix is singular");
  return d;
}

DomainSpec make_domain(DomainKind kind, const std::vector<double>& dims, double R) {
  if (kind == DomainKind::NeumannBox) return make_box(dims, R);
  int n = 0;
  while (n * n < static_cast<int>(dims.size())) ++n;
  if (n * n != static_cast<int>(dims.size()))
    throw std::invalid_argument("torus dims must be a square matrix");
  return make_torus(n, dims, R);
}

DomainSpec with_stretch(const DomainSpec& d, double R) {
  DomainSpec out = d;
  if (!(R > 0.0)) throw std::invalid_argument("stretch factor must be positive");
  out.stretch = R;
  return out;
}

}  // namespace nsh
