#include "nsh/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nsh {

namespace {

constexpr double kPi = std::numbers::pi;

// in shaped [pre][len_in][post] -> out shaped [pre][len_out][post],
// out(p,o,q) = sum_i mat[o*len_in+i] * in(p,i,q). Works for real and complex.
template <typename T>
std::vector<T> contract_axis(const std::vector<T>& in, long pre, int len_in,
                             long post, const T* mat, int len_out) {
  std::vector<T> out(static_cast<size_t>(pre) * len_out * post, T(0));
  for (long p = 0; p < pre; ++p) {
    const T* iblk = in.data() + static_cast<size_t>(p) * len_in * post;
    T* oblk = out.data() + static_cast<size_t>(p) * len_out * post;
    for (int o = 0; o < len_out; ++o) {
      const T* mrow = mat + static_cast<size_t>(o) * len_in;
      T* orow = oblk + static_cast<size_t>(o) * post;
      for (int i = 0; i < len_in; ++i) {
        const T m = mrow[i];
        const T* irow = iblk + static_cast<size_t>(i) * post;
        for (long q = 0; q < post; ++q) orow[q] += m * irow[q];
      }
    }
  }
  return out;
}

template <typename T>
std::vector<T> tensor_apply(std::vector<T> data, int n, const int* len_in,
                            const int* len_out, const std::vector<T>* mats) {
  // dims tracks the current shape as axes are transformed one by one
  std::array<long, 3> dims{1, 1, 1};
  for (int a = 0; a < n; ++a) dims[a] = len_in[a];
  for (int a = 0; a < n; ++a) {
    long pre = 1, post = 1;
    for (int b = 0; b < a; ++b) pre *= dims[b];
    for (int b = a + 1; b < n; ++b) post *= dims[b];
    data = contract_axis(data, pre, len_in[a], post, mats[a].data(), len_out[a]);
    dims[a] = len_out[a];
  }
  return data;
}

}  // namespace

Basis::Basis(const DomainSpec& domain, int N, int M)
    : domain_(domain), N_(N), M_(M) {
  if (N < 1) throw std::invalid_argument("bandwidth N must be >= 1");
  const int min_M = domain.is_box() ? 2 * N + 1 : 4 * N + 1;
  if (M <= 0) M_ = min_M;
  if (M_ < 2 * N + 1)
    throw std::invalid_argument("grid must have at least 2N+1 points per axis");
  n_grid_ = 1;
  for (int a = 0; a < domain_.n; ++a) n_grid_ *= M_;
  volume_ = domain_.volume();
  weight_ = volume_ / static_cast<double>(n_grid_);
  if (domain_.is_box())
    build_box();
  else
    build_torus();
}

std::shared_ptr<const Basis> Basis::create(const DomainSpec& domain, int N) {
  return std::shared_ptr<const Basis>(new Basis(domain, N, 0));
}

std::shared_ptr<const Basis> Basis::create(const DomainSpec& domain, int N,
                                           int grid_per_axis) {
  return std::shared_ptr<const Basis>(new Basis(domain, N, grid_per_axis));
}

void Basis::build_box() {
  const int n = domain_.n;
  phi_.resize(n);
  for (int a = 0; a < n; ++a) {
    const double len = domain_.length(a);
    phi_[a].assign(static_cast<size_t>(N_ + 1) * M_, 0.0);
    for (int k = 0; k <= N_; ++k) {
      const double nu = (k == 0) ? std::sqrt(1.0 / len) : std::sqrt(2.0 / len);
      for (int t = 0; t < M_; ++t)
        phi_[a][static_cast<size_t>(k) * M_ + t] =
            nu * std::cos(k * kPi * (t + 0.5) / M_);
    }
  }
  // lexicographic cosine multi-indices, axis 0 slowest; k = 0 first
  long count = 1;
  for (int a = 0; a < n; ++a) count *= (N_ + 1);
  modes_.reserve(count);
  std::array<int, 3> k{0, 0, 0};
  for (long flat = 0; flat < count; ++flat) {
    long rem = flat;
    for (int a = n - 1; a >= 0; --a) {
      k[a] = static_cast<int>(rem % (N_ + 1));
      rem /= (N_ + 1);
    }
    Mode m;
    m.k = k;
    double mu = 0.0;
    for (int a = 0; a < n; ++a) {
      const double w = k[a] * kPi / domain_.length(a);
      mu += w * w;
    }
    m.mu = mu;
    modes_.push_back(m);
  }
}

void Basis::build_torus() {
  const int n = domain_.n;
  tcos_.assign(static_cast<size_t>(2 * N_ + 1) * M_, 0.0);
  tsin_.assign(static_cast<size_t>(2 * N_ + 1) * M_, 0.0);
  for (int m = -N_; m <= N_; ++m)
    for (int t = 0; t < M_; ++t) {
      const double ph = 2.0 * kPi * m * t / static_cast<double>(M_);
      tcos_[static_cast<size_t>(m + N_) * M_ + t] = std::cos(ph);
      tsin_[static_cast<size_t>(m + N_) * M_ + t] = std::sin(ph);
    }

  // dual lattice columns
  std::array<std::array<double, 3>, 3> g{};
  for (int a = 0; a < n; ++a) g[a] = domain_.dual_generator(a);

  auto mu_of = [&](const std::array<int, 3>& k) {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < n; ++i) v[i] += k[a] * g[a][i];
    return v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  };

  long strides[3] = {1, 1, 1};
  for (int a = n - 2; a >= 0; --a) strides[a] = strides[a + 1] * (2 * N_ + 1);
  auto slot_of = [&](const std::array<int, 3>& k) {
    long s = 0;
    for (int a = 0; a < n; ++a) s += (k[a] + N_) * strides[a];
    return s;
  };

  // constant mode first
  Mode c;
  c.mu = 0.0;
  modes_.push_back(c);
  pair_slot_.push_back(slot_of({0, 0, 0}));

  // half-space: first nonzero component positive, lexicographic
  long cube = 1;
  for (int a = 0; a < n; ++a) cube *= (2 * N_ + 1);
  for (long flat = 0; flat < cube; ++flat) {
    std::array<int, 3> k{0, 0, 0};
    long rem = flat;
    for (int a = n - 1; a >= 0; --a) {
      k[a] = static_cast<int>(rem % (2 * N_ + 1)) - N_;
      rem /= (2 * N_ + 1);
    }
    int lead = 0;
    for (int a = 0; a < n; ++a) {
      if (k[a] != 0) {
        lead = k[a];
        break;
      }
    }
    if (lead <= 0) continue;
    Mode mc;
    mc.k = k;
    mc.mu = mu_of(k);
    mc.sine = false;
    Mode ms = mc;
    ms.sine = true;
    modes_.push_back(mc);
    modes_.push_back(ms);
    pair_slot_.push_back(slot_of(k));
    pair_slot_.push_back(slot_of(k));
  }
}

std::vector<double> Basis::to_grid(const std::vector<double>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != n_coeffs())
    throw std::invalid_argument("coefficient vector does not match basis");
  const int n = domain_.n;
  if (domain_.is_box()) {
    // synthesis matrices: mat[t*(N+1)+k] = phi_a(k, t)
    std::vector<std::vector<double>> mats(n);
    for (int a = 0; a < n; ++a) {
      mats[a].assign(static_cast<size_t>(M_) * (N_ + 1), 0.0);
      for (int t = 0; t < M_; ++t)
        for (int k = 0; k <= N_; ++k)
          mats[a][static_cast<size_t>(t) * (N_ + 1) + k] =
              phi_[a][static_cast<size_t>(k) * M_ + t];
    }
    int lin[3], lout[3];
    for (int a = 0; a < n; ++a) {
      lin[a] = N_ + 1;
      lout[a] = M_;
    }
    return tensor_apply(coeffs, n, lin, lout, mats.data());
  }

  // torus: pack real coefficients into the complex mode cube
  using cd = std::complex<double>;
  long cube = 1;
  for (int a = 0; a < n; ++a) cube *= (2 * N_ + 1);
  std::vector<cd> F(cube, cd(0.0, 0.0));
  const double V = volume_;
  F[pair_slot_[0]] = cd(coeffs[0] / std::sqrt(V), 0.0);
  const double s2v = std::sqrt(2.0 * V);
  long strides[3] = {1, 1, 1};
  for (int a = n - 2; a >= 0; --a) strides[a] = strides[a + 1] * (2 * N_ + 1);
  for (int j = 1; j < n_coeffs(); j += 2) {
    const cd f(coeffs[j] / s2v, -coeffs[j + 1] / s2v);
    const long slot = pair_slot_[j];
    F[slot] = f;
    long conj_slot = 0;
    for (int a = 0; a < n; ++a)
      conj_slot += (-modes_[j].k[a] + N_) * strides[a];
    F[conj_slot] = std::conj(f);
  }
  // synthesis matrix e^{+2 pi i m t / M}
  std::vector<cd> mat(static_cast<size_t>(M_) * (2 * N_ + 1));
  for (int t = 0; t < M_; ++t)
    for (int m = 0; m < 2 * N_ + 1; ++m)
      mat[static_cast<size_t>(t) * (2 * N_ + 1) + m] =
          cd(tcos_[static_cast<size_t>(m) * M_ + t],
             tsin_[static_cast<size_t>(m) * M_ + t]);
  std::vector<std::vector<cd>> mats(n, mat);
  int lin[3], lout[3];
  for (int a = 0; a < n; ++a) {
    lin[a] = 2 * N_ + 1;
    lout[a] = M_;
  }
  auto vals = tensor_apply(F, n, lin, lout, mats.data());
  std::vector<double> out(n_grid_);
  for (long i = 0; i < n_grid_; ++i) out[i] = vals[i].real();
  return out;
}

std::vector<double> Basis::from_grid(const std::vector<double>& values) const {
  if (static_cast<long>(values.size()) != n_grid_)
    throw std::invalid_argument("grid values do not match basis grid");
  const int n = domain_.n;
  if (domain_.is_box()) {
    std::vector<std::vector<double>> mats(n);
    for (int a = 0; a < n; ++a) {
      const double w = domain_.length(a) / M_;
      mats[a].assign(static_cast<size_t>(N_ + 1) * M_, 0.0);
      for (int k = 0; k <= N_; ++k)
        for (int t = 0; t < M_; ++t)
          mats[a][static_cast<size_t>(k) * M_ + t] =
              w * phi_[a][static_cast<size_t>(k) * M_ + t];
    }
    int lin[3], lout[3];
    for (int a = 0; a < n; ++a) {
      lin[a] = M_;
      lout[a] = N_ + 1;
    }
    return tensor_apply(values, n, lin, lout, mats.data());
  }

  using cd = std::complex<double>;
  std::vector<cd> data(values.size());
  for (size_t i = 0; i < values.size(); ++i) data[i] = cd(values[i], 0.0);
  // analysis matrix e^{-2 pi i m t / M} / M
  std::vector<cd> mat(static_cast<size_t>(2 * N_ + 1) * M_);
  const double invM = 1.0 / M_;
  for (int m = 0; m < 2 * N_ + 1; ++m)
    for (int t = 0; t < M_; ++t)
      mat[static_cast<size_t>(m) * M_ + t] =
          cd(tcos_[static_cast<size_t>(m) * M_ + t] * invM,
             -tsin_[static_cast<size_t>(m) * M_ + t] * invM);
  std::vector<std::vector<cd>> mats(n, mat);
  int lin[3], lout[3];
  for (int a = 0; a < n; ++a) {
    lin[a] = M_;
    lout[a] = 2 * N_ + 1;
  }
  auto F = tensor_apply(data, n, lin, lout, mats.data());

  std::vector<double> coeffs(n_coeffs(), 0.0);
  const double V = volume_;
  coeffs[0] = std::sqrt(V) * F[pair_slot_[0]].real();
  const double s2v = std::sqrt(2.0 * V);
  for (int j = 1; j < n_coeffs(); j += 2) {
    const cd f = F[pair_slot_[j]];
    coeffs[j] = s2v * f.real();
    coeffs[j + 1] = -s2v * f.imag();
  }
  return coeffs;
}

double Basis::integrate(const std::vector<double>& values) const {
  if (static_cast<long>(values.size()) != n_grid_)
    throw std::invalid_argument("grid values do not match basis grid");
  double s = 0.0;
  for (double v : values) s += v;
  return weight_ * s;
}

std::array<double, 3> Basis::grid_point(long flat) const {
  const int n = domain_.n;
  int t[3] = {0, 0, 0};
  long rem = flat;
  for (int a = n - 1; a >= 0; --a) {
    t[a] = static_cast<int>(rem % M_);
    rem /= M_;
  }
  std::array<double, 3> x{0.0, 0.0, 0.0};
  if (domain_.is_box()) {
    for (int a = 0; a < n; ++a)
      x[a] = (t[a] + 0.5) * domain_.length(a) / M_;
  } else {
    for (int a = 0; a < n; ++a) {
      const auto h = domain_.generator(a);
      const double y = static_cast<double>(t[a]) / M_;
      for (int i = 0; i < n; ++i) x[i] += y * h[i];
    }
  }
  return x;
}

double Basis::constant_mode_value() const { return 1.0 / std::sqrt(volume_); }

std::vector<double> Basis::shift_coeffs(const std::vector<double>& coeffs,
                                        const std::array<double, 3>& y0) const {
  if (!domain_.is_torus())
    throw std::logic_error("shift_coeffs: torus basis only");
  std::vector<double> out(coeffs.size());
  out[0] = coeffs[0];
  const double two_pi = 2.0 * kPi;
  for (int j = 1; j < n_coeffs(); j += 2) {
    double ph = 0.0;
    for (int a = 0; a < dim(); ++a) ph += modes_[j].k[a] * y0[a];
    ph *= two_pi;
    const double cc = std::cos(ph), ss = std::sin(ph);
    // F -> F e^{i k phi}: (a - i b)/s -> rotate
    const double a = coeffs[j], b = coeffs[j + 1];
    out[j] = a * cc + b * ss;
    out[j + 1] = b * cc - a * ss;
  }
  return out;
}

}  // namespace nsh
