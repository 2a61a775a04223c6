// Periodic grids, spectral fields and Fourier multipliers.
//
// Everything here is templated on the real scalar type; the rest of the
// library instantiates it with double (see the aliases at the bottom).
// Spectra are stored as the non-negative half of the normalized DFT,
// c_k = (1/n) sum_j f(x_j) exp(-i xi_k x_j), k = 0..n/2.  The last entry is
// the Nyquist mode, which the full lattice lists as k = -n/2.
#pragma once

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "whitham/error.hpp"

namespace whitham {

using Index = Eigen::Index;

template <typename Scalar>
class BasicGrid {
 public:
  using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  BasicGrid(Index n_points, Scalar length) : n_(n_points), length_(length) {
    if (n_points < 8 || n_points % 2 != 0) {
      throw Error(ErrorCode::InvalidArgument, "grid needs an even number of points >= 8");
    }
    if (!(length > 0) || !std::isfinite(static_cast<double>(length))) {
      throw Error(ErrorCode::InvalidArgument, "grid length must be positive and finite");
    }
    nodes_.resize(n_);
    for (Index j = 0; j < n_; ++j) nodes_[j] = Scalar(j) * length_ / Scalar(n_);
    half_freq_.resize(n_ / 2 + 1);
    const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
    for (Index k = 0; k < n_ / 2; ++k) half_freq_[k] = two_pi * Scalar(k) / length_;
    half_freq_[n_ / 2] = -two_pi * Scalar(n_ / 2) / length_;
  }

  Index size() const { return n_; }
  Index half_size() const { return n_ / 2 + 1; }
  Scalar length() const { return length_; }
  Scalar spacing() const { return length_ / Scalar(n_); }
  const RealArray& nodes() const { return nodes_; }

  // xi_k for k = 0..n/2 in storage order; the last entry is the Nyquist mode.
  const RealArray& half_frequencies() const { return half_freq_; }

  // The full lattice, k = -n/2 .. n/2-1.
  RealArray frequencies() const {
    RealArray xi(n_);
    const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
    for (Index k = 0; k < n_; ++k) xi[k] = two_pi * Scalar(k - n_ / 2) / length_;
    return xi;
  }

  // 2/3 rule: mode k survives when 3|k| < n.
  bool resolved(Index k) const { return 3 * k < n_; }

  bool operator==(const BasicGrid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  Index n_;
  Scalar length_;
  RealArray nodes_;
  RealArray half_freq_;
};

template <typename Scalar>
using BasicGridPtr = std::shared_ptr<const BasicGrid<Scalar>>;

template <typename Scalar>
BasicGridPtr<Scalar> make_grid(Index n_points, Scalar length) {
  return std::make_shared<const BasicGrid<Scalar>>(n_points, length);
}

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  // Eigen::FFT caches plans internally and is not safe to share.
  struct Holder {
    Eigen::FFT<Scalar> fft;
    Holder() {
      fft.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
      fft.SetFlag(Eigen::FFT<Scalar>::Unscaled);
    }
  };
  thread_local Holder holder;
  return holder.fft;
}

}  // namespace detail

template <typename Scalar>
class BasicField {
 public:
  using Grid = BasicGrid<Scalar>;
  using GridPtr = BasicGridPtr<Scalar>;
  using Complex = std::complex<Scalar>;
  using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
  using ComplexArray = Eigen::Array<Complex, Eigen::Dynamic, 1>;

  BasicField(GridPtr grid, RealArray values)
      : grid_(std::move(grid)), values_(std::move(values)), cache_(std::make_shared<Cache>()) {
    if (!grid_) throw Error(ErrorCode::InvalidArgument, "field without grid");
    if (values_.size() != grid_->size()) {
      throw Error(ErrorCode::GridMismatch, "value count does not match grid");
    }
    if (!values_.allFinite()) throw Error(ErrorCode::NonFinite, "field has NaN or Inf values");
  }

  static BasicField zeros(GridPtr grid) {
    const Index n = grid->size();
    return BasicField(std::move(grid), RealArray::Zero(n));
  }

  static BasicField constant(GridPtr grid, Scalar c) {
    const Index n = grid->size();
    return BasicField(std::move(grid), RealArray::Constant(n, c));
  }

  template <typename Fn>
  static BasicField sample(GridPtr grid, Fn&& fn) {
    RealArray v(grid->size());
    const auto& x = grid->nodes();
    for (Index j = 0; j < v.size(); ++j) v[j] = fn(x[j]);
    return BasicField(std::move(grid), std::move(v));
  }

  // Builds a field from half-spectrum coefficients (normalized as above).
  // Imaginary parts of the zero and Nyquist modes are dropped.
  static BasicField from_spectrum(GridPtr grid, ComplexArray half) {
    if (half.size() != grid->half_size()) {
      throw Error(ErrorCode::GridMismatch, "spectrum length does not match grid");
    }
    if (!half.allFinite()) throw Error(ErrorCode::NonFinite, "spectrum has NaN or Inf entries");
    half[0] = Complex(half[0].real(), 0);
    half[half.size() - 1] = Complex(half[half.size() - 1].real(), 0);
    RealArray v(grid->size());
    detail::fft_engine<Scalar>().inv(v.data(), half.data(), grid->size());
    BasicField f(std::move(grid), std::move(v));
    f.cache_->store(std::move(half));
    return f;
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  Index size() const { return values_.size(); }
  const RealArray& values() const { return values_; }
  Scalar operator[](Index j) const { return values_[j]; }

  const ComplexArray& spectrum() const {
    if (!cache_->ready.load(std::memory_order_acquire)) {
      std::lock_guard<std::mutex> lock(cache_->mutex);
      if (!cache_->ready.load(std::memory_order_relaxed)) {
        ComplexArray half(grid_->half_size());
        detail::fft_engine<Scalar>().fwd(half.data(), values_.data(), values_.size());
        half /= Scalar(values_.size());
        cache_->store(std::move(half));
      }
    }
    return cache_->spectrum;
  }

  bool has_spectrum() const { return cache_->ready.load(std::memory_order_acquire); }

  Scalar mean() const { return values_.mean(); }
  Scalar max_abs() const { return values_.abs().maxCoeff(); }

 private:
  struct Cache {
    std::mutex mutex;
    std::atomic<bool> ready{false};
    ComplexArray spectrum;

    void store(ComplexArray s) {
      spectrum = std::move(s);
      ready.store(true, std::memory_order_release);
    }
  };

  GridPtr grid_;
  RealArray values_;
  std::shared_ptr<Cache> cache_;
};

template <typename Scalar>
struct BasicParams {
  Scalar mu = 0;
  Scalar eps = 0;
  Scalar mu_max = 1;
  Scalar h_min = Scalar(0.2);

  void validate() const {
    if (!(mu_max > 0)) throw Error(ErrorCode::InvalidArgument, "mu_max must be positive");
    if (!(h_min > 0)) throw Error(ErrorCode::InvalidArgument, "h_min must be positive");
    if (!(mu >= 0 && mu <= mu_max)) {
      throw Error(ErrorCode::InvalidArgument, "mu outside [0, mu_max]");
    }
    if (!(eps >= 0 && eps <= 1)) throw Error(ErrorCode::InvalidArgument, "eps outside [0, 1]");
  }
};

// sqrt(tanh(a)/a) with a = sqrt(mu)|xi|, equal to 1 at a = 0.
template <typename Scalar>
Scalar fmu(Scalar xi, Scalar mu) {
  using std::abs;
  using std::sqrt;
  using std::tanh;
  if (mu == 0) return Scalar(1);
  const Scalar a = sqrt(mu) * abs(xi);
  if (a < Scalar(1e-4)) {
    const Scalar a2 = a * a;
    return sqrt(1 - a2 / 3 + 2 * a2 * a2 / 15);
  }
  return sqrt(tanh(a) / a);
}

enum class SymbolKind { Fmu, Fmu2, FmuInv, Derivative, AntiDerivative, Identity, Custom };

template <typename Scalar>
class BasicSymbol {
 public:
  using Complex = std::complex<Scalar>;
  using Params = BasicParams<Scalar>;
  using Evaluator = std::function<Complex(Scalar, const Params&)>;
  using ComplexArray = Eigen::Array<Complex, Eigen::Dynamic, 1>;

  explicit BasicSymbol(SymbolKind kind) : kind_(kind) {
    if (kind == SymbolKind::Custom) {
      throw Error(ErrorCode::InvalidArgument, "custom symbol needs an evaluator");
    }
  }
  explicit BasicSymbol(Evaluator evaluator)
      : kind_(SymbolKind::Custom), evaluator_(std::move(evaluator)) {}

  SymbolKind kind() const { return kind_; }
  bool odd() const { return kind_ == SymbolKind::Derivative || kind_ == SymbolKind::AntiDerivative; }

  Complex operator()(Scalar xi, const Params& p) const {
    switch (kind_) {
      case SymbolKind::Fmu: return Complex(fmu(xi, p.mu), 0);
      case SymbolKind::Fmu2: {
        const Scalar f = fmu(xi, p.mu);
        return Complex(f * f, 0);
      }
      case SymbolKind::FmuInv: return Complex(1 / fmu(xi, p.mu), 0);
      case SymbolKind::Derivative: return Complex(0, xi);
      case SymbolKind::AntiDerivative: return xi == 0 ? Complex(0) : Complex(0, -1 / xi);
      case SymbolKind::Identity: return Complex(1, 0);
      case SymbolKind::Custom: return evaluator_(xi, p);
    }
    return Complex(0);
  }

  // Samples on the stored half lattice.  Odd symbols vanish on the Nyquist
  // mode; a custom symbol keeps only its real part there.
  ComplexArray sample(const BasicGrid<Scalar>& grid, const Params& p) const {
    const auto& xi = grid.half_frequencies();
    ComplexArray out(xi.size());
    for (Index k = 0; k < xi.size(); ++k) out[k] = (*this)(xi[k], p);
    const Index nyq = xi.size() - 1;
    if (odd()) {
      out[nyq] = Complex(0);
    } else if (kind_ == SymbolKind::Custom) {
      out[nyq] = Complex(out[nyq].real(), 0);
    }
    return out;
  }

 private:
  SymbolKind kind_;
  Evaluator evaluator_;
};

enum class MeanPolicy {
  Strict,   // reject fields whose mean exceeds the tolerance
  Project,  // silently annihilate the zero mode
};

// ---- free functions -------------------------------------------------------

template <typename Scalar>
void check_same_grid(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  if (f.grid_ptr() != g.grid_ptr() && !(f.grid() == g.grid())) {
    throw Error(ErrorCode::GridMismatch, "fields live on different grids");
  }
}

template <typename Scalar>
Scalar mean_tolerance(const BasicField<Scalar>& f) {
  return Scalar(1e-10) * (1 + f.max_abs());
}

template <typename Scalar>
void require_mean_zero(const BasicField<Scalar>& f, const char* what) {
  using std::abs;
  const Scalar m = f.mean();
  if (abs(m) > mean_tolerance(f)) {
    throw Error(ErrorCode::NonZeroMean,
                std::string(what) + " has mean " + std::to_string(static_cast<double>(m)));
  }
}

// Multiplies the spectrum by precomputed half-lattice symbol samples.
template <typename Scalar>
BasicField<Scalar> apply_multiplier(const typename BasicField<Scalar>::ComplexArray& samples,
                                    const BasicField<Scalar>& f) {
  if (samples.size() != f.grid().half_size()) {
    throw Error(ErrorCode::GridMismatch, "symbol samples do not match grid");
  }
  return BasicField<Scalar>::from_spectrum(f.grid_ptr(), samples * f.spectrum());
}

template <typename Scalar>
BasicField<Scalar> apply_multiplier(const BasicSymbol<Scalar>& sym, const BasicField<Scalar>& f,
                                    const BasicParams<Scalar>& p) {
  if (sym.kind() == SymbolKind::Identity) return f;
  if ((sym.kind() == SymbolKind::Fmu || sym.kind() == SymbolKind::Fmu2 ||
       sym.kind() == SymbolKind::FmuInv) &&
      p.mu == 0) {
    return f;
  }
  if (sym.kind() == SymbolKind::AntiDerivative) require_mean_zero(f, "anti_derivative input");
  return apply_multiplier<Scalar>(sym.sample(f.grid(), p), f);
}

template <typename Scalar>
BasicField<Scalar> derivative(const BasicField<Scalar>& f) {
  const auto& xi = f.grid().half_frequencies();
  typename BasicField<Scalar>::ComplexArray c = f.spectrum();
  for (Index k = 0; k + 1 < c.size(); ++k) c[k] *= std::complex<Scalar>(0, xi[k]);
  c[c.size() - 1] = 0;
  return BasicField<Scalar>::from_spectrum(f.grid_ptr(), std::move(c));
}

template <typename Scalar>
BasicField<Scalar> anti_derivative(const BasicField<Scalar>& f,
                                   MeanPolicy policy = MeanPolicy::Strict) {
  if (policy == MeanPolicy::Strict) require_mean_zero(f, "anti_derivative input");
  const auto& xi = f.grid().half_frequencies();
  typename BasicField<Scalar>::ComplexArray c = f.spectrum();
  c[0] = 0;
  for (Index k = 1; k + 1 < c.size(); ++k) c[k] *= std::complex<Scalar>(0, -1 / xi[k]);
  c[c.size() - 1] = 0;
  return BasicField<Scalar>::from_spectrum(f.grid_ptr(), std::move(c));
}

// Removes the zero mode.
template <typename Scalar>
BasicField<Scalar> project_mean_zero(const BasicField<Scalar>& f) {
  return BasicField<Scalar>(f.grid_ptr(), f.values() - f.mean());
}

// 2/3-rule truncation of the spectrum.
template <typename Scalar>
BasicField<Scalar> dealias(const BasicField<Scalar>& f) {
  typename BasicField<Scalar>::ComplexArray c = f.spectrum();
  for (Index k = 0; k < c.size(); ++k) {
    if (!f.grid().resolved(k)) c[k] = 0;
  }
  return BasicField<Scalar>::from_spectrum(f.grid_ptr(), std::move(c));
}

template <typename Scalar>
BasicField<Scalar> pointwise_product(const BasicField<Scalar>& f, const BasicField<Scalar>& g,
                                     bool dealiased = true) {
  check_same_grid(f, g);
  BasicField<Scalar> out(f.grid_ptr(), f.values() * g.values());
  return dealiased ? dealias(out) : out;
}

// Nodewise map, e.g. sqrt(1 + eps zeta).
template <typename Scalar, typename Fn>
BasicField<Scalar> pointwise(const BasicField<Scalar>& f, Fn&& fn) {
  return BasicField<Scalar>(f.grid_ptr(), f.values().unaryExpr(std::forward<Fn>(fn)));
}

// Trapezoidal quadrature, exact for the discrete Fourier basis.
template <typename Scalar>
Scalar integral(const BasicField<Scalar>& f) {
  return f.values().sum() * f.grid().spacing();
}

template <typename Scalar>
Scalar inner(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  check_same_grid(f, g);
  return (f.values() * g.values()).sum() * f.grid().spacing();
}

// sqrt(L sum_k (1 + xi_k^2)^alpha |c_k|^2) over the full lattice.
template <typename Scalar>
Scalar norm_hs(const BasicField<Scalar>& f, Scalar alpha) {
  using std::pow;
  using std::sqrt;
  if (alpha < 0) throw Error(ErrorCode::InvalidArgument, "norm_hs needs alpha >= 0");
  const auto& c = f.spectrum();
  const auto& xi = f.grid().half_frequencies();
  const Index last = c.size() - 1;
  Scalar sum = 0;
  for (Index k = 0; k <= last; ++k) {
    const Scalar w = (k == 0 || k == last) ? Scalar(1) : Scalar(2);
    const Scalar weight = alpha == 0 ? Scalar(1) : pow(1 + xi[k] * xi[k], alpha);
    sum += w * weight * std::norm(c[k]);
  }
  return sqrt(f.grid().length() * sum);
}

template <typename Scalar>
Scalar norm_l2(const BasicField<Scalar>& f) {
  return norm_hs(f, Scalar(0));
}

// ---- arithmetic -----------------------------------------------------------
// Linear combinations carry a known spectrum forward so that chains of
// multipliers do not redo transforms.

namespace detail {

template <typename Scalar, typename ValueOp, typename SpecOp>
BasicField<Scalar> combine(const BasicField<Scalar>& f, const BasicField<Scalar>& g, ValueOp vop,
                           SpecOp sop) {
  check_same_grid(f, g);
  if (f.has_spectrum() && g.has_spectrum()) {
    return BasicField<Scalar>::from_spectrum(f.grid_ptr(), sop(f.spectrum(), g.spectrum()));
  }
  return BasicField<Scalar>(f.grid_ptr(), vop(f.values(), g.values()));
}

}  // namespace detail

template <typename Scalar>
BasicField<Scalar> operator+(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  using RA = typename BasicField<Scalar>::RealArray;
  using CA = typename BasicField<Scalar>::ComplexArray;
  return detail::combine(
      f, g, [](const RA& a, const RA& b) -> RA { return a + b; },
      [](const CA& a, const CA& b) -> CA { return a + b; });
}

template <typename Scalar>
BasicField<Scalar> operator-(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  using RA = typename BasicField<Scalar>::RealArray;
  using CA = typename BasicField<Scalar>::ComplexArray;
  return detail::combine(
      f, g, [](const RA& a, const RA& b) -> RA { return a - b; },
      [](const CA& a, const CA& b) -> CA { return a - b; });
}

template <typename Scalar>
BasicField<Scalar> operator*(Scalar a, const BasicField<Scalar>& f) {
  if (f.has_spectrum()) {
    return BasicField<Scalar>::from_spectrum(f.grid_ptr(), f.spectrum() * a);
  }
  return BasicField<Scalar>(f.grid_ptr(), a * f.values());
}

template <typename Scalar>
BasicField<Scalar> operator*(const BasicField<Scalar>& f, Scalar a) {
  return a * f;
}

template <typename Scalar>
BasicField<Scalar> operator-(const BasicField<Scalar>& f) {
  return Scalar(-1) * f;
}

template <typename Scalar>
BasicField<Scalar> operator+(const BasicField<Scalar>& f, Scalar c) {
  return BasicField<Scalar>(f.grid_ptr(), f.values() + c);
}

template <typename Scalar>
BasicField<Scalar> operator+(Scalar c, const BasicField<Scalar>& f) {
  return f + c;
}

// Nodewise product without dealiasing; for multiplying by smooth weights.
template <typename Scalar>
BasicField<Scalar> operator*(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  return pointwise_product(f, g, false);
}

using Grid = BasicGrid<double>;
using GridPtr = BasicGridPtr<double>;
using Field = BasicField<double>;
using Params = BasicParams<double>;
using Symbol = BasicSymbol<double>;
using ComplexArray = Field::ComplexArray;
using RealArray = Field::RealArray;

}  // namespace whitham
