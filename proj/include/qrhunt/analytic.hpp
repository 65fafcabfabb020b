#pragma once

// The Dickman function rho, the explicit inequality
// x - (2x)^b/b + x^b/b >= (1-b) x ln x / (4e^2) near b = 1 together with its
// wider-range variant, and the smooth-density comparison Psi(N,M) vs rho.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qrhunt/counting.hpp"

namespace qrhunt {

/// rho on a uniform grid, built by stepwise midpoint integration of the
/// delay equation u rho'(u) = -rho(u-1) with rho = 1 on [0, 1]. The step is
/// snapped to an integer number of nodes per unit so the kink at u = 1 falls
/// on a node; evaluation interpolates linearly between nodes.
class DickmanRho {
 public:
  explicit DickmanRho(double step = 1e-4, double umax = 20.0) {
    if (!(step > 0)) throw std::invalid_argument("DickmanRho: step must be positive");
    if (!(umax >= 1) || !(umax <= 2000))
      throw std::invalid_argument("DickmanRho: umax must lie in [1, 2000]");
    per_unit_ = static_cast<std::size_t>(std::max<long long>(1, std::llround(1.0 / step)));
    step_ = 1.0 / static_cast<double>(per_unit_);
    umax_ = umax;
    const std::size_t last = static_cast<std::size_t>(std::ceil(umax * per_unit_));
    values_.assign(last + 1, 1.0);
    for (std::size_t k = per_unit_; k < last; ++k) {
      // Midpoint u_m = (k + 1/2) h; the delayed node u_m - 1 sits midway
      // between grid points k - per_unit_ and k - per_unit_ + 1.
      const double um = (static_cast<double>(k) + 0.5) * step_;
      const double delayed = 0.5 * (values_[k - per_unit_] + values_[k - per_unit_ + 1]);
      values_[k + 1] = values_[k] - step_ * delayed / um;
    }
  }

  double operator()(double u) const {
    if (u < 0) throw std::invalid_argument("DickmanRho: u must be nonnegative");
    if (u > umax_ * (1 + 1e-12))
      throw std::invalid_argument("DickmanRho: u beyond grid (umax)");
    if (u <= 1.0) return 1.0;
    const double t = u / step_;
    std::size_t k = static_cast<std::size_t>(t);
    if (k + 1 >= values_.size()) k = values_.size() - 2;
    const double frac = t - static_cast<double>(k);
    return values_[k] * (1.0 - frac) + values_[k + 1] * frac;
  }

  double step() const { return step_; }
  double umax() const { return umax_; }

 private:
  double step_ = 0.0;
  double umax_ = 0.0;
  std::size_t per_unit_ = 0;
  std::vector<double> values_;
};

inline double dickman_rho(double u, double step = 1e-4) {
  const double umax = std::max(2.0, std::ceil(u) + 1.0);
  return DickmanRho(step, umax)(u);
}

/// A point (x, beta) of the inequality domain; x > e^4 throughout.
struct Lemma6Input {
  double x = 0.0;
  double beta = 0.0;
};

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

inline constexpr double kESquared = 7.38905609893065;  // e^2
inline constexpr double kE4 = 54.598150033144236;      // e^4

namespace detail {

inline double window_lhs(double x, double beta) {
  return x - std::pow(2.0 * x, beta) / beta + std::pow(x, beta) / beta;
}

}  // namespace detail

/// Main case: 0 < 1 - beta <= 2 / ln x. Returns both sides of
/// lhs >= (1-beta) x ln x / (4 e^2).
inline InequalitySides lemma6_sides(const Lemma6Input& in) {
  if (!(in.x > kE4)) throw std::invalid_argument("lemma6_sides: x must exceed e^4");
  const double gap = 1.0 - in.beta;
  // one ulp of slack on the domain boundary: beta built as 1 - 2/ln x does
  // not always reproduce the gap exactly after the cancellation
  if (!(gap > 0.0) || !(gap <= (2.0 / std::log(in.x)) * (1.0 + 1e-12)))
    throw std::invalid_argument("lemma6_sides: need 0 < 1 - beta <= 2/ln x");
  return {detail::window_lhs(in.x, in.beta),
          gap * in.x * std::log(in.x) / (4.0 * kESquared)};
}

/// Wider range 1/2 <= beta < 1: lhs >= (1-beta) x / e^2.
inline InequalitySides remark_sides(const Lemma6Input& in) {
  if (!(in.x > kE4)) throw std::invalid_argument("remark_sides: x must exceed e^4");
  if (!(in.beta >= 0.5) || !(in.beta < 1.0))
    throw std::invalid_argument("remark_sides: need 1/2 <= beta < 1");
  return {detail::window_lhs(in.x, in.beta), (1.0 - in.beta) * in.x / kESquared};
}

struct SweepRow {
  double x = 0.0;
  double beta = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

/// Main-case sweep: x log-spaced over (e^4, x_hi], beta over
/// 1 - beta = (j / beta_points) * 2/ln x for j = 1..beta_points.
inline std::vector<SweepRow> lemma6_sweep(int x_points = 200, int beta_points = 50,
                                          double x_hi = 1e8) {
  if (x_points < 1 || beta_points < 1)
    throw std::invalid_argument("lemma6_sweep: grid sizes must be positive");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(x_points) * beta_points);
  const double ln_hi = std::log(x_hi);
  for (int i = 1; i <= x_points; ++i) {
    const double x = std::exp(4.0 + (ln_hi - 4.0) * i / x_points);
    for (int j = 1; j <= beta_points; ++j) {
      const double beta = 1.0 - (2.0 / std::log(x)) * j / beta_points;
      const auto [lhs, rhs] = lemma6_sides({x, beta});
      rows.push_back({x, beta, lhs, rhs, lhs - rhs});
    }
  }
  return rows;
}

/// Wider-range sweep: same x grid, beta linear over [1/2, 1 - 2/ln x].
inline std::vector<SweepRow> remark_sweep(int x_points = 200, int beta_points = 50,
                                          double x_hi = 1e8) {
  if (x_points < 1 || beta_points < 2)
    throw std::invalid_argument("remark_sweep: grid sizes must be positive");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(x_points) * beta_points);
  const double ln_hi = std::log(x_hi);
  for (int i = 1; i <= x_points; ++i) {
    const double x = std::exp(4.0 + (ln_hi - 4.0) * i / x_points);
    const double beta_top = 1.0 - 2.0 / std::log(x);
    for (int j = 0; j < beta_points; ++j) {
      const double beta = 0.5 + (beta_top - 0.5) * j / (beta_points - 1);
      const auto [lhs, rhs] = remark_sides({x, beta});
      rows.push_back({x, beta, lhs, rhs, lhs - rhs});
    }
  }
  return rows;
}

/// Side-by-side comparison of the exact smooth count with the Dickman
/// prediction at u = ln N / ln M. Reporting only; the suite checks a wide
/// band at one calibrated point and nothing else.
struct SmoothDensityReport {
  i64 psi = 0;
  double u = 0.0;
  double rho_prediction = 0.0;
  double ratio = 0.0;
  std::optional<double> exp_bound;  // exp(-3A(ln 3A + ln ln A)) N, for A > 1
};

inline SmoothDensityReport smooth_density_report(double A, i64 N, i64 M,
                                                 const DickmanRho& rho) {
  if (!(A >= 1)) throw std::invalid_argument("smooth_density_report: A must be >= 1");
  if (N < 1 || M < 2) throw std::invalid_argument("smooth_density_report: need N >= 1, M >= 2");
  SmoothDensityReport out;
  out.psi = psi_smooth(N, M);
  out.u = std::log(static_cast<double>(N)) / std::log(static_cast<double>(M));
  out.rho_prediction = rho(out.u) * static_cast<double>(N);
  out.ratio = static_cast<double>(out.psi) / out.rho_prediction;
  if (A > 1) {
    const double a3 = 3.0 * A;
    out.exp_bound = std::exp(-a3 * (std::log(a3) + std::log(std::log(A)))) *
                    static_cast<double>(N);
  }
  return out;
}

}  // namespace qrhunt
