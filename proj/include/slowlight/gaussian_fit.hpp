#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace slowlight {

/// Least-squares Gaussian A exp(-(t-t0)^2 / 2 sigma^2) + baseline.
struct GaussianFit {
  double amplitude = 0.0;
  double center = 0.0;
  double sigma = 0.0;
  double baseline = 0.0;
  double residual_rms = 0.0; // RMS residual over all samples
  double center_variance = 0.0; // from the linearized covariance
};

namespace detail {

inline double median_of(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty range");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

} // namespace detail

/// Deterministic Levenberg-Marquardt fit. Initialization: baseline from the
/// median of the first decile of samples, center and width from the first
/// and second moments of the baseline-subtracted trace.
inline GaussianFit fit_gaussian_peak(const Eigen::ArrayXd& t,
                                     const Eigen::ArrayXd& y) {
  const Eigen::Index n = t.size();
  if (n < 8 || y.size() != n)
    throw std::invalid_argument("trace too short for a Gaussian fit");

  std::vector<double> all(y.data(), y.data() + n);
  const double peak = *std::max_element(all.begin(), all.end());
  const double med = detail::median_of(all);
  if (med > 0.0 && peak < 3.0 * med)
    throw std::domain_error("no peak: maximum under 3x the trace median");
  if (!(peak > 0.0)) throw std::domain_error("no peak: trace is not positive");

  std::vector<double> first_decile(y.data(), y.data() + std::max<Eigen::Index>(n / 10, 1));
  const double b0 = detail::median_of(first_decile);

  Eigen::ArrayXd w = (y - b0).max(0.0);
  const double wsum = w.sum();
  if (!(wsum > 0.0)) throw std::domain_error("no peak: flat trace");
  double t0 = (w * t).sum() / wsum;
  double sig = std::sqrt((w * (t - t0).square()).sum() / wsum);
  const double dt = t[1] - t[0];
  sig = std::max(sig, dt);

  Eigen::Vector4d p(peak - b0, t0, sig, b0);

  auto residuals = [&](const Eigen::Vector4d& q, Eigen::ArrayXd& r) {
    const Eigen::ArrayXd u = (t - q[1]) / q[2];
    r = q[0] * (-0.5 * u.square()).exp() + q[3] - y;
  };

  Eigen::ArrayXd r(n), r_try(n);
  residuals(p, r);
  double ssr = r.square().sum();
  double lambda = 1e-3;
  Eigen::MatrixXd jac(n, 4);
  Eigen::Matrix4d jtj_final = Eigen::Matrix4d::Zero();

  for (int iter = 0; iter < 200; ++iter) {
    const Eigen::ArrayXd u = (t - p[1]) / p[2];
    const Eigen::ArrayXd e = (-0.5 * u.square()).exp();
    jac.col(0) = e.matrix();
    jac.col(1) = (p[0] * e * u / p[2]).matrix();
    jac.col(2) = (p[0] * e * u.square() / p[2]).matrix();
    jac.col(3) = Eigen::VectorXd::Ones(n);

    const Eigen::Matrix4d jtj = jac.transpose() * jac;
    const Eigen::Vector4d g = jac.transpose() * r.matrix();
    jtj_final = jtj;

    bool accepted = false;
    for (int attempt = 0; attempt < 24 && !accepted; ++attempt) {
      Eigen::Matrix4d damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-300);
      const Eigen::Vector4d step = damped.ldlt().solve(-g);
      Eigen::Vector4d trial = p + step;
      trial[2] = std::abs(trial[2]);
      if (trial[2] < 0.25 * dt) trial[2] = 0.25 * dt;
      residuals(trial, r_try);
      const double ssr_try = r_try.square().sum();
      if (ssr_try < ssr) {
        p = trial;
        r = r_try;
        const double gain = (ssr - ssr_try) / std::max(ssr, 1e-300);
        ssr = ssr_try;
        lambda = std::max(lambda * 0.3, 1e-14);
        accepted = true;
        if (gain < 1e-13) iter = 200; // converged
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }

  GaussianFit fit;
  fit.amplitude = p[0];
  fit.center = p[1];
  fit.sigma = p[2];
  fit.baseline = p[3];
  fit.residual_rms = std::sqrt(ssr / n);

  // rms residual gate, relative to the data peak height
  const double scale = peak - b0;
  if (!(fit.residual_rms < 0.05 * scale))
    throw std::domain_error("poor fit: residual RMS above 5% of the peak");

  const double dof = double(n - 4);
  const Eigen::Matrix4d cov =
      (ssr / dof) * jtj_final.ldlt().solve(Eigen::Matrix4d::Identity());
  fit.center_variance = std::max(cov(1, 1), 0.0);
  return fit;
}

} // namespace slowlight
