#pragma once

// Thresholds, limit laws and Poisson-approximation helpers for the extreme
// inradii, plus a Kolmogorov-Smirnov distance for goodness of fit.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "linetess/geometry.hpp"

namespace linetess {

/// Level v = (log(pi rho) + t) / (2 pi) at which the expected number of
/// cells in W_rho with a larger inradius is tau = e^{-t}.
struct Threshold {
  double rho = 0.0;
  double t = 0.0;
  double v = 0.0;
  double tau = 0.0;
};

Threshold threshold_v(double rho, double t);

/// Limit of P(m[r] >= t / (2 pi^2 rho)): e^{-t} sum_{k<r} t^k / k!.
double limit_survival_min(double t, int r);

/// Limit of P(M[r] <= v_rho(t)): e^{-e^{-t}} sum_{k<r} e^{-tk} / k!.
double limit_cdf_max(double t, int r);

/// Inradius law of the typical cell, 1 - e^{-2 pi v}.
double typical_inradius_cdf(double v);

std::size_t exceedance_count(std::span<const double> radii, double v);

/// n[k-1] is the number of connected components of size k.
struct ClusterProfile {
  std::vector<std::size_t> n;

  std::size_t total() const;  // sum_k k n_k
};

/// Components of the graph linking centres i, j when |z_i - z_j| <= 2 R^3,
/// i.e. when the discs B(z_i, R^3) and B(z_j, R^3) meet.
ClusterProfile cluster_profile(std::span<const Point> centers, double R);

/// Stirling number of the second kind S(n, k), 1 <= k <= n <= 20.
std::uint64_t stirling2(int n, int k);

/// E[Po(tau)^n] = sum_{K=1}^n S(n, K) tau^K.
double poisson_moment(int n, double tau);

/// sup |F_n - F| over both one-sided gaps of the empirical CDF.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

}  // namespace linetess
