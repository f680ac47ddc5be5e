#include "linetess/extremes.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>

namespace linetess {

Threshold threshold_v(double rho, double t) {
  if (!(rho > 0.0)) throw DomainError("threshold_v: rho must be positive");
  return {rho, t, (std::log(kPi * rho) + t) / kTwoPi, std::exp(-t)};
}

namespace {

// e^{-mean} sum_{k<r} mean^k / k!, i.e. P(Po(mean) <= r - 1).
double poisson_lower_tail(double mean, int r) {
  if (r < 1) throw DomainError("order statistic index must be >= 1");
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < r; ++k) {
    term *= mean / k;
    sum += term;
  }
  return std::exp(-mean) * sum;
}

}  // namespace

double limit_survival_min(double t, int r) {
  if (t < 0.0) throw DomainError("limit_survival_min: t must be >= 0");
  return poisson_lower_tail(t, r);
}

double limit_cdf_max(double t, int r) {
  return poisson_lower_tail(std::exp(-t), r);
}

double typical_inradius_cdf(double v) {
  if (v < 0.0) throw DomainError("typical_inradius_cdf: v must be >= 0");
  return -std::expm1(-kTwoPi * v);
}

std::size_t exceedance_count(std::span<const double> radii, double v) {
  return static_cast<std::size_t>(std::count_if(
      radii.begin(), radii.end(), [v](double r) { return r > v; }));
}

std::size_t ClusterProfile::total() const {
  std::size_t sum = 0;
  for (std::size_t k = 0; k < n.size(); ++k) sum += (k + 1) * n[k];
  return sum;
}

ClusterProfile cluster_profile(std::span<const Point> centers, double R) {
  if (centers.empty()) throw DomainError("cluster_profile: no centres");
  if (!(R > 0.0)) throw DomainError("cluster_profile: R must be positive");
  const std::size_t k = centers.size();
  const double reach = 2.0 * R * R * R;

  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (norm(centers[i] - centers[j]) <= reach) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<std::size_t> size(k, 0);
  for (std::size_t i = 0; i < k; ++i) ++size[find(i)];

  ClusterProfile profile;
  profile.n.assign(k, 0);
  for (std::size_t s : size) {
    if (s > 0) ++profile.n[s - 1];
  }
  return profile;
}

std::uint64_t stirling2(int n, int k) {
  if (n < 1 || k < 1 || k > n || n > 20) {
    throw DomainError(fmt::format("stirling2: ({}, {}) out of range", n, k));
  }
  // row[j] = S(m, j)
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int j = m; j >= 1; --j) {
      row[j] = static_cast<std::uint64_t>(j) * row[j] + row[j - 1];
    }
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(k)];
}

double poisson_moment(int n, double tau) {
  if (n < 1) throw DomainError("poisson_moment: n must be >= 1");
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    sum += static_cast<double>(stirling2(n, k)) * std::pow(tau, k);
  }
  return sum;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptySampleError("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    worst = std::max({worst, above - f, f - below});
  }
  return worst;
}

}  // namespace linetess
