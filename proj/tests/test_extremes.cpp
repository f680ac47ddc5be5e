#include <doctest.h>

#include <functional>
#include <limits>
#include <random>

#include "linetess/extremes.hpp"

using namespace linetess;

namespace {

// Number of partitions of {0..n-1} into exactly k blocks, by assigning each
// element to an existing block or a new one (restricted growth strings).
std::uint64_t count_partitions(int n, int k) {
  std::function<std::uint64_t(int, int)> go = [&](int placed, int blocks) {
    if (placed == n) return static_cast<std::uint64_t>(blocks == k);
    std::uint64_t total = 0;
    for (int b = 0; b <= blocks && b < k; ++b) {
      total += go(placed + 1, b == blocks ? blocks + 1 : blocks);
    }
    return total;
  };
  return go(0, 0);
}

// sum_j j^n e^{-tau} tau^j / j! until the terms drop below 1e-16.
double poisson_series_moment(int n, double tau) {
  double sum = 0.0;
  double weight = std::exp(-tau);  // P(Po = 0)
  for (int j = 1; j < 1000; ++j) {
    weight *= tau / j;
    const double term = std::pow(j, n) * weight;
    sum += term;
    if (j > tau && term < 1e-16) break;
  }
  return sum;
}

double poisson_cdf(double mean, int k) {
  double term = std::exp(-mean), sum = term;
  for (int j = 1; j <= k; ++j) {
    term *= mean / j;
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("threshold") {
  const Threshold a = threshold_v(std::exp(kTwoPi) / kPi, 0.0);
  CHECK(a.v == doctest::Approx(1.0));
  CHECK(a.tau == doctest::Approx(1.0));
  CHECK(threshold_v(1e4, 1.0 + kTwoPi).v ==
        doctest::Approx(threshold_v(1e4, 1.0).v + 1.0));
  CHECK(threshold_v(1e4, 2.0).tau == doctest::Approx(std::exp(-2.0)));
  CHECK_THROWS_AS(threshold_v(0.0, 1.0), DomainError);
}

TEST_CASE("limit laws") {
  for (int r = 1; r <= 4; ++r) CHECK(limit_survival_min(0.0, r) == 1.0);
  CHECK(limit_survival_min(1.0, 1) == doctest::Approx(0.36787944117144233));
  CHECK(limit_survival_min(1.0, 2) == doctest::Approx(0.73575888234288467));
  CHECK(limit_cdf_max(0.0, 1) == doctest::Approx(0.36787944117144233));
  CHECK(limit_cdf_max(0.0, 2) == doctest::Approx(0.73575888234288467));
  CHECK(limit_cdf_max(50.0, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(limit_survival_min(-1.0, 1), DomainError);
  CHECK_THROWS_AS(limit_cdf_max(0.0, 0), DomainError);
}

TEST_CASE("limit laws are Poisson lower tails") {
  for (int r = 1; r <= 5; ++r) {
    for (double t = 0.0; t <= 6.0; t += 0.25) {
      CHECK(std::abs(limit_survival_min(t, r) - poisson_cdf(t, r - 1)) < 1e-12);
      CHECK(std::abs(limit_cdf_max(t - 3.0, r) -
                     poisson_cdf(std::exp(3.0 - t), r - 1)) < 1e-12);
      if (t > 0.0) {
        CHECK(limit_survival_min(t, r) < limit_survival_min(t - 0.25, r));
      }
      CHECK(limit_survival_min(t, r + 1) >= limit_survival_min(t, r));
    }
  }
}

TEST_CASE("typical inradius law") {
  CHECK(typical_inradius_cdf(0.0) == 0.0);
  CHECK(typical_inradius_cdf(std::log(2.0) / kTwoPi) == doctest::Approx(0.5));
  CHECK(typical_inradius_cdf(100.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(typical_inradius_cdf(-1.0), DomainError);
}

TEST_CASE("exceedance count") {
  const std::vector<double> radii{0.1, 0.5, 0.9};
  CHECK(exceedance_count(radii, 0.4) == 2);
  CHECK(exceedance_count({}, 0.4) == 0);
  CHECK(exceedance_count(radii, -std::numeric_limits<double>::infinity()) == 3);
  CHECK(exceedance_count(radii, 0.9) == 0);
}

TEST_CASE("cluster profile") {
  const double R = 1.0;  // link distance 2
  SUBCASE("isolated") {
    const std::vector<Point> c{{0, 0}, {10, 0}, {0, 10}};
    CHECK(cluster_profile(c, R).n == std::vector<std::size_t>{3, 0, 0});
  }
  SUBCASE("one pair and one triple") {
    const std::vector<Point> c{{0, 0}, {1.5, 0}, {50, 0}, {51.9, 0}, {53.8, 0}};
    CHECK(cluster_profile(c, R).n == std::vector<std::size_t>{0, 1, 1, 0, 0});
  }
  SUBCASE("single component") {
    const std::vector<Point> c{{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    CHECK(cluster_profile(c, R).n == std::vector<std::size_t>{0, 0, 0, 1});
  }
  SUBCASE("ties are edges") {
    const std::vector<Point> c{{0, 0}, {2, 0}};
    CHECK(cluster_profile(c, R).n == std::vector<std::size_t>{0, 1});
  }
  CHECK_THROWS_AS(cluster_profile({}, R), DomainError);
}

TEST_CASE("cluster profile sums to the number of centres") {
  std::mt19937_64 eng(31);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int n = 0; n < 200; ++n) {
    std::vector<Point> c(1 + n % 40);
    for (auto& p : c) p = {u(eng), u(eng)};
    const ClusterProfile prof = cluster_profile(c, 0.5 + u(eng) / 20.0);
    CHECK(prof.total() == c.size());
    CHECK(prof.n.size() == c.size());
  }
}

TEST_CASE("Stirling numbers of the second kind") {
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(5, 3) == 25);
  for (int n = 1; n <= 9; ++n) {
    CHECK(stirling2(n, 1) == 1);
    CHECK(stirling2(n, n) == 1);
    for (int k = 1; k <= n; ++k) CHECK(stirling2(n, k) == count_partitions(n, k));
  }
  CHECK(stirling2(20, 10) == 5917584964655ULL);
  CHECK_THROWS_AS(stirling2(3, 4), DomainError);
  CHECK_THROWS_AS(stirling2(0, 0), DomainError);
  CHECK_THROWS_AS(stirling2(21, 2), DomainError);
}

TEST_CASE("Poisson moments") {
  CHECK(poisson_moment(1, 0.7) == doctest::Approx(0.7));
  CHECK(poisson_moment(2, 0.7) == doctest::Approx(0.7 + 0.49));
  CHECK(poisson_moment(3, 1.0) == doctest::Approx(5.0));
  for (int n = 1; n <= 6; ++n) {
    for (double tau : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      CHECK(poisson_moment(n, tau) ==
            doctest::Approx(poisson_series_moment(n, tau)).epsilon(1e-10));
    }
  }
}

TEST_CASE("KS distance") {
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  CHECK(ks_distance({0.5}, uniform) == doctest::Approx(0.5));
  const int n = 99;
  std::vector<double> quantiles;
  for (int i = 1; i <= n; ++i) quantiles.push_back(i / (n + 1.0));
  CHECK(ks_distance(quantiles, uniform) <= 1.0 / (n + 1) + 1e-12);
  CHECK_THROWS_AS(ks_distance({}, uniform), EmptySampleError);

  // exponential(2 pi) draws by inversion
  int below = 0;
  for (int rep = 0; rep < 20; ++rep) {
    std::mt19937_64 eng(40 + rep);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> draws(10000);
    for (double& x : draws) x = -std::log1p(-u(eng)) / kTwoPi;
    below += ks_distance(draws, typical_inradius_cdf) < 0.02;
  }
  CHECK(below == 20);
}
