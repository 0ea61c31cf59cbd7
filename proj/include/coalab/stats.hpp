#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace coalab::stats {

/// Welford accumulator for mean and variance.
class RunningMoments {
  public:
    void add(double x) noexcept {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    void merge(const RunningMoments& other) noexcept;

    std::uint64_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept {
        return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    }
    double standard_error() const noexcept;

  private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

struct TestResult {
    double statistic;
    double p_value;
};

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_survival(double lambda);

/// One-sample KS test against a continuous CDF.
template <typename Cdf>
TestResult ks_one_sample(std::vector<double> sample, Cdf&& cdf);

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double x, double dof);

/// Pearson goodness of fit. Cells with expected count zero must have zero
/// observations; they are dropped along with one degree of freedom each.
TestResult chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> probabilities);

/// Pearson independence test on an r x c contingency table (row-major).
TestResult chi_square_independence(std::span<const std::uint64_t> table, std::size_t rows,
                                   std::size_t cols);

/// Two-sample homogeneity test on category counts.
TestResult chi_square_homogeneity(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b);

/// Sup distance between the empirical CDF of a sorted sample and `cdf`.
template <typename Cdf>
double ks_statistic_sorted(const std::vector<double>& sorted, Cdf&& cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, f - lo, hi - f});
    }
    return d;
}

template <typename Cdf>
TestResult ks_one_sample(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double d = ks_statistic_sorted(sample, cdf);
    const double sn = std::sqrt(static_cast<double>(sample.size()));
    return {d, kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d)};
}

}  // namespace coalab::stats
