#include "coalab/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coalab::stats {

void RunningMoments::merge(const RunningMoments& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double d = other.mean_ - mean_;
    const double n = na + nb;
    mean_ += d * nb / n;
    m2_ += other.m2_ + d * d * na * nb / n;
    n_ += other.n_;
}

double RunningMoments::standard_error() const noexcept {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

double chi_square_survival(double x, double dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_survival: dof must be positive");
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

TestResult chi_square_gof(std::span<const std::uint64_t> observed,
                          std::span<const double> probabilities) {
    if (observed.size() != probabilities.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    double total = 0.0;
    for (auto o : observed) total += static_cast<double>(o);
    double stat = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = total * probabilities[i];
        if (e <= 0.0) {
            if (observed[i] != 0) return {INFINITY, 0.0};
            continue;
        }
        const double d = static_cast<double>(observed[i]) - e;
        stat += d * d / e;
        ++cells;
    }
    if (cells < 2) return {0.0, 1.0};
    return {stat, chi_square_survival(stat, cells - 1)};
}

TestResult chi_square_independence(std::span<const std::uint64_t> table, std::size_t rows,
                                   std::size_t cols) {
    if (table.size() != rows * cols) throw std::invalid_argument("chi_square_independence: shape");
    std::vector<double> row_sum(rows, 0.0);
    std::vector<double> col_sum(cols, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = static_cast<double>(table[r * cols + c]);
            row_sum[r] += v;
            col_sum[c] += v;
            total += v;
        }
    const auto live_rows = std::count_if(row_sum.begin(), row_sum.end(), [](double v) { return v > 0; });
    const auto live_cols = std::count_if(col_sum.begin(), col_sum.end(), [](double v) { return v > 0; });
    if (live_rows < 2 || live_cols < 2) return {0.0, 1.0};
    double stat = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double e = row_sum[r] * col_sum[c] / total;
            if (e <= 0.0) continue;
            const double d = static_cast<double>(table[r * cols + c]) - e;
            stat += d * d / e;
        }
    const double dof = static_cast<double>((live_rows - 1) * (live_cols - 1));
    return {stat, chi_square_survival(stat, dof)};
}

TestResult chi_square_homogeneity(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("chi_square_homogeneity: size mismatch");
    std::vector<std::uint64_t> table;
    table.reserve(2 * a.size());
    table.insert(table.end(), a.begin(), a.end());
    table.insert(table.end(), b.begin(), b.end());
    return chi_square_independence(table, 2, a.size());
}

}  // namespace coalab::stats
