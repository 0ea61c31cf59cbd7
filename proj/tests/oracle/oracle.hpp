#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// Restricted growth strings of length n: every set partition of {0..n-1}.
inline std::vector<std::vector<int>> set_partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int max_label) {
        if (i == n) {
            out.push_back(a);
            return;
        }
        for (int v = 0; v <= max_label + 1; ++v) {
            a[static_cast<std::size_t>(i)] = v;
            rec(i + 1, std::max(max_label, v));
        }
    };
    if (n == 0) return {{}};
    a[0] = 0;
    rec(1, 0);
    return out;
}

inline long long bell(int n) {
    std::vector<long long> row{1};
    for (int i = 0; i < n; ++i) {
        std::vector<long long> next{row.back()};
        for (long long v : row) next.push_back(next.back() + v);
        row = next;
    }
    return row.front();
}

/// fine <= coarse in the refinement order (both label vectors).
inline bool refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
    for (std::size_t i = 0; i < fine.size(); ++i)
        for (std::size_t j = 0; j < fine.size(); ++j)
            if (fine[i] == fine[j] && coarse[i] != coarse[j]) return false;
    return true;
}

inline int block_count(const std::vector<int>& labels) {
    return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

/// Block sizes of a partition, descending.
inline std::vector<int> shape(const std::vector<int>& labels) {
    std::vector<int> sizes(static_cast<std::size_t>(block_count(labels)), 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

/// Number of set partitions of b elements with the given block sizes (groups
/// of size >= 2 plus s singletons), counted by brute force.
inline long long shape_count(int b, std::vector<int> groups, int s) {
    std::vector<int> target = groups;
    for (int i = 0; i < s; ++i) target.push_back(1);
    std::sort(target.rbegin(), target.rend());
    long long c = 0;
    for (const auto& p : set_partitions(b))
        if (shape(p) == target) ++c;
    return c;
}

/// B(k - alpha, b - k + alpha) / B(2 - alpha, alpha).
inline double beta_rate(double alpha, int b, int k) {
    return std::beta(k - alpha, b - k + alpha) / std::beta(2.0 - alpha, alpha);
}

/// (k-2)! (b-k)! / (b-1)! by integer products.
inline double bsz_rate(int b, int k) {
    double num = 1.0, den = 1.0;
    for (int i = 2; i <= k - 2; ++i) num *= i;
    for (int i = 2; i <= b - k; ++i) num *= i;
    for (int i = 2; i <= b - 1; ++i) den *= i;
    return num / den;
}

/// Pitman's exchangeable partition probability function for PD(alpha, 0):
/// probability of one particular partition of b elements with these block
/// sizes (singletons included), as products of rising factors.
inline double pd_eppf(double alpha, const std::vector<int>& sizes) {
    const int k = static_cast<int>(sizes.size());
    int b = 0;
    for (int n : sizes) b += n;
    double p = 1.0;
    for (int i = 1; i < k; ++i) p *= i * alpha;
    for (int j = 1; j < b; ++j) p /= j;
    for (int n : sizes)
        for (int j = 1; j < n; ++j) p *= j - alpha;
    return p;
}

/// E[prod eta_i^b_i] for eta ~ Dirichlet(1,...,1) (i.i.d. exponential Y):
/// Gamma(N) prod b_i! / Gamma(N + b).
inline double dirichlet_moment(int N, const std::vector<int>& b_list) {
    int b = 0;
    double lf = std::lgamma(N) ;
    for (int bi : b_list) {
        b += bi;
        lf += std::lgamma(bi + 1.0);
    }
    return std::exp(lf - std::lgamma(N + b));
}

/// I_p(u) for Y = 1/E: 2 u^((1-p)/2) K_(p-1)(2 sqrt u).
inline double inverse_exponential_Ip(int p, double u) {
    return 2.0 * std::pow(u, (1.0 - p) / 2.0) * std::cyl_bessel_k(std::abs(p - 1.0), 2.0 * std::sqrt(u));
}

/// Composite Simpson on [lo, hi] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

/// I_p(u) for the Pareto law P(Y >= y) = y^-alpha, y >= 1, by Simpson in
/// s = log y over [0, 60/alpha + log(60/u)].
inline double pareto_Ip(double alpha, int p, double u) {
    const double hi = std::log(1.0 + 80.0 / u) + 80.0 / alpha;
    return simpson([&](double s) { return alpha * std::exp((p - alpha) * s - u * std::exp(s)); }, 0.0, hi, 400000);
}

/// E_1(z) by Simpson on the integral of e^(-z/t)/t over t in (0,1].
inline double exponential_integral(double z) {
    // E_1(z) = int_{log z}^inf exp(-e^s) ds
    return simpson([](double s) { return std::exp(-std::exp(s)); }, std::log(z), std::log(60.0), 400000);
}

/// Mean and standard error of log sum_j 1/E_j over `samples` draws of N
/// exponentials, from a standard-library engine.
inline std::pair<double, double> log_sum_inverse_exponentials(int N, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::exponential_distribution<double> expo(1.0);
    double m = 0.0, m2 = 0.0;
    for (std::size_t i = 1; i <= samples; ++i) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += 1.0 / expo(eng);
        const double x = std::log(s);
        const double d = x - m;
        m += d / static_cast<double>(i);
        m2 += d * (x - m);
    }
    return {m, std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples))};
}

}  // namespace oracle
