#include "coalab/moments.hpp"

#include "coalab/parallel.hpp"
#include "coalab/quadrature.hpp"
#include "coalab/rng.hpp"
#include "coalab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coalab {

namespace {

constexpr double kInnerTol = 1e-13;
constexpr double kExpUnderflow = 745.0;
constexpr std::uint64_t kStreamEtaMc = 11;
constexpr std::uint64_t kStreamNuSim = 12;

double gk(const std::function<double(double)>& f, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    return quad::integrate(f, lo, hi, kInnerTol);
}

/// alpha int_0^S e^{(p-alpha)s} e^{-u e^s} ds, s = log y, plus the tail beyond S.
double pareto_Ip(double alpha, int p, double u) {
    if (u >= kExpUnderflow) return 0.0;
    const double S = std::log(800.0 / u);
    const double c = p - alpha;
    auto f = [&](double s) { return alpha * std::exp(c * s - u * std::exp(s)); };
    double total = 0.0;
    const double peak = c > 0.0 ? std::log(c / u) : 0.0;
    if (peak > 0.0 && peak < S) total = gk(f, 0.0, peak) + gk(f, peak, S);
    else total = gk(f, 0.0, S);
    // Leading term of alpha int_Y^inf y^{c-1} e^{-uy} dy for uY large.
    const double Y = std::exp(S);
    total += alpha * std::pow(Y, c - 1.0) * std::exp(-u * Y) / u;
    return total;
}

double pareto_complement(double alpha, double u) {
    // alpha int_1^inf y^{-alpha-1} (1 - e^{-uy}) dy
    const double S = std::max(std::log(800.0 / u), 1.0);
    auto f = [&](double s) { return alpha * std::exp(-alpha * s) * -std::expm1(-u * std::exp(s)); };
    const double knee = -std::log(u);
    double total = (knee > 0.0 && knee < S) ? gk(f, 0.0, knee) + gk(f, knee, S) : gk(f, 0.0, S);
    total += std::exp(-alpha * S);
    return total;
}

/// int_0^inf x^{-p} e^{-u/x} e^{-x} dx over s = log x.
double inverse_exponential_Ip(int p, double u) {
    const double lo = std::log(u / kExpUnderflow);
    const double hi = std::log(kExpUnderflow);
    if (!(hi > lo)) return 0.0;
    auto f = [&](double s) {
        const double x = std::exp(s);
        return std::exp((1.0 - p) * s - u / x - x);
    };
    const double q = 1.0 - p;
    const double peak = std::log(0.5 * (q + std::sqrt(q * q + 4.0 * u)));
    if (peak > lo && peak < hi) return gk(f, lo, peak) + gk(f, peak, hi);
    return gk(f, lo, hi);
}

double inverse_exponential_complement(double u) {
    const double lo = std::log(u) - 40.0;
    const double hi = std::log(kExpUnderflow);
    auto f = [&](double s) {
        const double x = std::exp(s);
        return x * -std::expm1(-u / x) * std::exp(-x);
    };
    std::vector<double> cuts{lo, std::log(u), 0.0, hi};
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += gk(f, std::max(cuts[i], lo), std::min(cuts[i + 1], hi));
    return total;
}

std::optional<double> moment_of(const DistSpec& dist, int p) {
    struct {
        int p;
        std::optional<double> operator()(const FitnessSpec::ParetoTail& t) const {
            if (p >= t.alpha) return std::nullopt;
            return t.alpha / (t.alpha - p);
        }
        std::optional<double> operator()(const FitnessSpec::InverseExponential&) const {
            if (p >= 1) return std::nullopt;
            return 1.0;
        }
        std::optional<double> operator()(const FitnessSpec::ExponentialY&) const { return std::tgamma(p + 1.0); }
        std::optional<double> operator()(const FitnessSpec::ConstantY&) const { return 1.0; }
    } v{p};
    return std::visit(v, dist.family());
}

double log_Ip(const DistSpec& dist, int p, double u) {
    const double v = laplace_Ip(dist, p, u);
    return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

/// Sum of panel integrals of f over [0, inf), panels of width h with a
/// `nodes`-point Gauss-Legendre rule, until panels become negligible.
double panel_integral(const std::function<double(double)>& f, const quad::GaussRule& rule, double h, double t_max) {
    double total = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (double t0 = 0.0; t0 < t_max; t0 += h) {
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) panel += rule.weights[i] * f(t0 + h * rule.nodes[i]);
        panel *= h;
        total += panel;
        if (total > 0.0 && panel < 1e-18 * total && panel <= previous) break;
        previous = panel;
    }
    return total;
}

template <typename PerSample>
McEstimate blocked_mc(std::size_t samples, std::uint64_t seed, std::uint64_t stream, unsigned threads,
                      PerSample&& per_sample) {
    if (samples == 0) throw std::invalid_argument("monte carlo: samples must be >= 1");
    const auto blocks = make_blocks(samples, 4096);
    std::vector<stats::RunningMoments> acc(blocks.size());
    parallel_for(blocks.size(), threads, [&](std::size_t k) {
        Rng rng(derive_seed(seed, stream, k));
        for (std::size_t i = blocks[k].begin; i < blocks[k].end; ++i) acc[k].add(per_sample(rng));
    });
    stats::RunningMoments total;
    for (const auto& a : acc) total.merge(a);
    return {total.mean(), total.standard_error()};
}

void check_b_list(const std::vector<int>& b_list, int min_part) {
    if (b_list.empty()) throw std::invalid_argument("b_list must be nonempty");
    for (int b : b_list)
        if (b < min_part) throw std::invalid_argument("b_list entries must be >= " + std::to_string(min_part));
}

}  // namespace

void QuadratureSpec::validate() const {
    if (nodes < 16) throw std::invalid_argument("quadrature: nodes must be >= 16");
    if (split_point && !(*split_point > 0.0)) throw std::invalid_argument("quadrature: split point must be > 0");
    if (!(tail_bound_budget > 0.0 && tail_bound_budget < 1.0))
        throw std::invalid_argument("quadrature: tail_bound_budget must lie in (0,1)");
}

double laplace_Ip(const DistSpec& dist, int p, double u, const QuadratureSpec& quad) {
    quad.validate();
    if (p < 0) throw std::invalid_argument("laplace_Ip: p must be >= 0");
    if (u < 0.0) throw std::invalid_argument("laplace_Ip: u must be >= 0");
    if (u == 0.0) {
        const auto m = moment_of(dist, p);
        if (!m) throw std::invalid_argument("laplace_Ip: E[Y^p] is infinite, u = 0 not allowed");
        return *m;
    }
    struct {
        int p;
        double u;
        double operator()(const FitnessSpec::ParetoTail& t) const { return pareto_Ip(t.alpha, p, u); }
        double operator()(const FitnessSpec::InverseExponential&) const { return inverse_exponential_Ip(p, u); }
        double operator()(const FitnessSpec::ExponentialY&) const {
            return std::exp(std::lgamma(p + 1.0) - (p + 1.0) * std::log1p(u));
        }
        double operator()(const FitnessSpec::ConstantY&) const { return std::exp(-u); }
    } v{p, u};
    return std::visit(v, dist.family());
}

double laplace_complement(const DistSpec& dist, double u) {
    if (u < 0.0) throw std::invalid_argument("laplace_complement: u must be >= 0");
    if (u == 0.0) return 0.0;
    struct {
        double u;
        double operator()(const FitnessSpec::ParetoTail& t) const { return pareto_complement(t.alpha, u); }
        double operator()(const FitnessSpec::InverseExponential&) const { return inverse_exponential_complement(u); }
        double operator()(const FitnessSpec::ExponentialY&) const { return u / (1.0 + u); }
        double operator()(const FitnessSpec::ConstantY&) const { return -std::expm1(-u); }
    } v{u};
    return std::visit(v, dist.family());
}

double asymptotic_Ip(double alpha, int p, double u, double mean_y) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("asymptotic_Ip: alpha outside (0,2]");
    if (!(u > 0.0)) throw std::invalid_argument("asymptotic_Ip: u must be > 0");
    if (p == 1 || p < 0)
        throw std::invalid_argument("asymptotic_Ip: p = " + std::to_string(p) + " is not covered (need p = 0 or p >= 2)");
    const bool needs_mean = alpha > 1.0 && p == 0;
    if (needs_mean && !(mean_y > 0.0)) throw std::invalid_argument("asymptotic_Ip: regime alpha > 1 needs E[Y] > 0");
    if (p == 0) {
        if (alpha > 1.0) return 1.0 - u * mean_y;
        if (alpha == 1.0) return 1.0 + u * std::log(u);
        return 1.0 - std::pow(u, alpha) * std::tgamma(1.0 - alpha);
    }
    if (alpha == 2.0) {
        if (p == 2) return -2.0 * std::log(u);
        return std::pow(u, 2.0 - p) * 2.0 * std::tgamma(p - 2.0);
    }
    if (alpha == 1.0) return std::pow(u, 1.0 - p) * std::tgamma(p - 1.0);
    return std::pow(u, alpha - p) * alpha * std::tgamma(p - alpha);
}

EtaMomentResult eta_moment_quadrature(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list,
                                      const QuadratureSpec& quad) {
    quad.validate();
    check_b_list(b_list, 1);
    const std::size_t a = b_list.size();
    const int b = std::accumulate(b_list.begin(), b_list.end(), 0);
    if (N == 0) throw std::invalid_argument("eta_moment: N must be >= 1");
    if (a > N) throw std::invalid_argument("eta_moment: more factors than individuals");
    EtaMomentResult res;
    if (N == 1) {
        res.value = res.head = 1.0;
        return res;
    }
    if (static_cast<std::size_t>(b) > N) throw std::invalid_argument("eta_moment: b > N");

    const double logN = std::log(static_cast<double>(N));
    const double split = quad.split_point.value_or(logN * logN / static_cast<double>(N));
    res.split = split;
    const double lgb = std::lgamma(static_cast<double>(b));
    const double rest = static_cast<double>(N - a);

    auto log_integrand = [&](double u) {
        double l = b * std::log(u) - lgb;
        if (rest > 0.0) l += rest * std::log1p(-laplace_complement(dist, u));
        for (int bi : b_list) l += log_Ip(dist, bi, u);
        return l;
    };
    const auto rule = quad::gauss_legendre_unit(quad.nodes);

    // Head: u = split e^{-t}, du = u dt.
    const double t_cap = std::log(split / 1e-250);
    res.head = panel_integral([&](double t) { return std::exp(log_integrand(split * std::exp(-t))); }, rule, 0.5, t_cap);

    res.tail_bound = rest > 0.0 ? std::exp(rest * std::log1p(-laplace_complement(dist, split))) : 1.0;
    if (res.tail_bound > quad.tail_bound_budget * res.head) {
        // Tail: u = split e^{s}.
        const double s_cap = std::log(1e8 / split);
        res.tail = panel_integral([&](double s) { return std::exp(log_integrand(split * std::exp(s))); }, rule, 0.5, s_cap);
        res.tail_integrated = true;
    }
    res.value = res.head + res.tail;
    return res;
}

McEstimate eta_moment_mc(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list, std::size_t samples,
                         std::uint64_t seed, unsigned threads) {
    check_b_list(b_list, 1);
    if (N == 0 || b_list.size() > N) throw std::invalid_argument("eta_moment_mc: need 1 <= a <= N");
    return blocked_mc(samples, seed, kStreamEtaMc, threads, [&](Rng& rng) {
        auto y = sample_Y(dist, N, rng);
        const double sum = std::accumulate(y.begin(), y.end(), 0.0);
        for (auto& v : y) v /= sum;
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double term = 1.0;
            for (std::size_t k = 0; k < b_list.size(); ++k) {
                const double e = y[(i + k) % N];
                for (int r = 0; r < b_list[k]; ++r) term *= e;
            }
            acc += term;
        }
        return acc / static_cast<double>(N);
    });
}

double falling_factorial_log(std::size_t N, std::size_t b) {
    if (b > N) throw std::invalid_argument("falling_factorial_log: b > N");
    double s = 0.0;
    for (std::size_t i = 0; i < b; ++i) s += std::log(static_cast<double>(N - i));
    return s;
}

double nu_factorial_moment(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list, MomentMethod method,
                           std::size_t samples, std::uint64_t seed) {
    check_b_list(b_list, 1);
    const auto b = static_cast<std::size_t>(std::accumulate(b_list.begin(), b_list.end(), 0));
    const double eta = method == MomentMethod::quadrature ? eta_moment_quadrature(dist, N, b_list).value
                                                          : eta_moment_mc(dist, N, b_list, samples, seed).estimate;
    return std::exp(falling_factorial_log(N, b)) * eta;
}

McEstimate nu_factorial_moment_sim(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list,
                                   std::size_t generations, std::uint64_t seed, unsigned threads) {
    check_b_list(b_list, 1);
    if (N == 0 || b_list.size() > N) throw std::invalid_argument("nu_factorial_moment_sim: need 1 <= a <= N");
    return blocked_mc(generations, seed, kStreamNuSim, threads, [&](Rng& rng) {
        const auto gen = wf_generation(dist, N, rng);
        const auto& nu = gen.record.offspring_counts;
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double term = 1.0;
            for (std::size_t k = 0; k < b_list.size(); ++k) {
                const double v = nu[(i + k) % N];
                for (int r = 0; r < b_list[k]; ++r) term *= (v - r);
            }
            acc += term;
        }
        return acc / static_cast<double>(N);
    });
}

double asymptotic_eta_moment(double alpha, double mean_y, double N, const std::vector<int>& b_list) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("asymptotic_eta_moment: alpha outside (0,2]");
    check_b_list(b_list, 2);
    if (alpha > 1.0 && !(mean_y > 0.0)) throw std::invalid_argument("asymptotic_eta_moment: alpha > 1 needs E[Y] > 0");
    if (!(N > 1.0)) throw std::invalid_argument("asymptotic_eta_moment: N must be > 1");
    const double a = static_cast<double>(b_list.size());
    const double b = std::accumulate(b_list.begin(), b_list.end(), 0.0);
    const double logN = std::log(N);
    double l = -std::lgamma(b);
    if (alpha == 2.0) {
        double g = 0.0;
        for (int bi : b_list)
            if (bi >= 3) {
                l += std::lgamma(bi - 2.0);
                g += 1.0;
            }
        l += std::lgamma(2.0 * a) + a * std::log(2.0) - 2.0 * a * std::log(mean_y);
        l += (a - g) * std::log(logN) - 2.0 * a * std::log(N);
    } else if (alpha > 1.0) {
        for (int bi : b_list) l += std::log(alpha) + std::lgamma(bi - alpha);
        l += std::lgamma(a * alpha) - a * alpha * std::log(mean_y) - a * alpha * std::log(N);
    } else if (alpha == 1.0) {
        for (int bi : b_list) l += std::lgamma(bi - 1.0);
        l += std::lgamma(a) - a * std::log(N * logN);
    } else {
        for (int bi : b_list) l += std::lgamma(bi - alpha);
        l += std::lgamma(a) + (a - 1.0) * std::log(alpha) - a * std::lgamma(1.0 - alpha) - a * std::log(N);
    }
    return std::exp(l);
}

double mohle_ratio(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list, const QuadratureSpec& quad) {
    check_b_list(b_list, 2);
    const auto a = b_list.size();
    const auto b = static_cast<std::size_t>(std::accumulate(b_list.begin(), b_list.end(), 0));
    const double num = eta_moment_quadrature(dist, N, b_list, quad).value;
    const double eta2 = eta_moment_quadrature(dist, N, {2}, quad).value;
    const double logN = std::log(static_cast<double>(N));
    const double l = falling_factorial_log(N, b) + std::log(num) - static_cast<double>(b - a) * logN - logN - std::log(eta2);
    return std::exp(l);
}

double exponential_integral_series(double z) {
    if (!(z > 0.0)) throw std::invalid_argument("exponential_integral_series: z must be > 0");
    constexpr double euler_gamma = 0.57721566490153286061;
    double sum = 0.0;
    double term = 1.0;  // (-z)^m / m!
    for (int m = 1; m < 500; ++m) {
        term *= -z / m;
        const double add = term / m;
        sum += add;
        if (std::abs(add) < 1e-17 * std::max(1.0, std::abs(sum))) break;
    }
    return -euler_gamma - std::log(z) - sum;
}

void write_moment_csv(std::ostream& os, const std::vector<MomentRow>& rows) {
    os << "N,alpha,b_list,quadrature_value,mc_value,mc_se,asymptotic_value,ratio\n";
    const auto old = os.precision(17);
    auto opt = [&](const std::optional<double>& v) {
        if (v) os << *v;
    };
    for (const auto& r : rows) {
        os << r.N << ',' << r.alpha << ',';
        for (std::size_t i = 0; i < r.b_list.size(); ++i) os << (i ? ";" : "") << r.b_list[i];
        os << ',' << r.quadrature_value << ',';
        opt(r.mc_value);
        os << ',';
        opt(r.mc_se);
        os << ',';
        opt(r.asymptotic_value);
        os << ',';
        if (r.asymptotic_value && *r.asymptotic_value != 0.0) os << r.quadrature_value / *r.asymptotic_value;
        os << '\n';
    }
    os.precision(old);
}

}  // namespace coalab
