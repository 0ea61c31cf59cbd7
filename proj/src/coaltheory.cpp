#include "coalab/coaltheory.hpp"

#include "coalab/quadrature.hpp"
#include "coalab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace coalab {

namespace {

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

void check_bk(int b, int k) {
    if (k < 2 || k > b) throw std::invalid_argument("rate: need 2 <= k <= b");
}

void check_xi_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0,1)");
}

double log_choose(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

}  // namespace

MeasureSpec MeasureSpec::beta(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta measure: parameters must be > 0");
    return MeasureSpec(BetaMeasure{a, b});
}

MeasureSpec MeasureSpec::beta_coalescent(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha outside (0,2)");
    return beta(2.0 - alpha, alpha);
}

std::string MeasureSpec::name() const {
    if (std::holds_alternative<PointMassAtZero>(family_)) return "point_mass_at_zero";
    if (std::holds_alternative<Uniform01>(family_)) return "uniform01";
    const auto& m = std::get<BetaMeasure>(family_);
    return "beta(" + std::to_string(m.a) + "," + std::to_string(m.b) + ")";
}

double lambda_rate_quadrature(const MeasureSpec& measure, int b, int k, std::size_t nodes) {
    check_bk(b, k);
    if (std::holds_alternative<MeasureSpec::PointMassAtZero>(measure.family())) return k == 2 ? 1.0 : 0.0;
    quad::GaussRule rule;
    if (std::holds_alternative<MeasureSpec::Uniform01>(measure.family())) {
        rule = quad::gauss_legendre_unit(nodes);
    } else {
        const auto& m = std::get<MeasureSpec::BetaMeasure>(measure.family());
        rule = quad::gauss_jacobi_unit(nodes, m.a, m.b);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        sum += rule.weights[i] * std::pow(u, k - 2) * std::pow(1.0 - u, b - k);
    }
    return sum;
}

double beta_rate_closed_form(double alpha, int b, int k) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha outside (0,2)");
    check_bk(b, k);
    return std::exp(log_beta(k - alpha, b - k + alpha) - log_beta(2.0 - alpha, alpha));
}

double bsz_rate(int b, int k) {
    check_bk(b, k);
    return std::exp(std::lgamma(k - 1.0) + std::lgamma(b - k + 1.0) - std::lgamma(static_cast<double>(b)));
}

double kingman_rate(int b, int k) {
    check_bk(b, k);
    return k == 2 ? 1.0 : 0.0;
}

double xi_discrete_prob(double alpha, const MergerSignature& sig) {
    check_xi_alpha(alpha);
    if (!sig.has_merge()) throw std::invalid_argument("xi_discrete_prob: signature has no merge");
    const int m = sig.a() + sig.s;  // blocks after the step
    double lp = (m - 1) * std::log(alpha) + std::lgamma(static_cast<double>(m)) - std::lgamma(static_cast<double>(sig.b));
    const double lg1 = std::lgamma(1.0 - alpha);
    for (int bi : sig.group_sizes) lp += std::lgamma(bi - alpha) - lg1;
    return std::exp(lp);
}

double xi_signature_prob(double alpha, const MergerSignature& sig) {
    if (!sig.has_merge()) return xi_no_merge_prob(alpha, sig.b);
    return signature_multiplicity(sig) * xi_discrete_prob(alpha, sig);
}

double xi_no_merge_prob(double alpha, int b) {
    check_xi_alpha(alpha);
    if (b < 1) throw std::invalid_argument("xi_no_merge_prob: b must be >= 1");
    double merged = 0.0;
    for (const auto& sig : enumerate_signatures(b))
        if (sig.has_merge()) merged += signature_multiplicity(sig) * xi_discrete_prob(alpha, sig);
    const double p = 1.0 - merged;
    if (p < -1e-12 || p > 1.0 + 1e-12) throw std::runtime_error("xi_no_merge_prob: probability outside [0,1]");
    return std::clamp(p, 0.0, 1.0);
}

double xi_recursion_check(double alpha, const MergerSignature& sig) {
    check_xi_alpha(alpha);
    if (!sig.has_merge()) throw std::invalid_argument("xi_recursion_check: signature has no merge");
    double residual = xi_discrete_prob(alpha, sig);
    residual -= xi_discrete_prob(alpha, MergerSignature::make(sig.group_sizes, sig.s + 1));
    for (std::size_t j = 0; j < sig.group_sizes.size(); ++j) {
        auto sizes = sig.group_sizes;
        ++sizes[j];
        residual -= xi_discrete_prob(alpha, MergerSignature::make(sizes, sig.s));
    }
    if (sig.s > 0) {
        auto sizes = sig.group_sizes;
        sizes.push_back(2);
        residual -= sig.s * xi_discrete_prob(alpha, MergerSignature::make(sizes, sig.s - 1));
    }
    return residual;
}

double RateTable::at(int b, int k) const {
    const auto it = rates.find({b, k});
    if (it == rates.end()) throw std::out_of_range("rate table: no entry for (b,k)");
    return it->second;
}

namespace {

RateTable fill_table(int max_b, std::string source, const RateFunction& f) {
    if (max_b < 2) throw std::invalid_argument("rate table: max_b must be >= 2");
    RateTable t;
    t.max_b = max_b;
    t.source = std::move(source);
    for (int b = 2; b <= max_b; ++b)
        for (int k = 2; k <= b; ++k) t.rates[{b, k}] = f(b, k);
    return t;
}

}  // namespace

RateTable kingman_table(int max_b) { return fill_table(max_b, "closed_form", kingman_rate); }

RateTable bsz_table(int max_b) { return fill_table(max_b, "closed_form", bsz_rate); }

RateTable beta_table_closed_form(double alpha, int max_b) {
    return fill_table(max_b, "closed_form", [alpha](int b, int k) { return beta_rate_closed_form(alpha, b, k); });
}

RateTable rate_table_quadrature(const MeasureSpec& measure, int max_b) {
    // One rule serves the whole table.
    quad::GaussRule rule;
    const bool kingman = std::holds_alternative<MeasureSpec::PointMassAtZero>(measure.family());
    if (std::holds_alternative<MeasureSpec::Uniform01>(measure.family())) rule = quad::gauss_legendre_unit(64);
    else if (!kingman) {
        const auto& m = std::get<MeasureSpec::BetaMeasure>(measure.family());
        rule = quad::gauss_jacobi_unit(64, m.a, m.b);
    }
    return fill_table(max_b, "quadrature", [&](int b, int k) {
        if (kingman) return k == 2 ? 1.0 : 0.0;
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * std::pow(rule.nodes[i], k - 2) * std::pow(1.0 - rule.nodes[i], b - k);
        return sum;
    });
}

ConsistencyReport check_consistency(const RateTable& table, double tolerance) {
    ConsistencyReport rep;
    for (int b = 2; b < table.max_b; ++b) {
        for (int k = 2; k <= b; ++k) {
            const double r = std::abs(table.at(b, k) - table.at(b + 1, k) - table.at(b + 1, k + 1));
            ++rep.checked;
            rep.max_residual = std::max(rep.max_residual, r);
            if (r > tolerance) rep.failing.emplace_back(b, k);
        }
    }
    return rep;
}

void write_rate_table_csv(std::ostream& os, const std::vector<RateTable>& tables) {
    os << "b,k,rate,source\n";
    const auto old = os.precision(17);
    for (const auto& t : tables)
        for (const auto& [bk, rate] : t.rates) os << bk.first << ',' << bk.second << ',' << rate << ',' << t.source << '\n';
    os.precision(old);
}

namespace {

/// Uniformly random set partition of the current blocks with the given shape.
Partition apply_random_merge(const Partition& p, const std::vector<int>& group_sizes, Rng& rng) {
    std::vector<std::size_t> order(p.block_count());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::vector<std::size_t>> groups;
    std::size_t pos = 0;
    for (int g : group_sizes) {
        groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(pos),
                            order.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(g)));
        pos += static_cast<std::size_t>(g);
    }
    return merge_blocks(p, groups);
}

}  // namespace

PartitionPath simulate_lambda_coalescent(int n, const RateFunction& rates, double horizon, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("simulate_lambda_coalescent: n must be >= 2");
    Rng rng(seed);
    PartitionPath path(0.0, Partition::singletons(static_cast<std::size_t>(n)));
    double t = 0.0;
    std::vector<double> weight;
    while (path.back().block_count() > 1) {
        const int b = static_cast<int>(path.back().block_count());
        weight.assign(static_cast<std::size_t>(b + 1), 0.0);
        double total = 0.0;
        for (int k = 2; k <= b; ++k) {
            const double r = rates(b, k);
            if (r < 0.0) throw std::invalid_argument("simulate_lambda_coalescent: negative rate");
            weight[static_cast<std::size_t>(k)] = std::exp(log_choose(b, k)) * r;
            total += weight[static_cast<std::size_t>(k)];
        }
        if (!(total > 0.0)) break;
        t += rng.exponential() / total;
        if (t > horizon) break;
        double target = rng.uniform() * total;
        int k = 2;
        for (; k < b; ++k) {
            target -= weight[static_cast<std::size_t>(k)];
            if (target < 0.0) break;
        }
        while (weight[static_cast<std::size_t>(k)] == 0.0) --k;
        path.append(t, apply_random_merge(path.back(), {k}, rng));
    }
    return path;
}

PartitionPath simulate_lambda_coalescent(int n, const RateTable& table, double horizon, std::uint64_t seed) {
    if (n > table.max_b) throw std::invalid_argument("simulate_lambda_coalescent: table too small for n");
    return simulate_lambda_coalescent(n, [&](int b, int k) { return table.at(b, k); }, horizon, seed);
}

PartitionPath simulate_xi_discrete(int n, double alpha, int generations, std::uint64_t seed) {
    if (n < 2 || n > 8) throw std::invalid_argument("simulate_xi_discrete: need 2 <= n <= 8");
    check_xi_alpha(alpha);
    std::vector<std::vector<MergerSignature>> sigs(static_cast<std::size_t>(n + 1));
    std::vector<std::vector<double>> probs(static_cast<std::size_t>(n + 1));
    for (int b = 2; b <= n; ++b) {
        sigs[static_cast<std::size_t>(b)] = enumerate_signatures(b);
        for (const auto& s : sigs[static_cast<std::size_t>(b)])
            probs[static_cast<std::size_t>(b)].push_back(xi_signature_prob(alpha, s));
    }
    Rng rng(seed);
    PartitionPath path(0.0, Partition::singletons(static_cast<std::size_t>(n)));
    for (int t = 1; t <= generations && path.back().block_count() > 1; ++t) {
        const auto b = path.back().block_count();
        const auto& p = probs[b];
        double target = rng.uniform() * std::accumulate(p.begin(), p.end(), 0.0);
        std::size_t pick = 0;
        for (; pick + 1 < p.size(); ++pick) {
            target -= p[pick];
            if (target < 0.0) break;
        }
        const auto& sig = sigs[b][pick];
        if (sig.has_merge()) path.append(t, apply_random_merge(path.back(), sig.group_sizes, rng));
    }
    return path;
}

double asymptotic_cN(const CnRegime& regime, double N) {
    if (!(N >= 2.0)) throw std::invalid_argument("asymptotic_cN: N must be >= 2");
    struct {
        double N;
        double operator()(const SquareIntegrable& r) const {
            if (!(r.mean > 0.0) || !(r.second_moment >= r.mean * r.mean))
                throw std::invalid_argument("asymptotic_cN: need E[Y] > 0 and E[Y^2] >= E[Y]^2");
            return r.second_moment / (r.mean * r.mean) / N;
        }
        double operator()(const AlphaTwo& r) const {
            if (!(r.mean > 0.0)) throw std::invalid_argument("asymptotic_cN: need E[Y] > 0");
            return 2.0 * std::log(N) / (N * r.mean * r.mean);
        }
        double operator()(const AlphaBetween1And2& r) const {
            if (!(r.alpha > 1.0 && r.alpha < 2.0)) throw std::invalid_argument("asymptotic_cN: alpha outside (1,2)");
            if (!(r.mean > 0.0)) throw std::invalid_argument("asymptotic_cN: need E[Y] > 0");
            return r.alpha * std::tgamma(r.alpha) * std::tgamma(2.0 - r.alpha) / std::pow(r.mean, r.alpha) *
                   std::pow(N, 1.0 - r.alpha);
        }
        double operator()(const AlphaOne&) const { return 1.0 / std::log(N); }
        double operator()(const AlphaBelowOne& r) const {
            if (!(r.alpha > 0.0 && r.alpha < 1.0)) throw std::invalid_argument("asymptotic_cN: alpha outside (0,1)");
            return std::exp(std::lgamma(2.0 - r.alpha) - std::lgamma(1.0 - r.alpha));
        }
    } eval{N};
    return std::visit(eval, regime);
}

}  // namespace coalab
