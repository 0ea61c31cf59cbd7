#include "coalab/fitnesswf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace coalab {

FitnessVector::FitnessVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("fitness vector: N must be >= 1");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("fitness vector: negative or non-finite weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("fitness vector: weights do not sum to 1");
}

FitnessVector FitnessVector::degenerate(std::size_t n, std::size_t index) {
    if (index >= n) throw std::invalid_argument("fitness vector: index out of range");
    std::vector<double> w(n, 0.0);
    w[index] = 1.0;
    return FitnessVector(std::move(w));
}

FitnessVector FitnessVector::uniform(std::size_t n) {
    if (n == 0) throw std::invalid_argument("fitness vector: N must be >= 1");
    return FitnessVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FitnessSpec FitnessSpec::pareto(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("pareto fitness: alpha must be > 0");
    return FitnessSpec(ParetoTail{alpha});
}

std::string FitnessSpec::name() const {
    struct {
        std::string operator()(const ParetoTail& p) const { return "pareto(alpha=" + std::to_string(p.alpha) + ")"; }
        std::string operator()(const InverseExponential&) const { return "inverse_exponential"; }
        std::string operator()(const ExponentialY&) const { return "exponential"; }
        std::string operator()(const ConstantY&) const { return "constant"; }
    } v;
    return std::visit(v, family_);
}

std::optional<double> FitnessSpec::tail_index() const {
    if (auto* p = std::get_if<ParetoTail>(&family_)) return p->alpha;
    if (std::holds_alternative<InverseExponential>(family_)) return 1.0;
    return std::nullopt;
}

std::optional<double> FitnessSpec::mean() const {
    if (auto* p = std::get_if<ParetoTail>(&family_)) {
        if (p->alpha <= 1.0) return std::nullopt;
        return p->alpha / (p->alpha - 1.0);
    }
    if (std::holds_alternative<InverseExponential>(family_)) return std::nullopt;
    return 1.0;
}

std::optional<double> FitnessSpec::second_moment() const {
    if (auto* p = std::get_if<ParetoTail>(&family_)) {
        if (p->alpha <= 2.0) return std::nullopt;
        return p->alpha / (p->alpha - 2.0);
    }
    if (std::holds_alternative<InverseExponential>(family_)) return std::nullopt;
    if (std::holds_alternative<ExponentialY>(family_)) return 2.0;
    return 1.0;
}

namespace {

struct YSampler {
    Rng& rng;
    double operator()(const FitnessSpec::ParetoTail& p) { return std::pow(rng.uniform(), -1.0 / p.alpha); }
    double operator()(const FitnessSpec::InverseExponential&) { return 1.0 / rng.exponential(); }
    double operator()(const FitnessSpec::ExponentialY&) { return rng.exponential(); }
    double operator()(const FitnessSpec::ConstantY&) { return 1.0; }
};

constexpr std::size_t kLinearScanLimit = 64;

}  // namespace

double FitnessSpec::sample(Rng& rng) const { return std::visit(YSampler{rng}, family_); }

std::vector<double> sample_Y(const FitnessSpec& spec, std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("sample_Y: N must be >= 1");
    std::vector<double> y(n);
    std::visit(
        [&](const auto& fam) {
            YSampler s{rng};
            for (auto& v : y) v = s(fam);
        },
        spec.family());
    return y;
}

std::vector<double> sample_Y(const FitnessSpec& spec, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_Y(spec, n, rng);
}

FitnessVector normalize_fitness(std::span<const double> y) {
    if (y.empty()) throw std::invalid_argument("normalize_fitness: empty input");
    double sum = 0.0;
    for (double v : y) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("normalize_fitness: Y must be positive and finite");
        sum += v;
    }
    std::vector<double> w(y.begin(), y.end());
    for (auto& v : w) v /= sum;
    // Absorb rounding so the weights pass the sum-to-one check for any N.
    const double drift = std::accumulate(w.begin(), w.end(), 0.0) - 1.0;
    w[static_cast<std::size_t>(std::max_element(w.begin(), w.end()) - w.begin())] -= drift;
    return FitnessVector(std::move(w));
}

AliasTable::AliasTable(std::span<const double> weights) : prob_(weights.size()), alias_(weights.size()) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("alias table: empty weights");
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0)) throw std::invalid_argument("alias table: weights must have positive sum");
    std::vector<double> scaled(n);
    std::vector<std::uint32_t> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = weights[i] * static_cast<double>(n) / total;
        (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
        const auto s = small.back();
        small.pop_back();
        const auto l = large.back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        if (scaled[l] < 1.0) {
            large.pop_back();
            small.push_back(l);
        }
    }
    for (auto i : large) prob_[i] = 1.0, alias_[i] = i;
    for (auto i : small) prob_[i] = 1.0, alias_[i] = i;
}

std::size_t AliasTable::sample(Rng& rng) const noexcept {
    const auto col = static_cast<std::size_t>(rng.below(prob_.size()));
    return rng.uniform() < prob_[col] ? col : alias_[col];
}

std::vector<std::uint32_t> count_offspring(std::span<const int> parent_of, std::size_t parents) {
    std::vector<std::uint32_t> counts(parents, 0);
    for (int p : parent_of) {
        if (p < 0 || static_cast<std::size_t>(p) >= parents) throw std::out_of_range("count_offspring: parent index out of range");
        ++counts[static_cast<std::size_t>(p)];
    }
    return counts;
}

GenerationRecord sample_parents(const FitnessVector& fitness, Rng& rng) {
    const std::size_t n = fitness.size();
    GenerationRecord rec;
    rec.parent_of.resize(n);
    rec.offspring_counts.assign(n, 0);
    if (n > kLinearScanLimit) {
        const AliasTable table(fitness.weights());
        for (auto& p : rec.parent_of) p = static_cast<int>(table.sample(rng));
    } else {
        for (auto& p : rec.parent_of) {
            const double u = rng.uniform();
            double acc = 0.0;
            std::size_t i = 0;
            // Fall through to the last positive weight if rounding leaves u above the total.
            std::size_t last = 0;
            for (; i < n; ++i) {
                if (fitness[i] > 0.0) last = i;
                acc += fitness[i];
                if (u < acc && fitness[i] > 0.0) break;
            }
            p = static_cast<int>(i < n ? i : last);
        }
    }
    for (int p : rec.parent_of) ++rec.offspring_counts[static_cast<std::size_t>(p)];
    return rec;
}

GenerationRecord sample_parents(const FitnessVector& fitness, std::uint64_t seed) {
    Rng rng(seed);
    return sample_parents(fitness, rng);
}

std::vector<int> draw_parents(std::span<const double> weights, std::size_t count, Rng& rng) {
    if (weights.empty()) throw std::invalid_argument("draw_parents: empty weights");
    std::vector<double> prefix(weights.size());
    std::partial_sum(weights.begin(), weights.end(), prefix.begin());
    const double total = prefix.back();
    if (!(total > 0.0)) throw std::invalid_argument("draw_parents: weights must have positive sum");
    std::vector<int> out(count);
    for (auto& p : out) {
        const double target = rng.uniform() * total;
        auto it = std::upper_bound(prefix.begin(), prefix.end(), target);
        if (it == prefix.end()) --it;
        p = static_cast<int>(it - prefix.begin());
    }
    return out;
}

WfGeneration wf_generation(const FitnessSpec& spec, std::size_t n, Rng& rng) {
    const auto y = sample_Y(spec, n, rng);
    auto fitness = normalize_fitness(y);
    auto record = sample_parents(fitness, rng);
    return {std::move(fitness), std::move(record)};
}

WfGeneration wf_generation(const FitnessSpec& spec, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return wf_generation(spec, n, rng);
}

}  // namespace coalab
