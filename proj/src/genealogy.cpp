#include "coalab/genealogy.hpp"

#include "coalab/parallel.hpp"
#include "coalab/rng.hpp"
#include "coalab/stats.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <cmath>

namespace coalab {

namespace {

constexpr std::uint64_t kStreamCn = 1;
constexpr std::uint64_t kStreamSignatures = 2;
constexpr std::uint64_t kStreamFrozen = 3;
constexpr std::uint64_t kStreamEnvironment = 4;

PopulationState front_start(const FrontModelSpec& spec, std::size_t N, Rng& rng) {
    if (const auto* g = std::get_if<NoiseSpec::Gumbel>(&spec.noise.family()))
        return sample_invariant_gumbel(N, g->beta, rng);
    return PopulationState::zeros(N);
}

/// One generation's parent assignment drawn independently of everything else.
std::vector<int> independent_generation(const ModelSpec& model, std::size_t N, Rng& rng) {
    if (const auto* fit = std::get_if<FitnessSpec>(&model)) return wf_generation(*fit, N, rng).record.parent_of;
    const auto& front = std::get<FrontModelSpec>(model);
    PopulationState x = front_start(front, N, rng);
    for (std::size_t t = 0; t < front.burn_in; ++t) x = step_front(x, front.noise, rng).state;
    return step_front(x, front.noise, rng).row.parent_of;
}

/// n distinct indices in [0, N), uniformly without replacement.
void sample_distinct(std::size_t N, std::size_t n, Rng& rng, std::vector<int>& out) {
    out.clear();
    while (out.size() < n) {
        const int c = static_cast<int>(rng.below(N));
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
}

int draw_from_prefix(const std::vector<double>& prefix, Rng& rng) {
    const double target = rng.uniform() * prefix.back();
    auto it = std::upper_bound(prefix.begin(), prefix.end(), target);
    if (it == prefix.end()) --it;
    return static_cast<int>(it - prefix.begin());
}

struct PerGeneration {
    double pair = 0.0;
    double moment = 0.0;
};

PerGeneration score_generation(std::span<const int> parent_of, std::size_t N, Rng& rng) {
    const auto counts = count_offspring(parent_of, N);
    double s = 0.0;
    for (auto c : counts) s += static_cast<double>(c) * (static_cast<double>(c) - 1.0);
    const auto i = static_cast<std::size_t>(rng.below(N));
    auto j = static_cast<std::size_t>(rng.below(N - 1));
    if (j >= i) ++j;
    return {parent_of[i] == parent_of[j] ? 1.0 : 0.0, s / (static_cast<double>(N) * (static_cast<double>(N) - 1.0))};
}

CoalescenceStats reduce(const std::vector<PerGeneration>& per) {
    stats::RunningMoments pair, moment;
    for (const auto& g : per) {
        pair.add(g.pair);
        moment.add(g.moment);
    }
    CoalescenceStats out;
    out.generations = per.size();
    out.pair_coalescence_estimate = pair.mean();
    out.standard_error = pair.standard_error();
    out.offspring_moment_estimate = moment.mean();
    out.offspring_moment_se = moment.standard_error();
    return out;
}

}  // namespace

std::string model_name(const ModelSpec& model) {
    if (const auto* fit = std::get_if<FitnessSpec>(&model)) return "wf:" + fit->name();
    const auto& f = std::get<FrontModelSpec>(model);
    return "front:" + f.noise.name();
}

AncestryHistory::AncestryHistory(std::size_t n, std::vector<std::vector<int>> r) : N(n), rows(std::move(r)) {
    if (N == 0) throw std::invalid_argument("ancestry history: N must be >= 1");
    for (const auto& row : rows) {
        if (row.size() != N) throw std::invalid_argument("ancestry history: row length differs from N");
        for (int p : row)
            if (p < 0 || static_cast<std::size_t>(p) >= N)
                throw std::invalid_argument("ancestry history: parent index out of range");
    }
}

AncestryHistory simulate_history(const ModelSpec& model, std::size_t N, std::size_t generations,
                                 std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<int>> rows;
    rows.reserve(generations);
    if (const auto* fit = std::get_if<FitnessSpec>(&model)) {
        for (std::size_t t = 0; t < generations; ++t) rows.push_back(wf_generation(*fit, N, rng).record.parent_of);
    } else {
        const auto& front = std::get<FrontModelSpec>(model);
        PopulationState x = front_start(front, N, rng);
        for (std::size_t t = 0; t < front.burn_in; ++t) x = step_front(x, front.noise, rng).state;
        for (std::size_t t = 0; t < generations; ++t) {
            auto step = step_front(x, front.noise, rng);
            rows.push_back(std::move(step.row.parent_of));
            x = std::move(step.state);
        }
    }
    return AncestryHistory(N, std::move(rows));
}

PartitionPath trace_partition_path(const AncestryHistory& history, std::span<const int> sample) {
    if (sample.empty()) throw std::invalid_argument("trace_partition_path: empty sample");
    if (sample.size() > history.N) throw std::invalid_argument("trace_partition_path: sample larger than N");
    std::vector<int> ancestors(sample.begin(), sample.end());
    for (int s : ancestors)
        if (s < 0 || static_cast<std::size_t>(s) >= history.N)
            throw std::invalid_argument("trace_partition_path: sample index out of range");
    {
        auto sorted = ancestors;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("trace_partition_path: sample indices must be distinct");
    }
    PartitionPath path(0.0, Partition::singletons(sample.size()));
    for (std::size_t back = 1; back <= history.generations(); ++back) {
        const auto& row = history.rows[history.generations() - back];
        for (auto& a : ancestors) a = row[static_cast<std::size_t>(a)];
        path.append(static_cast<double>(back), Partition::from_labels(ancestors));
    }
    return path;
}

std::optional<int> pairwise_coalescence_time(const AncestryHistory& history, int i, int j) {
    if (i == j) throw std::invalid_argument("pairwise_coalescence_time: need i != j");
    const auto n = static_cast<int>(history.N);
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("pairwise_coalescence_time: index out of range");
    for (std::size_t back = 1; back <= history.generations(); ++back) {
        const auto& row = history.rows[history.generations() - back];
        i = row[static_cast<std::size_t>(i)];
        j = row[static_cast<std::size_t>(j)];
        if (i == j) return static_cast<int>(back);
    }
    return std::nullopt;
}

std::uint64_t CoalescenceStats::merge_events() const {
    std::uint64_t total = 0;
    for (const auto& [sig, c] : merger_counts)
        if (sig.has_merge()) total += c;
    return total;
}

std::map<MergerSignature, double> CoalescenceStats::conditional_distribution() const {
    std::map<MergerSignature, double> out;
    const auto total = merge_events();
    if (total == 0) return out;
    for (const auto& [sig, c] : merger_counts)
        if (sig.has_merge()) out[sig] = static_cast<double>(c) / static_cast<double>(total);
    return out;
}

CoalescenceStats estimate_cN(const ModelSpec& model, std::size_t N, std::size_t replicates, std::uint64_t seed,
                             unsigned threads) {
    if (N < 2) throw std::invalid_argument("estimate_cN: N must be >= 2");
    if (replicates == 0) throw std::invalid_argument("estimate_cN: replicates must be >= 1");
    std::vector<PerGeneration> per(replicates);
    parallel_for(replicates, threads, [&](std::size_t r) {
        Rng rng(derive_seed(seed, kStreamCn, r));
        const auto parents = independent_generation(model, N, rng);
        per[r] = score_generation(parents, N, rng);
    });
    return reduce(per);
}

CoalescenceStats estimate_cN(const FitnessVector& fitness, std::size_t replicates, std::uint64_t seed,
                             unsigned threads) {
    const std::size_t N = fitness.size();
    if (N < 2) throw std::invalid_argument("estimate_cN: N must be >= 2");
    if (replicates == 0) throw std::invalid_argument("estimate_cN: replicates must be >= 1");
    std::vector<PerGeneration> per(replicates);
    parallel_for(replicates, threads, [&](std::size_t r) {
        Rng rng(derive_seed(seed, kStreamFrozen, r));
        const auto rec = sample_parents(fitness, rng);
        per[r] = score_generation(rec.parent_of, N, rng);
    });
    return reduce(per);
}

EnvironmentCnEstimate estimate_cN_environment(const FitnessSpec& fitness, std::size_t N, std::size_t replicates,
                                              std::uint64_t seed, unsigned threads) {
    if (N < 2) throw std::invalid_argument("estimate_cN_environment: N must be >= 2");
    if (replicates == 0) throw std::invalid_argument("estimate_cN_environment: replicates must be >= 1");
    const auto blocks = make_blocks(replicates, 1024);
    std::vector<stats::RunningMoments> acc(blocks.size());
    parallel_for(blocks.size(), threads, [&](std::size_t k) {
        Rng rng(derive_seed(seed, kStreamEnvironment, k));
        for (std::size_t r = blocks[k].begin; r < blocks[k].end; ++r) {
            double s = 0.0, s2 = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double y = fitness.sample(rng);
                s += y;
                s2 += y * y;
            }
            acc[k].add(s2 / (s * s));
        }
    });
    stats::RunningMoments total;
    for (const auto& a : acc) total.merge(a);
    return {total.mean(), total.standard_error(), total.count()};
}

MergerSignature signature_from_parents(std::span<const int> parents) {
    std::vector<int> sorted(parents.begin(), parents.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> sizes;
    int s = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t k = i;
        while (k < sorted.size() && sorted[k] == sorted[i]) ++k;
        const int run = static_cast<int>(k - i);
        if (run == 1) ++s;
        else sizes.push_back(run);
        i = k;
    }
    return MergerSignature::make(std::move(sizes), s);
}

CoalescenceStats merger_statistics(std::span<const PartitionPath> paths) {
    if (paths.empty()) throw std::invalid_argument("merger_statistics: no paths");
    CoalescenceStats out;
    for (const auto& path : paths) {
        const auto& states = path.states();
        for (std::size_t t = 1; t < states.size(); ++t) {
            if (states[t - 1].block_count() < 2) break;
            ++out.merger_counts[merger_signature(states[t - 1], states[t])];
            ++out.total_merger_opportunities;
        }
    }
    return out;
}

CoalescenceStats one_step_signatures(const ModelSpec& model, std::size_t N, std::size_t n, std::size_t replicates,
                                     std::uint64_t seed, unsigned threads) {
    if (n < 2 || n > N) throw std::invalid_argument("one_step_signatures: need 2 <= n <= N");
    if (replicates == 0) throw std::invalid_argument("one_step_signatures: replicates must be >= 1");
    const auto catalogue = enumerate_signatures(static_cast<int>(n));
    std::vector<std::uint16_t> which(replicates);
    const auto* fit = std::get_if<FitnessSpec>(&model);
    parallel_for(replicates, threads, [&](std::size_t r) {
        Rng rng(derive_seed(seed, kStreamSignatures, r));
        std::vector<int> parents(n);
        if (fit) {
            // The n sampled children pick parents i.i.d. from eta; only those draws are needed.
            auto prefix = sample_Y(*fit, N, rng);
            std::partial_sum(prefix.begin(), prefix.end(), prefix.begin());
            for (auto& p : parents) p = draw_from_prefix(prefix, rng);
        } else {
            const auto row = independent_generation(model, N, rng);
            std::vector<int> children;
            sample_distinct(N, n, rng, children);
            for (std::size_t k = 0; k < n; ++k) parents[k] = row[static_cast<std::size_t>(children[k])];
        }
        const auto sig = signature_from_parents(parents);
        which[r] = static_cast<std::uint16_t>(std::find(catalogue.begin(), catalogue.end(), sig) - catalogue.begin());
    });
    CoalescenceStats out;
    std::vector<std::uint64_t> counts(catalogue.size(), 0);
    for (auto w : which) ++counts[w];
    for (std::size_t k = 0; k < catalogue.size(); ++k)
        if (counts[k]) out.merger_counts[catalogue[k]] = counts[k];
    out.total_merger_opportunities = replicates;
    out.generations = replicates;
    return out;
}

FirstMergerStats first_merger_statistics(const ModelSpec& model, std::size_t N, std::size_t n, std::size_t events,
                                         std::size_t lineage_sets, std::uint64_t seed) {
    if (n < 2 || n > N) throw std::invalid_argument("first_merger_statistics: need 2 <= n <= N");
    if (lineage_sets == 0 || events == 0)
        throw std::invalid_argument("first_merger_statistics: events and lineage_sets must be >= 1");
    Rng rng(seed);
    FirstMergerStats out;
    double sum_t = 0, sum_m = 0, sum_tt = 0, sum_tm = 0, sum_mm = 0;
    std::vector<std::vector<int>> sets(lineage_sets);
    for (auto& s : sets) sample_distinct(N, n, rng, s);
    std::vector<int> parents(n);

    const auto* fit = std::get_if<FitnessSpec>(&model);
    std::vector<double> prefix;
    PopulationState x;
    if (!fit) {
        const auto& front = std::get<FrontModelSpec>(model);
        x = front_start(front, N, rng);
        for (std::size_t t = 0; t < front.burn_in; ++t) x = step_front(x, front.noise, rng).state;
    }

    while (out.events < events) {
        ++out.generations;
        std::vector<int> row;
        if (fit) {
            prefix = sample_Y(*fit, N, rng);
            std::partial_sum(prefix.begin(), prefix.end(), prefix.begin());
        } else {
            // Rows are consumed in simulation order; with i.i.d. exchangeable
            // generations this has the law of tracing backward.
            auto step = step_front(x, std::get<FrontModelSpec>(model).noise, rng);
            row = std::move(step.row.parent_of);
            x = std::move(step.state);
        }
        double t_gen = 0, m_gen = 0;
        for (auto& set : sets) {
            for (std::size_t k = 0; k < n; ++k)
                parents[k] = fit ? draw_from_prefix(prefix, rng) : row[static_cast<std::size_t>(set[k])];
            const auto sig = signature_from_parents(parents);
            if (!sig.has_merge()) {
                if (!fit) set = parents;
                continue;
            }
            ++out.counts[sig];
            ++out.events;
            m_gen += 1;
            if (sig.a() == 1 && sig.s == 0) t_gen += 1;
            sample_distinct(N, n, rng, set);
        }
        sum_t += t_gen;
        sum_m += m_gen;
        sum_tt += t_gen * t_gen;
        sum_tm += t_gen * m_gen;
        sum_mm += m_gen * m_gen;
    }
    const double r = sum_t / sum_m;
    out.full_merger_fraction = r;
    const double resid = std::max(0.0, sum_tt - 2 * r * sum_tm + r * r * sum_mm);
    out.full_merger_se = std::sqrt(resid) / sum_m;
    return out;
}

}  // namespace coalab
