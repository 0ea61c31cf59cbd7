#pragma once

// Ancestral partition processes traced through simulated histories, and
// estimators of c_N and merger-signature frequencies.

#include "coalab/fitnesswf.hpp"
#include "coalab/frontprop.hpp"
#include "coalab/partition.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace coalab {

/// Front model as a reproduction mechanism. Each independent generation starts
/// from the invariant Gumbel law (Gumbel noise) or from zeros (other noise),
/// runs `burn_in` steps, and then records one step.
struct FrontModelSpec {
    NoiseSpec noise;
    double beta = 1.0;  // used for the invariant start and for Phi
    std::size_t burn_in = 0;
};

using ModelSpec = std::variant<FitnessSpec, FrontModelSpec>;

std::string model_name(const ModelSpec& model);

/// rows[t][j] is the 0-based parent in generation t of child j in generation t+1.
struct AncestryHistory {
    std::size_t N = 0;
    std::vector<std::vector<int>> rows;

    AncestryHistory() = default;
    AncestryHistory(std::size_t n, std::vector<std::vector<int>> r);

    std::size_t generations() const noexcept { return rows.size(); }
};

/// T consecutive generations of `model` (front models run one trajectory).
AncestryHistory simulate_history(const ModelSpec& model, std::size_t N, std::size_t generations,
                                 std::uint64_t seed);

/// Ancestral partition of `sample` (distinct 0-based indices into the final
/// generation) at backward times 0..T.
PartitionPath trace_partition_path(const AncestryHistory& history, std::span<const int> sample);

/// Smallest backward time at which i and j (final generation, 0-based) share
/// an ancestor; nullopt if they do not within the history.
std::optional<int> pairwise_coalescence_time(const AncestryHistory& history, int i, int j);

struct CoalescenceStats {
    // Pair estimator: one uniform pair of distinct children per generation.
    double pair_coalescence_estimate = 0.0;
    double standard_error = 0.0;
    // sum_i nu_i (nu_i - 1) / (N (N - 1)) averaged over generations.
    double offspring_moment_estimate = 0.0;
    double offspring_moment_se = 0.0;
    std::uint64_t generations = 0;

    std::map<MergerSignature, std::uint64_t> merger_counts;
    std::uint64_t total_merger_opportunities = 0;

    std::uint64_t merge_events() const;
    /// Signature frequencies among steps with at least one merge.
    std::map<MergerSignature, double> conditional_distribution() const;
};

/// One-generation c_N estimate from `replicates` independent generations.
CoalescenceStats estimate_cN(const ModelSpec& model, std::size_t N, std::size_t replicates,
                             std::uint64_t seed, unsigned threads = 1);
/// Same with the fitness vector held fixed across replicates.
CoalescenceStats estimate_cN(const FitnessVector& fitness, std::size_t replicates, std::uint64_t seed,
                             unsigned threads = 1);

struct EnvironmentCnEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t generations = 0;
};

/// c_N = E[sum_i eta_i^2], the pair-coalescence probability averaged over the
/// parent draws, estimated from `replicates` fitness vectors alone.
EnvironmentCnEstimate estimate_cN_environment(const FitnessSpec& fitness, std::size_t N, std::size_t replicates,
                                              std::uint64_t seed, unsigned threads = 1);

/// Counts the signature of every backward step of every path.
CoalescenceStats merger_statistics(std::span<const PartitionPath> paths);

/// Signature of a step in which lineage k picks parent label parents[k].
MergerSignature signature_from_parents(std::span<const int> parents);

/// Signature of n uniformly sampled children in each of `replicates`
/// independent generations (the no-merge signature included).
CoalescenceStats one_step_signatures(const ModelSpec& model, std::size_t N, std::size_t n,
                                     std::size_t replicates, std::uint64_t seed, unsigned threads = 1);

struct FirstMergerStats {
    std::map<MergerSignature, std::uint64_t> counts;  // merge events only
    std::uint64_t events = 0;
    std::uint64_t generations = 0;
    double full_merger_fraction = 0.0;  // events in which all n lineages merge
    double full_merger_se = 0.0;        // delta method over generations
};

/// Runs generations until `events` merge events have been seen among
/// `lineage_sets` sets of n lineages followed in parallel through a common
/// environment; a set that merges is replaced by a fresh sample of n distinct
/// individuals. Each event is an exact draw of the first-merger law; events
/// within one generation are correlated, which the standard error accounts for.
FirstMergerStats first_merger_statistics(const ModelSpec& model, std::size_t N, std::size_t n,
                                         std::size_t events, std::size_t lineage_sets,
                                         std::uint64_t seed);

}  // namespace coalab
