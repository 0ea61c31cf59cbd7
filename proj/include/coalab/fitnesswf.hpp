#pragma once

// Extended Wright-Fisher model: eta_i = Y_i / sum_j Y_j with i.i.d. positive Y,
// offspring vector Multinomial(N; eta) built from explicit parent draws.

#include "coalab/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace coalab {

/// Nonnegative weights summing to one (within 1e-12).
class FitnessVector {
  public:
    explicit FitnessVector(std::vector<double> weights);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const noexcept { return weights_[i]; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Point mass on `index`.
    static FitnessVector degenerate(std::size_t n, std::size_t index);
    static FitnessVector uniform(std::size_t n);

  private:
    std::vector<double> weights_;
};

class FitnessSpec {
  public:
    /// P(Y >= y) = y^-alpha for y >= 1 (tail constant C = 1).
    struct ParetoTail {
        double alpha;
    };
    /// Y = 1/E with E ~ Exponential(1); tail index 1.
    struct InverseExponential {};
    /// Y ~ Exponential(1).
    struct ExponentialY {};
    /// Y = 1: the classical Wright-Fisher model.
    struct ConstantY {};
    using Family = std::variant<ParetoTail, InverseExponential, ExponentialY, ConstantY>;

    static FitnessSpec pareto(double alpha);
    static FitnessSpec inverse_exponential() { return FitnessSpec(InverseExponential{}); }
    static FitnessSpec exponential() { return FitnessSpec(ExponentialY{}); }
    static FitnessSpec constant() { return FitnessSpec(ConstantY{}); }

    const Family& family() const noexcept { return family_; }
    std::string name() const;

    /// Tail index, if the family is regularly varying with C = 1.
    std::optional<double> tail_index() const;
    /// E[Y] and E[Y^2] when finite.
    std::optional<double> mean() const;
    std::optional<double> second_moment() const;

    double sample(Rng& rng) const;

  private:
    explicit FitnessSpec(Family f) : family_(f) {}
    Family family_;
};

std::vector<double> sample_Y(const FitnessSpec& spec, std::size_t n, Rng& rng);
std::vector<double> sample_Y(const FitnessSpec& spec, std::size_t n, std::uint64_t seed);

/// Y_i / sum_j Y_j. Every Y must be strictly positive.
FitnessVector normalize_fitness(std::span<const double> y);

struct GenerationRecord {
    std::vector<int> parent_of;                  // 0-based parent index per child
    std::vector<std::uint32_t> offspring_counts;  // nu_i

    std::size_t size() const noexcept { return parent_of.size(); }
};

/// Walker/Vose alias table: O(n) setup, O(1) per draw.
class AliasTable {
  public:
    explicit AliasTable(std::span<const double> weights);
    std::size_t sample(Rng& rng) const noexcept;
    std::size_t size() const noexcept { return prob_.size(); }

  private:
    std::vector<double> prob_;
    std::vector<std::uint32_t> alias_;
};

/// Each child independently picks its parent from Categorical(eta): an alias
/// table when N > 64, a linear scan otherwise.
GenerationRecord sample_parents(const FitnessVector& fitness, Rng& rng);
GenerationRecord sample_parents(const FitnessVector& fitness, std::uint64_t seed);

/// `count` independent Categorical draws proportional to unnormalized weights,
/// by prefix sums and binary search. Used for lineage-only tracing.
std::vector<int> draw_parents(std::span<const double> weights, std::size_t count, Rng& rng);

struct WfGeneration {
    FitnessVector fitness;
    GenerationRecord record;
};

/// Fresh Y, normalize, sample parents.
WfGeneration wf_generation(const FitnessSpec& spec, std::size_t n, Rng& rng);
WfGeneration wf_generation(const FitnessSpec& spec, std::size_t n, std::uint64_t seed);

std::vector<std::uint32_t> count_offspring(std::span<const int> parent_of, std::size_t parents);

}  // namespace coalab
