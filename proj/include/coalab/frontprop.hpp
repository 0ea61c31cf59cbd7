#pragma once

// N-particle max-plus front propagation (directed polymer at zero temperature):
//   X_j(t+1) = max_i { X_i(t) + xi_ij(t+1) }.
// Particle and parent indices are 0-based throughout.

#include "coalab/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace coalab {

class FitnessVector;

struct PopulationState {
    std::vector<double> positions;

    PopulationState() = default;
    explicit PopulationState(std::vector<double> x);

    static PopulationState zeros(std::size_t n);

    std::size_t size() const noexcept { return positions.size(); }
};

class NoiseSpec {
  public:
    struct Gumbel {
        double rho;
        double beta;
    };
    struct Exponential {
        double rate;
    };
    struct UniformInterval {
        double lo;
        double hi;
    };
    struct Deterministic {
        double value;
    };
    using Family = std::variant<Gumbel, Exponential, UniformInterval, Deterministic>;

    static NoiseSpec gumbel(double rho, double beta);
    static NoiseSpec exponential(double rate);
    static NoiseSpec uniform(double lo, double hi);
    static NoiseSpec deterministic(double value);

    const Family& family() const noexcept { return family_; }
    bool is_gumbel() const noexcept { return std::holds_alternative<Gumbel>(family_); }
    bool has_atoms() const noexcept { return std::holds_alternative<Deterministic>(family_); }
    std::string name() const;

    double sample(Rng& rng) const;

  private:
    explicit NoiseSpec(Family f) : family_(f) {}
    Family family_;
};

/// parent_of[j] is the index i achieving the max for child j.
struct AncestryRow {
    std::vector<int> parent_of;

    std::vector<std::uint32_t> offspring_counts(std::size_t parents) const;
};

struct FrontStep {
    PopulationState state;
    AncestryRow row;
};

/// One generation. Noise is drawn child-major: for j = 0..N-1, for i = 0..N-1,
/// xi_ij is the next draw from `rng`. Ties go to the smallest parent index.
FrontStep step_front(const PopulationState& state, const NoiseSpec& noise, Rng& rng);
FrontStep step_front(const PopulationState& state, const NoiseSpec& noise, std::uint64_t seed);

/// Log-sum-exp front position beta^-1 log sum exp(beta x_i), overflow-safe.
double front_position(const PopulationState& state, double beta);

/// X - Phi(X); the result satisfies sum exp(beta x_i) = 1.
PopulationState recenter(const PopulationState& state, double beta);

/// V - Phi(V) for V an i.i.d. Gumbel G(0, beta) sample: the invariant law of
/// the recentered process under Gumbel noise.
PopulationState sample_invariant_gumbel(std::size_t n, double beta, Rng& rng);
PopulationState sample_invariant_gumbel(std::size_t n, double beta, std::uint64_t seed);

/// exp(beta x_i) / sum_k exp(beta x_k).
FitnessVector gumbel_fitness(const PopulationState& state, double beta);

/// (Phi(X(T)) - Phi(X(burn_in))) / (T - burn_in), started from `initial`.
double measure_front_speed(const PopulationState& initial, const NoiseSpec& noise, double beta,
                           std::size_t generations, std::size_t burn_in, std::uint64_t seed);
double measure_front_speed(std::size_t n, const NoiseSpec& noise, double beta,
                           std::size_t generations, std::size_t burn_in, std::uint64_t seed);

struct FrontTrajectory {
    std::vector<PopulationState> states;  // states[0] is the initial state (if recorded)
    std::vector<AncestryRow> rows;        // rows[t] maps generation t+1 to generation t
    PopulationState final_state;
};

FrontTrajectory simulate_front(const PopulationState& initial, const NoiseSpec& noise,
                               std::size_t generations, std::uint64_t seed,
                               bool record_states = true);

/// CSV columns: generation, particle_index, position, parent_index. The parent
/// column is empty for generation 0.
void write_trajectory_csv(std::ostream& os, const std::vector<std::vector<double>>& values,
                          const std::vector<std::vector<int>>& parents);

}  // namespace coalab
