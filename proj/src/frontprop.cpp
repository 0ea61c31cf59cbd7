#include "coalab/frontprop.hpp"

#include "coalab/fitnesswf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace coalab {

PopulationState::PopulationState(std::vector<double> x) : positions(std::move(x)) {
    if (positions.empty()) throw std::invalid_argument("population state: N must be >= 1");
    for (double v : positions)
        if (!std::isfinite(v)) throw std::invalid_argument("population state: non-finite position");
}

PopulationState PopulationState::zeros(std::size_t n) {
    return PopulationState(std::vector<double>(n, 0.0));
}

NoiseSpec NoiseSpec::gumbel(double rho, double beta) {
    if (!(beta > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("gumbel noise: beta must be > 0");
    return NoiseSpec(Gumbel{rho, beta});
}

NoiseSpec NoiseSpec::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential noise: rate must be > 0");
    return NoiseSpec(Exponential{rate});
}

NoiseSpec NoiseSpec::uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform noise: need lo < hi");
    return NoiseSpec(UniformInterval{lo, hi});
}

NoiseSpec NoiseSpec::deterministic(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("deterministic noise: value must be finite");
    return NoiseSpec(Deterministic{value});
}

std::string NoiseSpec::name() const {
    struct {
        std::string operator()(const Gumbel& g) const {
            return "gumbel(rho=" + std::to_string(g.rho) + ",beta=" + std::to_string(g.beta) + ")";
        }
        std::string operator()(const Exponential& e) const { return "exponential(rate=" + std::to_string(e.rate) + ")"; }
        std::string operator()(const UniformInterval& u) const {
            return "uniform(" + std::to_string(u.lo) + "," + std::to_string(u.hi) + ")";
        }
        std::string operator()(const Deterministic& d) const { return "deterministic(" + std::to_string(d.value) + ")"; }
    } v;
    return std::visit(v, family_);
}

namespace {

struct Sampler {
    Rng& rng;
    double operator()(const NoiseSpec::Gumbel& g) { return rng.gumbel(g.rho, g.beta); }
    double operator()(const NoiseSpec::Exponential& e) { return rng.exponential() / e.rate; }
    double operator()(const NoiseSpec::UniformInterval& u) { return u.lo + (u.hi - u.lo) * rng.uniform(); }
    double operator()(const NoiseSpec::Deterministic& d) { return d.value; }
};

template <typename Draw>
FrontStep step_with(const PopulationState& state, Draw&& draw) {
    const std::size_t n = state.size();
    const double* x = state.positions.data();
    std::vector<double> next(n);
    AncestryRow row;
    row.parent_of.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double best = -std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = x[i] + draw();
            if (v > best) {
                best = v;
                arg = static_cast<int>(i);
            }
        }
        next[j] = best;
        row.parent_of[j] = arg;
    }
    return {PopulationState(std::move(next)), std::move(row)};
}

double log_sum_exp_scaled(const std::vector<double>& x, double beta) {
    const double m = *std::max_element(x.begin(), x.end());
    double sum = 0.0;
    for (double v : x) sum += std::exp(beta * (v - m));
    return m + std::log(sum) / beta;
}

void check_beta(double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
}

}  // namespace

double NoiseSpec::sample(Rng& rng) const { return std::visit(Sampler{rng}, family_); }

std::vector<std::uint32_t> AncestryRow::offspring_counts(std::size_t parents) const {
    return count_offspring(parent_of, parents);
}

FrontStep step_front(const PopulationState& state, const NoiseSpec& noise, Rng& rng) {
    if (state.size() == 0) throw std::invalid_argument("step_front: empty population");
    // Dispatch once per step, not once per draw.
    return std::visit(
        [&](const auto& fam) {
            Sampler s{rng};
            return step_with(state, [&] { return s(fam); });
        },
        noise.family());
}

FrontStep step_front(const PopulationState& state, const NoiseSpec& noise, std::uint64_t seed) {
    Rng rng(seed);
    return step_front(state, noise, rng);
}

double front_position(const PopulationState& state, double beta) {
    check_beta(beta);
    if (state.size() == 0) throw std::invalid_argument("front_position: empty population");
    return log_sum_exp_scaled(state.positions, beta);
}

PopulationState recenter(const PopulationState& state, double beta) {
    const double phi = front_position(state, beta);
    std::vector<double> out(state.positions);
    for (auto& v : out) v -= phi;
    return PopulationState(std::move(out));
}

PopulationState sample_invariant_gumbel(std::size_t n, double beta, Rng& rng) {
    check_beta(beta);
    if (n == 0) throw std::invalid_argument("sample_invariant_gumbel: N must be >= 1");
    std::vector<double> v(n);
    for (auto& x : v) x = rng.gumbel(0.0, beta);
    return recenter(PopulationState(std::move(v)), beta);
}

PopulationState sample_invariant_gumbel(std::size_t n, double beta, std::uint64_t seed) {
    Rng rng(seed);
    return sample_invariant_gumbel(n, beta, rng);
}

FitnessVector gumbel_fitness(const PopulationState& state, double beta) {
    check_beta(beta);
    const auto& x = state.positions;
    if (x.empty()) throw std::invalid_argument("gumbel_fitness: empty population");
    const double m = *std::max_element(x.begin(), x.end());
    std::vector<double> w(x.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += (w[i] = std::exp(beta * (x[i] - m)));
    for (auto& v : w) v /= sum;
    return FitnessVector(std::move(w));
}

double measure_front_speed(const PopulationState& initial, const NoiseSpec& noise, double beta,
                           std::size_t generations, std::size_t burn_in, std::uint64_t seed) {
    if (generations <= burn_in) throw std::invalid_argument("measure_front_speed: need generations > burn_in");
    check_beta(beta);
    Rng rng(seed);
    PopulationState x = initial;
    double phi_start = front_position(x, beta);
    for (std::size_t t = 1; t <= generations; ++t) {
        x = step_front(x, noise, rng).state;
        if (t == burn_in) phi_start = front_position(x, beta);
        // Keep magnitudes bounded over long runs; Phi is translation-equivariant.
        if (t % 1024 == 0) {
            const double shift = x.positions.front();
            for (auto& v : x.positions) v -= shift;
            phi_start -= shift;
        }
    }
    return (front_position(x, beta) - phi_start) / static_cast<double>(generations - burn_in);
}

double measure_front_speed(std::size_t n, const NoiseSpec& noise, double beta, std::size_t generations,
                           std::size_t burn_in, std::uint64_t seed) {
    return measure_front_speed(PopulationState::zeros(n), noise, beta, generations, burn_in, seed);
}

FrontTrajectory simulate_front(const PopulationState& initial, const NoiseSpec& noise,
                               std::size_t generations, std::uint64_t seed, bool record_states) {
    Rng rng(seed);
    FrontTrajectory traj;
    traj.rows.reserve(generations);
    if (record_states) traj.states.push_back(initial);
    PopulationState x = initial;
    for (std::size_t t = 0; t < generations; ++t) {
        auto step = step_front(x, noise, rng);
        traj.rows.push_back(std::move(step.row));
        x = std::move(step.state);
        if (record_states) traj.states.push_back(x);
    }
    traj.final_state = std::move(x);
    return traj;
}

void write_trajectory_csv(std::ostream& os, const std::vector<std::vector<double>>& values,
                          const std::vector<std::vector<int>>& parents) {
    os << "generation,particle_index,position,parent_index\n";
    const auto old_precision = os.precision(17);
    for (std::size_t t = 0; t < values.size(); ++t) {
        for (std::size_t j = 0; j < values[t].size(); ++j) {
            os << t << ',' << j << ',' << values[t][j] << ',';
            if (t > 0 && t - 1 < parents.size()) os << parents[t - 1].at(j);
            os << '\n';
        }
    }
    os.precision(old_precision);
}

}  // namespace coalab
