#pragma once

// Reference coalescents: Lambda-coalescent rates (Kingman, Bolthausen-Sznitman,
// Beta), the discrete-time Xi-coalescent of the alpha < 1 regime, identities
// between rates, leading-order c_N, and reference path simulators.

#include "coalab/partition.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace coalab {

class MeasureSpec {
  public:
    struct PointMassAtZero {};
    struct Uniform01 {};
    /// Probability density u^(a-1) (1-u)^(b-1) / B(a,b).
    struct BetaMeasure {
        double a;
        double b;
    };
    using Family = std::variant<PointMassAtZero, Uniform01, BetaMeasure>;

    static MeasureSpec kingman() { return MeasureSpec(PointMassAtZero{}); }
    static MeasureSpec uniform() { return MeasureSpec(Uniform01{}); }
    static MeasureSpec beta(double a, double b);
    /// Beta(2 - alpha, alpha), the limit measure for 1 <= alpha < 2.
    static MeasureSpec beta_coalescent(double alpha);

    const Family& family() const noexcept { return family_; }
    std::string name() const;

  private:
    explicit MeasureSpec(Family f) : family_(f) {}
    Family family_;
};

/// int u^(k-2) (1-u)^(b-k) Lambda(du), by a 64-point Gauss rule matched to the measure.
double lambda_rate_quadrature(const MeasureSpec& measure, int b, int k, std::size_t nodes = 64);

/// B(k - alpha, b - k + alpha) / B(2 - alpha, alpha) for 1 <= alpha < 2.
double beta_rate_closed_form(double alpha, int b, int k);

/// (k-2)! (b-k)! / (b-1)!.
double bsz_rate(int b, int k);

double kingman_rate(int b, int k);

/// Probability that b blocks merge in one generation according to one
/// particular set partition of signature `sig` (0 < alpha < 1, a >= 1).
double xi_discrete_prob(double alpha, const MergerSignature& sig);

/// Probability of the merger type `sig` summed over all set partitions of that
/// shape. The no-merge signature gets 1 minus the total merge probability.
double xi_signature_prob(double alpha, const MergerSignature& sig);

/// 1 - sum of all merge-signature probabilities for b blocks; throws if the
/// result leaves [0,1] beyond rounding.
double xi_no_merge_prob(double alpha, int b);

/// Residual of the consistency recursion for the discrete probabilities:
///   p(b; sizes; s) - p(b+1; sizes; s+1) - sum_j p(b+1; sizes with b_j+1; s)
///     - s p(b+1; sizes + {2}; s-1).
double xi_recursion_check(double alpha, const MergerSignature& sig);

struct RateTable {
    int max_b = 0;
    std::map<std::pair<int, int>, double> rates;
    std::string source;  // closed_form | quadrature

    double at(int b, int k) const;
};

RateTable kingman_table(int max_b);
RateTable bsz_table(int max_b);
RateTable beta_table_closed_form(double alpha, int max_b);
RateTable rate_table_quadrature(const MeasureSpec& measure, int max_b);

struct ConsistencyReport {
    double max_residual = 0.0;
    std::size_t checked = 0;
    std::vector<std::pair<int, int>> failing;  // (b, k) with residual above tolerance
};

/// Checks lambda(b,k) = lambda(b+1,k) + lambda(b+1,k+1) for all b < max_b.
ConsistencyReport check_consistency(const RateTable& table, double tolerance = 1e-9);

/// CSV columns: b, k, rate, source.
void write_rate_table_csv(std::ostream& os, const std::vector<RateTable>& tables);

using RateFunction = std::function<double(int b, int k)>;

/// Continuous-time chain: with b blocks every k-subset merges at rate
/// lambda(b,k). Stops at one block or when time exceeds `horizon`.
PartitionPath simulate_lambda_coalescent(int n, const RateFunction& rates, double horizon, std::uint64_t seed);
PartitionPath simulate_lambda_coalescent(int n, const RateTable& table, double horizon, std::uint64_t seed);

/// Discrete-time Xi-coalescent with one-step law xi_signature_prob, for n <= 8.
PartitionPath simulate_xi_discrete(int n, double alpha, int generations, std::uint64_t seed);

/// Leading-order c_N in each tail regime of the fitness law.
struct SquareIntegrable {
    double mean;
    double second_moment;
};
struct AlphaTwo {
    double mean;
};
struct AlphaBetween1And2 {
    double alpha;
    double mean;
};
struct AlphaOne {};
struct AlphaBelowOne {
    double alpha;
};
using CnRegime = std::variant<SquareIntegrable, AlphaTwo, AlphaBetween1And2, AlphaOne, AlphaBelowOne>;

double asymptotic_cN(const CnRegime& regime, double N);

}  // namespace coalab
