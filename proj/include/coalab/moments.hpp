#pragma once

// Moments of eta_i = Y_i / sum_j Y_j through the Laplace-transform integral
//   E[eta_1^b1 ... eta_a^ba] = Gamma(b)^-1 int u^(b-1) I_0(u)^(N-a) prod I_bi(u) du,
// with I_p(u) = E[Y^p e^(-uY)], and their small-u / large-N asymptotics.

#include "coalab/fitnesswf.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace coalab {

/// Laws of Y for the moment computations (any family of FitnessSpec).
using DistSpec = FitnessSpec;

struct QuadratureSpec {
    std::size_t nodes = 64;             // Gauss-Legendre points per panel, >= 16
    std::optional<double> split_point;  // default kappa_N = (log N)^2 / N
    double tail_bound_budget = 1e-10;   // integrate [split, inf) when bound/head exceeds this

    void validate() const;
};

/// I_p(u) = E[Y^p exp(-uY)].
double laplace_Ip(const DistSpec& dist, int p, double u, const QuadratureSpec& quad = {});

/// 1 - I_0(u), computed without cancellation.
double laplace_complement(const DistSpec& dist, double u);

/// Leading small-u behaviour of I_p(u) for a tail P(Y >= y) ~ y^-alpha, 0 < alpha <= 2.
/// Covered: p = 0 and p >= 2 (p = 2 at alpha = 2 takes the logarithmic form).
double asymptotic_Ip(double alpha, int p, double u, double mean_y = 0.0);

struct EtaMomentResult {
    double value = 0.0;       // head, plus the integrated tail when it was needed
    double head = 0.0;        // integral over [0, split]
    double tail = 0.0;        // integral over [split, inf) when integrated, else 0
    double tail_bound = 0.0;  // I_0(split)^(N-a), which bounds the [split, inf) part
    bool tail_integrated = false;
    double split = 0.0;
};

/// b_list entries must be >= 1; a = |b_list| <= N and b = sum <= N (N = 1 gives 1).
EtaMomentResult eta_moment_quadrature(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list,
                                      const QuadratureSpec& quad = {});

struct McEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Average of prod_k eta_(i+k mod N)^(b_k), itself averaged over i, across
/// `samples` independent fitness vectors.
McEstimate eta_moment_mc(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list, std::size_t samples,
                         std::uint64_t seed, unsigned threads = 1);

/// log N(N-1)...(N-b+1).
double falling_factorial_log(std::size_t N, std::size_t b);

enum class MomentMethod { quadrature, mc };

/// E[(nu_1)_b1 ... (nu_a)_ba] = (N)_b E[eta_1^b1 ... eta_a^ba].
double nu_factorial_moment(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list, MomentMethod method,
                           std::size_t samples = 1000000, std::uint64_t seed = 1);

/// The same factorial moment measured on simulated generations.
McEstimate nu_factorial_moment_sim(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list,
                                   std::size_t generations, std::uint64_t seed, unsigned threads = 1);

/// Leading-order E[eta_1^b1 ... eta_a^ba] at finite N (b_i >= 2, 0 < alpha <= 2;
/// mean_y is needed for alpha > 1).
double asymptotic_eta_moment(double alpha, double mean_y, double N, const std::vector<int>& b_list);

/// (N)_b E[prod eta^bi] / (N^(b-a) c_N) with c_N = N E[eta_1^2], both by quadrature.
double mohle_ratio(const DistSpec& dist, std::size_t N, const std::vector<int>& b_list,
                   const QuadratureSpec& quad = {});

/// E_1(z) = int_z^inf e^-x / x dx by its convergent series.
double exponential_integral_series(double z);

struct MomentRow {
    std::size_t N = 0;
    double alpha = 0.0;
    std::vector<int> b_list;
    double quadrature_value = 0.0;
    std::optional<double> mc_value;
    std::optional<double> mc_se;
    std::optional<double> asymptotic_value;
};

/// CSV columns: N, alpha, b_list, quadrature_value, mc_value, mc_se,
/// asymptotic_value, ratio (quadrature / asymptotic). Missing values are empty.
void write_moment_csv(std::ostream& os, const std::vector<MomentRow>& rows);

}  // namespace coalab
