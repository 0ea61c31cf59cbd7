// Acceptance criteria 1-9. Each prints one line: "criterion k: PASS|FAIL  details".

#include "coalab/coaltheory.hpp"
#include "coalab/fitnesswf.hpp"
#include "coalab/frontprop.hpp"
#include "coalab/genealogy.hpp"
#include "coalab/moments.hpp"
#include "coalab/partition.hpp"
#include "coalab/stats.hpp"

#include "../oracle/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace coalab;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1.0); }

std::uint64_t count_of(const std::map<MergerSignature, std::uint64_t>& m, const MergerSignature& s) {
    const auto it = m.find(s);
    return it == m.end() ? 0 : it->second;
}

// 1. Rate identities.
Verdict criterion_1() {
    Verdict v;
    Stopwatch clock;
    double worst_quad = 0.0, worst_oracle = 0.0, worst_consistency = 0.0;
    for (double a : {1.0, 1.25, 1.5, 1.75}) {
        const auto closed = beta_table_closed_form(a, 12);
        const auto quadr = rate_table_quadrature(MeasureSpec::beta_coalescent(a), 12);
        for (const auto& [bk, r] : closed.rates) {
            worst_quad = std::max(worst_quad, rel(quadr.at(bk.first, bk.second), r));
            worst_oracle = std::max(worst_oracle, rel(r, oracle::beta_rate(a, bk.first, bk.second)));
        }
        const auto cc = check_consistency(closed, 1e-9), cq = check_consistency(quadr, 1e-9);
        worst_consistency = std::max({worst_consistency, cc.max_residual, cq.max_residual});
        v.require(cc.failing.empty() && cq.failing.empty(), "consistency at alpha " + fmt(a));
    }
    double worst_bsz = 0.0;
    const auto uniform = rate_table_quadrature(MeasureSpec::uniform(), 12);
    for (int b = 2; b <= 12; ++b)
        for (int k = 2; k <= b; ++k) {
            const double ref = oracle::bsz_rate(b, k);
            worst_bsz = std::max({worst_bsz, rel(bsz_rate(b, k), ref), rel(beta_rate_closed_form(1.0, b, k), ref),
                                  rel(uniform.at(b, k), ref)});
        }
    const double t = clock.seconds();
    v.require(worst_quad < 1e-8, "closed form vs quadrature");
    v.require(worst_oracle < 1e-12, "closed form vs beta-function oracle");
    v.require(worst_consistency < 1e-9, "consistency residual");
    v.require(worst_bsz < 1e-8, "BSZ rates");
    v.require(t < 1.0, "runtime");
    v.detail << "max rel closed/quadrature " << fmt(worst_quad, 3) << ", consistency residual "
             << fmt(worst_consistency, 3) << ", BSZ max rel " << fmt(worst_bsz, 3) << ", " << fmt(t, 3) << " s";
    return v;
}

// 2. c_N limits.
Verdict criterion_2() {
    Verdict v;
    const auto half = estimate_cN(FitnessSpec::pareto(0.5), 1000, 100000, 201);
    v.require(rel(half.pair_coalescence_estimate, 0.5) <= 0.05, "(i)");
    v.detail << "(i) c_N " << fmt(half.pair_coalescence_estimate, 5) << " +- " << fmt(half.standard_error, 2) << "; ";

    v.detail << "(ii) N c_N";
    for (std::size_t N : {1000u, 10000u}) {
        const auto st = estimate_cN(FitnessSpec::pareto(3.0), N, 20000, 202 + N);
        const double nc = double(N) * st.offspring_moment_estimate;
        v.require(rel(nc, 4.0 / 3.0) <= 0.07, "(ii) N=" + std::to_string(N));
        v.detail << " " << fmt(nc, 5) << " +- " << fmt(double(N) * st.offspring_moment_se, 2);
    }
    v.detail << "; (iii) c_N log N";
    const std::vector<std::pair<std::size_t, std::size_t>> plan{{1000, 1000000}, {10000, 300000}, {100000, 200000}};
    double prev = 0.0;
    for (const auto& [N, reps] : plan) {
        const auto st = estimate_cN_environment(FitnessSpec::inverse_exponential(), N, reps, 203 + N);
        const double x = st.estimate * std::log(double(N));
        v.require(x > prev, "(iii) increasing at N=" + std::to_string(N));
        v.detail << " " << fmt(x, 5) << " +- " << fmt(st.standard_error * std::log(double(N)), 2);
        prev = x;
    }
    v.require(prev >= 0.6 && prev <= 1.4, "(iii) window at N=1e5");
    return v;
}

// 3. First-merger statistics.
Verdict criterion_3() {
    Verdict v;
    const double bsz = oracle::bsz_rate(3, 3) / (3.0 * oracle::bsz_rate(3, 2) + oracle::bsz_rate(3, 3));
    const auto g = first_merger_statistics(FitnessSpec::inverse_exponential(), 100000, 3, 20000, 1, 301);
    v.require(g.events >= 20000 && std::abs(g.full_merger_fraction - bsz) <= 0.05, "inverse exponential");
    v.detail << "inverse-exponential triple fraction " << fmt(g.full_merger_fraction, 4) << " +- "
             << fmt(g.full_merger_se, 2) << " (" << g.events << " events; BSZ " << fmt(bsz, 4) << "); ";
    const double beta = oracle::beta_rate(1.5, 3, 3) / (3.0 * oracle::beta_rate(1.5, 3, 2) + oracle::beta_rate(1.5, 3, 3));
    const auto p = first_merger_statistics(FitnessSpec::pareto(1.5), 100000, 3, 20000, 500, 302);
    v.require(p.events >= 20000 && std::abs(p.full_merger_fraction - beta) <= 0.05, "pareto 1.5");
    v.detail << "Pareto(1.5) " << fmt(p.full_merger_fraction, 4) << " +- " << fmt(p.full_merger_se, 2) << " ("
             << p.events << " events; Beta(0.5,1.5) " << fmt(beta, 4) << ")";
    return v;
}

// 4. Gumbel solvability.
Verdict criterion_4() {
    Verdict v;
    const std::size_t N = 50, reps = 100000;
    Rng rng(401);
    std::vector<double> front(reps), wf(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const auto x = sample_invariant_gumbel(N, 1.0, rng);
        const auto next = step_front(x, NoiseSpec::gumbel(0.0, 1.0), rng).state;
        const auto f = gumbel_fitness(next, 1.0);
        front[r] = *std::max_element(f.weights().begin(), f.weights().end());
        const auto w = normalize_fitness(sample_Y(FitnessSpec::inverse_exponential(), N, rng));
        wf[r] = *std::max_element(w.weights().begin(), w.weights().end());
    }
    const auto a = stats::ks_two_sample(front, wf);
    v.require(a.p_value > 0.01, "(a)");

    // (b) offspring of particle 0 in consecutive generations along one trajectory
    const std::size_t M = 10, T = 200000;
    auto x = sample_invariant_gumbel(M, 1.0, rng);
    std::vector<std::uint64_t> table(16, 0);
    std::size_t prev = 0;
    for (std::size_t t = 0; t <= T; ++t) {
        auto s = step_front(x, NoiseSpec::gumbel(0.0, 1.0), rng);
        const std::size_t nu = std::min<std::uint32_t>(s.row.offspring_counts(M)[0], 3);
        if (t > 0) ++table[prev * 4 + nu];
        prev = nu;
        x = recenter(s.state, 1.0);
    }
    const auto b = stats::chi_square_independence(table, 4, 4);
    v.require(b.p_value > 0.01, "(b)");

    // (c) exp(-beta (X_j(t+1) - Phi(X(t)) - rho)) ~ Exponential(1)
    const double rho = 0.7, beta = 1.3;
    std::vector<double> e0(reps), e_last(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        std::vector<double> pos(M);
        for (auto& p : pos) p = 5.0 * rng.uniform();
        const auto s = recenter(PopulationState(pos), beta);
        const double phi = front_position(s, beta);
        const auto next = step_front(s, NoiseSpec::gumbel(rho, beta), rng).state;
        e0[r] = std::exp(-beta * (next.positions.front() - phi - rho));
        e_last[r] = std::exp(-beta * (next.positions.back() - phi - rho));
    }
    auto cdf = [](double e) { return 1.0 - std::exp(-e); };
    const auto c0 = stats::ks_one_sample(e0, cdf), c1 = stats::ks_one_sample(e_last, cdf);
    v.require(c0.p_value > 0.01 && c1.p_value > 0.01, "(c)");
    v.detail << "(a) KS p " << fmt(a.p_value, 3) << "; (b) chi-square p " << fmt(b.p_value, 3) << "; (c) KS p "
             << fmt(c0.p_value, 3) << ", " << fmt(c1.p_value, 3);
    return v;
}

// 5. Moment integral representation.
Verdict criterion_5() {
    Verdict v;
    Stopwatch clock;
    const double two = eta_moment_quadrature(FitnessSpec::exponential(), 2, {2}).value;
    v.require(std::abs(two - 1.0 / 3.0) <= 1e-6, "N=2 exponential");
    v.detail << "N=2 " << fmt(two, 12) << "; N=50 Pareto(1.5)";
    for (const std::vector<int>& b : {std::vector<int>{2}, std::vector<int>{3}}) {
        const double q = eta_moment_quadrature(FitnessSpec::pareto(1.5), 50, b).value;
        const auto mc = eta_moment_mc(FitnessSpec::pareto(1.5), 50, b, 1000000, 500 + b[0]);
        v.require(rel(mc.estimate, q) <= 0.02, "N=50 b=" + std::to_string(b[0]));
        v.detail << " [" << b[0] << "] quad " << fmt(q) << " mc " << fmt(mc.estimate) << " +- "
                 << fmt(mc.standard_error, 2);
    }
    const double q = nu_factorial_moment(FitnessSpec::exponential(), 20, {2}, MomentMethod::quadrature);
    const auto sim = nu_factorial_moment_sim(FitnessSpec::exponential(), 20, {2}, 1000000, 503);
    v.require(std::abs(sim.estimate - q) <= 3.0 * sim.standard_error, "N=20 simulation");
    v.require(std::abs(q - 380.0 * oracle::dirichlet_moment(20, {2})) < 1e-9, "N=20 Dirichlet oracle");
    const double t = clock.seconds();
    v.require(t < 300.0, "runtime");
    v.detail << "; N=20 (N)_2 E[eta^2] " << fmt(q) << " sim " << fmt(sim.estimate) << " +- "
             << fmt(sim.standard_error, 2) << "; " << fmt(t, 3) << " s";
    return v;
}

double pareto_mean(double a) { return a > 1.0 ? a / (a - 1.0) : 0.0; }

// 6. Asymptotic suites.
Verdict criterion_6() {
    Verdict v;
    v.detail << "(a) final I_p ratios";
    for (double a : {0.5, 1.0, 1.5, 2.0})
        for (int p : {0, 2, 3}) {
            const auto d = FitnessSpec::pareto(a);
            double first = 0.0, last = 0.0;
            for (int k = 2; k <= 6; ++k) {
                const double u = std::pow(10.0, -k);
                const double r = laplace_Ip(d, p, u) / asymptotic_Ip(a, p, u, pareto_mean(a));
                if (k == 2) first = r;
                last = r;
            }
            const std::string row = "(a) alpha " + fmt(a) + " p " + std::to_string(p);
            v.require(std::abs(last - 1.0) <= 0.05, row);
            v.require(std::abs(last - 1.0) <= std::abs(first - 1.0), row + " trend");
            v.detail << " " << fmt(a, 2) << "/" << p << ":" << fmt(last, 5);
        }
    v.detail << "; (b) eta moment ratios at N=1e3,1e4,1e5";
    for (double a : {0.5, 1.0, 1.5, 2.0})
        for (const std::vector<int>& b : {std::vector<int>{2}, std::vector<int>{3}}) {
            const auto d = FitnessSpec::pareto(a);
            std::vector<double> r;
            for (double N : {1e3, 1e4, 1e5})
                r.push_back(eta_moment_quadrature(d, static_cast<std::size_t>(N), b).value /
                            asymptotic_eta_moment(a, pareto_mean(a), N, b));
            const std::string row = "(b) alpha " + fmt(a) + " b " + std::to_string(b[0]);
            v.require(std::abs(r[1] - 1.0) < std::abs(r[0] - 1.0) && std::abs(r[2] - 1.0) < std::abs(r[1] - 1.0),
                      row + " trend");
            v.require(std::abs(r[2] - 1.0) <= 0.10, row + " final");
            v.detail << " " << fmt(a, 2) << "/[" << b[0] << "]:" << fmt(r[0], 4) << "," << fmt(r[1], 4) << ","
                     << fmt(r[2], 4);
        }
    const double m15 = mohle_ratio(FitnessSpec::pareto(1.5), 100000, {3});
    v.require(rel(m15, 0.25) <= 0.05, "(c) alpha 1.5");
    const double m3a = mohle_ratio(FitnessSpec::pareto(3.0), 1000, {3});
    const double m3b = mohle_ratio(FitnessSpec::pareto(3.0), 10000, {3});
    const double m3c = mohle_ratio(FitnessSpec::pareto(3.0), 100000, {3});
    v.require(m3b < m3a && m3c < m3b && m3a / m3c >= 10.0, "(c) alpha 3");
    v.detail << "; (c) Mohle 1.5/[3] " << fmt(m15, 5) << ", 3/[3] " << fmt(m3a, 3) << " -> " << fmt(m3c, 3);
    return v;
}

// 7. Discrete Xi-coalescent.
Verdict criterion_7() {
    Verdict v;
    double worst_pair = 0.0, worst_rec = 0.0;
    for (double a = 0.05; a < 0.999; a += 0.05) {
        worst_pair = std::max(worst_pair, std::abs(xi_discrete_prob(a, MergerSignature::make({2}, 0)) -
                                                   std::tgamma(2.0 - a) / std::tgamma(1.0 - a)));
        for (int b = 2; b <= 6; ++b)
            for (const auto& s : enumerate_signatures(b))
                if (s.has_merge()) worst_rec = std::max(worst_rec, std::abs(xi_recursion_check(a, s)));
    }
    v.require(worst_pair <= 1e-12, "pair probability");
    v.require(worst_rec < 1e-12, "recursion");
    const std::size_t reps = 100000;
    const auto st = one_step_signatures(FitnessSpec::pareto(0.5), 10000, 4, reps, 701);
    double worst_z = 0.0;
    for (const auto& s : enumerate_signatures(4)) {
        const double p = xi_signature_prob(0.5, s);
        const double obs = double(count_of(st.merger_counts, s)) / double(reps);
        const double z = (obs - p) / std::sqrt(p * (1.0 - p) / double(reps));
        worst_z = std::max(worst_z, std::abs(z));
        v.require(std::abs(z) <= 3.0, "signature " + s.to_string());
    }
    v.detail << "max pair error " << fmt(worst_pair, 3) << ", max recursion residual " << fmt(worst_rec, 3)
             << ", max |z| over n=4 signatures " << fmt(worst_z, 3);
    return v;
}

// 8. Front speed.
Verdict criterion_8() {
    Verdict v;
    const std::size_t N = 1000;
    const double speed = measure_front_speed(N, NoiseSpec::gumbel(0.0, 1.0), 1.0, 11000, 1000, 801);
    const auto [m, se] = oracle::log_sum_inverse_exponentials(static_cast<int>(N), 1000000, 802);
    v.require(rel(speed, m) <= 0.01, "speed");
    v.detail << "measured " << fmt(speed, 7) << ", oracle " << fmt(m, 7) << " +- " << fmt(se, 2) << ", rel diff "
             << fmt(rel(speed, m), 3);
    return v;
}

// 9. Partition algebra.
Verdict criterion_9() {
    Verdict v;
    std::size_t pairs = 0;
    for (int n = 1; n <= 6; ++n) {
        const auto labels = oracle::set_partitions(n);
        std::vector<Partition> ps;
        for (const auto& l : labels) ps.push_back(Partition::from_labels(l));
        const auto mine = enumerate_partitions(static_cast<std::size_t>(n));
        v.require(std::set<Partition>(mine.begin(), mine.end()) == std::set<Partition>(ps.begin(), ps.end()),
                  "enumeration n=" + std::to_string(n));
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = 0; j < ps.size(); ++j) {
                ++pairs;
                const bool expect = oracle::refines(labels[i], labels[j]);
                if (is_refinement(ps[i], ps[j]) != expect) {
                    v.require(false, "refinement " + ps[i].to_string() + " vs " + ps[j].to_string());
                    continue;
                }
                if (!expect) continue;
                const auto sig = merger_signature(ps[i], ps[j]);
                std::map<int, std::set<int>> inside;
                for (std::size_t e = 0; e < labels[i].size(); ++e) inside[labels[j][e]].insert(labels[i][e]);
                std::vector<int> groups;
                int singles = 0;
                for (const auto& [c, f] : inside) {
                    if (f.size() >= 2) groups.push_back(static_cast<int>(f.size()));
                    else ++singles;
                }
                std::sort(groups.rbegin(), groups.rend());
                if (!(sig == MergerSignature::make(groups, singles)))
                    v.require(false, "signature " + ps[i].to_string() + " -> " + ps[j].to_string());
            }
        double total = 0.0;
        for (const auto& s : enumerate_signatures(n)) {
            const double m = signature_multiplicity(s);
            v.require(m == double(oracle::shape_count(n, s.group_sizes, s.s)), "multiplicity " + s.to_string());
            total += m;
        }
        v.require(total == double(oracle::bell(n)), "multiplicities sum");
    }

    Rng rng(901);
    int round_trips = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(12));
        std::vector<int> labels(static_cast<std::size_t>(n));
        int next = 0;
        for (auto& l : labels) {
            l = static_cast<int>(rng.below(static_cast<std::uint64_t>(next + 1)));
            if (l == next) ++next;
        }
        const auto p = Partition::from_labels(labels);
        const std::size_t blocks = p.block_count();
        std::map<std::size_t, std::vector<std::size_t>> by_colour;
        for (std::size_t i = 0; i < blocks; ++i) by_colour[rng.below(blocks)].push_back(i);
        std::vector<std::vector<std::size_t>> groups;
        std::vector<int> sizes;
        int untouched = 0;
        for (auto& [c, g] : by_colour) {
            if (g.size() >= 2) {
                groups.push_back(g);
                sizes.push_back(static_cast<int>(g.size()));
            } else {
                ++untouched;
            }
        }
        std::sort(sizes.rbegin(), sizes.rend());
        const auto q = merge_blocks(p, groups);
        const bool ok = is_refinement(p, q) && merger_signature(p, q) == MergerSignature::make(sizes, untouched) &&
                        Partition::parse(q.to_string()) == q;
        round_trips += ok;
    }
    v.require(round_trips == 1000, "round trips");
    v.detail << pairs << " ordered pairs checked for n <= 6, " << round_trips << "/1000 random round trips";
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "criteria to run (default: all)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    const std::vector<Verdict (*)()> criteria{criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                              criterion_6, criterion_7, criterion_8, criterion_9};
    bool all = true;
    for (int k : selected) {
        Stopwatch clock;
        Verdict v;
        try {
            v = criteria[static_cast<std::size_t>(k - 1)]();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        std::cout << "criterion " << k << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail.str() << " ("
                  << fmt(clock.seconds(), 3) << " s)" << std::endl;
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
