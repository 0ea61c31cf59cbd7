#include "coalab/fitnesswf.hpp"
#include "coalab/frontprop.hpp"
#include "coalab/stats.hpp"

#include <doctest.h>

#include <array>

using namespace coalab;

namespace {

double tail_fraction(const FitnessSpec& spec, double x, std::size_t n, std::uint64_t seed) {
    const auto y = sample_Y(spec, n, seed);
    return static_cast<double>(std::count_if(y.begin(), y.end(), [x](double v) { return v >= x; })) /
           static_cast<double>(n);
}

}  // namespace

TEST_SUITE("fitnesswf") {

TEST_CASE("fitness vector validation") {
    CHECK_NOTHROW(FitnessVector({0.5, 0.5}));
    CHECK_THROWS_AS(FitnessVector({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(FitnessVector({1.5, -0.5}), std::invalid_argument);
    CHECK_THROWS_AS(FitnessVector(std::vector<double>{}), std::invalid_argument);
    CHECK(FitnessVector::degenerate(3, 2)[2] == 1.0);
    CHECK(FitnessVector::uniform(4)[1] == 0.25);
}

TEST_CASE("spec metadata") {
    CHECK_THROWS_AS(FitnessSpec::pareto(0.0), std::invalid_argument);
    CHECK(FitnessSpec::pareto(3.0).mean().value() == doctest::Approx(1.5));
    CHECK(FitnessSpec::pareto(3.0).second_moment().value() == doctest::Approx(3.0));
    CHECK_FALSE(FitnessSpec::pareto(1.5).second_moment().has_value());
    CHECK_FALSE(FitnessSpec::inverse_exponential().mean().has_value());
    CHECK(FitnessSpec::inverse_exponential().tail_index().value() == 1.0);
    CHECK_FALSE(FitnessSpec::exponential().tail_index().has_value());
}

TEST_CASE("sample_Y tails") {
    CHECK(sample_Y(FitnessSpec::constant(), 4, 1) == std::vector<double>{1, 1, 1, 1});
    const std::size_t n = 1000000;
    const double p2 = tail_fraction(FitnessSpec::pareto(2.0), 10.0, n, 2);
    CHECK(std::abs(p2 - 0.01) < 3.0 * std::sqrt(0.01 * 0.99 / n));
    const double q = 1.0 - std::exp(-0.1);
    const double pi = tail_fraction(FitnessSpec::inverse_exponential(), 10.0, n, 3);
    CHECK(std::abs(pi - q) < 3.0 * std::sqrt(q * (1 - q) / n));
    const auto y = sample_Y(FitnessSpec::pareto(0.7), 10000, 4);
    CHECK(*std::min_element(y.begin(), y.end()) >= 1.0);
}

TEST_CASE("normalize_fitness") {
    const auto a = normalize_fitness(std::vector<double>{1, 1, 1, 1});
    for (std::size_t i = 0; i < 4; ++i) CHECK(a[i] == 0.25);
    const auto b = normalize_fitness(std::vector<double>{3, 1});
    CHECK(b[0] == 0.75);
    CHECK(b[1] == 0.25);
    const std::vector<double> y{0.3, 2.0, 7.5, 1e-3};
    std::vector<double> cy;
    for (double v : y) cy.push_back(7.3 * v);
    const auto n1 = normalize_fitness(y);
    const auto n2 = normalize_fitness(cy);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(n1[i] == doctest::Approx(n2[i]).epsilon(1e-15));
    CHECK_THROWS_AS(normalize_fitness(std::vector<double>{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("sample_parents") {
    const auto d = sample_parents(FitnessVector::degenerate(5, 0), 1);
    CHECK(d.parent_of == std::vector<int>(5, 0));
    CHECK(d.offspring_counts == std::vector<std::uint32_t>{5, 0, 0, 0, 0});
    const auto big = sample_parents(FitnessVector::degenerate(500, 0), 1);
    CHECK(big.offspring_counts[0] == 500);

    // mean of nu_1 under uniform fitness, N = 10^4
    stats::RunningMoments m;
    Rng rng(7);
    const auto uni = FitnessVector::uniform(10000);
    for (int r = 0; r < 10000; ++r) m.add(sample_parents(uni, rng).offspring_counts[0]);
    CHECK(std::abs(m.mean() - 1.0) < 3.0 * m.standard_error());

    // N = 2 with (0.75, 0.25): binomial pmf
    std::array<std::uint64_t, 3> counts{};
    const FitnessVector f({0.75, 0.25});
    for (int r = 0; r < 100000; ++r) ++counts[2 - sample_parents(f, rng).offspring_counts[0]];
    const std::array<double, 3> probs{0.5625, 0.375, 0.0625};
    CHECK(stats::chi_square_gof(counts, probs).p_value > 0.01);
}

TEST_CASE("alias table matches the weights") {
    std::vector<double> w{0.1, 0.0, 0.4, 0.2, 0.3};
    AliasTable t(w);
    Rng rng(3);
    std::array<std::uint64_t, 5> c{};
    for (int i = 0; i < 200000; ++i) ++c[t.sample(rng)];
    CHECK(c[1] == 0);
    CHECK(stats::chi_square_gof(c, w).p_value > 0.01);
    const auto p = draw_parents(std::vector<double>{2.0, 0.0, 6.0}, 80000, rng);
    std::array<std::uint64_t, 3> d{};
    for (int v : p) ++d[static_cast<std::size_t>(v)];
    CHECK(d[1] == 0);
    CHECK(stats::chi_square_gof(d, std::vector<double>{0.25, 0.0, 0.75}).p_value > 0.01);
}

TEST_CASE("wf generation exchangeability and classical variance") {
    Rng rng(12);
    std::vector<std::uint64_t> a(6, 0), b(6, 0);
    for (int r = 0; r < 100000; ++r) {
        const auto g = wf_generation(FitnessSpec::pareto(1.2), 5, rng);
        ++a[std::min<std::uint32_t>(g.record.offspring_counts[0], 5)];
        ++b[std::min<std::uint32_t>(g.record.offspring_counts[1], 5)];
    }
    CHECK(stats::chi_square_homogeneity(a, b).p_value > 0.01);

    stats::RunningMoments v;
    const std::size_t N = 50;
    for (int r = 0; r < 100000; ++r) v.add(wf_generation(FitnessSpec::constant(), N, rng).record.offspring_counts[0]);
    CHECK(v.variance() == doctest::Approx(1.0 - 1.0 / N).epsilon(0.02));
}

TEST_CASE("inverse-exponential WF matches the Gumbel front offspring law") {
    Rng rng(31);
    std::vector<std::uint64_t> wf(3, 0), front(3, 0);
    auto x = sample_invariant_gumbel(2, 1.0, rng);
    for (int r = 0; r < 100000; ++r) {
        ++wf[wf_generation(FitnessSpec::inverse_exponential(), 2, rng).record.offspring_counts[0]];
        auto s = step_front(x, NoiseSpec::gumbel(0.0, 1.0), rng);
        ++front[s.row.offspring_counts(2)[0]];
        x = recenter(s.state, 1.0);
    }
    CHECK(stats::chi_square_homogeneity(wf, front).p_value > 0.01);
}

TEST_CASE("count_offspring") {
    CHECK(count_offspring(std::vector<int>{0, 2, 2, 1}, 4) == std::vector<std::uint32_t>{1, 1, 2, 0});
    CHECK_THROWS_AS(count_offspring(std::vector<int>{0, 4}, 4), std::out_of_range);
}

}
