#include "coalab/runner.hpp"

#include "coalab/coaltheory.hpp"
#include "coalab/fitnesswf.hpp"
#include "coalab/frontprop.hpp"
#include "coalab/genealogy.hpp"
#include "coalab/moments.hpp"
#include "coalab/parallel.hpp"
#include "coalab/rng.hpp"
#include "coalab/stats.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coalab {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

NoiseSpec noise_from(const ExperimentConfig& c) {
    const auto& n = c.text("noise");
    if (n == "gumbel") return NoiseSpec::gumbel(c.real("rho"), c.real("beta"));
    if (n == "exponential") return NoiseSpec::exponential(c.real("rate"));
    if (n == "uniform") return NoiseSpec::uniform(c.real("lo"), c.real("hi"));
    return NoiseSpec::deterministic(c.real("value"));
}

FitnessSpec fitness_from(const ExperimentConfig& c) {
    const auto& m = c.text("model");
    if (m == "pareto") return FitnessSpec::pareto(c.real("alpha"));
    if (m == "inverse_exponential") return FitnessSpec::inverse_exponential();
    if (m == "exponential") return FitnessSpec::exponential();
    if (m == "constant") return FitnessSpec::constant();
    throw std::invalid_argument("model '" + m + "' is not a fitness law");
}

ModelSpec model_from(const ExperimentConfig& c) {
    if (c.text("model") == "front")
        return FrontModelSpec{noise_from(c), c.real("beta"), static_cast<std::size_t>(c.integer("burn_in"))};
    return fitness_from(c);
}

std::optional<CnRegime> regime_for(const ModelSpec& model) {
    if (const auto* f = std::get_if<FrontModelSpec>(&model)) {
        if (f->noise.is_gumbel()) return AlphaOne{};
        return std::nullopt;
    }
    const auto& fit = std::get<FitnessSpec>(model);
    if (std::holds_alternative<FitnessSpec::InverseExponential>(fit.family())) return AlphaOne{};
    if (std::holds_alternative<FitnessSpec::ExponentialY>(fit.family())) return SquareIntegrable{1.0, 2.0};
    if (std::holds_alternative<FitnessSpec::ConstantY>(fit.family())) return SquareIntegrable{1.0, 1.0};
    const double a = std::get<FitnessSpec::ParetoTail>(fit.family()).alpha;
    if (a < 1.0) return AlphaBelowOne{a};
    if (a == 1.0) return AlphaOne{};
    if (a < 2.0) return AlphaBetween1And2{a, a / (a - 1.0)};
    if (a == 2.0) return AlphaTwo{2.0};
    return SquareIntegrable{a / (a - 1.0), a / (a - 2.0)};
}

/// Probability that the first event of the limiting coalescent started from n
/// blocks merges all of them.
std::optional<double> limit_full_merger_fraction(const ModelSpec& model, int n) {
    const auto regime = regime_for(model);
    if (!regime) return std::nullopt;
    RateFunction rate;
    if (std::holds_alternative<AlphaOne>(*regime)) rate = bsz_rate;
    else if (const auto* r = std::get_if<AlphaBetween1And2>(&*regime))
        rate = [a = r->alpha](int b, int k) { return beta_rate_closed_form(a, b, k); };
    else if (std::holds_alternative<AlphaTwo>(*regime) || std::holds_alternative<SquareIntegrable>(*regime))
        rate = kingman_rate;
    if (rate) {
        double total = 0.0;
        for (int k = 2; k <= n; ++k) total += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * rate(n, k);
        return rate(n, n) / total;
    }
    const double a = std::get<AlphaBelowOne>(*regime).alpha;
    return xi_signature_prob(a, MergerSignature::make({n}, 0)) / (1.0 - xi_no_merge_prob(a, n));
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json config_json(const ExperimentConfig& c) {
    json j = json::object();
    for (const auto& [k, v] : c.values()) j[k] = v;
    return j;
}

struct Report {
    json data = json::object();
    bool passed = true;
    std::string summary;
    std::vector<std::pair<std::string, std::string>> tables;  // file name, CSV text
};

json histogram_json(const std::map<MergerSignature, std::uint64_t>& counts) {
    json h = json::object();
    for (const auto& [sig, c] : counts) h[sig.to_string()] = c;
    return h;
}

Report simulate_front_cmd(const ExperimentConfig& c) {
    const auto N = static_cast<std::size_t>(c.integer("N"));
    const auto T = static_cast<std::size_t>(c.integer("generations"));
    const auto noise = noise_from(c);
    const double beta = c.real("beta");
    Rng rng(derive_seed(c.seed, 0, 0));
    PopulationState x = c.text("init") == "invariant" ? sample_invariant_gumbel(N, beta, rng) : PopulationState::zeros(N);
    std::ostringstream csv;
    csv.precision(17);
    csv << "generation,particle_index,position,parent_index\n";
    for (std::size_t j = 0; j < N; ++j) csv << 0 << ',' << j << ',' << x.positions[j] << ",\n";
    const double phi0 = front_position(x, beta);
    stats::RunningMoments moment;
    for (std::size_t t = 1; t <= T; ++t) {
        auto step = step_front(x, noise, rng);
        x = std::move(step.state);
        double s = 0.0;
        for (auto v : step.row.offspring_counts(N)) s += double(v) * (double(v) - 1.0);
        if (N > 1) moment.add(s / (double(N) * (double(N) - 1.0)));
        for (std::size_t j = 0; j < N; ++j)
            csv << t << ',' << j << ',' << x.positions[j] << ',' << step.row.parent_of[j] << '\n';
    }
    Report r;
    const double phiT = front_position(x, beta);
    r.data = {{"noise", noise.name()},
              {"N", N},
              {"generations", T},
              {"front_position_initial", phi0},
              {"front_position_final", phiT},
              {"mean_speed", (phiT - phi0) / double(T)},
              {"offspring_moment_mean", moment.mean()}};
    r.tables.emplace_back("simulate-front_trajectory.csv", csv.str());
    r.summary = "front speed " + std::to_string((phiT - phi0) / double(T));
    return r;
}

Report simulate_wf_cmd(const ExperimentConfig& c) {
    const auto N = static_cast<std::size_t>(c.integer("N"));
    const auto T = static_cast<std::size_t>(c.integer("generations"));
    const auto fit = fitness_from(c);
    Rng rng(derive_seed(c.seed, 0, 0));
    std::ostringstream csv;
    csv.precision(17);
    csv << "generation,particle_index,position,parent_index\n";
    // "position" holds the fitness weight of each individual.
    auto eta = normalize_fitness(sample_Y(fit, N, rng));
    for (std::size_t j = 0; j < N; ++j) csv << 0 << ',' << j << ',' << eta[j] << ",\n";
    stats::RunningMoments moment;
    double max_eta = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        const auto rec = sample_parents(eta, rng);
        double s = 0.0;
        for (auto v : rec.offspring_counts) s += double(v) * (double(v) - 1.0);
        if (N > 1) moment.add(s / (double(N) * (double(N) - 1.0)));
        for (std::size_t i = 0; i < N; ++i) max_eta = std::max(max_eta, eta[i]);
        eta = normalize_fitness(sample_Y(fit, N, rng));
        for (std::size_t j = 0; j < N; ++j) csv << t << ',' << j << ',' << eta[j] << ',' << rec.parent_of[j] << '\n';
    }
    Report r;
    r.data = {{"model", fit.name()},
              {"N", N},
              {"generations", T},
              {"offspring_moment_mean", moment.mean()},
              {"offspring_moment_se", moment.standard_error()},
              {"largest_weight_seen", max_eta}};
    r.tables.emplace_back("simulate-wf_trajectory.csv", csv.str());
    r.summary = "mean sum nu(nu-1)/(N(N-1)) " + std::to_string(moment.mean());
    return r;
}

Report estimate_cn_cmd(const ExperimentConfig& c) {
    const auto model = model_from(c);
    const auto grid = c.integer_list("N_grid");
    const auto reps = static_cast<std::size_t>(c.integer("replicates"));
    const bool check = c.text("check") == "asymptotic";
    const auto regime = regime_for(model);
    if (check && !regime) throw std::invalid_argument("check: no leading-order c_N for this model");
    Report r;
    json rows = json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << "N,c_N_estimate,c_N_se,offspring_moment_estimate,offspring_moment_se,asymptotic_c_N\n";
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto N = static_cast<std::size_t>(grid[g]);
        const auto st = estimate_cN(model, N, reps, derive_seed(c.seed, 100, g), c.threads);
        json row = {{"model", model_name(model)},
                    {"N", N},
                    {"n", 2},
                    {"replicates", reps},
                    {"c_N_estimate", st.pair_coalescence_estimate},
                    {"c_N_se", st.standard_error},
                    {"offspring_moment_estimate", st.offspring_moment_estimate},
                    {"offspring_moment_se", st.offspring_moment_se}};
        const auto merged = static_cast<std::uint64_t>(std::llround(st.pair_coalescence_estimate * double(reps)));
        row["signature_histogram"] = {{MergerSignature::make({2}, 0).to_string(), merged},
                                      {MergerSignature::make({}, 2).to_string(), reps - merged}};
        csv << N << ',' << st.pair_coalescence_estimate << ',' << st.standard_error << ','
            << st.offspring_moment_estimate << ',' << st.offspring_moment_se << ',';
        if (regime) {
            const double pred = asymptotic_cN(*regime, double(N));
            row["asymptotic_c_N"] = pred;
            csv << pred;
            if (check) {
                const bool ok = std::abs(st.offspring_moment_estimate / pred - 1.0) <= c.real("tolerance");
                row["within_tolerance"] = ok;
                r.passed = r.passed && ok;
            }
        }
        csv << '\n';
        rows.push_back(row);
    }
    r.data = {{"results", rows}};
    r.tables.emplace_back("estimate-cn.csv", csv.str());
    r.summary = "estimated c_N for " + std::to_string(grid.size()) + " population sizes";
    return r;
}

Report merger_stats_cmd(const ExperimentConfig& c) {
    const auto model = model_from(c);
    const auto N = static_cast<std::size_t>(c.integer("N"));
    const auto n = static_cast<int>(c.integer("n"));
    const bool check = c.text("check") == "limit";
    Report r;
    r.data = {{"model", model_name(model)}, {"N", N}, {"n", n}, {"mode", c.text("mode")}};
    if (c.text("mode") == "first_merger") {
        const auto st = first_merger_statistics(model, N, static_cast<std::size_t>(n),
                                                static_cast<std::size_t>(c.integer("events")),
                                                static_cast<std::size_t>(c.integer("lineage_sets")), c.seed);
        r.data["events"] = st.events;
        r.data["generations"] = st.generations;
        r.data["lineage_sets"] = c.integer("lineage_sets");
        r.data["full_merger_fraction"] = st.full_merger_fraction;
        r.data["full_merger_se"] = st.full_merger_se;
        r.data["signature_histogram"] = histogram_json(st.counts);
        const auto pred = limit_full_merger_fraction(model, n);
        if (pred) r.data["predicted_full_merger_fraction"] = *pred;
        if (check) {
            if (!pred) throw std::invalid_argument("check: no limiting coalescent for this model");
            r.passed = std::abs(st.full_merger_fraction - *pred) <= c.real("tolerance");
        }
        r.summary = "full-merger fraction " + std::to_string(st.full_merger_fraction) + " +- " +
                    std::to_string(st.full_merger_se);
        return r;
    }
    const auto reps = static_cast<std::size_t>(c.integer("replicates"));
    const auto st = one_step_signatures(model, N, static_cast<std::size_t>(n), reps, c.seed, c.threads);
    r.data["replicates"] = reps;
    r.data["signature_histogram"] = histogram_json(st.merger_counts);
    const auto regime = regime_for(model);
    const auto* xi = regime ? std::get_if<AlphaBelowOne>(&*regime) : nullptr;
    if (check && !xi) throw std::invalid_argument("check: one-step predictions exist only for pareto with alpha < 1");
    if (xi) {
        json pred = json::object();
        double worst = 0.0;
        for (const auto& sig : enumerate_signatures(n)) {
            const double p = xi_signature_prob(xi->alpha, sig);
            const auto it = st.merger_counts.find(sig);
            const double obs = it == st.merger_counts.end() ? 0.0 : double(it->second) / double(reps);
            const double se = std::sqrt(std::max(p * (1 - p), 1e-300) / double(reps));
            const double z = (obs - p) / se;
            worst = std::max(worst, std::abs(z));
            pred[sig.to_string()] = {{"predicted", p}, {"observed", obs}, {"z", z}};
        }
        r.data["predicted"] = pred;
        r.data["max_abs_z"] = worst;
        if (check) r.passed = worst <= 3.0;
    }
    r.summary = "one-step signatures over " + std::to_string(reps) + " generations";
    return r;
}

Report verify_rates_cmd(const ExperimentConfig& c) {
    const double alpha = c.real("alpha");
    const int max_b = static_cast<int>(c.integer("max_b"));
    const double tol = c.real("tolerance");
    const auto closed = beta_table_closed_form(alpha, max_b);
    const auto quadr = rate_table_quadrature(MeasureSpec::beta_coalescent(alpha), max_b);
    double worst = 0.0;
    for (const auto& [bk, v] : closed.rates) worst = std::max(worst, std::abs(quadr.at(bk.first, bk.second) / v - 1.0));
    const auto cc = check_consistency(closed);
    const auto cq = check_consistency(quadr);
    Report r;
    r.data = {{"alpha", alpha},
              {"max_b", max_b},
              {"max_relative_difference", worst},
              {"consistency_residual_closed_form", cc.max_residual},
              {"consistency_residual_quadrature", cq.max_residual}};
    r.passed = worst <= tol && cc.failing.empty() && cq.failing.empty();
    if (alpha < 1.0) {
        double xi_worst = 0.0;
        for (int b = 2; b <= std::min(max_b, 6); ++b)
            for (const auto& sig : enumerate_signatures(b))
                if (sig.has_merge()) xi_worst = std::max(xi_worst, std::abs(xi_recursion_check(alpha, sig)));
        r.data["xi_recursion_residual"] = xi_worst;
        r.passed = r.passed && xi_worst < 1e-12;
    }
    std::ostringstream csv;
    write_rate_table_csv(csv, {closed, quadr});
    r.tables.emplace_back("verify-rates.csv", csv.str());
    r.summary = "max relative difference " + std::to_string(worst);
    return r;
}

Report verify_moments_cmd(const ExperimentConfig& c) {
    const auto dist = fitness_from(c);
    const auto grid = c.integer_list("N_grid");
    std::vector<int> b_list;
    for (auto v : c.integer_list("b_list")) b_list.push_back(static_cast<int>(v));
    const auto samples = static_cast<std::size_t>(c.integer("mc_samples"));
    QuadratureSpec q;
    q.nodes = static_cast<std::size_t>(c.integer("nodes"));
    const double tol = c.real("tolerance");
    const auto alpha = dist.tail_index();
    const bool asym_ok = alpha && *alpha <= 2.0 && std::all_of(b_list.begin(), b_list.end(), [](int b) { return b >= 2; });
    Report r;
    std::vector<MomentRow> rows;
    json out = json::array();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto N = static_cast<std::size_t>(grid[g]);
        MomentRow row;
        row.N = N;
        row.alpha = alpha.value_or(0.0);
        row.b_list = b_list;
        const auto res = eta_moment_quadrature(dist, N, b_list, q);
        row.quadrature_value = res.value;
        json j = {{"N", N},
                  {"quadrature_value", res.value},
                  {"head", res.head},
                  {"tail_bound", res.tail_bound},
                  {"tail_integrated", res.tail_integrated}};
        if (samples > 0) {
            const auto mc = eta_moment_mc(dist, N, b_list, samples, derive_seed(c.seed, 200, g), c.threads);
            row.mc_value = mc.estimate;
            row.mc_se = mc.standard_error;
            const bool ok = std::abs(res.value - mc.estimate) <= std::max(tol * std::abs(res.value), 3.0 * mc.standard_error);
            j["mc_value"] = mc.estimate;
            j["mc_se"] = mc.standard_error;
            j["agrees"] = ok;
            r.passed = r.passed && ok;
        }
        if (asym_ok && N > 1) {
            const double mean = *alpha > 1.0 ? *alpha / (*alpha - 1.0) : 0.0;
            row.asymptotic_value = asymptotic_eta_moment(*alpha, mean, double(N), b_list);
            j["asymptotic_value"] = *row.asymptotic_value;
            j["ratio"] = res.value / *row.asymptotic_value;
        }
        rows.push_back(row);
        out.push_back(j);
    }
    r.data = {{"model", dist.name()}, {"b_list", b_list}, {"results", out}};
    std::ostringstream csv;
    write_moment_csv(csv, rows);
    r.tables.emplace_back("verify-moments.csv", csv.str());
    r.summary = "moments for " + std::to_string(grid.size()) + " population sizes";
    return r;
}

/// rho + beta^-1 E[log sum_j 1/E_j] with E_j i.i.d. Exponential(1).
McEstimate gumbel_speed_oracle(std::size_t N, double rho, double beta, std::size_t samples, std::uint64_t seed,
                               unsigned threads) {
    const auto blocks = make_blocks(samples, 4096);
    std::vector<stats::RunningMoments> acc(blocks.size());
    parallel_for(blocks.size(), threads, [&](std::size_t k) {
        Rng rng(derive_seed(seed, 300, k));
        for (std::size_t i = blocks[k].begin; i < blocks[k].end; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < N; ++j) s += 1.0 / rng.exponential();
            acc[k].add(std::log(s));
        }
    });
    stats::RunningMoments total;
    for (const auto& a : acc) total.merge(a);
    return {rho + total.mean() / beta, total.standard_error() / beta};
}

Report front_speed_cmd(const ExperimentConfig& c) {
    const auto N = static_cast<std::size_t>(c.integer("N"));
    const auto noise = noise_from(c);
    const double beta = c.real("beta");
    const auto T = static_cast<std::size_t>(c.integer("generations"));
    const auto burn = static_cast<std::size_t>(c.integer("burn_in"));
    const auto init = c.text("init") == "invariant" ? sample_invariant_gumbel(N, beta, derive_seed(c.seed, 0, 1))
                                                     : PopulationState::zeros(N);
    const double speed = measure_front_speed(init, noise, beta, T, burn, derive_seed(c.seed, 0, 0));
    Report r;
    r.data = {{"noise", noise.name()}, {"N", N}, {"generations", T}, {"burn_in", burn}, {"speed", speed}};
    std::optional<double> oracle;
    if (const auto* g = std::get_if<NoiseSpec::Gumbel>(&noise.family())) {
        const auto o = gumbel_speed_oracle(N, g->rho, g->beta, static_cast<std::size_t>(c.integer("oracle_samples")),
                                           c.seed, c.threads);
        oracle = o.estimate;
        r.data["oracle"] = o.estimate;
        r.data["oracle_se"] = o.standard_error;
    } else if (const auto* d = std::get_if<NoiseSpec::Deterministic>(&noise.family())) {
        oracle = d->value;
        r.data["oracle"] = d->value;
    }
    if (oracle) {
        const double rel = std::abs(speed - *oracle) / std::max(std::abs(*oracle), 1e-300);
        r.data["relative_difference"] = rel;
        r.passed = rel <= c.real("tolerance");
    }
    r.summary = "front speed " + std::to_string(speed);
    return r;
}

Report reference_coalescent_cmd(const ExperimentConfig& c) {
    const auto kind = c.text("coalescent");
    const int n = static_cast<int>(c.integer("n"));
    const auto reps = static_cast<std::size_t>(c.integer("replicates"));
    const double horizon = c.real("horizon");
    const double alpha = c.has("alpha") ? c.real("alpha") : 0.0;
    RateFunction rate;
    if (kind == "kingman") rate = kingman_rate;
    else if (kind == "bsz") rate = bsz_rate;
    else if (kind == "beta") rate = [alpha](int b, int k) { return beta_rate_closed_form(alpha, b, k); };

    std::vector<MergerSignature> first(reps);
    std::vector<double> tmrca(reps);
    parallel_for(reps, c.threads, [&](std::size_t i) {
        const auto seed = derive_seed(c.seed, 400, i);
        const auto path = rate ? simulate_lambda_coalescent(n, rate, horizon, seed)
                               : simulate_xi_discrete(n, alpha, 100000000, seed);
        const auto& states = path.states();
        first[i] = states.size() > 1 ? merger_signature(states[0], states[1]) : MergerSignature::make({}, n);
        tmrca[i] = path.back().block_count() == 1 ? path.times().back() : std::nan("");
    });
    std::map<MergerSignature, std::uint64_t> counts;
    stats::RunningMoments time;
    for (std::size_t i = 0; i < reps; ++i) {
        ++counts[first[i]];
        if (!std::isnan(tmrca[i])) time.add(tmrca[i]);
    }
    Report r;
    r.data = {{"coalescent", kind}, {"n", n}, {"replicates", reps}};
    if (kind == "beta" || kind == "xi") r.data["alpha"] = alpha;
    r.data["first_event_histogram"] = histogram_json(counts);
    r.data["mean_time_to_mrca"] = time.mean();
    r.data["mean_time_to_mrca_se"] = time.standard_error();
    if (kind == "kingman") r.data["expected_time_to_mrca"] = 2.0 * (1.0 - 1.0 / n);
    json pred = json::object();
    if (rate) {
        double total = 0.0;
        for (int k = 2; k <= n; ++k) total += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * rate(n, k);
        for (int k = 2; k <= n; ++k) {
            const double p = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) * rate(n, k) / total;
            if (p > 0.0) pred[MergerSignature::make({k}, n - k).to_string()] = p;
        }
    } else {
        const double merge = 1.0 - xi_no_merge_prob(alpha, n);
        for (const auto& sig : enumerate_signatures(n))
            if (sig.has_merge()) pred[sig.to_string()] = xi_signature_prob(alpha, sig) / merge;
    }
    r.data["predicted_first_event"] = pred;
    r.summary = "simulated " + std::to_string(reps) + " " + kind + " paths";
    return r;
}

}  // namespace

RunOutcome run(const ExperimentConfig& config) {
    Report report;
    const auto& cmd = config.command;
    if (cmd == "simulate-front") report = simulate_front_cmd(config);
    else if (cmd == "simulate-wf") report = simulate_wf_cmd(config);
    else if (cmd == "estimate-cn") report = estimate_cn_cmd(config);
    else if (cmd == "merger-stats") report = merger_stats_cmd(config);
    else if (cmd == "verify-rates") report = verify_rates_cmd(config);
    else if (cmd == "verify-moments") report = verify_moments_cmd(config);
    else if (cmd == "front-speed") report = front_speed_cmd(config);
    else if (cmd == "reference-coalescent") report = reference_coalescent_cmd(config);
    else throw std::invalid_argument("unknown command '" + cmd + "'");

    const fs::path dir(config.out);
    fs::create_directories(dir);
    RunOutcome outcome;
    json doc = {{"command", cmd},
                {"config", config_json(config)},
                {"passed", report.passed},
                {"data", report.data},
                {"metadata", {{"version", COALAB_VERSION}, {"generated_at", timestamp_utc()}}}};
    const auto json_path = dir / (cmd + ".json");
    std::ofstream(json_path) << doc.dump(2) << '\n';
    outcome.files.push_back(json_path.string());
    for (const auto& [name, text] : report.tables) {
        const auto p = dir / name;
        std::ofstream(p) << text;
        outcome.files.push_back(p.string());
    }
    outcome.exit_code = report.passed ? exit_pass : exit_tolerance_failure;
    outcome.summary = report.summary + (report.passed ? " [pass]" : " [tolerance failure]");
    return outcome;
}

}  // namespace coalab
