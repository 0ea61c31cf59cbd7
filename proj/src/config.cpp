#include "coalab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace coalab {

namespace {

enum class Kind { integer, unsigned64, real, text, choice, integer_list };

struct KeySpec {
    std::string name;
    Kind kind = Kind::text;
    std::optional<std::string> fallback;  // default value, if any
    bool required = false;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;
    std::vector<std::string> choices;
    std::string doc;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

KeySpec base(std::string name, Kind kind, std::optional<std::string> fallback) {
    KeySpec k;
    k.name = std::move(name);
    k.kind = kind;
    k.fallback = std::move(fallback);
    k.required = !k.fallback;
    return k;
}

KeySpec integer(std::string name, double lo, double hi, std::optional<std::string> fallback, std::string doc) {
    KeySpec k = base(std::move(name), Kind::integer, std::move(fallback));
    k.lo = lo;
    k.hi = hi;
    k.required = !k.fallback;
    k.doc = std::move(doc);
    return k;
}

KeySpec real(std::string name, double lo, double hi, bool lo_open, bool hi_open, std::optional<std::string> fallback,
             std::string doc) {
    KeySpec k = base(std::move(name), Kind::real, std::move(fallback));
    k.lo = lo;
    k.hi = hi;
    k.lo_open = lo_open;
    k.hi_open = hi_open;
    k.required = !k.fallback;
    k.doc = std::move(doc);
    return k;
}

KeySpec choice(std::string name, std::vector<std::string> options, std::optional<std::string> fallback, std::string doc) {
    KeySpec k = base(std::move(name), Kind::choice, std::move(fallback));
    k.choices = std::move(options);
    k.required = !k.fallback;
    k.doc = std::move(doc);
    return k;
}

KeySpec integer_list(std::string name, double lo, double hi, std::optional<std::string> fallback, std::string doc) {
    KeySpec k = base(std::move(name), Kind::integer_list, std::move(fallback));
    k.lo = lo;
    k.hi = hi;
    k.required = !k.fallback;
    k.doc = std::move(doc);
    return k;
}

/// Optional key without default: validated only if present.
KeySpec optional_real(std::string name, double lo, double hi, bool lo_open, bool hi_open, std::string doc) {
    auto k = real(std::move(name), lo, hi, lo_open, hi_open, std::string{}, std::move(doc));
    k.fallback.reset();
    k.required = false;
    return k;
}

std::vector<KeySpec> common_keys() {
    KeySpec seed = base("seed", Kind::unsigned64, std::nullopt);
    seed.doc = "master seed (64-bit, mandatory)";
    KeySpec out = base("out", Kind::text, std::string("."));
    out.doc = "output directory";
    return {seed, integer("threads", 0, 1024, "1", "worker threads (0 = all cores)"), out};
}

std::vector<KeySpec> fitness_keys(bool allow_front) {
    std::vector<std::string> models{"pareto", "inverse_exponential", "exponential", "constant"};
    if (allow_front) models.push_back("front");
    return {choice("model", models, std::nullopt, "fitness law of Y (or the front model)"),
            optional_real("alpha", 0, kInf, true, true, "Pareto tail index (model = pareto)")};
}

std::vector<KeySpec> noise_keys() {
    return {choice("noise", {"gumbel", "exponential", "uniform", "deterministic"}, "gumbel", "noise family"),
            real("rho", -kInf, kInf, true, true, "0", "Gumbel location"),
            real("beta", 0, kInf, true, true, "1", "Gumbel inverse scale; also used by the front position"),
            real("rate", 0, kInf, true, true, "1", "exponential noise rate"),
            real("lo", -kInf, kInf, true, true, "0", "uniform noise lower end"),
            real("hi", -kInf, kInf, true, true, "1", "uniform noise upper end"),
            real("value", -kInf, kInf, true, true, "0", "deterministic noise value"),
            integer("burn_in", 0, 1e9, "0", "front steps discarded before measuring")};
}

std::vector<KeySpec> command_keys(std::string_view command) {
    std::vector<KeySpec> keys = common_keys();
    auto add = [&](std::vector<KeySpec> more) { keys.insert(keys.end(), more.begin(), more.end()); };
    if (command == "simulate-front") {
        add(noise_keys());
        add({integer("N", 1, 1e5, std::nullopt, "number of particles"),
             integer("generations", 1, 1e7, std::nullopt, "steps to simulate"),
             choice("init", {"zeros", "invariant"}, "zeros", "initial state (invariant needs Gumbel noise)")});
    } else if (command == "simulate-wf") {
        add(fitness_keys(false));
        add({integer("N", 1, 1e6, std::nullopt, "population size"),
             integer("generations", 1, 1e7, std::nullopt, "generations to simulate")});
    } else if (command == "estimate-cn") {
        add(fitness_keys(true));
        add(noise_keys());
        add({integer_list("N_grid", 2, 1e7, std::nullopt, "population sizes, comma separated"),
             integer("replicates", 1, 1e9, std::nullopt, "independent generations per N"),
             choice("check", {"none", "asymptotic"}, "none", "compare with the leading-order c_N"),
             real("tolerance", 0, 1, true, true, "0.05", "relative tolerance of the check")});
    } else if (command == "merger-stats") {
        add(fitness_keys(true));
        add(noise_keys());
        add({integer("N", 2, 1e7, std::nullopt, "population size"),
             integer("n", 2, 8, "3", "sample size"),
             choice("mode", {"first_merger", "one_step"}, "first_merger", "event statistics to collect"),
             integer("events", 1, 1e9, "20000", "merge events to collect (first_merger)"),
             integer("lineage_sets", 1, 1e6, "1", "lineage sets sharing each generation (first_merger)"),
             integer("replicates", 1, 1e9, "100000", "independent generations (one_step)"),
             choice("check", {"none", "limit"}, "none", "compare with the limiting coalescent"),
             real("tolerance", 0, 1, true, true, "0.05", "absolute tolerance of the full-merger fraction")});
    } else if (command == "verify-rates") {
        add({real("alpha", 0, 2, true, true, std::nullopt, "Beta(2-alpha, alpha) coalescent parameter"),
             integer("max_b", 2, 50, "12", "largest block count"),
             real("tolerance", 0, 1, true, true, "1e-8", "relative tolerance closed form vs quadrature")});
    } else if (command == "verify-moments") {
        add(fitness_keys(false));
        add({integer_list("N_grid", 1, 1e7, std::nullopt, "population sizes, comma separated"),
             integer_list("b_list", 1, 50, "2", "moment exponents b_1,...,b_a"),
             integer("mc_samples", 0, 1e9, "0", "Monte Carlo samples per N (0 = none)"),
             integer("nodes", 16, 1024, "64", "Gauss-Legendre points per panel"),
             real("tolerance", 0, 1, true, true, "0.02", "relative tolerance quadrature vs Monte Carlo")});
    } else if (command == "front-speed") {
        add(noise_keys());
        add({integer("N", 1, 1e5, std::nullopt, "number of particles"),
             integer("generations", 1, 1e9, std::nullopt, "total steps (including burn_in)"),
             choice("init", {"zeros", "invariant"}, "zeros", "initial state"),
             integer("oracle_samples", 1, 1e9, "1000000", "Monte Carlo samples of the Gumbel speed oracle"),
             real("tolerance", 0, 1, true, true, "0.01", "relative tolerance against the oracle")});
    } else if (command == "reference-coalescent") {
        add({choice("coalescent", {"kingman", "bsz", "beta", "xi"}, std::nullopt, "reference process"),
             optional_real("alpha", 0, 2, true, true, "beta: (0,2); xi: (0,1)"),
             integer("n", 2, 50, "4", "sample size (xi: at most 8)"),
             integer("replicates", 1, 1e9, "10000", "independent paths"),
             real("horizon", 0, kInf, true, true, "1e9", "time horizon of continuous-time paths")});
    } else {
        throw std::invalid_argument("unknown command '" + std::string(command) + "'");
    }
    return keys;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_real(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size() || !std::isfinite(v)) return std::nullopt;
        return v;
    } catch (...) {
        return std::nullopt;
    }
}

std::optional<long long> parse_integer(const std::string& s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size()) return v;
    // Accept integral values written in scientific notation, e.g. 1e5.
    const auto r = parse_real(s);
    if (r && std::floor(*r) == *r && std::abs(*r) < 9e18) return static_cast<long long>(*r);
    return std::nullopt;
}

std::string range_text(const KeySpec& k) {
    auto num = [](double v) {
        std::ostringstream os;
        os << v;
        return os.str();
    };
    std::string lo = std::isinf(k.lo) ? "-inf" : num(k.lo);
    std::string hi = std::isinf(k.hi) ? "inf" : num(k.hi);
    return std::string(k.lo_open || std::isinf(k.lo) ? "(" : "[") + lo + "," + hi +
           (k.hi_open || std::isinf(k.hi) ? ")" : "]");
}

bool in_range(const KeySpec& k, double v) {
    if (k.lo_open ? !(v > k.lo) : !(v >= k.lo)) return false;
    if (k.hi_open ? !(v < k.hi) : !(v <= k.hi)) return false;
    return true;
}

/// Validates and canonicalizes one value; returns an error message or the canonical text.
std::variant<std::string, std::string> check_value(const KeySpec& k, const std::string& raw) {
    using R = std::variant<std::string, std::string>;
    auto err = [](std::string m) { return R(std::in_place_index<1>, std::move(m)); };
    auto ok = [](std::string v) { return R(std::in_place_index<0>, std::move(v)); };
    switch (k.kind) {
        case Kind::unsigned64: {
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (ec != std::errc{} || ptr != raw.data() + raw.size())
                return err(k.name + ": expected an unsigned 64-bit integer, got '" + raw + "'");
            return ok(std::to_string(v));
        }
        case Kind::integer: {
            const auto v = parse_integer(raw);
            if (!v) return err(k.name + ": expected an integer, got '" + raw + "'");
            if (!in_range(k, static_cast<double>(*v))) return err(k.name + " outside " + range_text(k));
            return ok(std::to_string(*v));
        }
        case Kind::real: {
            const auto v = parse_real(raw);
            if (!v) return err(k.name + ": expected a number, got '" + raw + "'");
            if (!in_range(k, *v)) return err(k.name + " outside " + range_text(k));
            std::ostringstream os;
            os.precision(17);
            os << *v;
            return ok(os.str());
        }
        case Kind::text:
            if (raw.empty()) return err(k.name + ": empty value");
            return ok(raw);
        case Kind::choice:
            if (std::find(k.choices.begin(), k.choices.end(), raw) == k.choices.end()) {
                std::string opts;
                for (const auto& c : k.choices) opts += (opts.empty() ? "" : "|") + c;
                return err(k.name + ": '" + raw + "' is not one of " + opts);
            }
            return ok(raw);
        case Kind::integer_list: {
            std::string canon;
            std::stringstream ss(raw);
            std::string item;
            int count = 0;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                const auto v = parse_integer(item);
                if (!v) return err(k.name + ": expected a comma-separated integer list, got '" + raw + "'");
                if (!in_range(k, static_cast<double>(*v))) return err(k.name + " entry outside " + range_text(k));
                canon += (count++ ? "," : "") + std::to_string(*v);
            }
            if (count == 0) return err(k.name + ": empty list");
            return ok(canon);
        }
    }
    return err(k.name + ": unsupported");
}

void cross_checks(const ExperimentConfig& c, std::vector<std::string>& errors) {
    const auto& cmd = c.command;
    auto txt = [&](const char* k) -> std::string { return c.has(k) ? c.text(k) : std::string(); };
    if (c.has("model") && txt("model") == "pareto" && !c.has("alpha"))
        errors.push_back("alpha: required when model = pareto");
    if (c.has("lo") && c.has("hi") && txt("noise") == "uniform" && !(c.real("lo") < c.real("hi")))
        errors.push_back("lo/hi: need lo < hi");
    if (c.has("init") && txt("init") == "invariant" && txt("noise") != "gumbel")
        errors.push_back("init: invariant start requires noise = gumbel");
    if (cmd == "reference-coalescent") {
        const auto kind = txt("coalescent");
        if ((kind == "beta" || kind == "xi") && !c.has("alpha")) errors.push_back("alpha: required for coalescent = " + kind);
        if (kind == "xi" && c.has("alpha") && !(c.real("alpha") < 1.0)) errors.push_back("alpha outside (0,1)");
        if (kind == "xi" && c.has("n") && c.integer("n") > 8) errors.push_back("n outside [2,8] for coalescent = xi");
    }
    if (cmd == "merger-stats" && c.has("N") && c.has("n") && c.integer("n") > c.integer("N")) errors.push_back("n: larger than N");
    if (cmd == "verify-moments" && c.has("N_grid") && c.has("b_list")) {
        const auto b = c.integer_list("b_list");
        long long total = 0;
        for (auto v : b) total += v;
        for (auto N : c.integer_list("N_grid"))
            if (N > 1 && total > N) errors.push_back("b_list: sum exceeds N = " + std::to_string(N));
    }
}

}  // namespace

struct ConfigBuilder {
    static void set(ExperimentConfig& c, const std::string& k, std::string v) { c.values_[k] = std::move(v); }
};

long long ExperimentConfig::integer(const std::string& key) const { return std::stoll(values_.at(key)); }
double ExperimentConfig::real(const std::string& key) const { return std::stod(values_.at(key)); }
const std::string& ExperimentConfig::text(const std::string& key) const { return values_.at(key); }

std::vector<long long> ExperimentConfig::integer_list(const std::string& key) const {
    std::vector<long long> out;
    std::stringstream ss(values_.at(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds{"simulate-front", "simulate-wf",     "estimate-cn",
                                               "merger-stats",   "verify-rates",    "verify-moments",
                                               "front-speed",    "reference-coalescent"};
    return cmds;
}

ConfigResult parse_config(std::string_view text, std::string_view command, const ConfigOverrides& overrides) {
    ConfigResult result;
    if (std::find(known_commands().begin(), known_commands().end(), command) == known_commands().end()) {
        result.errors.push_back("unknown command '" + std::string(command) + "'");
        return result;
    }
    const auto keys = command_keys(command);
    auto spec_of = [&](const std::string& name) -> const KeySpec* {
        for (const auto& k : keys)
            if (k.name == name) return &k;
        return nullptr;
    };

    std::map<std::string, std::string> raw;
    std::string section;
    std::size_t line_no = 0;
    std::stringstream ss{std::string(text)};
    std::string line;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto t = trim(line);
        if (t.empty()) continue;
        const auto where = "line " + std::to_string(line_no) + ": ";
        if (t.front() == '[') {
            if (t.back() != ']') {
                result.errors.push_back(where + "malformed section header");
                continue;
            }
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            continue;
        }
        if (!section.empty() && section != command) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            result.errors.push_back(where + "expected key = value");
            continue;
        }
        const auto key = trim(std::string_view(t).substr(0, eq));
        const auto value = trim(std::string_view(t).substr(eq + 1));
        if (!spec_of(key)) {
            result.errors.push_back(where + "unknown key '" + key + "' for " + std::string(command));
            continue;
        }
        if (raw.count(key) && !section.empty()) {
            raw[key] = value;  // section value overrides a global one
        } else if (raw.count(key)) {
            result.errors.push_back(where + "duplicate key '" + key + "'");
        } else {
            raw[key] = value;
        }
    }
    if (overrides.seed) raw["seed"] = std::to_string(*overrides.seed);
    if (overrides.out) raw["out"] = *overrides.out;
    if (overrides.threads) raw["threads"] = std::to_string(*overrides.threads);

    ExperimentConfig cfg;
    cfg.command = std::string(command);
    for (const auto& k : keys) {
        const auto it = raw.find(k.name);
        if (it == raw.end()) {
            if (k.required) result.errors.push_back(k.name + ": missing (required)");
            else if (k.fallback) ConfigBuilder::set(cfg, k.name, *k.fallback);
            continue;
        }
        auto checked = check_value(k, it->second);
        if (checked.index() == 1) result.errors.push_back(std::get<1>(checked));
        else ConfigBuilder::set(cfg, k.name, std::get<0>(checked));
    }
    cross_checks(cfg, result.errors);
    if (!result.errors.empty()) return result;
    cfg.seed = std::stoull(cfg.text("seed"));
    cfg.threads = static_cast<unsigned>(cfg.integer("threads"));
    cfg.out = cfg.text("out");
    result.config = std::move(cfg);
    return result;
}

std::string describe_keys(std::string_view command) {
    std::ostringstream os;
    os << "| key | type | default | description |\n|---|---|---|---|\n";
    for (const auto& k : command_keys(command)) {
        std::string type;
        switch (k.kind) {
            case Kind::integer: type = "integer " + range_text(k); break;
            case Kind::unsigned64: type = "uint64"; break;
            case Kind::real: type = "real " + range_text(k); break;
            case Kind::text: type = "text"; break;
            case Kind::choice: {
                for (const auto& c : k.choices) type += (type.empty() ? "" : " \\| ") + c;
                break;
            }
            case Kind::integer_list: type = "integer list " + range_text(k); break;
        }
        os << "| `" << k.name << "` | " << type << " | " << (k.fallback ? *k.fallback : (k.required ? "required" : "-"))
           << " | " << k.doc << " |\n";
    }
    return os.str();
}

}  // namespace coalab
