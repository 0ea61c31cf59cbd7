#pragma once

// Flat key = value experiment configuration. Keys before any section header
// apply to every command; keys under [command] apply to that command only;
// other sections are ignored. '#' starts a comment.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coalab {

struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
};

class ExperimentConfig {
  public:
    std::string command;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out = ".";

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    long long integer(const std::string& key) const;
    double real(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    std::vector<long long> integer_list(const std::string& key) const;

    /// Every resolved key (defaults included) in canonical text form.
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

  private:
    friend struct ConfigBuilder;
    std::map<std::string, std::string> values_;
};

struct ConfigResult {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;  // every violation found, in file order

    bool ok() const noexcept { return config.has_value(); }
};

const std::vector<std::string>& known_commands();

ConfigResult parse_config(std::string_view text, std::string_view command, const ConfigOverrides& overrides = {});

/// Markdown table of the accepted keys of `command` (used for the README).
std::string describe_keys(std::string_view command);

}  // namespace coalab
