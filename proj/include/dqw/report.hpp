#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dqw {

/// Machine-readable check report; identical config and seed produce
/// byte-identical serialized output.
class CheckReport {
  public:
    CheckReport(std::string command, nlohmann::json params, std::uint64_t seed);

    void add_check(const std::string& name, bool pass, const std::string& witness = "");
    void add_table(const std::string& name, const std::string& text);

    bool all_passed() const;
    std::size_t check_count() const { return checks_.size(); }
    /// First failing check's witness, empty when everything passed.
    std::string first_failure() const;

    nlohmann::json to_json() const;
    /// Canonical serialization (sorted keys, two-space indent, newline at end).
    std::string dump() const;

  private:
    struct Check {
        std::string name;
        bool pass;
        std::string witness;
    };
    std::string command_;
    nlohmann::json params_;
    std::uint64_t seed_;
    std::vector<Check> checks_;
    std::vector<std::pair<std::string, std::string>> tables_;
};

} // namespace dqw
