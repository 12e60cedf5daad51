#include "dqw/report.hpp"

namespace dqw {

CheckReport::CheckReport(std::string command, nlohmann::json params, std::uint64_t seed)
    : command_(std::move(command)), params_(std::move(params)), seed_(seed) {}

void CheckReport::add_check(const std::string& name, bool pass, const std::string& witness) {
    checks_.push_back({name, pass, witness});
}

void CheckReport::add_table(const std::string& name, const std::string& text) {
    tables_.emplace_back(name, text);
}

bool CheckReport::all_passed() const {
    for (const auto& c : checks_)
        if (!c.pass)
            return false;
    return true;
}

std::string CheckReport::first_failure() const {
    for (const auto& c : checks_)
        if (!c.pass)
            return c.name + (c.witness.empty() ? "" : ": " + c.witness);
    return "";
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json j;
    j["schema"] = "dqw-report/1";
    j["command"] = command_;
    j["params"] = params_;
    j["seed"] = seed_;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["status"] = c.pass ? "pass" : "fail";
        if (!c.witness.empty())
            cj["witness"] = c.witness;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    if (!tables_.empty()) {
        nlohmann::json tables = nlohmann::json::object();
        for (const auto& [name, text] : tables_)
            tables[name] = text;
        j["tables"] = tables;
    }
    return j;
}

std::string CheckReport::dump() const { return to_json().dump(2) + "\n"; }

} // namespace dqw
