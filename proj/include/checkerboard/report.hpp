#ifndef CHECKERBOARD_REPORT_HPP
#define CHECKERBOARD_REPORT_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace checkerboard {

struct CheckRecord {
    std::string name;
    std::vector<long long> indices;
    bool pass = true;
    double max_residual = 0.0;
    std::string detail;

    friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

/// Outcome of a verification run. Passes iff every record passes.
struct Report {
    std::string command;
    std::vector<CheckRecord> records;
    std::vector<std::string> notes;
    nlohmann::json data = nlohmann::json::object();
    double timing_ms = 0.0;

    bool pass() const {
        return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
    }

    std::vector<const CheckRecord*> failures() const {
        std::vector<const CheckRecord*> out;
        for (const auto& r : records)
            if (!r.pass) out.push_back(&r);
        return out;
    }

    CheckRecord& add(std::string name, std::vector<long long> indices, bool pass, double max_residual = 0.0,
                     std::string detail = {}) {
        records.push_back({std::move(name), std::move(indices), pass, max_residual, std::move(detail)});
        return records.back();
    }

    /// Appends another report's records and notes (data is merged key-wise).
    void absorb(const Report& other) {
        records.insert(records.end(), other.records.begin(), other.records.end());
        notes.insert(notes.end(), other.notes.begin(), other.notes.end());
        for (auto it = other.data.begin(); it != other.data.end(); ++it) data[it.key()] = it.value();
    }

    std::size_t count_failures(const std::string& prefix = {}) const {
        return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [&](const CheckRecord& r) {
            return !r.pass && r.name.compare(0, prefix.size(), prefix) == 0;
        }));
    }
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

} // namespace checkerboard

#endif
