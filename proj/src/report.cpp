#include "checkerboard/report.hpp"

#include "checkerboard/errors.hpp"

namespace checkerboard {

using nlohmann::json;

namespace {

json record_json(const CheckRecord& r) {
    return {{"name", r.name},
            {"indices", r.indices},
            {"pass", r.pass},
            {"max_residual", r.max_residual},
            {"detail", r.detail}};
}

} // namespace

json to_json(const Report& report) {
    json records = json::array();
    json failures = json::array();
    for (const auto& r : report.records) {
        records.push_back(record_json(r));
        if (!r.pass) failures.push_back({{"name", r.name}, {"indices", r.indices}, {"detail", r.detail}});
    }
    return {{"command", report.command},
            {"pass", report.pass()},
            {"records", std::move(records)},
            {"failures", std::move(failures)},
            {"notes", report.notes},
            {"data", report.data},
            {"timing_ms", report.timing_ms}};
}

// "pass" and "failures" are derived from the records and recomputed.
Report report_from_json(const json& j) {
    Report report;
    try {
        report.command = j.at("command").get<std::string>();
        for (const auto& r : j.at("records"))
            report.records.push_back({r.at("name").get<std::string>(), r.at("indices").get<std::vector<long long>>(),
                                      r.at("pass").get<bool>(), r.at("max_residual").get<double>(),
                                      r.value("detail", std::string{})});
        report.notes = j.value("notes", std::vector<std::string>{});
        report.data = j.value("data", json::object());
        report.timing_ms = j.value("timing_ms", 0.0);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
    return report;
}

} // namespace checkerboard
