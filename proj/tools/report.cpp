#include "report.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace esys::cli {

bool Report::verdict() const { return failed() == 0; }

std::size_t Report::failed() const {
    std::size_t n = 0;
    for (auto& r : results) n += !r.verdict;
    return n;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json to_json(const Report& r, const std::string& timestamp) {
    json out;
    out["schema"] = kSchema;
    out["timestamp"] = timestamp;
    out["command"] = r.command;
    out["config"] = r.config;
    json results = json::array();
    for (auto& x : r.results) {
        json j;
        if (!x.suite.empty()) j["suite"] = x.suite;
        j["instance"] = x.instance;
        j["verdict"] = x.verdict;
        j["detail"] = x.detail;
        if (!x.dump.empty()) j["dump"] = x.dump;
        results.push_back(std::move(j));
    }
    out["results"] = std::move(results);
    out["summary"] = {{"checked", r.results.size()}, {"failed", r.failed()}};
    out["verdict"] = r.verdict();
    return out;
}

void write_text(std::ostream& os, const Report& r, const std::string& timestamp) {
    os << kSchema << " " << r.command << " " << timestamp << "\n";
    for (auto& x : r.results) {
        os << (x.verdict ? "PASS " : "FAIL ");
        if (!x.suite.empty()) os << "[" << x.suite << "] ";
        os << x.label << "\n";
        if (!x.dump.empty()) {
            std::istringstream in(x.dump);
            for (std::string line; std::getline(in, line);) os << "    " << line << "\n";
        }
    }
    os << "checked " << r.results.size() << ", failed " << r.failed() << ": " << (r.verdict() ? "all pass" : "FAILED")
       << "\n";
}

}  // namespace esys::cli
