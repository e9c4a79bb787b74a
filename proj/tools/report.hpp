#pragma once

// Report records shared by every subcommand, and the ordered parallel driver.

#include <atomic>
#include <exception>
#include <functional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace esys::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "esys-report/1";

struct Result {
    std::string suite;  // set by selftest only
    std::string label;  // one-line instance description for text output
    json instance = json::object();
    bool verdict = false;
    json detail = json::object();
    std::string dump;   // failing-instance dump; empty when the verdict holds
};

struct Report {
    std::string command;
    json config = json::object();
    std::vector<Result> results;

    bool verdict() const;
    std::size_t failed() const;
};

std::string utc_timestamp();
json to_json(const Report& r, const std::string& timestamp);
void write_text(std::ostream& os, const Report& r, const std::string& timestamp);

// Runs fn(0..n-1) on up to `threads` workers; results come back in index
// order and the first exception (by index) is rethrown.
template <class T>
std::vector<T> ordered_map(std::size_t n, int threads, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    const int w = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (w == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < w; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace esys::cli
