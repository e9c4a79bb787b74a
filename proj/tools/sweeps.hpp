#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "esys/euler.hpp"
#include "report.hpp"

namespace esys::cli {

// Bad configuration; the driver maps it to exit status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    int threads = 1;
    bool dump_sections = false;  // put section dumps into every euler result
};

std::vector<Result> homset_sweep(const FinMod& src, const FinMod& tgt);
// |Hom(Z/n, Z/n')| against tau(n/n') phi(n'), one result per n.
std::vector<Result> hom_law_sweep(i64 n_max, const Options& opt);
std::vector<Result> degree_sweep(const std::vector<std::pair<FinMod, FinMod>>& pairs, bool galois, const Options& opt);
std::vector<Result> duality_sweep(i64 max_order, const Options& opt);
std::vector<Result> qcheck_sweep(int e_max, const std::vector<i64>& qs, const Options& opt);

struct UniversalConfig {
    int d = 1;
    i64 p = 0;
    std::string shape = "all";  // "all" or "n1:n1',n2:n2'"
    std::vector<i64> b;
    Situation situation = Situation::I;
};
std::vector<Result> euler_universal_sweep(const UniversalConfig& cfg, const Options& opt);
std::vector<Result> euler_cyclotomic_sweep(i64 n_max, const std::vector<i64>& primes, const Options& opt);
std::vector<Result> hecke_compare_sweep(int d, i64 p, std::optional<int> r, const Options& opt);

}  // namespace esys::cli
