#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "sweeps.hpp"

using namespace esys;
using namespace esys::cli;

namespace {

// ESYS_ENUM_BOUND: either one integer (the module element bound) or
// comma-separated key=value pairs over module_elements, hom_candidates,
// vector_entries.
void apply_bound_env() {
    const char* env = std::getenv("ESYS_ENUM_BOUND");
    if (!env || !*env) return;
    Bounds& b = bounds();
    auto parse_positive = [](const std::string& v) {
        std::size_t used = 0;
        long long x = 0;
        try {
            x = std::stoll(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != v.size() || x <= 0) throw UsageError("ESYS_ENUM_BOUND: '" + v + "' is not a positive integer");
        return static_cast<i64>(x);
    };
    std::string text(env);
    if (text.find('=') == std::string::npos) {
        b.module_elements = parse_positive(text);
        return;
    }
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("ESYS_ENUM_BOUND: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        i64 v = parse_positive(item.substr(eq + 1));
        if (key == "module_elements") b.module_elements = v;
        else if (key == "hom_candidates") b.hom_candidates = v;
        else if (key == "vector_entries") b.vector_entries = v;
        else throw UsageError("ESYS_ENUM_BOUND: unknown key '" + key + "'");
    }
}

int rank_needed(const std::string& text) {
    int k = 0;
    for (char c : text) k += c == '/';
    return std::max(k, 1);
}

FinMod module_arg(const std::string& text, int d) {
    try {
        return parse_module(text, d);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

json bounds_json() {
    const Bounds& b = bounds();
    return {{"module_elements", b.module_elements}, {"hom_candidates", b.hom_candidates}, {"vector_entries", b.vector_entries}};
}

std::vector<std::pair<FinMod, FinMod>> small_pairs(int d) {
    std::vector<FinMod> objs{FinMod::zero(d), FinMod({2}, d), FinMod({3}, d), FinMod({4}, d), FinMod({6}, d)};
    if (d == 2) {
        objs.push_back(FinMod({2, 2}, d));
        objs.push_back(FinMod({2, 4}, d));
    }
    std::vector<std::pair<FinMod, FinMod>> out;
    for (auto& a : objs)
        for (auto& b : objs)
            if (a.order() % b.order() == 0) out.push_back({a, b});
    return out;
}

void tag(std::vector<Result>& rs, const std::string& suite, std::vector<Result>& into) {
    for (auto& r : rs) {
        r.suite = suite;
        into.push_back(std::move(r));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exhaustive checks of norm relations over categories of finite modules"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    Options opt;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--threads", opt.threads, "Worker threads for sweeps")->check(CLI::Range(1, 256));
    app.add_flag("--dump-sections", opt.dump_sections, "Include section dumps in euler-universal results");

    std::string hs_src, hs_tgt;
    int hs_d = 0;
    auto* homset = app.add_subcommand("homset", "List Hom(N, N') with its count");
    homset->add_option("N", hs_src, "Source module, e.g. Z/4 or Z/2+Z/4")->required();
    homset->add_option("Nprime", hs_tgt, "Target module")->required();
    homset->add_option("--d", hs_d, "Rank bound (default: generators needed)")->check(CLI::Range(1, 4));

    std::string dg_src, dg_tgt;
    int dg_d = 0;
    bool dg_galois = false;
    auto* deg = app.add_subcommand("degree", "Degrees of all morphisms N -> N'");
    deg->add_option("N", dg_src, "Source module")->required();
    deg->add_option("Nprime", dg_tgt, "Target module")->required();
    deg->add_option("--d", dg_d, "Rank bound (default: generators needed)")->check(CLI::Range(1, 4));
    deg->add_flag("--galois", dg_galois, "Also report Galois-ness and relative automorphism counts");

    int q_e = 0;
    std::vector<i64> q_q;
    auto* qcheck = app.add_subcommand("qcheck", "Alternating q-binomial identity for all e' <= e, 0 <= v <= e'");
    qcheck->add_option("--e", q_e, "Largest dimension")->required();
    qcheck->add_option("--q", q_q, "Prime field size(s), comma separated")->required()->delimiter(',');

    UniversalConfig uc;
    std::string uc_sit = "I";
    auto* eu = app.add_subcommand("euler-universal", "Norm relation for kappa in the universal algebra");
    eu->add_option("--d", uc.d, "Number of cyclic summands")->required();
    eu->add_option("--p", uc.p, "The prime of the Hecke clause (omit for the transfer clause)");
    eu->add_option("--shape", uc.shape, "'all' (N_i in {Z/p, Z/p^2}) or n1:n1',n2:n2',...");
    eu->add_option("--b", uc.b, "Generators b_i, comma separated (default all 1)")->delimiter(',');
    eu->add_option("--situation", uc_sit, "I or II (punctured)")->check(CLI::IsMember({"I", "II"}));

    i64 cy_n = 30;
    std::vector<i64> cy_p{2, 3, 5, 7};
    auto* ec = app.add_subcommand("euler-cyclotomic", "Cyclotomic-unit norm relations and towers");
    ec->add_option("--n-max", cy_n, "Largest n'");
    ec->add_option("--p-set", cy_p, "Primes, comma separated")->delimiter(',');

    int hk_d = 2;
    i64 hk_p = 2;
    std::optional<int> hk_r;
    auto* hk = app.add_subcommand("hecke-compare", "Categorical Hecke operators against the double-coset oracle");
    hk->add_option("--d", hk_d, "Rank");
    hk->add_option("--p", hk_p, "Prime");
    hk->add_option("--r", hk_r, "Only T_r (default: all r and the chi_GL identity)");

    auto* self = app.add_subcommand("selftest", "Run every sweep at its default bounds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Report rep;
    try {
        apply_bound_env();
        rep.config = {{"threads", opt.threads}, {"bounds", bounds_json()}};
        if (homset->parsed()) {
            int d = hs_d ? hs_d : std::max(rank_needed(hs_src), rank_needed(hs_tgt));
            FinMod a = module_arg(hs_src, d), b = module_arg(hs_tgt, d);
            rep.command = "homset";
            rep.config["N"] = a.str();
            rep.config["N_prime"] = b.str();
            rep.config["d"] = d;
            rep.results = homset_sweep(a, b);
        } else if (deg->parsed()) {
            int d = dg_d ? dg_d : std::max(rank_needed(dg_src), rank_needed(dg_tgt));
            FinMod a = module_arg(dg_src, d), b = module_arg(dg_tgt, d);
            rep.command = "degree";
            rep.config["N"] = a.str();
            rep.config["N_prime"] = b.str();
            rep.config["d"] = d;
            rep.config["galois"] = dg_galois;
            rep.results = degree_sweep({{a, b}}, dg_galois, opt);
        } else if (qcheck->parsed()) {
            rep.command = "qcheck";
            rep.config["e"] = q_e;
            rep.config["q"] = q_q;
            rep.results = qcheck_sweep(q_e, q_q, opt);
        } else if (eu->parsed()) {
            uc.situation = uc_sit == "II" ? Situation::II : Situation::I;
            rep.command = "euler-universal";
            rep.config["d"] = uc.d;
            rep.config["p"] = uc.p;
            rep.config["shape"] = uc.shape;
            rep.config["b"] = uc.b;
            rep.config["situation"] = uc_sit;
            rep.results = euler_universal_sweep(uc, opt);
        } else if (ec->parsed()) {
            rep.command = "euler-cyclotomic";
            rep.config["n_max"] = cy_n;
            rep.config["p_set"] = cy_p;
            rep.results = euler_cyclotomic_sweep(cy_n, cy_p, opt);
        } else if (hk->parsed()) {
            rep.command = "hecke-compare";
            rep.config["d"] = hk_d;
            rep.config["p"] = hk_p;
            rep.config["r"] = hk_r ? json(*hk_r) : json(nullptr);
            rep.results = hecke_compare_sweep(hk_d, hk_p, hk_r, opt);
        } else if (self->parsed()) {
            rep.command = "selftest";
            auto s1 = hom_law_sweep(30, opt);
            tag(s1, "homset", rep.results);
            auto s2 = degree_sweep(small_pairs(1), true, opt);
            tag(s2, "degree", rep.results);
            auto s2b = degree_sweep(small_pairs(2), true, opt);
            tag(s2b, "degree", rep.results);
            auto s3 = duality_sweep(16, opt);
            tag(s3, "duality", rep.results);
            auto s4 = qcheck_sweep(4, {2, 3}, opt);
            tag(s4, "qcheck", rep.results);
            for (int d : {1, 2})
                for (i64 p : {2, 3}) {
                    UniversalConfig c;
                    c.d = d;
                    c.p = p;
                    auto s5 = euler_universal_sweep(c, opt);
                    tag(s5, "euler-universal", rep.results);
                }
            auto s6 = euler_cyclotomic_sweep(30, {2, 3, 5, 7}, opt);
            tag(s6, "euler-cyclotomic", rep.results);
            for (i64 p : {2, 3}) {
                auto s7 = hecke_compare_sweep(2, p, std::nullopt, opt);
                tag(s7, "hecke-compare", rep.results);
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const BoundError& e) {
        std::cerr << "enumeration bound exceeded: " << e.what() << " (raise ESYS_ENUM_BOUND)\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }

    const std::string ts = utc_timestamp();
    if (format == "json") std::cout << to_json(rep, ts).dump(2) << "\n";
    else write_text(std::cout, rep, ts);

    if (!rep.verdict()) {
        for (auto& r : rep.results)
            if (!r.verdict) {
                std::cerr << "failing instance: " << r.label << "\n" << r.instance.dump() << "\n" << r.dump;
                break;
            }
        return 1;
    }
    return 0;
}
