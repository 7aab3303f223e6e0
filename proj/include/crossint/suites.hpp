#pragma once

// Exhaustive and randomized invariant suites, parameter grids and sweep rows.
// Every suite compares library answers against member-level enumeration.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crossint/count.hpp"
#include "crossint/oracle.hpp"
#include "crossint/subsets.hpp"

namespace crossint {

struct SuiteOptions {
    int n_max = 8;
    std::uint64_t seed = 1;
    int kk_trials = 1000;                   // random pairs per ground size
    std::uint64_t max_space = 10'000'000;   // oracle suite: skip tuples with a larger prod C(n, k_i)
    SearchLimits limits;
};

struct SuiteResult {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    std::map<std::string, std::uint64_t> failing;  // check name -> failure count
    std::vector<std::string> samples;              // first few failure descriptions
    std::vector<std::string> notes;                // informational lines (seeds, skipped tuples)

    bool passed() const { return failures == 0 && checks > 0; }

    void expect(bool ok, std::string_view check, const std::function<std::string()>& detail);
    void expect(bool ok, std::string_view check) {
        expect(ok, check, [] { return std::string(); });
    }
    void merge(const SuiteResult& other);
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options);

SuiteResult run_lex_suite(const SuiteOptions& options);
SuiteResult run_partners_suite(const SuiteOptions& options);
SuiteResult run_increments_suite(const SuiteOptions& options);
SuiteResult run_oracle_suite(const SuiteOptions& options);
SuiteResult run_kk_suite(const SuiteOptions& options);
SuiteResult run_bounds_suite(const SuiteOptions& options);

// Non-increasing size tuples of length in [t_min, t_max] with entries in
// [k_min, n], for every n in [n_min, n_max].
std::vector<Params> size_tuples(int n_min, int n_max, int t_min, int t_max, int k_min);
// Mixed-window tuples (t >= 3) with k_t >= 2.
std::vector<Params> mixed_grid(int n_max, int t_min, int t_max, std::uint64_t max_space);
// n >= k_1 + k_2.
std::vector<Params> nonmixed_grid(int n_max, int t_min, int t_max, std::uint64_t max_space);

// "mixed", "nonmixed" or "unsupported".
std::string regime_label(const Params& params);

struct SweepRow {
    Params params;
    std::string regime;
    Count lambda1;  // star branch
    Count lambda2;  // kernel branch
    Count bound;
    std::optional<Count> oracle;  // empty when the search budget ran out
    bool match = false;
    std::vector<std::string> classes;  // distinct labels over the extremal tuples, sorted
    std::vector<SystemIDs> extremal;
    double elapsed_ms = 0.0;
};

// Bound branches, exact maximum and classification for one tuple. Throws
// std::invalid_argument for unsupported regimes.
SweepRow evaluate_row(const Params& params, const CrossTables& tables, const SearchLimits& limits);

}  // namespace crossint
