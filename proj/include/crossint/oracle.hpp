#pragma once

// Brute-force ground truth: member-level cross-intersection, exhaustive
// maximisation over lex-initial ID tuples, structure classification and
// compression checks. Intended for desk-scale n (the tables below hold 2^n
// entries, so n is capped at kMaxOracleGround).

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crossint/count.hpp"
#include "crossint/subsets.hpp"

namespace crossint {

inline constexpr int kMaxOracleGround = 20;

// Every k-subset of [n] as a bitmask, listed in lex order, with the inverse
// (1-based) rank lookup.
class LexTable {
public:
    explicit LexTable(int n);

    int ground() const { return n_; }
    // sets(k)[r - 1] is the k-set of rank r.
    const std::vector<std::uint64_t>& sets(int k) const { return by_size_.at(k); }
    std::uint32_t count(int k) const { return static_cast<std::uint32_t>(by_size_.at(k).size()); }
    std::uint32_t rank(std::uint64_t mask) const { return rank_.at(mask); }

    KSubset subset(int k, std::uint32_t r) const { return KSubset::from_mask(n_, sets(k).at(r - 1)); }

private:
    int n_;
    std::vector<std::vector<std::uint64_t>> by_size_;
    std::vector<std::uint32_t> rank_;
};

// Member-level facts about pairs of lex-initial families over a fixed [n],
// computed by scanning disjoint pairs and cached per size pair. Thread-safe.
class CrossTables {
public:
    explicit CrossTables(int n);

    const LexTable& table() const { return table_; }
    int ground() const { return table_.ground(); }

    // Largest r_b such that L(r_a, k_a) and L(r_b, k_b) cross-intersect
    // (0 when no nonempty k_b-family does). cap(.., 0) = C(n, k_b).
    std::uint32_t cap(int ka, int kb, std::uint32_t ra) const;
    const std::vector<std::uint32_t>& caps(int ka, int kb) const;

    // Number of k_a-sets meeting every member of L(r_b, k_b).
    std::uint32_t meeting_count(int ka, int kb, std::uint32_t rb) const;

    bool cross_intersecting(int ka, std::uint32_t ra, int kb, std::uint32_t rb) const;
    // Neither family can be enlarged while staying cross-intersecting.
    bool maximal_pair(int ka, std::uint32_t ra, int kb, std::uint32_t rb) const;

private:
    struct PairData {
        std::vector<std::uint32_t> caps;      // index r_a in [0, C(n, k_a)]
        std::vector<std::uint32_t> meeting;   // index r_b in [0, C(n, k_b)]
    };
    const PairData& data(int ka, int kb) const;

    LexTable table_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<int, int>, std::unique_ptr<PairData>> cache_;
};

// Every member of L(idA, kA) meets every member of L(idB, kB), by enumeration.
bool families_cross_intersecting_gold(const KSubset& id_a, int ka, const KSubset& id_b, int kb);
// Same answer via the k-partner: true when kA + kB > n, otherwise
// last(L(idB, kB)) <=lex k_partner(last(L(idA, kA)), kB).
bool families_cross_intersecting(const KSubset& id_a, int ka, const KSubset& id_b, int kb);

struct SystemIDs {
    Params params;
    std::vector<KSubset> ids;  // ids[i-1] is a k_i-subset

    Count total_size() const;
    std::string to_string() const;
    friend bool operator==(const SystemIDs&, const SystemIDs&) = default;
};

struct SearchLimits {
    std::uint64_t max_nodes = 500'000'000;
    double max_seconds = 0.0;  // 0: unlimited
    unsigned threads = 1;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MaxResult {
    Count value;
    std::vector<SystemIDs> extremal;  // sorted by ID ranks, family by family
    std::uint64_t nodes = 0;
};

// Maximum of sum_i |L(I_i, k_i)| over nonempty pairwise cross-intersecting
// lex-initial tuples, with every maximising tuple. Throws BudgetExceeded when
// the node or time budget runs out; never returns a truncated answer.
MaxResult exact_max(const Params& params, const SearchLimits& limits = {});
MaxResult exact_max(const Params& params, const CrossTables& tables, const SearchLimits& limits = {});

// prod_i C(n, k_i), saturating at UINT64_MAX.
std::uint64_t search_space(const Params& params);

enum class ExtremalLabel { star, kernel, exceptional, other };

std::string label_name(ExtremalLabel label);

struct ExtremalClass {
    ExtremalLabel label = ExtremalLabel::other;
    std::optional<KSubset> witness;  // {1} for star, [k_t] for kernel, the shared small ID when exceptional
};

// Recognises the canonical ID patterns:
//   star:        every I_i = {1, n-k_i+2, ..., n}
//   kernel:      I_i = {k_t, n-k_i+2, ..., n} on the freely intersecting top
//                families, [k_t] u [n-k_i+k_t+1, n] elsewhere
//   exceptional: t = 4, k_1 = k_2, k_3 = k_4, n = k_1 + k_3, F_3 = F_4 intersecting
//                and F_1 = F_2 = all k_1-sets whose complement is not in F_3
ExtremalClass classify_extremal(const SystemIDs& sys);

// system_size over the first ID window, in lex order (mixed window only).
std::vector<Count> f_profile(const Params& params);

enum class ProfileVerdict { endpoint_max, exceptional_flat, interior_max };

std::string verdict_name(ProfileVerdict verdict);
// flat: every value equal; endpoint_max: the maximum occurs at the first or
// last entry and nowhere inside.
ProfileVerdict profile_verdict(const std::vector<Count>& profile);

// Compresses two explicit cross-intersecting uniform families to the
// lex-initial families of the same sizes and reports whether those still
// cross-intersect. Throws std::invalid_argument for empty, non-uniform or
// non-cross-intersecting input.
bool kk_compress_check(int n, const std::vector<KSubset>& family_a, const std::vector<KSubset>& family_b);

// Family-level maximality of (L(idA, kA), L(idB, kB)) by enumeration. Requires kA + kB <= n.
bool maximality_bruteforce(const KSubset& id_a, int ka, const KSubset& id_b, int kb);

}  // namespace crossint
