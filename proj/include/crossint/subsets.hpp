#pragma once

// Lexicographic arithmetic on subsets of [n] = {1, ..., n}.
//
// Order convention used throughout the library: A precedes B (A <=lex B) iff
// A is a superset of B, or both differences are nonempty and
// min(A \ B) < min(B \ A). The relation is reflexive and total on distinct
// sets; a proper subset never precedes its superset. On sets of equal size it
// is the usual lexicographic order of the sorted element sequences.
//
// L(R, k) denotes the family of all k-subsets F of [n] with F <=lex R.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crossint/count.hpp"

namespace crossint {

inline constexpr int kMaxGround = 64;

// A subset of [n], stored as a bitmask (element e <-> bit e - 1). Elements are
// always reported 1-based and ascending.
class KSubset {
public:
    KSubset() = default;
    KSubset(int ground, std::initializer_list<int> elements);
    KSubset(int ground, std::span<const int> elements);

    static KSubset from_mask(int ground, std::uint64_t mask);
    // [first, last] as a subset of [ground]; empty when first > last.
    static KSubset interval(int ground, int first, int last);
    static KSubset empty(int ground);

    int ground() const { return ground_; }
    std::uint64_t mask() const { return mask_; }
    int size() const;
    bool is_empty() const { return mask_ == 0; }
    bool contains(int element) const;
    // Precondition: nonempty.
    int min() const;
    int max() const;
    std::vector<int> elements() const;

    KSubset unite(const KSubset& other) const;
    KSubset minus(const KSubset& other) const;
    KSubset intersect(const KSubset& other) const;
    bool is_superset_of(const KSubset& other) const;

    // "{1,3,4,9}"; "{}" for the empty set.
    std::string to_string() const;

    friend bool operator==(const KSubset&, const KSubset&) = default;

private:
    int ground_ = 0;
    std::uint64_t mask_ = 0;
};

// Parses "{1,3,4}", "1,3,4" or "{}".
KSubset parse_subset(int ground, const std::string& text);

// Ground size n and family sizes k_1 >= k_2 >= ... >= k_t.
struct Params {
    int n = 0;
    std::vector<int> ks;

    int t() const { return static_cast<int>(ks.size()); }
    // 1-based family index.
    int k(int i) const;
    int k_last() const { return ks.back(); }

    // Throws std::invalid_argument unless n >= 1, t >= 2, every k_i in [1, n]
    // and the sizes are non-increasing.
    void validate() const;

    // k_1 + k_3 <= n < k_1 + k_2 with t >= 3.
    bool is_mixed() const;
    // n >= k_1 + k_2.
    bool is_nonmixed() const;
    // t = 4, k_1 = k_2, k_3 = k_4, n = k_1 + k_3 (inside the mixed window).
    bool is_exceptional() const;

    std::string ks_string() const;

    friend bool operator==(const Params&, const Params&) = default;
};

// Split of the families into freely intersecting top families (indices 1..s)
// and the rest. s_prime counts the leading indices with k_i = k_1.
//
// Valid when 1 <= s_prime <= s <= t - 1, k_1 = ... = k_{s'} > k_{s'+1} and
// k_1 + k_{s+1} <= n < k_{s-1} + k_s (the upper constraint is vacuous for s = 1).
struct Regime {
    int s = 0;
    int s_prime = 0;

    static std::optional<Regime> try_derive(const Params& params);
    // Throws std::invalid_argument when no valid split exists.
    static Regime derive(const Params& params);

    friend bool operator==(const Regime&, const Regime&) = default;
};

// Reflexive lex relation A <=lex B. Throws std::invalid_argument on ground mismatch.
bool lex_precedes(const KSubset& a, const KSubset& b);
// A <=lex B and A != B.
bool lex_strictly_precedes(const KSubset& a, const KSubset& b);
// Mask-level form of lex_precedes; element e is bit e - 1.
bool lex_precedes_mask(std::uint64_t a, std::uint64_t b);

// Next same-size set in lex order, or nullopt for the lex-last set.
std::optional<KSubset> successor(const KSubset& r);
// Previous same-size set, or nullopt for the lex-first set.
std::optional<KSubset> predecessor(const KSubset& r);

// |L(R, k)|, R of any size (possibly different from k). Closed form, no enumeration.
std::uint64_t lex_initial_count_u64(const KSubset& r, int k);
Count lex_initial_count(const KSubset& r, int k);

// The k-subset R of [n] with |L(R, k)| = rank, 1 <= rank <= C(n, k).
KSubset unrank(int n, int k, const Count& rank);
KSubset unrank(int n, int k, std::uint64_t rank);

struct TailSplit {
    KSubset head;  // F minus its maximal top run; may be empty
    int ell = 0;   // length of the maximal run [n - ell + 1, n] inside F
};

TailSplit tail_decompose(const KSubset& f);
int tail_length(const KSubset& f);
KSubset head_of(const KSubset& f);
// [n - ell + 1, n]
KSubset top_run(int ground, int ell);

// Both sets are P u {a+1..a+c} and P u {b+1..b+c} with the same P, max P <= a < b.
// Throws std::invalid_argument on size mismatch or c outside [1, |A|].
bool is_c_sequential(const KSubset& a, const KSubset& b, int c);
// As above with b = a + 1 (one shift of the window).
bool is_c_sequential_step(const KSubset& a, const KSubset& b, int c);

// Lex window of admissible IDs for family i (1-based):
//   i in {1, 2}: [{1, n-k_i+2..n}, {k_t, n-k_i+2..n}]
//   i >= 3:      [[k_t] u [n-k_i+k_t+1, n], {1, n-k_i+2..n}]
struct IdWindow {
    KSubset lo;
    KSubset hi;

    bool contains(const KSubset& r) const;
    // All sets of size |lo| in the window, in lex order.
    std::vector<KSubset> members() const;
};

IdWindow id_window(const Params& params, int i);

}  // namespace crossint
