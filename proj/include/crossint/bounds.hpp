#pragma once

// Closed-form bounds for pairwise cross-intersecting systems and the
// single-variable objective over the first family's ID.

#include <vector>

#include "crossint/count.hpp"
#include "crossint/subsets.hpp"

namespace crossint {

// The two candidate maxima. `star` is the all-contain-1 system, `kernel` the
// system built around the k_t-set [k_t].
struct BoundBranches {
    Count star;
    Count kernel;

    Count max() const { return star >= kernel ? star : kernel; }
};

// Mixed window k_1 + k_3 <= n < k_1 + k_2 (t >= 3):
//   star   = sum_i C(n-1, k_i-1)
//   kernel = sum_{i=1,2} (C(n, k_i) - C(n-k_t, k_i)) + sum_{i>=3} C(n-k_t, k_i-k_t)
// Throws std::invalid_argument outside the window.
BoundBranches lambda_values(const Params& params);
Count mixed_bound(const Params& params);

// n >= k_1 + k_2:
//   star   = sum_i C(n-1, k_i-1)
//   kernel = C(n, k_1) - C(n-k_t, k_1) + sum_{i>=2} C(n-k_t, k_i-k_t)
BoundBranches nonmixed_branches(const Params& params);
Count nonmixed_bound(const Params& params);

// Two families of sizes k >= l with n >= k + l: C(n, k) - C(n-l, k) + 1.
Count two_family_bound(int n, int k, int l);

// t families of equal size k with n >= 2k:
// max(C(n, k) - C(n-k, k) + t - 1, t C(n-1, k-1)).
Count equal_size_bound(int n, int k, int t);

// Positive exact weights d_1..d_t.
class WeightVector {
public:
    explicit WeightVector(std::vector<Rational> weights);
    static WeightVector unit(int t);

    int size() const { return static_cast<int>(weights_.size()); }
    // 1-based.
    const Rational& operator[](int j) const { return weights_.at(j - 1); }

private:
    std::vector<Rational> weights_;
};

// Weighted bound for family i (1-based) with m_i = min_{j != i} k_j:
//   max(d_i C(n,k_i) - d_i C(n-m_i,k_i) + sum_{j!=i} d_j C(n-m_i, k_j-m_i),
//       sum_j d_j C(n-1, k_j-1)).
// Requires n >= k_i + k_j for every j != i.
Rational weighted_bound(const Params& params, const WeightVector& d, int i);

// Size of the system where family i meets a fixed s-set T and every other
// family contains T: C(n,k_i) - C(n-s,k_i) + sum_{j!=i} C(n-s, k_j-s).
// Requires n >= k_1 + k_2 and 1 <= s <= min_{j!=i} k_j.
Count kernel_value(const Params& params, int i, int s);

// IDs R_1..R_t forced by the first ID: R_1 itself, the corresponding
// k_i-sets for i in [2, s], the k_i-partners for i in [s+1, t].
// Throws std::invalid_argument when r1 lies outside the first ID window.
std::vector<KSubset> forced_ids(const KSubset& r1, const Params& params, const Regime& regime);

// sum_i |L(R_i, k_i)| over the forced IDs.
Count system_size(const KSubset& r1, const Params& params, const Regime& regime);

struct IncrementReport {
    std::vector<Count> alpha;  // alpha[i-1] for free families i in [1, s]
    Count gamma;               // sum of alpha
    Count delta;               // total shrinkage of the non-free families
};

// Size changes when the first ID moves from r1 to r1p (r1 <=lex r1p, both in
// the first window). system_size(r1p) - system_size(r1) = gamma - delta.
IncrementReport increments(const KSubset& r1, const KSubset& r1p, const Params& params, const Regime& regime);

// alpha_i for the consecutive pair (predecessor(r1p), r1p):
// C(ell(r1p), k_i - |head(r1p)|).
Count alpha_closed_form(const KSubset& r1p, int i, const Params& params, const Regime& regime);

// delta of a consecutive pair whose later ID has maximum q:
// sum_{j=s+1}^t C(n-q, k_j - (q - k_1)).
Count beta_closed_form(int q, const Params& params, const Regime& regime);

}  // namespace crossint
