#pragma once

// Pairing machinery for lex-initial families: partners, k-partners, parities,
// corresponding k-sets and maximality of ID pairs.

#include <optional>

#include "crossint/subsets.hpp"

namespace crossint {

// H = ([q] \ F) u {q} with q = max F. F and H strongly intersect at q:
// F n H = {q}, F u H = [q]. Involutive. Throws on empty F.
KSubset partner(const KSubset& f);

// Size-k adjustment K of partner(F) = H (h = |H|):
//   k == h: H
//   k >  h: H u {n-k+h+1, ..., n}
//   k <  h: the lex-last k-set K with K <=lex H
// L(K, k) is then the largest k-uniform family cross-intersecting L(F, |F|).
// Throws std::invalid_argument when k > n - |F| and std::domain_error when
// k < h and no k-set precedes H (no nonempty k-family can cross-intersect L(F, |F|)).
KSubset k_partner(const KSubset& f, int k);

// The set G with head(G) = head(F) and ell(G) - ell(F) = k - |F|, if any.
std::optional<KSubset> k_parity(const KSubset& f, int k);

// True iff the smaller of the two sets is the parity of the larger.
bool is_parity(const KSubset& a, const KSubset& b);

// The k-parity of A when it exists, otherwise the lex-last k-set strictly
// preceding A. Requires 1 <= k <= |A|; throws std::domain_error when no k-set
// strictly precedes A.
KSubset corresponding_k_set(const KSubset& a, int k);

// Head pair of (A, B) and the element q at which the heads strongly
// intersect, when they do.
struct MaximalPairWitness {
    KSubset a_head;
    KSubset b_head;
    std::optional<int> strongly_intersect_at;
};

MaximalPairWitness maximal_pair_witness(const KSubset& a, const KSubset& b);

// (L(A, |A|), L(B, |B|)) is a maximal cross-intersecting pair, decided on IDs:
// the heads are partners. Requires nonempty A, B with |A| + |B| <= n.
bool is_maximal_pair(const KSubset& a, const KSubset& b);

// The b-set B with (A, B) maximal, if one exists: partner(head(A)) padded by a
// top run up to size b.
std::optional<KSubset> maximal_counterpart(const KSubset& a, int b);

}  // namespace crossint
