#include "crossint/partners.hpp"

#include <stdexcept>
#include <string>

namespace crossint {

KSubset partner(const KSubset& f) {
    if (f.is_empty()) {
        throw std::invalid_argument("partner of the empty set is undefined");
    }
    const int q = f.max();
    const KSubset prefix = KSubset::interval(f.ground(), 1, q);
    return prefix.minus(f).unite(KSubset::interval(f.ground(), q, q));
}

KSubset k_partner(const KSubset& f, int k) {
    const int n = f.ground();
    if (f.is_empty()) {
        throw std::invalid_argument("k-partner of the empty set is undefined");
    }
    if (k < 1 || k > n - f.size()) {
        throw std::invalid_argument("k-partner needs 1 <= k <= n - |F|, got k=" + std::to_string(k) +
                                    " for |F|=" + std::to_string(f.size()) + ", n=" + std::to_string(n));
    }
    const KSubset h = partner(f);
    const int hs = h.size();
    if (k == hs) {
        return h;
    }
    if (k > hs) {
        // max H = |F| + h - 1 < n - k + h + 1, so the run is disjoint from H.
        return h.unite(KSubset::interval(n, n - k + hs + 1, n));
    }
    const std::uint64_t below = lex_initial_count_u64(h, k);
    if (below == 0) {
        throw std::domain_error("no " + std::to_string(k) + "-set precedes " + h.to_string() +
                                "; no nonempty family cross-intersects L(" + f.to_string() + ")");
    }
    return unrank(n, k, below);
}

std::optional<KSubset> k_parity(const KSubset& f, int k) {
    const int n = f.ground();
    if (f.is_empty()) {
        throw std::invalid_argument("parity of the empty set is undefined");
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("parity size k=" + std::to_string(k) + " outside [1, n]");
    }
    const TailSplit split = tail_decompose(f);
    const int ell = split.ell + (k - f.size());
    if (ell < 0) {
        return std::nullopt;
    }
    // The new top run must stay a separate run: it may not touch the head.
    if (!split.head.is_empty() && split.head.max() >= n - ell) {
        return std::nullopt;
    }
    return split.head.unite(top_run(n, ell));
}

bool is_parity(const KSubset& a, const KSubset& b) {
    if (a.size() == b.size()) {
        return a == b;
    }
    const KSubset& larger = a.size() > b.size() ? a : b;
    const KSubset& smaller = a.size() > b.size() ? b : a;
    if (smaller.is_empty()) {
        return false;
    }
    auto p = k_parity(larger, smaller.size());
    return p && *p == smaller;
}

KSubset corresponding_k_set(const KSubset& a, int k) {
    if (a.is_empty() || k < 1 || k > a.size()) {
        throw std::invalid_argument("corresponding k-set needs 1 <= k <= |A|");
    }
    if (k == a.size()) {
        return a;
    }
    if (auto p = k_parity(a, k)) {
        return *p;
    }
    // Sizes differ, so every k-set F <=lex A precedes A strictly.
    const std::uint64_t below = lex_initial_count_u64(a, k);
    if (below == 0) {
        throw std::domain_error("no " + std::to_string(k) + "-set strictly precedes " + a.to_string());
    }
    return unrank(a.ground(), k, below);
}

MaximalPairWitness maximal_pair_witness(const KSubset& a, const KSubset& b) {
    MaximalPairWitness w{head_of(a), head_of(b), std::nullopt};
    if (w.a_head.is_empty() || w.b_head.is_empty()) {
        return w;
    }
    const int q = w.a_head.max();
    if (w.b_head.max() != q) {
        return w;
    }
    const KSubset only_q = KSubset::interval(a.ground(), q, q);
    if (w.a_head.intersect(w.b_head) == only_q && w.a_head.unite(w.b_head) == KSubset::interval(a.ground(), 1, q)) {
        w.strongly_intersect_at = q;
    }
    return w;
}

bool is_maximal_pair(const KSubset& a, const KSubset& b) {
    if (a.is_empty() || b.is_empty()) {
        throw std::invalid_argument("maximal pair test needs nonempty IDs");
    }
    if (a.ground() != b.ground() || a.size() + b.size() > a.ground()) {
        throw std::invalid_argument("maximal pair test needs a common ground with |A| + |B| <= n");
    }
    return maximal_pair_witness(a, b).strongly_intersect_at.has_value();
}

std::optional<KSubset> maximal_counterpart(const KSubset& a, int b) {
    const int n = a.ground();
    if (a.is_empty() || b < 1 || a.size() + b > n) {
        throw std::invalid_argument("maximal counterpart needs nonempty A and 1 <= b <= n - |A|");
    }
    const KSubset head = head_of(a);
    if (head.is_empty()) {
        return std::nullopt;
    }
    const KSubset core = partner(head);
    if (core.size() > b) {
        return std::nullopt;
    }
    const KSubset candidate = core.unite(KSubset::interval(n, n - b + core.size() + 1, n));
    if (candidate.size() != b || head_of(candidate) != core) {
        return std::nullopt;
    }
    return candidate;
}

}  // namespace crossint
