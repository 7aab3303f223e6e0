#include <doctest.h>

#include "brute.hpp"
#include "crossint/partners.hpp"
#include "crossint/suites.hpp"

using namespace crossint;

namespace {

KSubset S(int n, std::initializer_list<int> e) { return KSubset(n, e); }

// Largest b-family L(B, b) cross-intersecting L(F, |F|), by enumeration; 0 when none.
std::size_t brute_cap(int n, const KSubset& f, int b) {
    const auto fa = brute::k_sets(n, f.size());
    const auto fb = brute::k_sets(n, b);
    const std::size_t ra = brute::rank(n, f.elements());
    return brute::caps(fa, fb)[ra];
}

// Neither family of the pair can grow.
bool brute_maximal(int n, const KSubset& a, const KSubset& b) {
    const auto fa = brute::k_sets(n, a.size());
    const auto fb = brute::k_sets(n, b.size());
    const std::size_t ra = brute::rank(n, a.elements());
    const std::size_t rb = brute::rank(n, b.elements());
    return brute::cross(fa, ra, fb, rb) && brute::caps(fa, fb)[ra] == rb && brute::caps(fb, fa)[rb] == ra;
}

}  // namespace

TEST_CASE("partner examples") {
    CHECK(partner(S(9, {2, 4, 7})) == S(9, {1, 3, 5, 6, 7}));
    CHECK(partner(S(9, {1})) == S(9, {1}));
    CHECK(partner(S(9, {1, 3, 5, 6, 7})) == S(9, {2, 4, 7}));
    CHECK_THROWS_AS(partner(KSubset::empty(4)), std::invalid_argument);
}

TEST_CASE("k-partner examples") {
    const KSubset f = S(9, {2, 4, 7});
    CHECK(k_partner(f, 4) == S(9, {1, 3, 4, 9}));
    CHECK(k_partner(f, 5) == S(9, {1, 3, 5, 6, 7}));
    CHECK(k_partner(f, 6) == S(9, {1, 3, 5, 6, 7, 9}));
    CHECK_THROWS_AS(k_partner(f, 7), std::invalid_argument);
    // Nothing of size 1 precedes {1,2}, the partner of {2}.
    CHECK_THROWS_AS(k_partner(S(4, {2}), 1), std::domain_error);
}

TEST_CASE("k-partner gives the largest cross-intersecting family (enumeration, n <= 7)") {
    for (int n = 2; n <= 7; ++n) {
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            const KSubset f = KSubset::from_mask(n, m);
            for (int b = 1; b <= n - f.size(); ++b) {
                const std::size_t cap = brute_cap(n, f, b);
                if (cap == 0) {
                    REQUIRE_THROWS_AS(k_partner(f, b), std::domain_error);
                } else {
                    const KSubset kp = k_partner(f, b);
                    REQUIRE(kp.size() == b);
                    REQUIRE(brute::rank(n, kp.elements()) == cap);
                }
            }
        }
    }
}

TEST_CASE("parity examples") {
    CHECK(k_parity(S(9, {2, 4, 9}), 2) == S(9, {2, 4}));
    CHECK_FALSE(k_parity(S(9, {2, 4, 7}), 2).has_value());
    CHECK(k_parity(S(9, {2, 4}), 3) == S(9, {2, 4, 9}));
    CHECK(is_parity(S(9, {2, 4, 9}), S(9, {2, 4})));
    CHECK_FALSE(is_parity(S(9, {2, 4, 7}), S(9, {2, 4})));
}

TEST_CASE("corresponding k-sets") {
    CHECK(corresponding_k_set(S(9, {2, 4, 9}), 2) == S(9, {2, 4}));
    CHECK(corresponding_k_set(S(9, {2, 4, 7}), 2) == S(9, {2, 3}));
    CHECK(corresponding_k_set(S(9, {2, 4, 7}), 3) == S(9, {2, 4, 7}));

    // Against the definition: parity, else the last k-set strictly before A.
    for (int n = 2; n <= 7; ++n) {
        for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
            const KSubset a = KSubset::from_mask(n, m);
            for (int k = 1; k <= a.size(); ++k) {
                std::optional<brute::Set> expected;
                for (const auto& s : brute::k_sets(n, k)) {
                    const KSubset c(n, std::span<const int>(s));
                    if (is_parity(a, c) || c == a) {
                        expected = s;
                        break;
                    }
                }
                if (!expected) {
                    for (const auto& s : brute::k_sets(n, k)) {
                        if (brute::precedes(s, a.elements()) && s != a.elements()) {
                            expected = s;
                        }
                    }
                }
                if (expected) {
                    REQUIRE(corresponding_k_set(a, k).elements() == *expected);
                } else {
                    REQUIRE_THROWS_AS(corresponding_k_set(a, k), std::domain_error);
                }
            }
        }
    }
}

TEST_CASE("maximal pairs") {
    CHECK(is_maximal_pair(S(9, {2, 4, 7}), S(9, {1, 3, 5, 6, 7})));
    CHECK_FALSE(is_maximal_pair(S(9, {2, 4, 7}), S(9, {1, 3, 4, 9})));
    CHECK(is_maximal_pair(S(9, {2, 4, 9}), S(9, {1, 3, 4, 9})));
    CHECK(partner(S(9, {1, 3, 4})) == S(9, {2, 4}));

    const auto w = maximal_pair_witness(S(9, {2, 4, 9}), S(9, {1, 3, 4, 9}));
    CHECK(w.a_head == S(9, {2, 4}));
    CHECK(w.b_head == S(9, {1, 3, 4}));
    CHECK(w.strongly_intersect_at == 4);

    CHECK(maximality_bruteforce(S(9, {2, 4, 7}), 3, S(9, {1, 3, 5, 6, 7}), 5));
    CHECK_FALSE(maximality_bruteforce(S(9, {2, 4, 7}), 3, S(9, {1, 3, 4, 9}), 4));
    CHECK(maximality_bruteforce(S(5, {1, 4, 5}), 3, S(5, {1, 5}), 2));
}

TEST_CASE("maximality on IDs matches enumeration (n <= 6)") {
    for (int n = 2; n <= 6; ++n) {
        for (int a = 1; a < n; ++a) {
            for (int b = 1; a + b <= n; ++b) {
                for (const auto& x : brute::k_sets(n, a)) {
                    for (const auto& y : brute::k_sets(n, b)) {
                        const KSubset sa(n, std::span<const int>(x));
                        const KSubset sb(n, std::span<const int>(y));
                        REQUIRE(is_maximal_pair(sa, sb) == brute_maximal(n, sa, sb));
                    }
                }
            }
        }
    }
}

TEST_CASE("maximal counterparts") {
    CHECK(maximal_counterpart(S(5, {1, 4, 5}), 2) == S(5, {1, 5}));
    CHECK(maximal_counterpart(S(9, {2, 4, 7}), 5) == S(9, {1, 3, 5, 6, 7}));
    CHECK_FALSE(maximal_counterpart(S(9, {2, 4, 7}), 4).has_value());
}

TEST_CASE("the worked example in full") {
    const KSubset a = S(9, {2, 4, 7});
    const KSubset b = k_partner(a, 4);
    CHECK(b == S(9, {1, 3, 4, 9}));
    CHECK_FALSE(is_maximal_pair(a, b));
    const KSubset a2 = k_partner(b, 3);
    CHECK(a2 == S(9, {2, 4, 9}));
    CHECK(is_maximal_pair(a2, b));
    CHECK(lex_precedes(a, a2));
}

TEST_CASE("lex and partners suites pass at n <= 7") {
    SuiteOptions opts;
    opts.n_max = 7;
    const SuiteResult lex = run_lex_suite(opts);
    CHECK(lex.checks > 0);
    CHECK(lex.failures == 0);
    const SuiteResult partners = run_partners_suite(opts);
    CHECK(partners.checks > 0);
    CHECK(partners.failures == 0);
    for (const auto& s : partners.samples) {
        MESSAGE(s);
    }
}
