#include <doctest.h>

#include "brute.hpp"
#include "crossint/bounds.hpp"
#include "crossint/suites.hpp"

using namespace crossint;

namespace {

KSubset S(int n, std::initializer_list<int> e) { return KSubset(n, e); }

}  // namespace

TEST_CASE("mixed-window branches") {
    auto br = lambda_values(Params{5, {3, 3, 2}});
    CHECK(br.star == 16);
    CHECK(br.kernel == 19);
    br = lambda_values(Params{5, {3, 3, 2, 2}});
    CHECK(br.star == 20);
    CHECK(br.kernel == 20);
    br = lambda_values(Params{6, {4, 3, 2}});
    CHECK(br.star == 25);
    CHECK(br.kernel == 31);
    CHECK(mixed_bound(Params{5, {3, 3, 2}}) == 19);
    CHECK(mixed_bound(Params{5, {3, 3, 2, 2}}) == 20);
    CHECK(mixed_bound(Params{6, {4, 3, 2}}) == 31);
    CHECK_THROWS_AS(lambda_values(Params{6, {3, 3, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(lambda_values(Params{4, {3, 2}}), std::invalid_argument);
}

TEST_CASE("nonmixed bounds") {
    CHECK(nonmixed_bound(Params{6, {3, 3, 2}}) == 25);
    const auto br = nonmixed_branches(Params{6, {3, 3, 2}});
    CHECK(br.star == 25);
    CHECK(br.kernel == 21);
    CHECK(nonmixed_bound(Params{4, {2, 2}}) == 6);
    CHECK(nonmixed_bound(Params{6, {3, 3}}) == 20);
    CHECK_THROWS_AS(nonmixed_bound(Params{5, {3, 3, 2}}), std::invalid_argument);
}

TEST_CASE("two-family and equal-size bounds") {
    CHECK(two_family_bound(4, 2, 2) == 6);
    CHECK(two_family_bound(5, 3, 2) == 10);
    CHECK(two_family_bound(5, 3, 2) == binom(5, 2));
    CHECK(two_family_bound(6, 3, 2) == 17);
    CHECK(equal_size_bound(4, 2, 2) == 6);
    CHECK(equal_size_bound(6, 2, 3) == 15);

    // Two families against enumeration.
    for (int n = 2; n <= 8; ++n) {
        for (int k = 1; k <= n; ++k) {
            for (int l = 1; l <= k && k + l <= n; ++l) {
                REQUIRE(two_family_bound(n, k, l) == brute::best_sum(n, {k, l}).value);
            }
        }
    }
}

TEST_CASE("weighted bound examples") {
    CHECK(weighted_bound(Params{6, {3, 3, 2}}, WeightVector::unit(3), 1) == 25);
    CHECK(weighted_bound(Params{4, {2, 2}}, WeightVector::unit(2), 1) == 6);
    CHECK(weighted_bound(Params{5, {3, 2}}, WeightVector({Rational(2), Rational(1)}), 1) == 19);
    CHECK(weighted_bound(Params{6, {3, 3, 2}}, WeightVector({Rational(1, 2), Rational(1), Rational(3)}), 3) ==
          Rational(75, 2));
    CHECK_THROWS_AS(WeightVector({Rational(1), Rational(0)}), std::invalid_argument);
}

TEST_CASE("weighted bound is attained and never exceeded (enumeration, t <= 3, n <= 7)") {
    const std::vector<std::vector<std::uint64_t>> weight_sets{{1, 1, 1}, {2, 1, 1}, {1, 3, 2}, {5, 1, 2}, {1, 1, 4}};
    for (int n = 2; n <= 7; ++n) {
        for (int t = 2; t <= 3; ++t) {
            for (const Params& p : size_tuples(n, n, t, t, 1)) {
                for (const auto& w : weight_sets) {
                    std::vector<Rational> d;
                    for (int j = 0; j < t; ++j) {
                        d.emplace_back(w[j]);
                    }
                    for (int i = 1; i <= t; ++i) {
                        bool ok = true;
                        for (int j = 1; j <= t; ++j) {
                            ok = ok && (j == i || n >= p.k(i) + p.k(j));
                        }
                        if (!ok) {
                            continue;
                        }
                        const std::size_t floor_i = binom_u64(n - 1, p.k(i) - 1);
                        const auto best = brute::best_tuple(
                            n, p.ks, [&](std::size_t j, std::size_t r) { return w[j] * r; },
                            [&](const std::vector<std::size_t>& r) { return r[i - 1] >= floor_i; });
                        INFO("n=" << n << " ks=" << p.ks_string() << " i=" << i);
                        REQUIRE(weighted_bound(p, WeightVector(d), i) == Rational(best.value));
                    }
                }
            }
        }
    }
}

TEST_CASE("kernel values") {
    CHECK(kernel_value(Params{6, {3, 3, 2}}, 1, 2) == 21);
    CHECK(kernel_value(Params{6, {3, 3, 2}}, 1, 1) == 25);
}

TEST_CASE("system sizes along the first window") {
    const Params p{5, {3, 3, 2}};
    const Regime r = Regime::derive(p);
    CHECK(system_size(S(5, {1, 4, 5}), p, r) == 16);
    CHECK(system_size(S(5, {2, 4, 5}), p, r) == 19);
    CHECK(system_size(S(5, {2, 3, 4}), p, r) == 17);
    const auto ids = forced_ids(S(5, {2, 3, 4}), p, r);
    CHECK(ids[1] == S(5, {2, 3, 4}));
    CHECK(ids[2] == S(5, {1, 4}));
    CHECK(lex_initial_count(ids[2], 2) == 3);
    CHECK_THROWS_AS(system_size(S(5, {1, 2, 3}), p, r), std::invalid_argument);

    // The forced system size is the best completion of I_1 (enumeration).
    for (const KSubset& r1 : id_window(p, 1).members()) {
        const std::size_t r1_rank = brute::rank(5, r1.elements());
        const auto best = brute::best_tuple(
            5, p.ks, [](std::size_t, std::size_t x) { return static_cast<std::uint64_t>(x); },
            [&](const std::vector<std::size_t>& x) { return x[0] == r1_rank; });
        CHECK(system_size(r1, p, r) == best.value);
    }
}

TEST_CASE("increments") {
    const Params p{5, {3, 3, 2}};
    const Regime r = Regime::derive(p);
    auto rep = increments(S(5, {1, 4, 5}), S(5, {2, 3, 4}), p, r);
    CHECK(rep.alpha == std::vector<Count>{1, 1});
    CHECK(rep.gamma == 2);
    CHECK(rep.delta == 1);

    rep = increments(S(5, {2, 3, 5}), S(5, {2, 3, 5}), p, r);
    CHECK(rep.alpha == std::vector<Count>{0, 0});
    CHECK(rep.gamma == 0);
    CHECK(rep.delta == 0);

    rep = increments(S(5, {1, 4, 5}), S(5, {2, 4, 5}), p, r);
    CHECK(rep.gamma - rep.delta == 3);
    CHECK_THROWS_AS(increments(S(5, {2, 4, 5}), S(5, {1, 4, 5}), p, r), std::invalid_argument);
}

TEST_CASE("closed forms for consecutive steps") {
    const Params p{5, {3, 3, 2}};
    const Regime r = Regime::derive(p);
    CHECK(alpha_closed_form(S(5, {2, 4, 5}), 1, p, r) == 1);
    CHECK(alpha_closed_form(S(5, {2, 3, 4}), 2, p, r) == 1);
    CHECK(beta_closed_form(4, p, r) == 1);
    CHECK(beta_closed_form(5, p, r) == 1);

    // Families of smaller size get nothing from a set with no tail.
    const Params q{6, {4, 3, 2}};
    const Regime rq = Regime::derive(q);
    CHECK(alpha_closed_form(S(6, {2, 3, 4, 5}), 2, q, rq) == 0);
    CHECK(alpha_closed_form(S(6, {2, 3, 4, 5}), 1, q, rq) == 1);

    // Empty binomials past the tight range.
    const Params wide{7, {4, 4, 2}};
    const Regime rw = Regime::derive(wide);
    CHECK(beta_closed_form(7, wide, rw) == 0);

    // n = k_1 + k_t keeps delta at t - s along the chain.
    for (int q5 = 5; q5 >= 4; --q5) {
        CHECK(beta_closed_form(q5, p, r) == p.t() - r.s);
    }
}

TEST_CASE("bounds suite passes") {
    SuiteOptions opts;
    opts.n_max = 9;
    const SuiteResult res = run_bounds_suite(opts);
    CHECK(res.checks > 0);
    CHECK(res.failures == 0);
}

TEST_CASE("increments suite passes at n <= 8") {
    SuiteOptions opts;
    opts.n_max = 8;
    const SuiteResult res = run_increments_suite(opts);
    CHECK(res.checks > 0);
    CHECK(res.failures == 0);
    for (const auto& s : res.samples) {
        MESSAGE(s);
    }
}
