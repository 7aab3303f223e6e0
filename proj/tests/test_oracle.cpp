#include <doctest.h>

#include <algorithm>

#include "brute.hpp"
#include "crossint/bounds.hpp"
#include "crossint/oracle.hpp"
#include "crossint/suites.hpp"

using namespace crossint;

namespace {

KSubset S(int n, std::initializer_list<int> e) { return KSubset(n, e); }

SystemIDs sys(const Params& p, std::vector<KSubset> ids) { return SystemIDs{p, std::move(ids)}; }

// Rank tuples of the library's extremal list.
std::vector<std::vector<std::size_t>> rank_tuples(const MaxResult& res) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& s : res.extremal) {
        std::vector<std::size_t> r;
        for (const auto& id : s.ids) {
            r.push_back(brute::rank(id.ground(), id.elements()));
        }
        out.push_back(r);
    }
    std::sort(out.begin(), out.end());
    return out;
}

void check_against_enumeration(const Params& p) {
    const auto best = brute::best_sum(p.n, p.ks);
    const MaxResult res = exact_max(p);
    INFO("n=" << p.n << " ks=" << p.ks_string());
    REQUIRE(res.value == best.value);
    auto expected = best.argmax;
    std::sort(expected.begin(), expected.end());
    REQUIRE(rank_tuples(res) == expected);
}

}  // namespace

TEST_CASE("family cross-intersection") {
    CHECK(families_cross_intersecting(S(5, {1, 4, 5}), 3, S(5, {1, 5}), 2));
    CHECK_FALSE(families_cross_intersecting(S(5, {2, 3, 4}), 3, S(5, {1, 5}), 2));
    CHECK(families_cross_intersecting(S(5, {2, 3, 4}), 3, S(5, {1, 4}), 2));
    CHECK(families_cross_intersecting_gold(S(5, {2, 3, 4}), 3, S(5, {1, 4}), 2));
    CHECK(lex_initial_count(S(5, {2, 3, 4}), 3) * lex_initial_count(S(5, {1, 4}), 2) == 21);
    CHECK(families_cross_intersecting(S(5, {3, 4, 5}), 3, S(5, {4, 5}), 3));
}

TEST_CASE("exact maxima") {
    auto res = exact_max(Params{5, {3, 3, 2}});
    CHECK(res.value == 19);
    res = exact_max(Params{4, {2, 2}});
    CHECK(res.value == 6);
    res = exact_max(Params{5, {3, 3, 2, 2}});
    CHECK(res.value == 20);
    CHECK(res.extremal.size() >= 4);
    const SystemIDs wanted = sys(Params{5, {3, 3, 2, 2}}, {S(5, {2, 3, 5}), S(5, {2, 3, 5}), S(5, {1, 3}), S(5, {1, 3})});
    CHECK(std::find(res.extremal.begin(), res.extremal.end(), wanted) != res.extremal.end());
    CHECK(wanted.total_size() == 20);
    CHECK(wanted.to_string() == "({2,3,5},{2,3,5},{1,3},{1,3})");
}

TEST_CASE("exact maxima and every maximiser match plain enumeration") {
    for (const Params& p : {Params{5, {3, 3, 2}}, Params{5, {3, 3, 2, 2}}, Params{4, {2, 2}}, Params{6, {4, 3, 2}},
                            Params{6, {3, 3, 2}}, Params{6, {4, 4, 2}}, Params{5, {2, 2, 2}}, Params{6, {3, 2, 2, 2}},
                            Params{5, {3, 2}}, Params{7, {4, 4, 3}}}) {
        check_against_enumeration(p);
    }
}

TEST_CASE("small grids match plain enumeration, maximisers included") {
    int checked = 0;
    for (const Params& p : mixed_grid(6, 3, 4, 60'000)) {
        check_against_enumeration(p);
        ++checked;
    }
    for (const Params& p : nonmixed_grid(6, 2, 3, 60'000)) {
        check_against_enumeration(p);
        ++checked;
    }
    CHECK(checked > 40);
}

TEST_CASE("search results do not depend on the thread count") {
    const Params p{7, {4, 4, 3}};
    const MaxResult one = exact_max(p);
    for (unsigned threads : {2u, 3u, 5u}) {
        SearchLimits lim;
        lim.threads = threads;
        const MaxResult many = exact_max(p, lim);
        CHECK(many.value == one.value);
        CHECK(many.extremal == one.extremal);
    }
}

TEST_CASE("budget exhaustion is reported, never truncated") {
    SearchLimits lim;
    lim.max_nodes = 5;
    CHECK_THROWS_AS(exact_max(Params{8, {5, 4, 3}}, lim), BudgetExceeded);
}

TEST_CASE("search space") {
    CHECK(search_space(Params{5, {3, 3, 2}}) == 1000);
    CHECK(search_space(Params{64, {32, 32, 32}}) == UINT64_MAX);
}

TEST_CASE("classification") {
    const Params p{5, {3, 3, 2}};
    CHECK(classify_extremal(sys(p, {S(5, {1, 4, 5}), S(5, {1, 4, 5}), S(5, {1, 5})})).label == ExtremalLabel::star);
    const auto kernel = classify_extremal(sys(p, {S(5, {2, 4, 5}), S(5, {2, 4, 5}), S(5, {1, 2})}));
    CHECK(kernel.label == ExtremalLabel::kernel);
    CHECK(kernel.witness == S(5, {1, 2}));
    const Params e{5, {3, 3, 2, 2}};
    CHECK(classify_extremal(sys(e, {S(5, {2, 3, 5}), S(5, {2, 3, 5}), S(5, {1, 3}), S(5, {1, 3})})).label ==
          ExtremalLabel::exceptional);
    CHECK(classify_extremal(sys(p, {S(5, {2, 3, 4}), S(5, {2, 3, 4}), S(5, {1, 4})})).label == ExtremalLabel::other);
    CHECK(label_name(ExtremalLabel::kernel) == "kernel");

    std::set<ExtremalLabel> labels;
    for (const auto& s : exact_max(p).extremal) {
        labels.insert(classify_extremal(s).label);
    }
    CHECK(labels == std::set<ExtremalLabel>{ExtremalLabel::kernel});
    labels.clear();
    for (const auto& s : exact_max(e).extremal) {
        labels.insert(classify_extremal(s).label);
    }
    CHECK(labels == std::set<ExtremalLabel>{ExtremalLabel::exceptional});
}

TEST_CASE("profiles") {
    CHECK(f_profile(Params{5, {3, 3, 2}}) == std::vector<Count>{16, 17, 18, 19});
    CHECK(f_profile(Params{5, {3, 3, 2, 2}}) == std::vector<Count>{20, 20, 20, 20});
    const auto p6 = f_profile(Params{6, {4, 3, 2}});
    CHECK(p6.front() == 25);
    CHECK(p6.back() == 31);
    CHECK(profile_verdict({16, 17, 18, 19}) == ProfileVerdict::endpoint_max);
    CHECK(profile_verdict({20, 20, 20}) == ProfileVerdict::exceptional_flat);
    CHECK(profile_verdict({3, 5, 4}) == ProfileVerdict::interior_max);
    CHECK(profile_verdict({5, 3, 5}) == ProfileVerdict::endpoint_max);
    CHECK(profile_verdict({5, 5, 4}) == ProfileVerdict::interior_max);
    CHECK(verdict_name(ProfileVerdict::exceptional_flat) == "exceptional-flat");
    CHECK_THROWS_AS(f_profile(Params{6, {3, 3, 2}}), std::invalid_argument);
}

TEST_CASE("compression check") {
    CHECK(kk_compress_check(4, {S(4, {1, 2})}, {S(4, {1, 3}), S(4, {1, 4}), S(4, {1, 2})}));
    std::vector<KSubset> star;
    for (const auto& s : brute::k_sets(6, 3)) {
        if (s.front() == 1) {
            star.push_back(KSubset(6, std::span<const int>(s)));
        }
    }
    CHECK(kk_compress_check(6, star, star));
    CHECK_THROWS_AS(kk_compress_check(4, {S(4, {1, 2})}, {S(4, {3, 4})}), std::invalid_argument);
    CHECK_THROWS_AS(kk_compress_check(4, {}, {S(4, {3, 4})}), std::invalid_argument);
    CHECK_THROWS_AS(kk_compress_check(4, {S(4, {1, 2}), S(4, {1})}, {S(4, {1, 4})}), std::invalid_argument);

    SuiteOptions opts;
    opts.n_max = 6;
    opts.seed = 7;
    opts.kk_trials = 300;
    const SuiteResult res = run_kk_suite(opts);
    CHECK(res.checks == 600);
    CHECK(res.failures == 0);
}

TEST_CASE("oracle suite passes at n <= 8") {
    SuiteOptions opts;
    opts.n_max = 8;
    const SuiteResult res = run_oracle_suite(opts);
    CHECK(res.checks > 0);
    CHECK(res.failures == 0);
    for (const auto& s : res.samples) {
        MESSAGE(s);
    }
}

TEST_CASE("sweep rows") {
    const CrossTables tables(5);
    const SweepRow row = evaluate_row(Params{5, {3, 3, 2}}, tables, {});
    CHECK(row.regime == "mixed");
    CHECK(row.lambda1 == 16);
    CHECK(row.lambda2 == 19);
    CHECK(row.oracle == Count(19));
    CHECK(row.match);
    CHECK(row.classes == std::vector<std::string>{"kernel"});
    CHECK_THROWS_AS(evaluate_row(Params{5, {3, 3}}, tables, {}), std::invalid_argument);
    CHECK(regime_label(Params{4, {3, 2}}) == "unsupported");
}
