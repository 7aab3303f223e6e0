#include "crossint/suites.hpp"

#include <algorithm>
#include <chrono>
#include <iterator>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "crossint/bounds.hpp"
#include "crossint/partners.hpp"

namespace crossint {

namespace {

constexpr std::size_t kMaxSamples = 20;

std::string describe(const Params& p) { return "n=" + std::to_string(p.n) + " ks=" + p.ks_string(); }

std::vector<int> as_vector(const KSubset& s) { return s.elements(); }

// Reference lex relation on sorted element lists, written from the definition.
bool ref_precedes(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> a_only;
    std::vector<int> b_only;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(a_only));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(b_only));
    if (b_only.empty()) {
        return true;
    }
    if (a_only.empty()) {
        return false;
    }
    return a_only.front() < b_only.front();
}

std::vector<KSubset> all_nonempty(int n) {
    std::vector<KSubset> out;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        out.push_back(KSubset::from_mask(n, m));
    }
    return out;
}

std::optional<KSubset> try_k_partner(const KSubset& f, int k) {
    try {
        return k_partner(f, k);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

std::string opt_string(const std::optional<KSubset>& s) { return s ? s->to_string() : std::string("undefined"); }

bool meets_all(std::uint64_t x, const std::vector<std::uint64_t>& fam, std::uint32_t r) {
    for (std::uint32_t i = 0; i < r; ++i) {
        if ((x & fam[i]) == 0) {
            return false;
        }
    }
    return true;
}

// Cross-intersecting, and no outside set of either size meets the whole other family.
bool gold_maximal(const LexTable& table, int a, std::uint32_t ra, int b, std::uint32_t rb) {
    const auto& fa = table.sets(a);
    const auto& fb = table.sets(b);
    for (std::uint32_t i = 0; i < ra; ++i) {
        if (!meets_all(fa[i], fb, rb)) {
            return false;
        }
    }
    for (std::uint32_t i = ra; i < fa.size(); ++i) {
        if (meets_all(fa[i], fb, rb)) {
            return false;
        }
    }
    for (std::uint32_t i = rb; i < fb.size(); ++i) {
        if (meets_all(fb[i], fa, ra)) {
            return false;
        }
    }
    return true;
}

KSubset star_id(int n, int k) { return KSubset::interval(n, 1, 1).unite(KSubset::interval(n, n - k + 2, n)); }

}  // namespace

void SuiteResult::expect(bool ok, std::string_view check, const std::function<std::string()>& detail) {
    ++checks;
    if (ok) {
        return;
    }
    ++failures;
    ++failing[std::string(check)];
    if (samples.size() < kMaxSamples) {
        const std::string d = detail();
        samples.push_back(std::string(check) + (d.empty() ? "" : ": " + d));
    }
}

void SuiteResult::merge(const SuiteResult& other) {
    checks += other.checks;
    failures += other.failures;
    for (const auto& [k, v] : other.failing) {
        failing[k] += v;
    }
    for (const auto& s : other.samples) {
        if (samples.size() < kMaxSamples) {
            samples.push_back(s);
        }
    }
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"lex", "partners", "increments", "oracle", "kk", "bounds"};
    return names;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& options) {
    if (name == "lex") {
        return run_lex_suite(options);
    }
    if (name == "partners") {
        return run_partners_suite(options);
    }
    if (name == "increments") {
        return run_increments_suite(options);
    }
    if (name == "oracle") {
        return run_oracle_suite(options);
    }
    if (name == "kk") {
        return run_kk_suite(options);
    }
    if (name == "bounds") {
        return run_bounds_suite(options);
    }
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// lex

SuiteResult run_lex_suite(const SuiteOptions& options) {
    SuiteResult r;
    r.name = "lex";
    const int n_top = std::min(options.n_max, 10);
    for (int n = 1; n <= n_top; ++n) {
        const LexTable table(n);
        const auto subsets = all_nonempty(n);
        std::vector<std::vector<int>> elems;
        elems.reserve(subsets.size());
        for (const auto& s : subsets) {
            elems.push_back(as_vector(s));
        }

        if (n <= 8) {
            for (std::size_t i = 0; i < subsets.size(); ++i) {
                for (std::size_t j = 0; j < subsets.size(); ++j) {
                    const bool got = lex_precedes(subsets[i], subsets[j]);
                    r.expect(got == ref_precedes(elems[i], elems[j]), "lex relation matches definition",
                             [&] { return subsets[i].to_string() + " vs " + subsets[j].to_string(); });
                    if (i != j) {
                        const bool ab = lex_strictly_precedes(subsets[i], subsets[j]);
                        const bool ba = lex_strictly_precedes(subsets[j], subsets[i]);
                        r.expect(ab != ba, "exactly one strict direction on distinct sets",
                                 [&] { return subsets[i].to_string() + " vs " + subsets[j].to_string(); });
                    }
                }
            }
        }

        for (int k = 1; k <= std::min(n, 5); ++k) {
            const auto& list = table.sets(k);
            for (std::size_t idx = 0; idx < list.size(); ++idx) {
                const KSubset s = KSubset::from_mask(n, list[idx]);
                const std::uint64_t rank = idx + 1;
                r.expect(lex_initial_count_u64(s, k) == rank, "count of a k-set equals its enumeration rank",
                         [&] { return "n=" + std::to_string(n) + " " + s.to_string(); });
                r.expect(unrank(n, k, rank) == s, "unrank inverts count",
                         [&] { return "n=" + std::to_string(n) + " " + s.to_string(); });
                const auto next = successor(s);
                if (idx + 1 < list.size()) {
                    r.expect(next && lex_initial_count_u64(*next, k) == rank + 1, "successor advances the count by one",
                             [&] { return s.to_string(); });
                    r.expect(next && *next == KSubset::from_mask(n, list[idx + 1]), "successor matches enumeration",
                             [&] { return s.to_string(); });
                } else {
                    r.expect(!next, "lex-last set has no successor", [&] { return s.to_string(); });
                }
                const auto prev = predecessor(s);
                if (idx > 0) {
                    r.expect(prev && *prev == KSubset::from_mask(n, list[idx - 1]), "predecessor matches enumeration",
                             [&] { return s.to_string(); });
                } else {
                    r.expect(!prev, "lex-first set has no predecessor", [&] { return s.to_string(); });
                }
            }
        }

        if (n <= 9) {
            for (std::size_t i = 0; i < subsets.size(); ++i) {
                for (int k = 1; k <= n; ++k) {
                    std::uint64_t brute = 0;
                    for (std::uint64_t m : table.sets(k)) {
                        if (ref_precedes(as_vector(KSubset::from_mask(n, m)), elems[i])) {
                            ++brute;
                        }
                    }
                    r.expect(lex_initial_count_u64(subsets[i], k) == brute, "closed-form count matches enumeration",
                             [&] { return "n=" + std::to_string(n) + " R=" + subsets[i].to_string() + " k=" + std::to_string(k); });
                }
            }
        }

        for (const auto& f : subsets) {
            const TailSplit split = tail_decompose(f);
            const KSubset run = top_run(n, split.ell);
            r.expect(split.head.unite(run) == f && split.head.intersect(run).is_empty(), "tail split reassembles",
                     [&] { return f.to_string(); });
            r.expect(split.ell == 0 || split.head.is_empty() || split.head.max() < n - split.ell, "tail run is maximal",
                     [&] { return f.to_string(); });
        }

        if (n <= 7) {
            // Pairs P u {a+1..a+c}, P u {b+1..b+c} built straight from the definition.
            for (int k = 1; k <= n; ++k) {
                for (int c = 1; c <= k; ++c) {
                    std::set<std::pair<std::uint64_t, std::uint64_t>> seq;
                    std::set<std::pair<std::uint64_t, std::uint64_t>> step;
                    for (std::uint64_t pm : table.sets(k - c).empty() ? std::vector<std::uint64_t>{} : table.sets(k - c)) {
                        const KSubset p = KSubset::from_mask(n, pm);
                        const int lo = p.is_empty() ? 0 : p.max();
                        for (int a = lo; a + c <= n; ++a) {
                            for (int b = a + 1; b + c <= n; ++b) {
                                const KSubset x = p.unite(KSubset::interval(n, a + 1, a + c));
                                const KSubset y = p.unite(KSubset::interval(n, b + 1, b + c));
                                seq.insert({x.mask(), y.mask()});
                                if (b == a + 1) {
                                    step.insert({x.mask(), y.mask()});
                                }
                            }
                        }
                    }
                    for (std::uint64_t xm : table.sets(k)) {
                        for (std::uint64_t ym : table.sets(k)) {
                            const KSubset x = KSubset::from_mask(n, xm);
                            const KSubset y = KSubset::from_mask(n, ym);
                            r.expect(is_c_sequential(x, y, c) == (seq.count({xm, ym}) > 0), "c-sequential matches construction",
                                     [&] { return x.to_string() + " " + y.to_string() + " c=" + std::to_string(c); });
                            r.expect(is_c_sequential_step(x, y, c) == (step.count({xm, ym}) > 0),
                                     "single c-sequential step matches construction",
                                     [&] { return x.to_string() + " " + y.to_string() + " c=" + std::to_string(c); });
                        }
                    }
                }
            }
        }
    }

    for (const Params& p : mixed_grid(std::min(options.n_max, 10), 3, 5, UINT64_MAX)) {
        const LexTable table(p.n);
        for (int i = 1; i <= p.t(); ++i) {
            const IdWindow w = id_window(p, i);
            const auto members = w.members();
            std::uint64_t inside = 0;
            for (std::uint64_t m : table.sets(p.k(i))) {
                const KSubset s = KSubset::from_mask(p.n, m);
                const bool in = w.contains(s);
                r.expect(in == (lex_precedes(w.lo, s) && lex_precedes(s, w.hi)), "window membership is the lex interval",
                         [&] { return describe(p) + " i=" + std::to_string(i) + " " + s.to_string(); });
                inside += in ? 1 : 0;
            }
            r.expect(inside == members.size(), "window member list is complete",
                     [&] { return describe(p) + " i=" + std::to_string(i); });
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// partners

SuiteResult run_partners_suite(const SuiteOptions& options) {
    SuiteResult r;
    r.name = "partners";
    const int n_top = std::min(options.n_max, 10);
    for (int n = 1; n <= n_top; ++n) {
        const auto subsets = all_nonempty(n);
        for (const auto& f : subsets) {
            const KSubset h = partner(f);
            const int q = f.max();
            r.expect(partner(h) == f, "partner is an involution", [&] { return f.to_string(); });
            r.expect(f.intersect(h) == KSubset::interval(n, q, q) && f.unite(h) == KSubset::interval(n, 1, q),
                     "partners strongly intersect at the maximum", [&] { return f.to_string(); });
        }
        if (n > 9) {
            continue;
        }
        const CrossTables tables(n);
        const LexTable& table = tables.table();
        auto rank_of = [&](const KSubset& s) { return table.rank(s.mask()); };

        for (const auto& f : subsets) {
            const int fs = f.size();
            const std::uint32_t rf = rank_of(f);
            const KSubset head = head_of(f);
            for (int k = 1; k <= n - fs; ++k) {
                const std::uint32_t cap = tables.cap(fs, k, rf);
                const auto kp = try_k_partner(f, k);
                r.expect(kp ? (kp->size() == k && rank_of(*kp) == cap) : cap == 0,
                         "k-partner is the lex-greatest cross-intersecting ID",
                         [&] { return "n=" + std::to_string(n) + " F=" + f.to_string() + " k=" + std::to_string(k) +
                                      " got " + opt_string(kp) + " oracle rank " + std::to_string(cap); });
                r.expect(lex_initial_count(partner(f), k) == Count(cap), "partner and k-partner give the same family",
                         [&] { return f.to_string() + " k=" + std::to_string(k); });
                if (!head.is_empty() && head != f) {
                    r.expect(lex_initial_count(partner(head), k) == lex_initial_count(partner(f), k) &&
                                 try_k_partner(head, k) == kp,
                             "k-partner depends only on the head", [&] { return f.to_string() + " k=" + std::to_string(k); });
                }
                if (kp) {
                    const KSubset a2 = k_partner(*kp, fs);
                    r.expect(is_maximal_pair(a2, *kp) &&
                                 tables.maximal_pair(fs, rank_of(a2), k, rank_of(*kp)) && lex_precedes(f, a2),
                             "re-maximalized pair is maximal and extends the first family",
                             [&] { return f.to_string() + " k=" + std::to_string(k) + " -> " + a2.to_string(); });
                }
                // Families beyond the star ID force the other family under the star ID.
                if (lex_precedes(star_id(n, fs), f)) {
                    r.expect(cap <= rank_of(star_id(n, k)), "families past the star confine the partner family",
                             [&] { return f.to_string() + " k=" + std::to_string(k); });
                }
                // Maximal counterpart against the oracle.
                const auto mc = maximal_counterpart(f, k);
                const bool oracle_has = cap > 0 && tables.maximal_pair(fs, rf, k, cap);
                r.expect(mc ? (is_maximal_pair(f, *mc) && oracle_has && rank_of(*mc) == cap) : !oracle_has,
                         "maximal counterpart exists exactly when a maximal pair does",
                         [&] { return f.to_string() + " b=" + std::to_string(k) + " got " + opt_string(mc); });
            }

            // Parities: same head and tail difference equal to size difference.
            for (int g = 1; g <= n; ++g) {
                const auto par = k_parity(f, g);
                std::optional<KSubset> brute;
                for (std::uint64_t m : table.sets(g)) {
                    const KSubset x = KSubset::from_mask(n, m);
                    const TailSplit sx = tail_decompose(x);
                    const TailSplit sf = tail_decompose(f);
                    if (sx.head == sf.head && sx.ell - sf.ell == g - fs) {
                        brute = x;
                    }
                }
                r.expect(par == brute, "parity matches its definition",
                         [&] { return f.to_string() + " g=" + std::to_string(g) + " got " + opt_string(par); });
                if (par && g != fs) {
                    for (int k = 1; k <= n - std::max(fs, g); ++k) {
                        r.expect(try_k_partner(f, k) == try_k_partner(*par, k), "parities share k-partners",
                                 [&] { return f.to_string() + " ~ " + par->to_string() + " k=" + std::to_string(k); });
                    }
                }
                if (g < fs) {
                    std::optional<KSubset> expected = par;
                    if (!expected) {
                        std::uint32_t last = 0;
                        for (std::uint32_t idx = 1; idx <= table.count(g); ++idx) {
                            if (lex_strictly_precedes(table.subset(g, idx), f)) {
                                last = idx;
                            }
                        }
                        if (last > 0) {
                            expected = table.subset(g, last);
                        }
                    }
                    std::optional<KSubset> got;
                    try {
                        got = corresponding_k_set(f, g);
                    } catch (const std::domain_error&) {
                    }
                    r.expect(got == expected, "corresponding set is the parity or the lex-last strict predecessor",
                             [&] { return f.to_string() + " k=" + std::to_string(g) + " got " + opt_string(got); });
                }
            }

            // Partners of one set at two sizes.
            for (int a = 1; a <= n - fs; ++a) {
                for (int b = 1; b < a; ++b) {
                    const auto ka = try_k_partner(f, a);
                    const auto kb = try_k_partner(f, b);
                    if (!ka || !kb) {
                        continue;
                    }
                    const auto up = k_parity(*kb, a);
                    r.expect(lex_strictly_precedes(*kb, *ka) || (up && *up == *ka),
                             "smaller partner precedes or has the larger as parity",
                             [&] { return "C=" + f.to_string() + " a=" + std::to_string(a) + " b=" + std::to_string(b); });
                }
            }
        }

        // Antitonicity along the full lex order of every admissible set.
        for (int k = 1; k < n; ++k) {
            std::vector<KSubset> order;
            for (const auto& s : subsets) {
                if (s.size() <= n - k) {
                    order.push_back(s);
                }
            }
            std::sort(order.begin(), order.end(), lex_strictly_precedes);
            for (std::size_t i = 0; i + 1 < order.size(); ++i) {
                const auto ka = try_k_partner(order[i], k);
                const auto kb = try_k_partner(order[i + 1], k);
                bool ok;
                if (!ka) {
                    ok = !kb;
                } else {
                    ok = !kb || lex_precedes(*kb, *ka);
                }
                r.expect(ok, "k-partners reverse the lex order",
                         [&] { return order[i].to_string() + " < " + order[i + 1].to_string() + " k=" + std::to_string(k); });
            }
        }

        // Maximality on IDs against member-level maximality, both directions.
        for (int a = 1; a < n; ++a) {
            for (int b = 1; a + b <= n; ++b) {
                for (std::uint32_t ra = 1; ra <= table.count(a); ++ra) {
                    const KSubset sa = table.subset(a, ra);
                    for (std::uint32_t rb = 1; rb <= table.count(b); ++rb) {
                        const KSubset sb = table.subset(b, rb);
                        r.expect(is_maximal_pair(sa, sb) == tables.maximal_pair(a, ra, b, rb),
                                 "maximal pair iff heads are partners",
                                 [&] { return "n=" + std::to_string(n) + " " + sa.to_string() + " " + sb.to_string(); });
                        if (n <= 6) {
                            r.expect(tables.maximal_pair(a, ra, b, rb) == gold_maximal(table, a, ra, b, rb),
                                     "maximality tables match member enumeration",
                                     [&] { return "n=" + std::to_string(n) + " " + sa.to_string() + " " + sb.to_string(); });
                        }
                    }
                }
            }
        }

        // Family parity of the IDs admitting a maximal counterpart (sizes <= 4).
        for (int h = 1; h <= 4; ++h) {
            for (int f = 1; f <= 4 && f + h <= n; ++f) {
                for (int g = 1; g < f; ++g) {
                    auto admitting = [&](int size) {
                        std::map<std::uint32_t, std::uint32_t> out;  // rank -> counterpart rank
                        for (std::uint32_t rx = 1; rx <= table.count(size); ++rx) {
                            const std::uint32_t c = tables.cap(size, h, rx);
                            if (c > 0 && tables.maximal_pair(size, rx, h, c)) {
                                out[rx] = c;
                            }
                        }
                        return out;
                    };
                    const auto fam_f = admitting(f);
                    const auto fam_g = admitting(g);
                    std::set<std::uint32_t> h_f;
                    std::set<std::uint32_t> h_g;
                    for (const auto& [rx, c] : fam_f) {
                        h_f.insert(c);
                        const auto down = k_parity(table.subset(f, rx), g);
                        r.expect(!down || fam_g.count(rank_of(*down)) > 0, "admitting family is closed under downward parity",
                                 [&] { return table.subset(f, rx).to_string() + " g=" + std::to_string(g); });
                    }
                    for (const auto& [rx, c] : fam_g) {
                        h_g.insert(c);
                        const KSubset gx = table.subset(g, rx);
                        const auto up = k_parity(gx, f);
                        const bool up_ok = up && fam_f.count(rank_of(*up)) > 0;
                        r.expect(up_ok, "admitting family is closed under upward parity",
                                 [&] { return gx.to_string() + " f=" + std::to_string(f); });
                        if (up_ok) {
                            const std::uint32_t hf = fam_f.at(rank_of(*up));
                            r.expect(tables.maximal_pair(g, rx, h, hf), "counterpart of the parity serves the smaller set",
                                     [&] { return gx.to_string() + " f=" + std::to_string(f); });
                        }
                    }
                    r.expect(std::includes(h_f.begin(), h_f.end(), h_g.begin(), h_g.end()),
                             "counterparts of the smaller size are counterparts of the larger",
                             [&] { return "n=" + std::to_string(n) + " f=" + std::to_string(f) + " g=" + std::to_string(g) +
                                          " h=" + std::to_string(h); });
                }
            }
        }
    }

    if (options.n_max >= 9) {
        const int n = 9;
        const KSubset a(n, {2, 4, 7});
        const KSubset b = k_partner(a, 4);
        r.expect(b == KSubset(n, {1, 3, 4, 9}), "worked example: 4-partner", [&] { return b.to_string(); });
        r.expect(!is_maximal_pair(a, b) && !maximality_bruteforce(a, 3, b, 4), "worked example: pair not maximal");
        const KSubset a2 = k_partner(b, 3);
        r.expect(a2 == KSubset(n, {2, 4, 9}) && is_maximal_pair(a2, b) && maximality_bruteforce(a2, 3, b, 4),
                 "worked example: re-maximalized ID", [&] { return a2.to_string(); });
    }
    return r;
}

// ---------------------------------------------------------------------------
// increments

namespace {

void check_increments_for(const Params& p, const Regime& regime, SuiteResult& r, const CrossTables* tables) {
    const IdWindow window = id_window(p, 1);
    const auto members = window.members();
    const std::size_t m = members.size();
    if (m == 0) {
        return;
    }
    const int t = p.t();
    const int s = regime.s;
    std::vector<Count> f(m);
    for (std::size_t j = 0; j < m; ++j) {
        const auto ids = forced_ids(members[j], p, regime);
        f[j] = system_size(members[j], p, regime);
        if (tables != nullptr) {
            bool cross = true;
            for (int a = 0; a < t && cross; ++a) {
                for (int b = a + 1; b < t && cross; ++b) {
                    const LexTable& tab = tables->table();
                    cross = tables->cross_intersecting(p.ks[a], tab.rank(ids[a].mask()), p.ks[b], tab.rank(ids[b].mask()));
                }
            }
            r.expect(cross, "forced system is pairwise cross-intersecting",
                     [&] { return describe(p) + " R1=" + members[j].to_string(); });
        }
    }

    // Difference identity over every ordered pair.
    std::vector<std::vector<IncrementReport>> inc(m, std::vector<IncrementReport>(m));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            inc[a][b] = increments(members[a], members[b], p, regime);
            const auto& rep = inc[a][b];
            Count sum = 0;
            bool nonneg = rep.delta >= 0;
            for (const Count& x : rep.alpha) {
                sum += x;
                nonneg = nonneg && x >= 0;
            }
            r.expect(f[b] - f[a] == rep.gamma - rep.delta, "size difference equals gamma minus delta",
                     [&] { return describe(p) + " " + members[a].to_string() + "->" + members[b].to_string(); });
            r.expect(sum == rep.gamma && nonneg && static_cast<int>(rep.alpha.size()) == s, "increments are nonnegative",
                     [&] { return describe(p) + " " + members[a].to_string() + "->" + members[b].to_string(); });
        }
    }

    // Additivity over triples.
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            for (std::size_t c = b; c < m; ++c) {
                r.expect(inc[a][c].gamma == inc[a][b].gamma + inc[b][c].gamma &&
                             inc[a][c].delta == inc[a][b].delta + inc[b][c].delta,
                         "gamma and delta are additive",
                         [&] { return describe(p) + " " + members[a].to_string() + "," + members[b].to_string() + "," +
                                      members[c].to_string(); });
            }
        }
    }

    // Consecutive pairs: closed forms.
    int floor_count = 0;
    bool all_tight = true;
    for (int j = s + 1; j <= t; ++j) {
        if (p.n == p.k(1) + p.k(j)) {
            ++floor_count;
        } else {
            all_tight = false;
        }
    }
    std::map<int, Count> delta_by_q;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const KSubset& later = members[j + 1];
        const auto& rep = inc[j][j + 1];
        const int ell = tail_length(later);
        for (int i = 1; i <= s; ++i) {
            const Count closed = alpha_closed_form(later, i, p, regime);
            r.expect(closed == rep.alpha[i - 1], "alpha closed form",
                     [&] { return describe(p) + " R1'=" + later.to_string() + " i=" + std::to_string(i); });
            r.expect((rep.alpha[i - 1] == 0) == (ell < p.k(1) - p.k(i)), "alpha vanishes iff the tail is short",
                     [&] { return describe(p) + " R1'=" + later.to_string() + " i=" + std::to_string(i); });
        }
        if (ell == 0) {
            r.expect(rep.gamma == regime.s_prime, "gamma equals s' when the tail is empty",
                     [&] { return describe(p) + " R1'=" + later.to_string(); });
        }
        const int q = later.max();
        r.expect(rep.delta == beta_closed_form(q, p, regime), "delta equals the beta closed form",
                 [&] { return describe(p) + " R1'=" + later.to_string(); });
        auto [it, fresh] = delta_by_q.emplace(q, rep.delta);
        if (!fresh) {
            r.expect(it->second == rep.delta, "delta depends only on the maximum",
                     [&] { return describe(p) + " q=" + std::to_string(q); });
        }
    }
    // Monotone in q: non-increasing, strictly decreasing above the floor of tight indices.
    const Count floor_value = floor_count;
    for (auto it = delta_by_q.begin(); it != delta_by_q.end() && std::next(it) != delta_by_q.end(); ++it) {
        const Count& cur = it->second;
        const Count& nxt = std::next(it)->second;
        bool ok = nxt <= cur && nxt >= floor_value;
        if (cur > floor_value) {
            ok = ok && nxt < cur;
        }
        if (all_tight) {
            ok = cur == t - s && nxt == t - s;
        }
        r.expect(ok, "delta decreases in the maximum down to the tight floor",
                 [&] { return describe(p) + " q=" + std::to_string(it->first); });
    }

    // Translation invariance for consecutive pairs with equal maxima.
    for (std::size_t a = 0; a + 1 < m; ++a) {
        for (std::size_t b = a + 1; b + 1 < m; ++b) {
            const KSubset& fa = members[a + 1];
            const KSubset& fb = members[b + 1];
            if (fa.max() != fb.max()) {
                continue;
            }
            const auto& ra = inc[a][a + 1];
            const auto& rb = inc[b][b + 1];
            const int la = tail_length(fa);
            const int lb = tail_length(fb);
            bool ok = ra.delta == rb.delta;
            if (la <= lb) {
                ok = ok && ra.gamma <= rb.gamma;
            }
            if (lb <= la) {
                ok = ok && rb.gamma <= ra.gamma;
            }
            r.expect(ok, "consecutive pairs with equal maxima share delta and order gamma by tail",
                     [&] { return describe(p) + " " + fa.to_string() + " vs " + fb.to_string(); });
        }
    }

    // Sequential segments with matching endpoint maxima.
    struct Seg {
        std::size_t a, b;
        int d, max_a, max_b;
    };
    std::vector<Seg> segs;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            for (int d = 1; d <= p.k(1); ++d) {
                if (is_c_sequential(members[a], members[b], d)) {
                    segs.push_back({a, b, d, members[a].max(), members[b].max()});
                }
            }
        }
    }
    for (std::size_t x = 0; x < segs.size(); ++x) {
        for (std::size_t y = x + 1; y < segs.size(); ++y) {
            const Seg& u = segs[x];
            const Seg& v = segs[y];
            if (u.d != v.d || u.max_a != v.max_a || u.max_b != v.max_b) {
                continue;
            }
            r.expect(inc[u.a][u.b].gamma == inc[v.a][v.b].gamma && inc[u.a][u.b].delta == inc[v.a][v.b].delta,
                     "sequential segments with matching maxima agree",
                     [&] { return describe(p) + " " + members[u.a].to_string() + "->" + members[u.b].to_string() + " vs " +
                                  members[v.a].to_string() + "->" + members[v.b].to_string(); });
        }
    }

    // Shifted triples: A u {a, a+1} u run, A u {a} u run', A u {a+1} u run'.
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t j = 0; j < m; ++j) {
        index[members[j].mask()] = j;
    }
    const int n = p.n;
    for (std::size_t jb = 0; jb < m; ++jb) {
        const KSubset& b1 = members[jb];
        const TailSplit sb = tail_decompose(b1);
        if (sb.ell < 1 || sb.head.is_empty()) {
            continue;
        }
        const int a = sb.head.max();
        const KSubset base = sb.head.minus(KSubset::interval(n, a, a));
        const KSubset run = top_run(n, sb.ell);
        if (a + 1 > n - sb.ell) {
            continue;
        }
        const KSubset c1 = base.unite(KSubset::interval(n, a + 1, a + 1)).unite(run);
        const KSubset a_head = base.unite(KSubset::interval(n, a, a + 1));
        const int ell_a = sb.ell - 1;
        if (a + 1 >= n - ell_a) {
            continue;
        }
        const KSubset a1 = a_head.unite(top_run(n, ell_a));
        const auto ia = index.find(a1.mask());
        const auto ic = index.find(c1.mask());
        if (ia == index.end() || ic == index.end()) {
            continue;
        }
        const auto& ab = inc[ia->second][jb];
        const auto& bc = inc[jb][ic->second];
        r.expect(ab.delta == bc.delta && ab.gamma <= bc.gamma, "shifted triple: equal delta, growing gamma",
                 [&] { return describe(p) + " " + a1.to_string() + "," + b1.to_string() + "," + c1.to_string(); });
    }
}

}  // namespace

SuiteResult run_increments_suite(const SuiteOptions& options) {
    SuiteResult r;
    r.name = "increments";
    const int n_top = std::min(options.n_max, 12);
    std::map<int, std::unique_ptr<CrossTables>> tables;
    for (const Params& p : size_tuples(2, n_top, 3, 5, 2)) {
        const auto regime = Regime::try_derive(p);
        if (!regime || regime->s < 2 || !(p.n < p.k(1) + p.k(2))) {
            continue;
        }
        IdWindow w;
        try {
            w = id_window(p, 1);
        } catch (const std::invalid_argument&) {
            continue;
        }
        const CrossTables* tab = nullptr;
        if (p.n <= 9) {
            auto& slot = tables[p.n];
            if (!slot) {
                slot = std::make_unique<CrossTables>(p.n);
            }
            tab = slot.get();
        }
        try {
            check_increments_for(p, *regime, r, tab);
        } catch (const std::exception& e) {
            r.expect(false, "increment evaluation throws", [&] { return describe(p) + ": " + e.what(); });
        }
    }
    const Params ex{5, {3, 3, 2}};
    const Regime rg = Regime::derive(ex);
    const auto rep = increments(KSubset(5, {1, 4, 5}), KSubset(5, {2, 3, 4}), ex, rg);
    r.expect(rep.alpha == std::vector<Count>{1, 1} && rep.gamma == 2 && rep.delta == 1, "worked increment example");
    return r;
}

// ---------------------------------------------------------------------------
// oracle

SuiteResult run_oracle_suite(const SuiteOptions& options) {
    SuiteResult r;
    r.name = "oracle";
    const int n_top = std::min(options.n_max, kMaxOracleGround);
    std::map<int, std::unique_ptr<CrossTables>> tables;
    auto tables_for = [&](int n) -> const CrossTables& {
        auto& slot = tables[n];
        if (!slot) {
            slot = std::make_unique<CrossTables>(n);
        }
        return *slot;
    };

    for (const Params& p : mixed_grid(n_top, 3, 5, options.max_space)) {
        MaxResult res;
        try {
            res = exact_max(p, tables_for(p.n), options.limits);
        } catch (const BudgetExceeded& e) {
            r.expect(false, "search finishes within budget", [&] { return describe(p); });
            continue;
        }
        const BoundBranches lam = lambda_values(p);
        r.expect(res.value == lam.max(), "exact maximum equals the mixed bound",
                 [&] { return describe(p) + " oracle " + to_string(res.value) + " bound " + to_string(lam.max()); });
        const Regime regime = Regime::derive(p);
        for (const SystemIDs& sys : res.extremal) {
            const ExtremalClass cls = classify_extremal(sys);
            if (p.is_exceptional()) {
                r.expect(cls.label == ExtremalLabel::exceptional, "exceptional pattern gives exceptional optima",
                         [&] { return describe(p) + " " + sys.to_string() + " -> " + label_name(cls.label); });
            } else {
                r.expect(cls.label == ExtremalLabel::star || cls.label == ExtremalLabel::kernel,
                         "optima are stars or kernels",
                         [&] { return describe(p) + " " + sys.to_string() + " -> " + label_name(cls.label); });
            }
            r.expect(lex_precedes(star_id(p.n, p.k(1)), sys.ids[0]) && lex_precedes(star_id(p.n, p.k(2)), sys.ids[1]),
                     "top optimal IDs lie past the star", [&] { return describe(p) + " " + sys.to_string(); });
            bool forced = sys.ids[1] == corresponding_k_set(sys.ids[0], p.k(2));
            for (int i = 3; i <= p.t(); ++i) {
                forced = forced && sys.ids[i - 1] == k_partner(sys.ids[0], p.k(i));
            }
            r.expect(forced, "optimal IDs are forced by the first", [&] { return describe(p) + " " + sys.to_string(); });
            r.expect(sys.total_size() == res.value, "extremal tuple attains the maximum",
                     [&] { return describe(p) + " " + sys.to_string(); });
        }
        const auto profile = f_profile(p);
        const Count top = *std::max_element(profile.begin(), profile.end());
        r.expect(profile.front() == lam.star && profile.back() == lam.kernel, "profile endpoints are the two branches",
                 [&] { return describe(p); });
        r.expect(top == res.value, "profile maximum equals the exact maximum", [&] { return describe(p); });
        const ProfileVerdict verdict = profile_verdict(profile);
        if (p.is_exceptional()) {
            r.expect(verdict == ProfileVerdict::exceptional_flat, "exceptional profile is constant",
                     [&] { return describe(p) + " " + verdict_name(verdict); });
        } else {
            r.expect(verdict == ProfileVerdict::endpoint_max, "profile maximum only at an endpoint",
                     [&] { return describe(p) + " " + verdict_name(verdict); });
        }
        (void)regime;
    }

    for (const Params& p : nonmixed_grid(n_top, 2, 4, options.max_space)) {
        MaxResult res;
        try {
            res = exact_max(p, tables_for(p.n), options.limits);
        } catch (const BudgetExceeded&) {
            r.expect(false, "search finishes within budget", [&] { return describe(p); });
            continue;
        }
        r.expect(res.value == nonmixed_bound(p), "exact maximum equals the nonmixed bound",
                 [&] { return describe(p) + " oracle " + to_string(res.value) + " bound " + to_string(nonmixed_bound(p)); });
        if (std::all_of(p.ks.begin(), p.ks.end(), [&](int k) { return k == p.k(1); })) {
            r.expect(res.value == equal_size_bound(p.n, p.k(1), p.t()), "equal sizes reproduce the equal-size bound",
                     [&] { return describe(p); });
        }
        if (p.t() == 2) {
            r.expect(res.value == two_family_bound(p.n, p.k(1), p.k(2)), "two families reproduce the two-family bound",
                     [&] { return describe(p); });
        }
    }

    // Fast cross-intersection test against member enumeration.
    for (int n = 2; n <= std::min(n_top, 9); ++n) {
        const CrossTables& tab = tables_for(n);
        for (int ka = 1; ka <= n; ++ka) {
            for (int kb = 1; kb <= n; ++kb) {
                for (std::uint32_t ra = 1; ra <= tab.table().count(ka); ++ra) {
                    const KSubset a = tab.table().subset(ka, ra);
                    for (std::uint32_t rb = 1; rb <= tab.table().count(kb); ++rb) {
                        const KSubset b = tab.table().subset(kb, rb);
                        const bool truth = tab.cross_intersecting(ka, ra, kb, rb);
                        r.expect(families_cross_intersecting(a, ka, b, kb) == truth, "fast cross test matches enumeration",
                                 [&] { return "n=" + std::to_string(n) + " " + a.to_string() + " " + b.to_string(); });
                        if (n <= 6) {
                            r.expect(families_cross_intersecting_gold(a, ka, b, kb) == truth,
                                     "member enumeration matches the tables",
                                     [&] { return "n=" + std::to_string(n) + " " + a.to_string() + " " + b.to_string(); });
                        }
                    }
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// kk

SuiteResult run_kk_suite(const SuiteOptions& options) {
    SuiteResult r;
    r.name = "kk";
    r.notes.push_back("seed " + std::to_string(options.seed));
    for (int n = 5; n <= std::min(options.n_max, 12); ++n) {
        std::mt19937_64 rng(options.seed * 1000003ULL + static_cast<std::uint64_t>(n));
        const LexTable table(n);
        int done = 0;
        while (done < options.kk_trials) {
            const int ka = std::uniform_int_distribution<int>(1, n - 1)(rng);
            const int kb = std::uniform_int_distribution<int>(1, n - ka)(rng);
            const auto& as = table.sets(ka);
            const auto& bs = table.sets(kb);
            // Seed B with a few random sets, take a random part of everything meeting them as A,
            // then B is a random part (or all) of what meets A.
            std::vector<std::uint64_t> seed_b;
            const int seeds = std::uniform_int_distribution<int>(1, 3)(rng);
            for (int i = 0; i < seeds; ++i) {
                seed_b.push_back(bs[std::uniform_int_distribution<std::size_t>(0, bs.size() - 1)(rng)]);
            }
            std::vector<std::uint64_t> pool_a;
            for (std::uint64_t x : as) {
                if (std::all_of(seed_b.begin(), seed_b.end(), [&](std::uint64_t y) { return (x & y) != 0; })) {
                    pool_a.push_back(x);
                }
            }
            if (pool_a.empty()) {
                continue;
            }
            const double keep_a = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
            std::vector<std::uint64_t> fam_a;
            for (std::uint64_t x : pool_a) {
                if (std::bernoulli_distribution(keep_a)(rng)) {
                    fam_a.push_back(x);
                }
            }
            if (fam_a.empty()) {
                fam_a.push_back(pool_a.front());
            }
            std::vector<std::uint64_t> pool_b;
            for (std::uint64_t y : bs) {
                if (std::all_of(fam_a.begin(), fam_a.end(), [&](std::uint64_t x) { return (x & y) != 0; })) {
                    pool_b.push_back(y);
                }
            }
            std::vector<std::uint64_t> fam_b;
            if (std::bernoulli_distribution(0.5)(rng)) {
                fam_b = pool_b;
            } else {
                const double keep_b = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
                for (std::uint64_t y : pool_b) {
                    if (std::bernoulli_distribution(keep_b)(rng)) {
                        fam_b.push_back(y);
                    }
                }
                if (fam_b.empty()) {
                    fam_b.push_back(pool_b.front());
                }
            }
            std::vector<KSubset> fa;
            std::vector<KSubset> fb;
            for (std::uint64_t x : fam_a) {
                fa.push_back(KSubset::from_mask(n, x));
            }
            for (std::uint64_t y : fam_b) {
                fb.push_back(KSubset::from_mask(n, y));
            }
            const bool ok = kk_compress_check(n, fa, fb);
            r.expect(ok, "compressed families stay cross-intersecting", [&] {
                return "n=" + std::to_string(n) + " |A|=" + std::to_string(fa.size()) + " kA=" + std::to_string(ka) +
                       " |B|=" + std::to_string(fb.size()) + " kB=" + std::to_string(kb);
            });
            ++done;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// bounds

SuiteResult run_bounds_suite(const SuiteOptions& options) {
    SuiteResult r;
    r.name = "bounds";
    for (const Params& p : nonmixed_grid(std::min(options.n_max, 9), 2, 5, UINT64_MAX)) {
        const Rational w = weighted_bound(p, WeightVector::unit(p.t()), 1);
        r.expect(w == Rational(nonmixed_bound(p)), "unit weights reproduce the nonmixed bound", [&] { return describe(p); });
    }
    const int grid_top = std::max(options.n_max, 12);
    for (const Params& p : nonmixed_grid(grid_top, 2, 4, UINT64_MAX)) {
        const int t = p.t();
        for (int s = 1; s <= p.k_last(); ++s) {
            const Count f1 = kernel_value(p, 1, s);
            Count best = f1;
            for (int j = 2; j <= t; ++j) {
                const Count fj = kernel_value(p, j, s);
                if (fj > best) {
                    best = fj;
                }
            }
            r.expect(best == f1, "first family gives the largest kernel value",
                     [&] { return describe(p) + " s=" + std::to_string(s); });
        }
        const Count last = kernel_value(p, t, p.k(t - 1));
        const Count ref = std::max(kernel_value(p, 1, 1), kernel_value(p, 1, p.k_last()));
        r.expect(last <= ref, "last family at the largest kernel is dominated", [&] { return describe(p); });
    }
    return r;
}

// ---------------------------------------------------------------------------
// grids and sweep rows

std::vector<Params> size_tuples(int n_min, int n_max, int t_min, int t_max, int k_min) {
    std::vector<Params> out;
    for (int n = std::max(1, n_min); n <= n_max; ++n) {
        for (int t = t_min; t <= t_max; ++t) {
            std::vector<int> ks(t, k_min);
            if (k_min > n) {
                continue;
            }
            // Odometer over non-increasing sequences.
            std::vector<int> cur(t, n);
            while (true) {
                out.push_back(Params{n, cur});
                int pos = t - 1;
                while (pos >= 0 && cur[pos] == k_min) {
                    --pos;
                }
                if (pos < 0) {
                    break;
                }
                --cur[pos];
                for (int j = pos + 1; j < t; ++j) {
                    cur[j] = cur[pos];
                }
            }
        }
    }
    return out;
}

std::vector<Params> mixed_grid(int n_max, int t_min, int t_max, std::uint64_t max_space) {
    std::vector<Params> out;
    for (const Params& p : size_tuples(1, n_max, std::max(3, t_min), t_max, 2)) {
        if (p.is_mixed() && search_space(p) <= max_space) {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<Params> nonmixed_grid(int n_max, int t_min, int t_max, std::uint64_t max_space) {
    std::vector<Params> out;
    for (const Params& p : size_tuples(1, n_max, std::max(2, t_min), t_max, 1)) {
        if (p.is_nonmixed() && search_space(p) <= max_space) {
            out.push_back(p);
        }
    }
    return out;
}

std::string regime_label(const Params& params) {
    if (params.is_mixed()) {
        return "mixed";
    }
    if (params.is_nonmixed()) {
        return "nonmixed";
    }
    return "unsupported";
}

SweepRow evaluate_row(const Params& params, const CrossTables& tables, const SearchLimits& limits) {
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.params = params;
    row.regime = regime_label(params);
    BoundBranches br;
    if (row.regime == "mixed") {
        br = lambda_values(params);
    } else if (row.regime == "nonmixed") {
        br = nonmixed_branches(params);
    } else {
        throw std::invalid_argument("unsupported regime for " + describe(params));
    }
    row.lambda1 = br.star;
    row.lambda2 = br.kernel;
    row.bound = br.max();
    try {
        MaxResult res = exact_max(params, tables, limits);
        row.oracle = res.value;
        row.match = res.value == row.bound;
        std::set<std::string> labels;
        for (const SystemIDs& sys : res.extremal) {
            labels.insert(label_name(classify_extremal(sys).label));
        }
        row.classes.assign(labels.begin(), labels.end());
        row.extremal = std::move(res.extremal);
    } catch (const BudgetExceeded&) {
        row.oracle.reset();
        row.match = false;
    }
    row.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace crossint
