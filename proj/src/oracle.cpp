#include "crossint/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "crossint/bounds.hpp"
#include "crossint/partners.hpp"

namespace crossint {

namespace {

void require_oracle_ground(int n) {
    if (n < 1 || n > kMaxOracleGround) {
        throw std::invalid_argument("oracle ground must lie in [1, " + std::to_string(kMaxOracleGround) + "], got " +
                                    std::to_string(n));
    }
}

std::uint64_t next_combination(std::uint64_t v) {
    const std::uint64_t t = v | (v - 1);
    return (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
}

// Same-size lex order: the smallest element of the symmetric difference lies in a.
bool lex_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0) {
        return false;
    }
    return (a & (diff & -diff)) != 0;
}

}  // namespace

LexTable::LexTable(int n) : n_(n), by_size_(n + 1), rank_(std::size_t{1} << n, 0) {
    require_oracle_ground(n);
    const std::uint64_t limit = std::uint64_t{1} << n;
    by_size_[0].push_back(0);
    for (int k = 1; k <= n; ++k) {
        auto& list = by_size_[k];
        list.reserve(binom_u64(n, k));
        for (std::uint64_t v = (std::uint64_t{1} << k) - 1; v < limit; v = next_combination(v)) {
            list.push_back(v);
        }
        std::sort(list.begin(), list.end(), lex_less);
        for (std::size_t r = 0; r < list.size(); ++r) {
            rank_[list[r]] = static_cast<std::uint32_t>(r + 1);
        }
    }
}

CrossTables::CrossTables(int n) : table_(n) {}

const CrossTables::PairData& CrossTables::data(int ka, int kb) const {
    const int n = ground();
    if (ka < 1 || ka > n || kb < 1 || kb > n) {
        throw std::invalid_argument("family sizes must lie in [1, n]");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    auto& slot = cache_[{ka, kb}];
    if (slot) {
        return *slot;
    }
    const auto& as = table_.sets(ka);
    const auto& bs = table_.sets(kb);
    const auto nb = static_cast<std::uint32_t>(bs.size());
    // first_disjoint[r_a]: rank of the lex-first k_b-set missing A, nb + 1 if none.
    std::vector<std::uint32_t> first_disjoint(as.size() + 1, nb + 1);
    for (std::size_t ra = 0; ra < as.size(); ++ra) {
        for (std::uint32_t rb = 0; rb < nb; ++rb) {
            if ((as[ra] & bs[rb]) == 0) {
                first_disjoint[ra + 1] = rb + 1;
                break;
            }
        }
    }
    auto d = std::make_unique<PairData>();
    d->caps.assign(as.size() + 1, nb);
    std::uint32_t running = nb + 1;
    for (std::size_t ra = 1; ra <= as.size(); ++ra) {
        running = std::min(running, first_disjoint[ra]);
        d->caps[ra] = running - 1;
    }
    d->meeting.assign(nb + 1, 0);
    // meeting[r_b] = #{A : first_disjoint(A) > r_b}
    std::vector<std::uint32_t> hist(nb + 2, 0);
    for (std::size_t ra = 1; ra <= as.size(); ++ra) {
        ++hist[first_disjoint[ra]];
    }
    std::uint32_t above = hist[nb + 1];
    for (std::uint32_t rb = nb + 1; rb-- > 0;) {
        d->meeting[rb] = above;
        above += hist[rb];
    }
    slot = std::move(d);
    return *slot;
}

std::uint32_t CrossTables::cap(int ka, int kb, std::uint32_t ra) const { return data(ka, kb).caps.at(ra); }

const std::vector<std::uint32_t>& CrossTables::caps(int ka, int kb) const { return data(ka, kb).caps; }

std::uint32_t CrossTables::meeting_count(int ka, int kb, std::uint32_t rb) const {
    return data(ka, kb).meeting.at(rb);
}

bool CrossTables::cross_intersecting(int ka, std::uint32_t ra, int kb, std::uint32_t rb) const {
    return rb <= cap(ka, kb, ra);
}

bool CrossTables::maximal_pair(int ka, std::uint32_t ra, int kb, std::uint32_t rb) const {
    return cross_intersecting(ka, ra, kb, rb) && meeting_count(ka, kb, rb) == ra && meeting_count(kb, ka, ra) == rb;
}

bool families_cross_intersecting_gold(const KSubset& id_a, int ka, const KSubset& id_b, int kb) {
    const int n = id_a.ground();
    if (id_b.ground() != n) {
        throw std::invalid_argument("IDs live on different grounds");
    }
    const std::uint64_t ra = lex_initial_count_u64(id_a, ka);
    const std::uint64_t rb = lex_initial_count_u64(id_b, kb);
    if (ra == 0 || rb == 0) {
        return true;
    }
    const KSubset first_a = unrank(n, ka, std::uint64_t{1});
    const KSubset first_b = unrank(n, kb, std::uint64_t{1});
    KSubset a = first_a;
    for (std::uint64_t i = 1; i <= ra; ++i) {
        KSubset b = first_b;
        for (std::uint64_t j = 1; j <= rb; ++j) {
            if ((a.mask() & b.mask()) == 0) {
                return false;
            }
            if (j < rb) {
                b = *successor(b);
            }
        }
        if (i < ra) {
            a = *successor(a);
        }
    }
    return true;
}

bool families_cross_intersecting(const KSubset& id_a, int ka, const KSubset& id_b, int kb) {
    const int n = id_a.ground();
    if (id_b.ground() != n) {
        throw std::invalid_argument("IDs live on different grounds");
    }
    const std::uint64_t ra = lex_initial_count_u64(id_a, ka);
    const std::uint64_t rb = lex_initial_count_u64(id_b, kb);
    if (ra == 0 || rb == 0 || ka + kb > n) {
        return true;
    }
    const KSubset last_a = unrank(n, ka, ra);
    const KSubset last_b = unrank(n, kb, rb);
    try {
        return lex_precedes(last_b, k_partner(last_a, kb));
    } catch (const std::domain_error&) {
        return false;
    }
}

Count SystemIDs::total_size() const {
    Count total = 0;
    for (int i = 1; i <= params.t(); ++i) {
        total += lex_initial_count(ids.at(i - 1), params.k(i));
    }
    return total;
}

std::string SystemIDs::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += ids[i].to_string();
    }
    return out + ")";
}

std::uint64_t search_space(const Params& params) {
    std::uint64_t product = 1;
    for (int k : params.ks) {
        const std::uint64_t c = binom_u64(params.n, k);
        if (c != 0 && product > std::numeric_limits<std::uint64_t>::max() / c) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        product *= c;
    }
    return product;
}

namespace {

using Clock = std::chrono::steady_clock;

struct SharedState {
    std::atomic<std::uint64_t> best{0};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> abort{false};
    std::uint64_t max_nodes = 0;
    double max_seconds = 0.0;
    Clock::time_point start;
};

class Searcher {
public:
    Searcher(const std::vector<std::uint32_t>& sizes, const std::vector<std::vector<const std::vector<std::uint32_t>*>>& caps,
             SharedState& shared)
        : t_(static_cast<int>(sizes.size())), caps_(caps), shared_(shared), up_(t_, std::vector<std::uint32_t>(t_)),
          chosen_(t_) {
        for (int j = 0; j < t_; ++j) {
            up_[0][j] = sizes[j];
        }
    }

    void run_root(std::uint32_t r0) {
        const std::uint32_t saved = up_[0][0];
        up_[0][0] = r0;
        visit(0, 0, true);
        up_[0][0] = saved;
    }

    std::uint64_t local_best() const { return best_; }
    const std::vector<std::vector<std::uint32_t>>& hits() const { return hits_; }

private:
    void count_node() {
        if (++pending_ < std::min<std::uint64_t>(4096, shared_.max_nodes)) {
            return;
        }
        const std::uint64_t total = shared_.nodes.fetch_add(pending_) + pending_;
        pending_ = 0;
        if (total > shared_.max_nodes) {
            shared_.abort = true;
        }
        if (shared_.max_seconds > 0.0) {
            const double elapsed = std::chrono::duration<double>(Clock::now() - shared_.start).count();
            if (elapsed > shared_.max_seconds) {
                shared_.abort = true;
            }
        }
    }

    void record(std::uint64_t total) {
        std::uint64_t global = shared_.best.load();
        while (total > global && !shared_.best.compare_exchange_weak(global, total)) {
        }
        if (total < shared_.best.load()) {
            return;
        }
        if (total > best_) {
            best_ = total;
            hits_.clear();
        }
        if (total == best_) {
            hits_.push_back(chosen_);
        }
    }

    // single_root: only the value already stored in up_[level][level] is tried.
    void visit(int level, std::uint64_t partial, bool single_root = false) {
        if (shared_.abort) {
            return;
        }
        auto& up = up_[level];
        if (level == t_ - 1) {
            count_node();
            chosen_[level] = up[level];
            record(partial + up[level]);
            return;
        }
        const std::uint32_t top = up[level];
        const std::uint32_t bottom = single_root ? top : 1;
        for (std::uint32_t r = top; r >= bottom && r >= 1; --r) {
            count_node();
            if (shared_.abort) {
                return;
            }
            auto& next = up_[level + 1];
            std::uint64_t rest = 0;
            bool feasible = true;
            for (int j = level + 1; j < t_; ++j) {
                next[j] = std::min(up[j], (*caps_[level][j])[r]);
                if (next[j] == 0) {
                    feasible = false;
                    break;
                }
                rest += next[j];
            }
            if (!feasible) {
                continue;
            }
            if (partial + r + rest < shared_.best.load(std::memory_order_relaxed)) {
                continue;
            }
            chosen_[level] = r;
            visit(level + 1, partial + r);
            if (r == 1) {
                break;
            }
        }
    }

public:
    void flush() {
        if (shared_.nodes.fetch_add(pending_) + pending_ > shared_.max_nodes) {
            shared_.abort = true;
        }
        pending_ = 0;
    }

private:
    int t_;
    const std::vector<std::vector<const std::vector<std::uint32_t>*>>& caps_;
    SharedState& shared_;
    std::vector<std::vector<std::uint32_t>> up_;
    std::vector<std::uint32_t> chosen_;
    std::uint64_t best_ = 0;
    std::uint64_t pending_ = 0;
    std::vector<std::vector<std::uint32_t>> hits_;
};

}  // namespace

MaxResult exact_max(const Params& params, const SearchLimits& limits) {
    params.validate();
    require_oracle_ground(params.n);
    const CrossTables tables(params.n);
    return exact_max(params, tables, limits);
}

MaxResult exact_max(const Params& params, const CrossTables& tables, const SearchLimits& limits) {
    params.validate();
    if (tables.ground() != params.n) {
        throw std::invalid_argument("cross tables built for a different ground");
    }
    const int t = params.t();
    std::vector<std::uint32_t> sizes(t);
    std::vector<std::vector<const std::vector<std::uint32_t>*>> caps(t, std::vector<const std::vector<std::uint32_t>*>(t));
    for (int i = 0; i < t; ++i) {
        sizes[i] = tables.table().count(params.ks[i]);
        for (int j = i + 1; j < t; ++j) {
            caps[i][j] = &tables.caps(params.ks[i], params.ks[j]);
        }
    }

    SharedState shared;
    shared.max_nodes = limits.max_nodes;
    shared.max_seconds = limits.max_seconds;
    shared.start = Clock::now();

    const unsigned workers = std::max(1u, std::min<unsigned>(limits.threads, sizes[0]));
    std::vector<Searcher> searchers;
    searchers.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        searchers.emplace_back(sizes, caps, shared);
    }
    // Roots from the top down: large first IDs tend to give the incumbent early.
    auto work = [&](unsigned w) {
        std::uint32_t r0 = sizes[0] - w;
        while (true) {
            searchers[w].run_root(r0);
            if (shared.abort || r0 <= workers) {
                break;
            }
            r0 -= workers;
        }
        searchers[w].flush();
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (shared.abort) {
        throw BudgetExceeded("search budget exhausted after " + std::to_string(shared.nodes.load()) + " nodes for (n=" +
                             std::to_string(params.n) + ", ks=" + params.ks_string() + ")");
    }

    const std::uint64_t best = shared.best.load();
    std::vector<std::vector<std::uint32_t>> winners;
    for (const auto& s : searchers) {
        if (s.local_best() == best) {
            winners.insert(winners.end(), s.hits().begin(), s.hits().end());
        }
    }
    std::sort(winners.begin(), winners.end());
    winners.erase(std::unique(winners.begin(), winners.end()), winners.end());

    MaxResult result;
    result.value = best;
    result.nodes = shared.nodes.load();
    for (const auto& ranks : winners) {
        SystemIDs sys{params, {}};
        for (int i = 0; i < t; ++i) {
            sys.ids.push_back(tables.table().subset(params.ks[i], ranks[i]));
        }
        result.extremal.push_back(std::move(sys));
    }
    return result;
}

std::string label_name(ExtremalLabel label) {
    switch (label) {
        case ExtremalLabel::star:
            return "star";
        case ExtremalLabel::kernel:
            return "kernel";
        case ExtremalLabel::exceptional:
            return "exceptional";
        case ExtremalLabel::other:
            break;
    }
    return "other";
}

namespace {

std::optional<KSubset> star_id(int n, int k) {
    KSubset id = KSubset::interval(n, 1, 1).unite(KSubset::interval(n, n - k + 2, n));
    if (id.size() != k) {
        return std::nullopt;
    }
    return id;
}

std::optional<KSubset> meets_id(int n, int k, int kt) {
    KSubset id = KSubset::interval(n, kt, kt).unite(KSubset::interval(n, n - k + 2, n));
    if (id.size() != k) {
        return std::nullopt;
    }
    return id;
}

std::optional<KSubset> contains_id(int n, int k, int kt) {
    KSubset id = KSubset::interval(n, 1, kt).unite(KSubset::interval(n, n - k + kt + 1, n));
    if (id.size() != k) {
        return std::nullopt;
    }
    return id;
}

bool is_exceptional_system(const SystemIDs& sys) {
    const int n = sys.params.n;
    const int a = sys.params.k(1);
    const int b = sys.params.k(3);
    if (sys.ids[0] != sys.ids[1] || sys.ids[2] != sys.ids[3]) {
        return false;
    }
    const std::uint64_t r3 = lex_initial_count_u64(sys.ids[2], b);
    const std::uint64_t r1 = lex_initial_count_u64(sys.ids[0], a);
    if (r3 == 0 || r1 == 0) {
        return false;
    }
    if (!families_cross_intersecting_gold(sys.ids[2], b, sys.ids[2], b)) {
        return false;
    }
    // F_1 must be exactly the a-sets whose complement (a b-set) lies outside F_3.
    const std::uint64_t full = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    KSubset x = unrank(n, a, std::uint64_t{1});
    const std::uint64_t total = binom_u64(n, a);
    for (std::uint64_t r = 1; r <= total; ++r) {
        const KSubset comp = KSubset::from_mask(n, full & ~x.mask());
        const bool comp_in_f3 = lex_precedes(comp, sys.ids[2]);
        const bool in_f1 = r <= r1;
        if (in_f1 == comp_in_f3) {
            return false;
        }
        if (r < total) {
            x = *successor(x);
        }
    }
    return true;
}

bool matches_kernel(const SystemIDs& sys, const std::vector<bool>& meets) {
    const int n = sys.params.n;
    const int kt = sys.params.k_last();
    for (int i = 1; i <= sys.params.t(); ++i) {
        const int k = sys.params.k(i);
        const auto want = meets[i - 1] ? meets_id(n, k, kt) : contains_id(n, k, kt);
        if (!want || *want != sys.ids[i - 1]) {
            return false;
        }
    }
    return true;
}

}  // namespace

ExtremalClass classify_extremal(const SystemIDs& sys) {
    const Params& p = sys.params;
    p.validate();
    if (static_cast<int>(sys.ids.size()) != p.t()) {
        throw std::invalid_argument("ID count differs from t");
    }
    const int n = p.n;
    const int t = p.t();
    if (p.is_exceptional() && is_exceptional_system(sys)) {
        return {ExtremalLabel::exceptional, sys.ids[2]};
    }
    bool star = true;
    for (int i = 1; i <= t && star; ++i) {
        const auto want = star_id(n, p.k(i));
        star = want && *want == sys.ids[i - 1];
    }
    if (star) {
        return {ExtremalLabel::star, KSubset(n, {1})};
    }
    const KSubset kernel_set = KSubset::interval(n, 1, p.k_last());
    if (p.is_mixed()) {
        std::vector<bool> meets(t, false);
        meets[0] = meets[1] = true;
        if (matches_kernel(sys, meets)) {
            return {ExtremalLabel::kernel, kernel_set};
        }
    } else {
        for (int i = 1; i <= t && p.k(i) == p.k(1); ++i) {
            std::vector<bool> meets(t, false);
            meets[i - 1] = true;
            if (matches_kernel(sys, meets)) {
                return {ExtremalLabel::kernel, kernel_set};
            }
        }
    }
    return {ExtremalLabel::other, std::nullopt};
}

std::vector<Count> f_profile(const Params& params) {
    params.validate();
    if (!params.is_mixed()) {
        throw std::invalid_argument("profile needs the mixed window k1+k3 <= n < k1+k2");
    }
    const Regime regime = Regime::derive(params);
    std::vector<Count> values;
    for (const KSubset& r1 : id_window(params, 1).members()) {
        values.push_back(system_size(r1, params, regime));
    }
    return values;
}

std::string verdict_name(ProfileVerdict verdict) {
    switch (verdict) {
        case ProfileVerdict::endpoint_max:
            return "endpoint-max";
        case ProfileVerdict::exceptional_flat:
            return "exceptional-flat";
        case ProfileVerdict::interior_max:
            break;
    }
    return "interior-max";
}

ProfileVerdict profile_verdict(const std::vector<Count>& profile) {
    if (profile.empty()) {
        throw std::invalid_argument("empty profile");
    }
    const Count top = *std::max_element(profile.begin(), profile.end());
    if (profile.size() > 1 && std::all_of(profile.begin(), profile.end(), [&](const Count& v) { return v == top; })) {
        return ProfileVerdict::exceptional_flat;
    }
    for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
        if (profile[i] == top) {
            return ProfileVerdict::interior_max;
        }
    }
    return ProfileVerdict::endpoint_max;
}

namespace {

int uniform_size(const std::vector<KSubset>& family, int n, const char* name) {
    if (family.empty()) {
        throw std::invalid_argument(std::string("family ") + name + " is empty");
    }
    const int k = family.front().size();
    std::vector<std::uint64_t> masks;
    for (const KSubset& s : family) {
        if (s.ground() != n || s.size() != k) {
            throw std::invalid_argument(std::string("family ") + name + " is not uniform on [n]");
        }
        masks.push_back(s.mask());
    }
    std::sort(masks.begin(), masks.end());
    if (std::adjacent_find(masks.begin(), masks.end()) != masks.end()) {
        throw std::invalid_argument(std::string("family ") + name + " repeats a set");
    }
    return k;
}

}  // namespace

bool kk_compress_check(int n, const std::vector<KSubset>& family_a, const std::vector<KSubset>& family_b) {
    const int ka = uniform_size(family_a, n, "A");
    const int kb = uniform_size(family_b, n, "B");
    for (const KSubset& a : family_a) {
        for (const KSubset& b : family_b) {
            if ((a.mask() & b.mask()) == 0) {
                throw std::invalid_argument("input families are not cross-intersecting");
            }
        }
    }
    const KSubset id_a = unrank(n, ka, static_cast<std::uint64_t>(family_a.size()));
    const KSubset id_b = unrank(n, kb, static_cast<std::uint64_t>(family_b.size()));
    return families_cross_intersecting_gold(id_a, ka, id_b, kb);
}

bool maximality_bruteforce(const KSubset& id_a, int ka, const KSubset& id_b, int kb) {
    const int n = id_a.ground();
    if (id_b.ground() != n || ka < 1 || kb < 1 || ka + kb > n) {
        throw std::invalid_argument("maximality check needs a common ground and kA + kB <= n");
    }
    require_oracle_ground(n);
    const std::uint64_t ra = lex_initial_count_u64(id_a, ka);
    const std::uint64_t rb = lex_initial_count_u64(id_b, kb);
    if (ra == 0 || rb == 0) {
        return false;
    }
    const CrossTables tables(n);
    return tables.maximal_pair(ka, static_cast<std::uint32_t>(ra), kb, static_cast<std::uint32_t>(rb));
}

}  // namespace crossint
