#include "crossint/subsets.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace crossint {

namespace {

std::uint64_t bit_of(int element) { return std::uint64_t{1} << (element - 1); }

std::uint64_t full_mask(int ground) {
    return ground >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << ground) - 1;
}

void check_ground(int ground) {
    if (ground < 0 || ground > kMaxGround) {
        throw std::invalid_argument("ground size must lie in [0, 64], got " + std::to_string(ground));
    }
}

void check_same_ground(const KSubset& a, const KSubset& b) {
    if (a.ground() != b.ground()) {
        throw std::invalid_argument("ground mismatch: " + std::to_string(a.ground()) + " vs " +
                                    std::to_string(b.ground()));
    }
}

std::uint64_t mask_from_elements(int ground, std::span<const int> elements) {
    std::uint64_t mask = 0;
    int previous = 0;
    for (int e : elements) {
        if (e < 1 || e > ground) {
            throw std::invalid_argument("element " + std::to_string(e) + " outside [1, " +
                                        std::to_string(ground) + "]");
        }
        if (e <= previous) {
            throw std::invalid_argument("elements must be strictly increasing");
        }
        previous = e;
        mask |= bit_of(e);
    }
    return mask;
}

}  // namespace

KSubset::KSubset(int ground, std::initializer_list<int> elements)
    : KSubset(ground, std::span<const int>(elements.begin(), elements.size())) {}

KSubset::KSubset(int ground, std::span<const int> elements) : ground_(ground) {
    check_ground(ground);
    mask_ = mask_from_elements(ground, elements);
}

KSubset KSubset::from_mask(int ground, std::uint64_t mask) {
    check_ground(ground);
    if ((mask & ~full_mask(ground)) != 0) {
        throw std::invalid_argument("mask has elements outside [1, " + std::to_string(ground) + "]");
    }
    KSubset s;
    s.ground_ = ground;
    s.mask_ = mask;
    return s;
}

KSubset KSubset::interval(int ground, int first, int last) {
    check_ground(ground);
    if (first > last) {
        return empty(ground);
    }
    if (first < 1 || last > ground) {
        throw std::invalid_argument("interval [" + std::to_string(first) + ", " + std::to_string(last) +
                                    "] outside [1, " + std::to_string(ground) + "]");
    }
    std::uint64_t upto_last = full_mask(last);
    std::uint64_t below_first = full_mask(first - 1);
    return from_mask(ground, upto_last & ~below_first);
}

KSubset KSubset::empty(int ground) { return from_mask(ground, 0); }

int KSubset::size() const { return std::popcount(mask_); }

bool KSubset::contains(int element) const {
    return element >= 1 && element <= ground_ && (mask_ & bit_of(element)) != 0;
}

int KSubset::min() const {
    if (mask_ == 0) {
        throw std::logic_error("min of empty set");
    }
    return std::countr_zero(mask_) + 1;
}

int KSubset::max() const {
    if (mask_ == 0) {
        throw std::logic_error("max of empty set");
    }
    return 64 - std::countl_zero(mask_);
}

std::vector<int> KSubset::elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
        out.push_back(std::countr_zero(m) + 1);
    }
    return out;
}

KSubset KSubset::unite(const KSubset& other) const {
    check_same_ground(*this, other);
    return from_mask(ground_, mask_ | other.mask_);
}

KSubset KSubset::minus(const KSubset& other) const {
    check_same_ground(*this, other);
    return from_mask(ground_, mask_ & ~other.mask_);
}

KSubset KSubset::intersect(const KSubset& other) const {
    check_same_ground(*this, other);
    return from_mask(ground_, mask_ & other.mask_);
}

bool KSubset::is_superset_of(const KSubset& other) const {
    check_same_ground(*this, other);
    return (mask_ & other.mask_) == other.mask_;
}

std::string KSubset::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int e : elements()) {
        if (!first) {
            out += ',';
        }
        out += std::to_string(e);
        first = false;
    }
    out += '}';
    return out;
}

KSubset parse_subset(int ground, const std::string& text) {
    std::string body;
    for (char c : text) {
        if (c != '{' && c != '}' && c != ' ') {
            body += c;
        }
    }
    std::vector<int> elements;
    std::stringstream in(body);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t used = 0;
        int value = std::stoi(item, &used);
        if (used != item.size()) {
            throw std::invalid_argument("bad set element '" + item + "'");
        }
        elements.push_back(value);
    }
    std::sort(elements.begin(), elements.end());
    return KSubset(ground, elements);
}

// ---------------------------------------------------------------------------

int Params::k(int i) const {
    if (i < 1 || i > t()) {
        throw std::out_of_range("family index " + std::to_string(i) + " outside [1, " + std::to_string(t()) +
                                "]");
    }
    return ks[i - 1];
}

void Params::validate() const {
    if (n < 1) {
        throw std::invalid_argument("n must be positive");
    }
    if (t() < 2) {
        throw std::invalid_argument("need at least two families");
    }
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (ks[i] < 1 || ks[i] > n) {
            throw std::invalid_argument("family size " + std::to_string(ks[i]) + " outside [1, n]");
        }
        if (i > 0 && ks[i] > ks[i - 1]) {
            throw std::invalid_argument("family sizes must be non-increasing");
        }
    }
}

bool Params::is_mixed() const { return t() >= 3 && ks[0] + ks[2] <= n && n < ks[0] + ks[1]; }

bool Params::is_nonmixed() const { return t() >= 2 && n >= ks[0] + ks[1]; }

bool Params::is_exceptional() const {
    return t() == 4 && is_mixed() && ks[0] == ks[1] && ks[2] == ks[3] && n == ks[0] + ks[2];
}

std::string Params::ks_string() const {
    std::string out;
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(ks[i]);
    }
    return out;
}

std::optional<Regime> Regime::try_derive(const Params& params) {
    const int t = params.t();
    const int n = params.n;
    int s = 0;
    for (int cand = 1; cand <= t - 1; ++cand) {
        if (params.k(1) + params.k(cand + 1) <= n) {
            s = cand;
            break;
        }
    }
    if (s == 0) {
        return std::nullopt;
    }
    if (s >= 2 && !(n < params.k(s - 1) + params.k(s))) {
        return std::nullopt;
    }
    int s_prime = 1;
    while (s_prime < t && params.k(s_prime + 1) == params.k(1)) {
        ++s_prime;
    }
    if (s_prime > s) {
        return std::nullopt;
    }
    return Regime{s, s_prime};
}

Regime Regime::derive(const Params& params) {
    auto regime = try_derive(params);
    if (!regime) {
        throw std::invalid_argument("parameters (n=" + std::to_string(params.n) + ", ks=" + params.ks_string() +
                                    ") admit no free/non-free split");
    }
    return *regime;
}

// ---------------------------------------------------------------------------

bool lex_precedes_mask(std::uint64_t a, std::uint64_t b) {
    if ((a & b) == b) {
        return true;
    }
    const std::uint64_t only_a = a & ~b;
    const std::uint64_t only_b = b & ~a;  // nonzero: a is not a superset of b
    if (only_a == 0) {
        return false;
    }
    return std::countr_zero(only_a) < std::countr_zero(only_b);
}

bool lex_precedes(const KSubset& a, const KSubset& b) {
    check_same_ground(a, b);
    return lex_precedes_mask(a.mask(), b.mask());
}

bool lex_strictly_precedes(const KSubset& a, const KSubset& b) { return a != b && lex_precedes(a, b); }

std::optional<KSubset> successor(const KSubset& r) {
    if (r.is_empty()) {
        throw std::invalid_argument("successor of the empty set");
    }
    const int n = r.ground();
    std::vector<int> e = r.elements();
    const int k = static_cast<int>(e.size());
    for (int i = k - 1; i >= 0; --i) {
        if (e[i] < n - k + i + 1) {
            ++e[i];
            for (int j = i + 1; j < k; ++j) {
                e[j] = e[j - 1] + 1;
            }
            return KSubset(n, e);
        }
    }
    return std::nullopt;
}

std::optional<KSubset> predecessor(const KSubset& r) {
    if (r.is_empty()) {
        throw std::invalid_argument("predecessor of the empty set");
    }
    const int n = r.ground();
    std::vector<int> e = r.elements();
    const int k = static_cast<int>(e.size());
    for (int i = k - 1; i >= 0; --i) {
        const int floor = i == 0 ? 0 : e[i - 1];
        if (e[i] > floor + 1) {
            --e[i];
            for (int j = i + 1; j < k; ++j) {
                e[j] = n - k + j + 1;
            }
            return KSubset(n, e);
        }
    }
    return std::nullopt;
}

std::uint64_t lex_initial_count_u64(const KSubset& r, int k) {
    const int n = r.ground();
    if (k < 1 || k > n) {
        throw std::invalid_argument("size k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    // F <=lex R iff F = R, or the least element of the symmetric difference lies in F.
    // Branch at each x not in R: F agrees with R below x and contains x.
    std::uint64_t total = r.size() == k ? 1 : 0;
    int taken_below = 0;
    for (int x = 1; x <= n; ++x) {
        if (r.contains(x)) {
            ++taken_below;
            continue;
        }
        const int rest = k - taken_below - 1;
        if (rest >= 0) {
            total += binom_u64(n - x, rest);
        }
    }
    return total;
}

Count lex_initial_count(const KSubset& r, int k) { return Count(lex_initial_count_u64(r, k)); }

KSubset unrank(int n, int k, std::uint64_t rank) {
    check_ground(n);
    if (k < 1 || k > n) {
        throw std::invalid_argument("size k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    const std::uint64_t total = binom_u64(n, k);
    if (rank < 1 || rank > total) {
        throw std::out_of_range("rank " + std::to_string(rank) + " outside [1, " + std::to_string(total) + "]");
    }
    std::vector<int> e;
    e.reserve(k);
    int x = 1;
    for (int pos = 1; pos <= k; ++pos) {
        for (;; ++x) {
            const std::uint64_t with_x = binom_u64(n - x, k - pos);
            if (rank <= with_x) {
                e.push_back(x);
                ++x;
                break;
            }
            rank -= with_x;
        }
    }
    return KSubset(n, e);
}

KSubset unrank(int n, int k, const Count& rank) {
    auto small = to_u64(rank);
    if (!small) {
        throw std::out_of_range("rank " + rank.str() + " out of range");
    }
    return unrank(n, k, *small);
}

int tail_length(const KSubset& f) {
    const int n = f.ground();
    int ell = 0;
    while (ell < n && f.contains(n - ell)) {
        ++ell;
    }
    return ell;
}

KSubset top_run(int ground, int ell) { return KSubset::interval(ground, ground - ell + 1, ground); }

TailSplit tail_decompose(const KSubset& f) {
    const int ell = tail_length(f);
    return TailSplit{f.minus(top_run(f.ground(), ell)), ell};
}

KSubset head_of(const KSubset& f) { return tail_decompose(f).head; }

namespace {

// Window start a + 1 of the last c elements when they form a run, else nullopt.
std::optional<int> trailing_run_start(const std::vector<int>& e, int c) {
    const int k = static_cast<int>(e.size());
    for (int j = k - c + 1; j < k; ++j) {
        if (e[j] != e[j - 1] + 1) {
            return std::nullopt;
        }
    }
    return e[k - c];
}

std::optional<int> c_sequential_shift(const KSubset& a, const KSubset& b, int c) {
    check_same_ground(a, b);
    if (a.size() != b.size()) {
        throw std::invalid_argument("c-sequential test needs equal sizes");
    }
    const int k = a.size();
    if (c < 1 || c > k) {
        throw std::invalid_argument("c=" + std::to_string(c) + " outside [1, " + std::to_string(k) + "]");
    }
    const std::vector<int> ea = a.elements();
    const std::vector<int> eb = b.elements();
    if (!std::equal(ea.begin(), ea.begin() + (k - c), eb.begin())) {
        return std::nullopt;
    }
    auto start_a = trailing_run_start(ea, c);
    auto start_b = trailing_run_start(eb, c);
    if (!start_a || !start_b || *start_b <= *start_a) {
        return std::nullopt;
    }
    return *start_b - *start_a;
}

}  // namespace

bool is_c_sequential(const KSubset& a, const KSubset& b, int c) { return c_sequential_shift(a, b, c).has_value(); }

bool is_c_sequential_step(const KSubset& a, const KSubset& b, int c) {
    auto shift = c_sequential_shift(a, b, c);
    return shift && *shift == 1;
}

bool IdWindow::contains(const KSubset& r) const {
    return r.size() == lo.size() && lex_precedes(lo, r) && lex_precedes(r, hi);
}

std::vector<KSubset> IdWindow::members() const {
    std::vector<KSubset> out;
    if (!lex_precedes(lo, hi)) {
        return out;
    }
    std::optional<KSubset> cur = lo;
    while (cur) {
        out.push_back(*cur);
        if (*cur == hi) {
            break;
        }
        cur = successor(*cur);
    }
    return out;
}

IdWindow id_window(const Params& params, int i) {
    params.validate();
    const int n = params.n;
    const int ki = params.k(i);
    const int kt = params.k_last();
    IdWindow w;
    const KSubset top = KSubset::interval(n, n - ki + 2, n);
    if (i <= 2) {
        w.lo = KSubset::interval(n, 1, 1).unite(top);
        w.hi = KSubset::interval(n, kt, kt).unite(top);
    } else {
        w.lo = KSubset::interval(n, 1, kt).unite(KSubset::interval(n, n - ki + kt + 1, n));
        w.hi = KSubset::interval(n, 1, 1).unite(top);
    }
    if (w.lo.size() != ki || w.hi.size() != ki) {
        throw std::invalid_argument("ID window for family " + std::to_string(i) + " is degenerate for n=" +
                                    std::to_string(n) + ", ks=" + params.ks_string());
    }
    return w;
}

}  // namespace crossint
