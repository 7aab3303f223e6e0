#include "crossint/bounds.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "crossint/partners.hpp"

namespace crossint {

namespace {

std::string describe(const Params& p) { return "(n=" + std::to_string(p.n) + ", ks=" + p.ks_string() + ")"; }

Count star_sum(const Params& p) {
    Count total = 0;
    for (int k : p.ks) {
        total += binom(p.n - 1, k - 1);
    }
    return total;
}

void require_window(const KSubset& r1, const Params& params) {
    if (!id_window(params, 1).contains(r1)) {
        throw std::invalid_argument(r1.to_string() + " lies outside the first ID window for " + describe(params));
    }
}

}  // namespace

BoundBranches lambda_values(const Params& params) {
    params.validate();
    if (!params.is_mixed()) {
        throw std::invalid_argument("mixed window k1+k3 <= n < k1+k2 violated for " + describe(params));
    }
    const int n = params.n;
    const int kt = params.k_last();
    Count kernel = 0;
    for (int i = 1; i <= params.t(); ++i) {
        const int ki = params.k(i);
        if (i <= 2) {
            kernel += binom(n, ki) - binom(n - kt, ki);
        } else {
            kernel += binom(n - kt, ki - kt);
        }
    }
    return BoundBranches{star_sum(params), kernel};
}

Count mixed_bound(const Params& params) { return lambda_values(params).max(); }

BoundBranches nonmixed_branches(const Params& params) {
    params.validate();
    if (!params.is_nonmixed()) {
        throw std::invalid_argument("n >= k1+k2 violated for " + describe(params));
    }
    const int n = params.n;
    const int kt = params.k_last();
    Count kernel = binom(n, params.k(1)) - binom(n - kt, params.k(1));
    for (int i = 2; i <= params.t(); ++i) {
        kernel += binom(n - kt, params.k(i) - kt);
    }
    return BoundBranches{star_sum(params), kernel};
}

Count nonmixed_bound(const Params& params) { return nonmixed_branches(params).max(); }

Count two_family_bound(int n, int k, int l) {
    if (l < 1 || k < l || n < k + l) {
        throw std::invalid_argument("two-family bound needs k >= l >= 1 and n >= k + l");
    }
    return binom(n, k) - binom(n - l, k) + 1;
}

Count equal_size_bound(int n, int k, int t) {
    if (k < 1 || t < 2 || n < 2 * k) {
        throw std::invalid_argument("equal-size bound needs k >= 1, t >= 2 and n >= 2k");
    }
    const Count hilton_milner_like = binom(n, k) - binom(n - k, k) + (t - 1);
    const Count stars = Count(t) * binom(n - 1, k - 1);
    return std::max(hilton_milner_like, stars);
}

WeightVector::WeightVector(std::vector<Rational> weights) : weights_(std::move(weights)) {
    for (const Rational& w : weights_) {
        if (w <= 0) {
            throw std::invalid_argument("weights must be positive");
        }
    }
}

WeightVector WeightVector::unit(int t) { return WeightVector(std::vector<Rational>(t, Rational(1))); }

Rational weighted_bound(const Params& params, const WeightVector& d, int i) {
    params.validate();
    const int t = params.t();
    if (d.size() != t) {
        throw std::invalid_argument("weight vector length differs from t");
    }
    const int n = params.n;
    const int ki = params.k(i);
    int mi = n + 1;
    for (int j = 1; j <= t; ++j) {
        if (j == i) {
            continue;
        }
        if (n < ki + params.k(j)) {
            throw std::invalid_argument("weighted bound needs n >= k_i + k_j for all j != i");
        }
        mi = std::min(mi, params.k(j));
    }
    Rational kernel = d[i] * Rational(binom(n, ki)) - d[i] * Rational(binom(n - mi, ki));
    Rational star = 0;
    for (int j = 1; j <= t; ++j) {
        star += d[j] * Rational(binom(n - 1, params.k(j) - 1));
        if (j != i) {
            kernel += d[j] * Rational(binom(n - mi, params.k(j) - mi));
        }
    }
    return std::max(kernel, star);
}

Count kernel_value(const Params& params, int i, int s) {
    params.validate();
    if (!params.is_nonmixed()) {
        throw std::invalid_argument("kernel value needs n >= k1+k2 for " + describe(params));
    }
    const int t = params.t();
    int mi = params.n + 1;
    for (int j = 1; j <= t; ++j) {
        if (j != i) {
            mi = std::min(mi, params.k(j));
        }
    }
    if (s < 1 || s > mi) {
        throw std::invalid_argument("kernel size s=" + std::to_string(s) + " outside [1, " + std::to_string(mi) + "]");
    }
    const int n = params.n;
    Count value = binom(n, params.k(i)) - binom(n - s, params.k(i));
    for (int j = 1; j <= t; ++j) {
        if (j != i) {
            value += binom(n - s, params.k(j) - s);
        }
    }
    return value;
}

std::vector<KSubset> forced_ids(const KSubset& r1, const Params& params, const Regime& regime) {
    require_window(r1, params);
    std::vector<KSubset> ids;
    ids.reserve(params.t());
    ids.push_back(r1);
    for (int i = 2; i <= params.t(); ++i) {
        if (i <= regime.s) {
            ids.push_back(corresponding_k_set(r1, params.k(i)));
        } else {
            ids.push_back(k_partner(r1, params.k(i)));
        }
    }
    return ids;
}

Count system_size(const KSubset& r1, const Params& params, const Regime& regime) {
    const std::vector<KSubset> ids = forced_ids(r1, params, regime);
    Count total = 0;
    for (int i = 1; i <= params.t(); ++i) {
        total += lex_initial_count(ids[i - 1], params.k(i));
    }
    return total;
}

IncrementReport increments(const KSubset& r1, const KSubset& r1p, const Params& params, const Regime& regime) {
    if (!lex_precedes(r1, r1p)) {
        throw std::invalid_argument("increments need " + r1.to_string() + " <=lex " + r1p.to_string());
    }
    const std::vector<KSubset> before = forced_ids(r1, params, regime);
    const std::vector<KSubset> after = forced_ids(r1p, params, regime);
    IncrementReport report;
    report.gamma = 0;
    report.delta = 0;
    for (int i = 1; i <= params.t(); ++i) {
        const Count grown = lex_initial_count(after[i - 1], params.k(i)) - lex_initial_count(before[i - 1], params.k(i));
        if (i <= regime.s) {
            report.alpha.push_back(grown);
            report.gamma += grown;
        } else {
            report.delta -= grown;
        }
    }
    return report;
}

Count alpha_closed_form(const KSubset& r1p, int i, const Params& params, const Regime& regime) {
    require_window(r1p, params);
    const IdWindow window = id_window(params, 1);
    if (r1p == window.lo) {
        throw std::invalid_argument(r1p.to_string() + " has no predecessor inside the first ID window");
    }
    if (i < 1 || i > regime.s) {
        throw std::out_of_range("alpha index must lie in [1, s]");
    }
    const TailSplit split = tail_decompose(r1p);
    return binom(split.ell, params.k(i) - split.head.size());
}

Count beta_closed_form(int q, const Params& params, const Regime& regime) {
    const int n = params.n;
    const int k1 = params.k(1);
    Count total = 0;
    for (int j = regime.s + 1; j <= params.t(); ++j) {
        total += binom(n - q, params.k(j) - (q - k1));
    }
    return total;
}

}  // namespace crossint
