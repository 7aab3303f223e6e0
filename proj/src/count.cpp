#include "crossint/count.hpp"

#include <array>
#include <stdexcept>

namespace crossint {

namespace {

using BinomTable = std::array<std::array<std::uint64_t, 65>, 65>;

BinomTable make_binom_table() {
    BinomTable table{};
    for (int n = 0; n <= 64; ++n) {
        table[n][0] = 1;
        for (int k = 1; k <= n; ++k) {
            table[n][k] = table[n - 1][k - 1] + (k <= n - 1 ? table[n - 1][k] : 0);
        }
    }
    return table;
}

const BinomTable& binom_table() {
    static const BinomTable table = make_binom_table();
    return table;
}

}  // namespace

Count binom(long long n, long long k) {
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    if (n <= 64) {
        return Count(binom_table()[n][k]);
    }
    k = std::min(k, n - k);
    Count result = 1;
    for (long long i = 1; i <= k; ++i) {
        // result * (n - k + i) is always divisible by i at this point.
        result *= (n - k + i);
        result /= i;
    }
    return result;
}

std::uint64_t binom_u64(int n, int k) {
    if (n > 64) {
        throw std::out_of_range("binom_u64: n exceeds 64");
    }
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    return binom_table()[n][k];
}

std::string to_string(const Count& value) { return value.str(); }

std::optional<std::uint64_t> to_u64(const Count& value) {
    if (value < 0 || value > Count(std::numeric_limits<std::uint64_t>::max())) {
        return std::nullopt;
    }
    return value.convert_to<std::uint64_t>();
}

}  // namespace crossint
