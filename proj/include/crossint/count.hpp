#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace crossint {

// Exact family sizes, binomials and bound values. Unbounded, never wraps.
using Count = boost::multiprecision::cpp_int;

// Exact weights for the weighted bound.
using Rational = boost::multiprecision::cpp_rational;

// C(n, k) with the convention C(n, k) = 0 whenever k < 0 or k > n (also for n < 0).
Count binom(long long n, long long k);

// Table-backed C(n, k) for 0 <= n <= 64. Every such value fits in 64 bits.
std::uint64_t binom_u64(int n, int k);

std::string to_string(const Count& value);

// Returns the value when it fits in 64 bits.
std::optional<std::uint64_t> to_u64(const Count& value);

}  // namespace crossint
