#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace apollonian::nt {

/// Primes up to `bound` (a snapshot; the shared table grows on demand).
std::vector<std::int64_t> primes_copy_upto(std::int64_t bound);

/// (prime, exponent) pairs by trial division against the shared prime table.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Divisors in ascending order.
std::vector<std::int64_t> divisors(std::int64_t n);

int mobius(std::int64_t n);

/// chi_{-4}: 0 on even n, (-1)^((n-1)/2) on odd n.
inline int chi4(std::int64_t n) {
    if (n % 2 == 0) return 0;
    return (n % 4 == 1 || n % 4 == -3) ? 1 : -1;
}

std::int64_t isqrt(std::int64_t n);
inline bool is_square(std::int64_t n) {
    if (n < 0) return false;
    const std::int64_t r = isqrt(n);
    return r * r == n;
}

} // namespace apollonian::nt
