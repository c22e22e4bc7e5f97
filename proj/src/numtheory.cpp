#include "apollonian/numtheory.hpp"

#include "apollonian/core.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace apollonian::nt {

namespace {

std::vector<std::int64_t> g_primes;
std::int64_t g_sieved = 0;
std::mutex g_mutex;

// caller holds g_mutex
void grow_primes(std::int64_t bound) {
    bound = std::max<std::int64_t>(bound, 1024);
    if (bound <= g_sieved) return;
    bound = std::max(bound, g_sieved * 2);
    std::vector<bool> comp(static_cast<std::size_t>(bound) + 1, false);
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p <= bound; ++p) {
        if (comp[static_cast<std::size_t>(p)]) continue;
        primes.push_back(p);
        for (std::int64_t q = p * p; q <= bound; q += p) comp[static_cast<std::size_t>(q)] = true;
    }
    g_primes = std::move(primes);
    g_sieved = bound;
}

std::vector<std::pair<std::int64_t, int>> factorize_locked(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    grow_primes(isqrt(n) + 1);
    for (auto p : g_primes) {
        if (p * p > n) break;
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

} // namespace

std::vector<std::int64_t> primes_copy_upto(std::int64_t bound) {
    std::lock_guard<std::mutex> lock(g_mutex);
    grow_primes(bound);
    auto end = std::upper_bound(g_primes.begin(), g_primes.end(), bound);
    return std::vector<std::int64_t>(g_primes.begin(), end);
}

std::int64_t isqrt(std::int64_t n) {
    if (n < 0) throw validation_error("isqrt of a negative number");
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    const auto sq = [](std::int64_t x) { return static_cast<__int128>(x) * x; };
    while (r > 0 && sq(r) > n) --r;
    while (sq(r + 1) <= n) ++r;
    return r;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw validation_error("factorize needs a positive integer");
    std::lock_guard<std::mutex> lock(g_mutex);
    return factorize_locked(n);
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t sz = out.size();
        std::int64_t pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int mobius(std::int64_t n) {
    int sign = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

} // namespace apollonian::nt
