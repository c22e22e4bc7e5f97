#include "apollonian/roots.hpp"

#include "apollonian/group.hpp"
#include "apollonian/numtheory.hpp"

#include <algorithm>
#include <numeric>

namespace apollonian {

std::int64_t BinaryForm::discriminant() const {
    return checked::sub(checked::mul(checked::mul(4, b), b), checked::mul(checked::mul(4, a), c));
}

bool BinaryForm::primitive() const {
    const auto g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
    return g == 1;
}

std::vector<RootRecord> enumerate_roots(std::int64_t n) {
    if (n < 0) throw validation_error("n must be nonnegative");
    std::vector<RootRecord> out;
    if (n == 0) {
        // the unbounded packing; its degenerate form is [0,0,1]
        RootRecord r;
        r.root = Quadruple(0, 0, 1, 1);
        r.param = {0, 0, 1, 0};
        r.form = {0, 0, 1};
        out.push_back(r);
        return out;
    }
    for (std::int64_t m = 0; 3 * m * m <= n * n; ++m) {
        const std::int64_t big = checked::add(checked::mul(n, n), checked::mul(m, m));
        for (std::int64_t d1 : nt::divisors(big)) {
            if (d1 < 2 * m) continue;
            if (d1 > big / d1) break;
            const std::int64_t d2 = big / d1;
            if (std::gcd(std::gcd(n, d1), d2) != 1) continue;
            RootRecord r;
            r.param = {-n, d1, d2, m};
            r.root = Quadruple(-n, checked::add(d1, n), checked::add(d2, n),
                               checked::add(checked::sub(checked::add(d1, d2), 2 * m), n));
            r.form = {d1, m, d2};
            out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RootRecord& a, const RootRecord& b) { return a.root.k < b.root.k; });
    return out;
}

std::int64_t count_roots(std::int64_t n) {
    if (n < 0) throw validation_error("n must be nonnegative");
    if (n <= 1) return 1;
    __int128 num = n;   // n * prod (p - chi(p))
    __int128 den = 4;   // 4 * prod p
    int omega = 0;
    for (const auto& [p, e] : nt::factorize(n)) {
        num *= (p - nt::chi4(p));
        den *= p;
        ++omega;
    }
    const int delta = (n % 4 == 2) ? 1 : 0;
    // N = num/den + 2^(omega - delta - 1), over the common denominator den * 2^(delta+1)
    const __int128 total = num * (__int128{1} << (delta + 1)) + den * (__int128{1} << omega);
    const __int128 scale = den * (__int128{1} << (delta + 1));
    if (total % scale != 0) throw error("class-number formula did not divide exactly");
    return static_cast<std::int64_t>(total / scale);
}

std::int64_t class_number(std::int64_t n) {
    if (n < 1) throw validation_error("n must be positive");
    if (n == 1) return 1;
    __int128 num = n;
    __int128 den = 2;
    for (const auto& [p, e] : nt::factorize(n)) {
        num *= (p - nt::chi4(p));
        den *= p;
    }
    if (num % den != 0) throw error("class-number formula did not divide exactly");
    return static_cast<std::int64_t>(num / den);
}

std::int64_t ambiguous_count(std::int64_t n) {
    if (n <= 1) throw validation_error("ambiguous-form count is defined for n > 1");
    const int omega = static_cast<int>(nt::factorize(n).size());
    const int shift = (n % 4 == 2) ? omega - 1 : omega;
    return std::int64_t{1} << shift;
}

BinaryForm to_binary_form(const Quadruple& root) {
    if (!is_root(root)) throw validation_error("not a root quadruple");
    const Quadruple s = root.sorted();
    const std::int64_t n = -s[0];
    BinaryForm f;
    f.a = checked::add(s[0], s[1]);
    f.b = checked::sub(checked::add(s[0], checked::add(s[1], s[2])), s[3]);
    if (f.b % 2 != 0) throw error("odd middle coefficient; input was not a Descartes quadruple");
    f.b /= 2;
    f.c = checked::add(s[0], s[2]);
    if (f.discriminant() != checked::mul(-4, checked::mul(n, n)) || !f.reduced())
        throw error("form map produced a non-reduced form");
    return f;
}

std::vector<BinaryForm> enumerate_reduced_forms(std::int64_t n) {
    if (n < 1) throw validation_error("n must be positive");
    std::vector<BinaryForm> out;
    for (std::int64_t b = 0; 3 * b * b <= n * n; ++b) {
        const std::int64_t big = checked::add(checked::mul(n, n), checked::mul(b, b));
        for (std::int64_t a : nt::divisors(big)) {
            if (a < 2 * b) continue;
            if (a > big / a) break;
            const std::int64_t c = big / a;
            BinaryForm f{a, b, c};
            if (!f.primitive()) continue;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace apollonian
