#include "apollonian/matrix.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace apollonian {

std::array<std::int64_t, 5> characteristic_polynomial(const Mat4& m) {
    // power sums p_k = tr(M^k); the powers outgrow 64 bits long before the
    // coefficients do, so accumulate them in 128 bits
    using I = __int128;
    std::array<I, 16> p{}, base{};
    for (int i = 0; i < 16; ++i) {
        base[static_cast<std::size_t>(i)] = m.a[static_cast<std::size_t>(i)];
        p[static_cast<std::size_t>(i)] = m.a[static_cast<std::size_t>(i)];
    }
    const auto mul = [&](const std::array<I, 16>& x, const std::array<I, 16>& y) {
        std::array<I, 16> r{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                I s = 0;
                for (int k = 0; k < 4; ++k)
                    s += x[static_cast<std::size_t>(4 * i + k)] *
                         y[static_cast<std::size_t>(4 * k + j)];
                r[static_cast<std::size_t>(4 * i + j)] = s;
            }
        return r;
    };
    const auto trace = [](const std::array<I, 16>& x) { return x[0] + x[5] + x[10] + x[15]; };
    std::array<I, 5> ps{};
    ps[1] = trace(p);
    for (int k = 2; k <= 4; ++k) {
        p = mul(p, base);
        ps[static_cast<std::size_t>(k)] = trace(p);
    }
    std::array<I, 5> e{};
    e[0] = 1;
    for (int k = 1; k <= 4; ++k) {
        I s = 0;
        for (int i = 1; i <= k; ++i) {
            const I term = e[static_cast<std::size_t>(k - i)] * ps[static_cast<std::size_t>(i)];
            s += (i % 2 == 1) ? term : -term;
        }
        e[static_cast<std::size_t>(k)] = s / k;  // exact
    }
    const auto narrow = [](I v) {
        if (v > std::numeric_limits<std::int64_t>::max() ||
            v < std::numeric_limits<std::int64_t>::min())
            throw arithmetic_range_error("characteristic polynomial coefficient overflow");
        return static_cast<std::int64_t>(v);
    };
    // det(xI - M) = x^4 - e1 x^3 + e2 x^2 - e3 x + e4
    return {1, narrow(-e[1]), narrow(e[2]), narrow(-e[3]), narrow(e[4])};
}

double quartic_spectral_radius(const std::array<std::int64_t, 5>& c) {
    using C = std::complex<double>;
    std::array<double, 5> cf;
    for (int i = 0; i < 5; ++i)
        cf[static_cast<std::size_t>(i)] =
            static_cast<double>(c[static_cast<std::size_t>(i)]) /
            static_cast<double>(c[0]);
    auto eval = [&](C x) {
        C r = 1.0;
        for (int i = 1; i <= 4; ++i) r = r * x + cf[static_cast<std::size_t>(i)];
        return r;
    };
    // Durand-Kerner with distinct non-real starting points
    std::array<C, 4> z{C(0.4, 0.9), C(-0.9, 0.4), C(-0.4, -0.9), C(0.9, -0.4)};
    // scale starting points to the Cauchy root bound
    double bound = 0.0;
    for (int i = 1; i <= 4; ++i)
        bound = std::max(bound, std::abs(cf[static_cast<std::size_t>(i)]));
    bound += 1.0;
    for (auto& zi : z) zi *= bound;
    for (int it = 0; it < 200; ++it) {
        double shift = 0.0;
        for (int i = 0; i < 4; ++i) {
            C denom = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != i) denom *= (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
            C d = eval(z[static_cast<std::size_t>(i)]) / denom;
            z[static_cast<std::size_t>(i)] -= d;
            shift = std::max(shift, std::abs(d));
        }
        if (shift < 1e-14 * bound) break;
    }
    double r = 0.0;
    for (const auto& zi : z) r = std::max(r, std::abs(zi));
    return r;
}

} // namespace apollonian
