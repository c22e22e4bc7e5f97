#include "apollonian/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace apollonian {

Quadruple Quadruple::sorted() const {
    Quadruple s = *this;
    std::sort(s.k.begin(), s.k.end());
    return s;
}

std::int64_t Quadruple::lsum() const {
    return checked::add(checked::add(k[0], k[1]), checked::add(k[2], k[3]));
}

Quadruple Quadruple::negated() const {
    return Quadruple(checked::neg(k[0]), checked::neg(k[1]),
                     checked::neg(k[2]), checked::neg(k[3]));
}

std::string Quadruple::str() const {
    std::string s = "(";
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += std::to_string(k[static_cast<std::size_t>(i)]);
    }
    return s + ")";
}

std::int64_t descartes_defect(const Quadruple& q) {
    std::int64_t sq = 0;
    for (auto v : q.k) sq = checked::add(sq, checked::mul(v, v));
    const std::int64_t s = q.lsum();
    return checked::sub(checked::mul(2, sq), checked::mul(s, s));
}

std::int64_t LorentzQuadruple::lorentz_defect() const {
    std::int64_t r = checked::neg(checked::mul(k[0], k[0]));
    for (int i = 1; i < 4; ++i) {
        auto v = k[static_cast<std::size_t>(i)];
        r = checked::add(r, checked::mul(v, v));
    }
    return r;
}

std::pair<std::int64_t, std::int64_t> FourthSolution::roots() const {
    if (!sqrt_radicand)
        throw validation_error("fourth-circle radicand " + std::to_string(radicand) +
                               " is not a perfect square; no integral solution");
    const std::int64_t t = checked::mul(2, *sqrt_radicand);
    return {checked::add(linear, t), checked::sub(linear, t)};
}

namespace {

std::optional<std::int64_t> exact_isqrt(std::int64_t n) {
    if (n < 0) return std::nullopt;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    const auto sq = [](std::int64_t x) { return static_cast<__int128>(x) * x; };
    while (r > 0 && sq(r) > n) --r;
    while (sq(r + 1) <= n) ++r;
    if (sq(r) == n) return r;
    return std::nullopt;
}

} // namespace

FourthSolution solve_fourth(std::int64_t a, std::int64_t b, std::int64_t c) {
    FourthSolution out;
    out.linear = checked::add(checked::add(a, b), c);
    out.radicand = checked::add(checked::add(checked::mul(a, b), checked::mul(b, c)),
                                checked::mul(a, c));
    if (out.radicand < 0)
        throw validation_error("ab+bc+ca = " + std::to_string(out.radicand) +
                               " < 0: no real tangent circle");
    out.sqrt_radicand = exact_isqrt(out.radicand);
    return out;
}

namespace {

// J0 applied to v; J0 is its own inverse.
std::array<std::int64_t, 4> half_hadamard(const std::array<std::int64_t, 4>& v) {
    const std::int64_t s = checked::add(checked::add(v[0], v[1]), checked::add(v[2], v[3]));
    if (s % 2 != 0)
        throw validation_error("entry sum is odd; the Lorentz correspondence needs an even sum");
    std::array<std::int64_t, 4> r{};
    r[0] = s / 2;
    r[1] = checked::sub(checked::add(v[0], v[1]), r[0]);
    r[2] = checked::sub(checked::add(v[0], v[2]), r[0]);
    r[3] = checked::sub(checked::add(v[0], v[3]), r[0]);
    return r;
}

} // namespace

LorentzQuadruple to_lorentz(const Quadruple& q) {
    auto r = half_hadamard(q.k);
    return LorentzQuadruple(r[0], r[1], r[2], r[3]);
}

Quadruple to_descartes(const LorentzQuadruple& q) {
    return Quadruple(half_hadamard(q.k));
}

bool is_primitive(const Quadruple& q) {
    if (q.is_zero())
        throw validation_error("gcd of the zero quadruple is undefined");
    std::uint64_t g = 0;
    for (auto v : q.k)
        g = std::gcd(g, v == std::numeric_limits<std::int64_t>::min()
                            ? (std::uint64_t{1} << 63)
                            : static_cast<std::uint64_t>(v < 0 ? -v : v));
    return g == 1;
}

Metrics metrics(const Quadruple& q) {
    Metrics m;
    for (auto v : q.k) {
        m.height_sq = checked::add(m.height_sq, checked::mul(v, v));
        m.supnorm = std::max(m.supnorm, v < 0 ? checked::neg(v) : v);
    }
    m.height = std::sqrt(static_cast<double>(m.height_sq));
    m.lsum = q.lsum();
    return m;
}

} // namespace apollonian
