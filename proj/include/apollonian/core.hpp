#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace apollonian {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 64-bit exact arithmetic left its range.
class arithmetic_range_error : public error {
public:
    using error::error;
};

/// Input lies outside an operation's domain (bad quadruple, parity, sign, ...).
class validation_error : public error {
public:
    using error::error;
};

/// Input is valid but the request cannot be served (unbounded packing, cap too small, ...).
class unsupported_error : public error {
public:
    using error::error;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw arithmetic_range_error("integer overflow in addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw arithmetic_range_error("integer overflow in subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw arithmetic_range_error("integer overflow in multiplication");
    return r;
}

inline std::int64_t neg(std::int64_t a) {
    return sub(0, a);
}

} // namespace checked

/// Four curvatures. Storage order is meaningful (generators act on positions);
/// sorting is always a view, never a mutation.
struct Quadruple {
    std::array<std::int64_t, 4> k{0, 0, 0, 0};

    Quadruple() = default;
    Quadruple(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
        : k{a, b, c, d} {}
    explicit Quadruple(const std::array<std::int64_t, 4>& v) : k(v) {}

    std::int64_t& operator[](int i) { return k[static_cast<std::size_t>(i)]; }
    std::int64_t operator[](int i) const { return k[static_cast<std::size_t>(i)]; }

    auto operator<=>(const Quadruple&) const = default;

    /// Entries in ascending order (a copy; storage is untouched).
    Quadruple sorted() const;
    /// Entry sum a+b+c+d, checked.
    std::int64_t lsum() const;
    bool is_zero() const { return k == std::array<std::int64_t, 4>{0, 0, 0, 0}; }
    Quadruple negated() const;

    std::string str() const;
};

struct LorentzQuadruple {
    std::array<std::int64_t, 4> k{0, 0, 0, 0};

    LorentzQuadruple() = default;
    LorentzQuadruple(std::int64_t w, std::int64_t x, std::int64_t y, std::int64_t z)
        : k{w, x, y, z} {}

    auto operator<=>(const LorentzQuadruple&) const = default;

    /// -W^2+X^2+Y^2+Z^2, checked; zero iff this is a Lorentz quadruple.
    std::int64_t lorentz_defect() const;
};

struct Metrics {
    std::int64_t height_sq = 0;  // exact H^2
    double height = 0.0;
    std::int64_t lsum = 0;
    std::int64_t supnorm = 0;
};

/// Both solutions of the fourth-curvature equation d, d' = linear +/- 2*sqrt(radicand).
/// Integral roots exist exactly when the radicand is a perfect square; otherwise
/// the radicand itself is the result.
struct FourthSolution {
    std::int64_t linear = 0;    // a+b+c
    std::int64_t radicand = 0;  // ab+bc+ca, nonnegative
    std::optional<std::int64_t> sqrt_radicand;

    bool integral() const { return sqrt_radicand.has_value(); }

    /// (d, d') with d >= d'; throws validation_error when not integral.
    std::pair<std::int64_t, std::int64_t> roots() const;
};

/// Q_D(q) = 2(a^2+b^2+c^2+d^2) - (a+b+c+d)^2; zero iff q is a Descartes quadruple.
std::int64_t descartes_defect(const Quadruple& q);

inline bool is_descartes(const Quadruple& q) { return descartes_defect(q) == 0; }

/// Curvatures of the two circles tangent to three mutually tangent circles.
/// Throws validation_error when ab+bc+ca < 0 (no real solution).
FourthSolution solve_fourth(std::int64_t a, std::int64_t b, std::int64_t c);

/// Height-preserving involution between Descartes and Lorentz quadruples.
/// Requires an even entry sum; throws validation_error otherwise.
LorentzQuadruple to_lorentz(const Quadruple& q);
Quadruple to_descartes(const LorentzQuadruple& q);

/// gcd of entries is 1. Throws validation_error on the zero quadruple.
bool is_primitive(const Quadruple& q);

Metrics metrics(const Quadruple& q);

} // namespace apollonian
