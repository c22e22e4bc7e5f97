#pragma once

#include "apollonian/core.hpp"

#include <array>
#include <cstdint>

namespace apollonian {

/// Exact 4x4 integer matrix on 64-bit entries. Multiplication is overflow-checked;
/// callers that outgrow 64 bits promote to Mat4Wide.
struct Mat4 {
    // row-major
    std::array<std::int64_t, 16> a{};

    static Mat4 identity() {
        Mat4 m;
        m.a[0] = m.a[5] = m.a[10] = m.a[15] = 1;
        return m;
    }

    std::int64_t& operator()(int r, int c) { return a[static_cast<std::size_t>(4 * r + c)]; }
    std::int64_t operator()(int r, int c) const { return a[static_cast<std::size_t>(4 * r + c)]; }

    bool operator==(const Mat4&) const = default;

    Mat4 operator*(const Mat4& o) const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                std::int64_t s = 0;
                for (int k = 0; k < 4; ++k)
                    s = checked::add(s, checked::mul((*this)(i, k), o(k, j)));
                r(i, j) = s;
            }
        return r;
    }

    Quadruple apply(const Quadruple& q) const {
        Quadruple r;
        for (int i = 0; i < 4; ++i) {
            std::int64_t s = 0;
            for (int k = 0; k < 4; ++k)
                s = checked::add(s, checked::mul((*this)(i, k), q[k]));
            r[i] = s;
        }
        return r;
    }

    Mat4 transposed() const {
        Mat4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    std::int64_t trace() const {
        return checked::add(checked::add(a[0], a[5]), checked::add(a[10], a[15]));
    }

    std::int64_t frobenius_sq() const {
        std::int64_t s = 0;
        for (auto v : a) s = checked::add(s, checked::mul(v, v));
        return s;
    }
};

/// Reflection matrix S_i (i in 1..4): row i is twice the all-ones row minus
/// the i-th unit row; every S_i is an involution.
inline Mat4 generator_matrix(int i) {
    if (i < 1 || i > 4) throw validation_error("generator index must be in 1..4");
    Mat4 m = Mat4::identity();
    for (int j = 0; j < 4; ++j) m(i - 1, j) = 2;
    m(i - 1, i - 1) = -1;
    return m;
}

/// Coefficients (c4,c3,c2,c1,c0) of det(xI - M) = c4 x^4 + ... + c0, exact.
/// Newton's identities over the power sums; the divisions are exact.
std::array<std::int64_t, 5> characteristic_polynomial(const Mat4& m);

/// Largest |root| of a real quartic, via Durand-Kerner on complex doubles.
double quartic_spectral_radius(const std::array<std::int64_t, 5>& coeffs);

} // namespace apollonian
