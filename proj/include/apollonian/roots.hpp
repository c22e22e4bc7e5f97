#pragma once

#include "apollonian/core.hpp"

#include <cstdint>
#include <vector>

namespace apollonian {

/// A solution of x^2 + m^2 = d1*d2 with x < 0 <= 2m <= d1 <= d2;
/// these parametrize the root quadruples with smallest entry x.
struct ParamSolution {
    std::int64_t x = 0;
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
    std::int64_t m = 0;

    bool operator==(const ParamSolution&) const = default;
};

/// A*T^2 + 2B*T*U + C*U^2; reduced means 0 <= 2B <= A <= C.
struct BinaryForm {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;

    auto operator<=>(const BinaryForm&) const = default;

    std::int64_t discriminant() const;  // 4B^2 - 4AC
    bool reduced() const { return 0 <= 2 * b && 2 * b <= a && a <= c; }
    bool primitive() const;
};

struct RootRecord {
    Quadruple root;      // ascending entries
    ParamSolution param;
    BinaryForm form;
};

/// All primitive root quadruples with smallest entry -n, ascending lexicographic.
std::vector<RootRecord> enumerate_roots(std::int64_t n);

/// Exact number of primitive root quadruples with smallest entry -n,
/// by the class-number formula (n = 0 and 1 are special-cased).
std::int64_t count_roots(std::int64_t n);

/// Class number h(-4n^2) of primitive positive definite forms of
/// discriminant -4n^2 under SL(2,Z).
std::int64_t class_number(std::int64_t n);

/// Number of SL(2,Z) classes of discriminant -4n^2 containing a reduced
/// ambiguous form; defined for n > 1.
std::int64_t ambiguous_count(std::int64_t n);

/// The reduced form attached to a root quadruple (-n,x,y,z):
/// [-n+x, (-n+x+y-z)/2, -n+y].
BinaryForm to_binary_form(const Quadruple& root);

/// All primitive reduced forms of discriminant -4n^2 with nonnegative middle
/// coefficient, ascending lexicographic; one per GL(2,Z) class.
std::vector<BinaryForm> enumerate_reduced_forms(std::int64_t n);

} // namespace apollonian
