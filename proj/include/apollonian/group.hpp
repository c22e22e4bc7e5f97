#pragma once

#include "apollonian/core.hpp"
#include "apollonian/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <variant>
#include <vector>

namespace apollonian {

using BigInt = boost::multiprecision::cpp_int;

/// Generator index, 1..4, naming the reflections S_1..S_4.
using Generator = int;

/// Reduced word over the generators: no two adjacent letters are equal.
/// Letters are stored in matrix order, leftmost first, so the LAST letter
/// is the one applied first to a quadruple.
class Word {
public:
    Word() = default;

    static Word from_letters(std::vector<int> letters);

    const std::vector<int>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    bool operator==(const Word&) const = default;

    std::string str() const;

private:
    std::vector<int> letters_;
};

/// Exact matrix of a word. Entries start on 64-bit integers and are promoted
/// to arbitrary precision when a product overflows.
class GroupElement {
public:
    explicit GroupElement(Mat4 m) : m_(m) {}
    explicit GroupElement(std::array<BigInt, 16> m) : m_(std::move(m)) {}

    bool wide() const { return m_.index() == 1; }

    BigInt entry(int r, int c) const;
    BigInt frobenius_sq() const;
    double frobenius() const;

    /// 64-bit view; throws unsupported_error when the entries are wide.
    const Mat4& narrow() const;

private:
    std::variant<Mat4, std::array<BigInt, 16>> m_;
};

struct ReductionResult {
    Quadruple root;   // halting state, in the input's positional frame
    Word word;        // letters in the order they were applied
    std::int64_t steps = 0;
    bool negated = false;  // input had negative entry sum and was negated first
};

enum class GrowthMode { max, min };

struct GrowthResult {
    std::int64_t value = 0;
    Word word;
};

struct SpectralData {
    std::array<std::int64_t, 5> charpoly{};  // leading coefficient first
    double theta = 0.0;                      // largest root
    double jsr = 0.0;                        // theta^(1/4)
};

struct MedianGrowth {
    std::int64_t median = 0;
    double log_rate = 0.0;
};

/// Replace entry i by twice the sum of the other three minus itself.
Quadruple apply_generator(const Quadruple& q, Generator g);

/// Apply a word to a quadruple, rightmost letter first.
Quadruple apply_word(const Quadruple& q, const Word& w);

GroupElement word_to_matrix(const Word& w);

/// The Descartes form matrix Q_D; every group element M satisfies M^T Q_D M = Q_D.
Mat4 descartes_form_matrix();

/// a <= 0 <= b <= c <= d and a+b+c >= d on the sorted entries.
/// Requires a positive entry sum; throws validation_error otherwise.
bool is_root(const Quadruple& q);

/// Walk a Descartes quadruple down to the root quadruple of its packing.
ReductionResult reduce(const Quadruple& q);

/// The extremal word T_n = T_i (S4 S3 S2 S1)^m, n = 4m+i,
/// with prefix T_i = I, S1, S2 S1, S3 S2 S1 for i = 0..3.
Word max_word(std::int64_t n);

/// Largest (mode max, requires a bounded root) or smallest (mode min) value of
/// ||W v||_inf over reduced words W of the given length. Max goes through T_n
/// and is re-verified exhaustively for lengths <= 12; min is branch-and-bound.
GrowthResult extremal_growth(const Quadruple& root, int length, GrowthMode mode);

SpectralData joint_spectral_radius();

/// Sample median of ||W v||_inf over uniformly random reduced words.
/// Deterministic for a fixed seed; the result is an experiment, not a theorem.
MedianGrowth median_growth_experiment(const Quadruple& root, int length,
                                      int samples, std::uint64_t seed);

} // namespace apollonian
