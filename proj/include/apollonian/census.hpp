#pragma once

#include "apollonian/core.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace apollonian {

enum class CensusMode { values, multiplicity };

/// Flat bitset over [1, size]; bit v-1 holds integer v.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::int64_t size)
        : size_(size), words_(static_cast<std::size_t>((size + 63) / 64), 0) {}

    std::int64_t size() const { return size_; }

    void set(std::int64_t v) {
        words_[static_cast<std::size_t>((v - 1) >> 6)] |= std::uint64_t{1} << ((v - 1) & 63);
    }
    bool test(std::int64_t v) const {
        if (v < 1 || v > size_) return false;
        return (words_[static_cast<std::size_t>((v - 1) >> 6)] >> ((v - 1) & 63)) & 1;
    }

    void unite(const Bitset& o);
    std::int64_t count() const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    bool operator==(const Bitset&) const = default;

private:
    std::int64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Exact inventory of the curvatures of a packing up to a bound.
struct Census {
    Quadruple root;           // sorted root quadruple
    std::int64_t bound = 0;   // T
    CensusMode mode = CensusMode::values;
    bool trivial = false;     // T < largest root entry

    Bitset present;                                // values mode
    std::vector<std::int64_t> nonpositive_entries; // root entries <= 0
    std::uint64_t circles_counted = 0;             // circles traversed, root included

    // multiplicity mode: N_P(t) at sorted thresholds, last one == T
    std::vector<std::int64_t> checkpoints;
    std::vector<std::uint64_t> checkpoint_counts;
    // multiplicity mode, optional: circle counts per residue class
    std::int64_t residue_modulus = 0;
    std::vector<std::uint64_t> residue_counts;
};

struct CensusOptions {
    CensusMode mode = CensusMode::values;
    int threads = 0;                    // 0: hardware concurrency
    std::int64_t residue_modulus = 0;   // multiplicity mode: also tally per class
    std::vector<std::int64_t> checkpoints;  // multiplicity mode; default log-spaced
};

/// Enumerate every circle of the packing with curvature at most T.
/// values mode records the set of represented integers; multiplicity mode
/// counts every circle once. The root must pass is_root; multiplicity mode
/// requires a bounded packing.
Census census(const Quadruple& root, std::int64_t T, CensusOptions opts = {});

/// A census run that can be paused, serialized and resumed.
class CensusRun {
public:
    CensusRun(const Quadruple& root, std::int64_t T, CensusOptions opts = {});

    /// Process roughly node_budget more circles (0: run to completion).
    /// Returns true when the traversal is finished.
    bool run(std::uint64_t node_budget = 0);
    bool finished() const { return frontier_.empty(); }

    const Census& snapshot() const { return census_; }
    Census take() &&;

    void save(const std::filesystem::path& path) const;
    static CensusRun load(const std::filesystem::path& path);

private:
    CensusRun() = default;

    struct Task {
        std::array<std::int64_t, 4> q;
        std::int8_t forbidden;
    };

    Census census_;
    CensusOptions opts_;
    std::vector<Task> frontier_;

    void seed();
    friend struct CensusRunAccess;
};

struct MissingReport {
    std::int64_t modulus = 0;
    std::vector<std::int64_t> allowed_classes;
    std::map<std::int64_t, std::vector<std::int64_t>> missing;  // class -> absent integers <= T
};

/// Positive integers <= T in an allowed class that the packing misses.
MissingReport missing_values(const Census& c, std::int64_t m);

/// Residues mod m reachable as curvatures: the closure of the root's residue
/// quadruple under the generator action mod m, coordinates collected.
std::set<std::int64_t> allowed_classes(const Quadruple& root, std::int64_t m);

enum class OrbitFilter { primitive_classes, all };

struct OrbitTable {
    std::int64_t modulus = 0;
    struct Orbit {
        std::vector<std::array<int, 4>> patterns;  // sorted patterns, ascending
        std::set<std::int64_t> residues;
    };
    std::vector<Orbit> orbits;

    const Orbit* find(const std::array<int, 4>& sorted_pattern) const;
};

/// Partition of the residue quadruples mod m realized by integer Descartes
/// quadruples into orbits of the generator action. The primitive filter keeps
/// classes sharing no factor with m.
OrbitTable orbit_partition(std::int64_t m, OrbitFilter filter = OrbitFilter::primitive_classes);

struct WitnessReport {
    std::int64_t modulus = 0;
    std::int64_t cap = 0;
    std::vector<std::int64_t> smallest;  // per residue 0..m-1; -1 when not found
    bool complete = false;
};

/// Smallest curvature found in each residue class mod m, searching circles up
/// to the cap. When gcd(m,30)=1 a full cover is guaranteed to exist, so an
/// incomplete cover throws (the cap was too small, nothing is disproved).
WitnessReport residue_cover_witness(const Quadruple& root, std::int64_t m, std::int64_t cap);
WitnessReport residue_cover_witness(const Census& c, std::int64_t m);

/// Hurwitz count of representations of m^2 as an ordered sum of three squares.
std::int64_t r3_square(std::int64_t m);

/// Primitive representations, by Moebius inversion over divisors.
std::int64_t r3_square_primitive(std::int64_t m);

/// Number of (primitive) integer Descartes quadruples of Euclidean height <= T,
/// counted through the Lorentz correspondence.
std::int64_t count_quadruples(double T, bool primitive = false);

/// Least-squares slope of log N_P(t) against log t over the census checkpoints;
/// an estimate of the residual-set dimension, not a certified value.
double growth_exponent(const Census& c);

} // namespace apollonian
