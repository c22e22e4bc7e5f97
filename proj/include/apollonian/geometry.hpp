#pragma once

#include "apollonian/core.hpp"
#include "apollonian/group.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <string>
#include <vector>

namespace apollonian {

using Rational = boost::multiprecision::cpp_rational;

/// A circle as curvature plus curvature*center, kept exact. The reflection
/// action is linear on (k, k*x, k*y), so integrality of the weighted center
/// survives the traversal.
struct Placement {
    std::int64_t curvature = 0;
    Rational wx;
    Rational wy;

    bool operator==(const Placement&) const = default;

    /// center coordinates (curvature must be nonzero)
    Rational x() const { return wx / curvature; }
    Rational y() const { return wy / curvature; }
    /// signed radius 1/k; negative for the bounding circle
    Rational radius() const { return Rational(1) / curvature; }
    bool integral() const;
};

/// Four mutually tangent circles, ascending curvature order at construction.
struct Configuration {
    std::array<Placement, 4> circles;

    bool operator==(const Configuration&) const = default;
};

/// Canonical exact placement of a bounded root quadruple: bounding circle at
/// the origin, next circle internally tangent on the positive x-axis, the two
/// remaining circles solved from pairwise tangency.
/// Unbounded roots (smallest entry 0) are not placeable and throw.
Configuration initial_placement(const Quadruple& root);

/// Swap circle g for the other circle tangent to the remaining three;
/// linear on curvature and both weighted-center coordinates.
Configuration child_placement(const Configuration& cfg, Generator g);

/// Largest |distance - |r_i + r_j|| over the six tangent pairs, in doubles.
double max_tangency_residual(const Configuration& cfg);

/// Every circle of the packing with curvature <= T, sorted by curvature then
/// weighted center. Count equals the multiplicity census.
std::vector<Placement> packing_circles(const Quadruple& root, std::int64_t T);

/// Every Descartes configuration visited by the traversal to T (for checks;
/// memory grows with the circle count).
std::vector<Configuration> packing_configurations(const Quadruple& root, std::int64_t T);

struct RenderOptions {
    int size_px = 1000;           // viewport edge in pixels
    double stroke_px = 1.0;       // stroke width in pixels
    double min_radius_px = 0.25;  // circles below this are skipped
    bool labels = false;          // curvature labels on large circles
    double label_min_px = 12.0;   // smallest labelled radius
    double label_scale = 0.8;     // font size as a fraction of the radius
};

/// Deterministic SVG drawing of the packing up to curvature T.
std::string render_svg(const Quadruple& root, std::int64_t T, const RenderOptions& opts = {});

} // namespace apollonian
