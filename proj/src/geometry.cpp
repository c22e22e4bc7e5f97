#include "apollonian/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace apollonian {

namespace mp = boost::multiprecision;

bool Placement::integral() const {
    return mp::denominator(wx) == 1 && mp::denominator(wy) == 1;
}

namespace {

Rational sqrt_rational(const Rational& r) {
    if (r < 0) throw error("placement solver hit a negative squared distance");
    const mp::cpp_int num = mp::numerator(r);
    const mp::cpp_int den = mp::denominator(r);
    const mp::cpp_int sn = mp::sqrt(num);
    const mp::cpp_int sd = mp::sqrt(den);
    if (sn * sn != num || sd * sd != den)
        throw unsupported_error("placement is not rational for this quadruple");
    return Rational(sn, sd);
}

Rational sq(const Rational& v) { return v * v; }

Rational dist_sq(const Rational& ax, const Rational& ay, const Rational& bx,
                 const Rational& by) {
    return sq(ax - bx) + sq(ay - by);
}

// exact tangency test in plain (unweighted) coordinates
bool tangent(const Rational& ax, const Rational& ay, const Rational& ra,
             const Rational& bx, const Rational& by, const Rational& rb) {
    return dist_sq(ax, ay, bx, by) == sq(ra + rb);
}

} // namespace

Configuration initial_placement(const Quadruple& root) {
    if (!is_root(root)) throw validation_error("initial placement requires a root quadruple");
    const Quadruple s = root.sorted();
    if (s[0] >= 0)
        throw unsupported_error("unbounded packing (smallest entry 0) has no bounded placement");

    const std::array<Rational, 4> r{Rational(1) / s[0], Rational(1) / s[1], Rational(1) / s[2],
                                    Rational(1) / s[3]};
    const Rational R = -r[0];  // bounding radius

    // bounding circle at the origin, circle b tangent on the positive x-axis
    std::array<Rational, 4> x{}, y{};
    x[1] = R - r[1];

    // circle i from internal tangency to the bounding circle and external
    // tangency to circle b: one linear equation once the two distances are fixed
    const auto solve_x = [&](int i) {
        const Rational d0 = R - r[static_cast<std::size_t>(i)];
        const Rational db = r[1] + r[static_cast<std::size_t>(i)];
        return (sq(d0) - sq(db) + sq(x[1])) / (2 * x[1]);
    };
    x[2] = solve_x(2);
    y[2] = sqrt_rational(sq(R - r[2]) - sq(x[2]));  // upper half-plane
    x[3] = solve_x(3);
    const Rational y3 = sqrt_rational(sq(R - r[3]) - sq(x[3]));
    // the sign is forced by tangency to circle c; prefer + at the symmetric tie
    if (tangent(x[2], y[2], r[2], x[3], y3, r[3]))
        y[3] = y3;
    else if (tangent(x[2], y[2], r[2], x[3], -y3, r[3]))
        y[3] = -y3;
    else
        throw error("no consistent placement for the fourth circle");

    Configuration cfg;
    for (int i = 0; i < 4; ++i) {
        auto& p = cfg.circles[static_cast<std::size_t>(i)];
        p.curvature = s[i];
        p.wx = x[static_cast<std::size_t>(i)] * s[i];
        p.wy = y[static_cast<std::size_t>(i)] * s[i];
    }
    return cfg;
}

Configuration child_placement(const Configuration& cfg, Generator g) {
    if (g < 1 || g > 4) throw validation_error("generator index must be in 1..4");
    const int i = g - 1;
    Configuration out = cfg;
    std::int64_t ks = 0;
    Rational wxs = 0, wys = 0;
    for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        const auto& p = cfg.circles[static_cast<std::size_t>(j)];
        ks = checked::add(ks, p.curvature);
        wxs += p.wx;
        wys += p.wy;
    }
    auto& p = out.circles[static_cast<std::size_t>(i)];
    p.curvature = checked::sub(checked::mul(2, ks), p.curvature);
    p.wx = 2 * wxs - p.wx;
    p.wy = 2 * wys - p.wy;
    for (int j = 0; j < 4; ++j)
        if (j != i && out.circles[static_cast<std::size_t>(j)] == p)
            throw error("degenerate configuration: coincident circles");
    return out;
}

double max_tangency_residual(const Configuration& cfg) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const auto& a = cfg.circles[static_cast<std::size_t>(i)];
            const auto& b = cfg.circles[static_cast<std::size_t>(j)];
            const double ax = static_cast<double>(a.x()), ay = static_cast<double>(a.y());
            const double bx = static_cast<double>(b.x()), by = static_cast<double>(b.y());
            const double dist = std::hypot(ax - bx, ay - by);
            const double want = std::abs(static_cast<double>(a.radius() + b.radius()));
            worst = std::max(worst, std::abs(dist - want));
        }
    return worst;
}

namespace {

template <typename Fn>
void traverse_configurations(const Quadruple& root, std::int64_t T, Fn&& fn) {
    struct Node {
        Configuration cfg;
        int forbidden;
    };
    std::vector<Node> stack;
    stack.push_back({initial_placement(root), -1});
    fn(stack.back().cfg, -1);
    while (!stack.empty()) {
        Node n = std::move(stack.back());
        stack.pop_back();
        std::int64_t ks = 0;
        for (const auto& p : n.cfg.circles) ks += p.curvature;
        for (int i = 0; i < 4; ++i) {
            if (i == n.forbidden) continue;
            const std::int64_t v = 2 * ks - 3 * n.cfg.circles[static_cast<std::size_t>(i)].curvature;
            if (v > T) continue;
            Node child{child_placement(n.cfg, i + 1), i};
            fn(child.cfg, i);
            stack.push_back(std::move(child));
        }
    }
}

} // namespace

std::vector<Placement> packing_circles(const Quadruple& root, std::int64_t T) {
    std::vector<Placement> out;
    traverse_configurations(root, T, [&](const Configuration& cfg, int replaced) {
        if (replaced < 0) {
            for (const auto& p : cfg.circles)
                if (p.curvature <= T) out.push_back(p);
        } else {
            out.push_back(cfg.circles[static_cast<std::size_t>(replaced)]);
        }
    });
    std::sort(out.begin(), out.end(), [](const Placement& a, const Placement& b) {
        if (a.curvature != b.curvature) return a.curvature < b.curvature;
        if (a.wx != b.wx) return a.wx < b.wx;
        return a.wy < b.wy;
    });
    return out;
}

std::vector<Configuration> packing_configurations(const Quadruple& root, std::int64_t T) {
    std::vector<Configuration> out;
    traverse_configurations(root, T,
                            [&](const Configuration& cfg, int) { out.push_back(cfg); });
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

std::string render_svg(const Quadruple& root, std::int64_t T, const RenderOptions& opts) {
    const Quadruple s = root.sorted();
    if (!is_root(root)) throw validation_error("render requires a root quadruple");
    if (s[0] >= 0) throw unsupported_error("cannot render an unbounded packing");
    if (T < s[3]) throw validation_error("bound below the largest root curvature draws nothing");

    const auto circles = packing_circles(root, T);
    const double R = 1.0 / static_cast<double>(-s[0]);
    const double span = 2.04 * R;  // 2% margin around the bounding circle
    const double px = span / static_cast<double>(opts.size_px);

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(opts.size_px) + "\" height=\"" + std::to_string(opts.size_px) +
           "\" viewBox=\"" + fmt(-span / 2) + " " + fmt(-span / 2) + " " + fmt(span) + " " +
           fmt(span) + "\">\n";
    svg += "<g fill=\"none\" stroke=\"black\" stroke-width=\"" + fmt(opts.stroke_px * px) +
           "\">\n";
    for (const auto& c : circles) {
        const double r = std::abs(1.0 / static_cast<double>(c.curvature));
        if (r / px < opts.min_radius_px) continue;
        const double cx = static_cast<double>(c.x());
        const double cy = static_cast<double>(c.y());
        svg += "<circle cx=\"" + fmt(cx) + "\" cy=\"" + fmt(cy) + "\" r=\"" + fmt(r) + "\"/>\n";
    }
    svg += "</g>\n";
    if (opts.labels) {
        svg += "<g fill=\"black\" stroke=\"none\" text-anchor=\"middle\">\n";
        for (const auto& c : circles) {
            const double r = std::abs(1.0 / static_cast<double>(c.curvature));
            if (r / px < opts.label_min_px) continue;
            const double fs = c.curvature < 0 ? 0.0 : r * opts.label_scale;
            if (fs <= 0.0) continue;
            svg += "<text x=\"" + fmt(static_cast<double>(c.x())) + "\" y=\"" +
                   fmt(static_cast<double>(c.y()) + fs * 0.35) + "\" font-size=\"" + fmt(fs) +
                   "\">" + std::to_string(c.curvature) + "</text>\n";
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace apollonian
