#include "apollonian/census.hpp"

#include "apollonian/group.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>

using namespace apollonian;

namespace {

// Naive oracle: breadth-first closure over sorted quadruples with a visited
// set and no pruning beyond the bound. The downstream values of a quadruple
// depend only on its multiset, so visited-sorted states are safe to skip.
std::set<std::int64_t> census_oracle(const Quadruple& root, std::int64_t T) {
    std::set<std::int64_t> present;
    for (auto v : root.k)
        if (v >= 1 && v <= T) present.insert(v);
    std::set<std::array<std::int64_t, 4>> seen{root.sorted().k};
    std::vector<std::array<std::int64_t, 4>> frontier{root.sorted().k};
    while (!frontier.empty()) {
        std::vector<std::array<std::int64_t, 4>> next;
        for (const auto& q : frontier) {
            const std::int64_t s = q[0] + q[1] + q[2] + q[3];
            for (int i = 0; i < 4; ++i) {
                const std::int64_t v = 2 * s - 3 * q[static_cast<std::size_t>(i)];
                if (v > T) continue;
                auto child = q;
                child[static_cast<std::size_t>(i)] = v;
                std::sort(child.begin(), child.end());
                if (!seen.insert(child).second) continue;
                if (v >= 1) present.insert(v);
                next.push_back(child);
            }
        }
        frontier = std::move(next);
    }
    return present;
}

std::set<std::int64_t> to_set(const Census& c) {
    std::set<std::int64_t> out;
    for (std::int64_t v = 1; v <= c.bound; ++v)
        if (c.present.test(v)) out.insert(v);
    return out;
}

} // namespace

TEST_CASE("values census matches the stated small packings") {
    auto c = census(Quadruple(-1, 2, 2, 3), 20);
    CHECK(to_set(c) == std::set<std::int64_t>{2, 3, 6, 11, 14, 15, 18});
    CHECK(c.nonpositive_entries == std::vector<std::int64_t>{-1});

    auto u = census(Quadruple(0, 0, 1, 1), 1);
    CHECK(to_set(u) == std::set<std::int64_t>{1});
}

TEST_CASE("values census equals the naive oracle up to 500") {
    for (const auto& root : {Quadruple(-1, 2, 2, 3), Quadruple(0, 0, 1, 1),
                             Quadruple(-2, 3, 6, 7), Quadruple(-3, 5, 8, 8),
                             Quadruple(-6, 11, 14, 15)}) {
        for (std::int64_t T : {20, 100, 500}) {
            CHECK(to_set(census(root, T)) == census_oracle(root, T));
        }
    }
}

TEST_CASE("census is monotone under restriction") {
    const auto big = census(Quadruple(-1, 2, 2, 3), 400);
    const auto small = census(Quadruple(-1, 2, 2, 3), 150);
    for (std::int64_t v = 1; v <= 150; ++v) CHECK(small.present.test(v) == big.present.test(v));
}

TEST_CASE("census preconditions") {
    CHECK_THROWS_AS(census(Quadruple(-1, 2, 3, 6), 100), validation_error);
    CensusOptions mult;
    mult.mode = CensusMode::multiplicity;
    CHECK_THROWS_AS(census(Quadruple(0, 0, 1, 1), 100, mult), unsupported_error);
    auto trivial = census(Quadruple(-1, 2, 2, 3), 2);
    CHECK(trivial.trivial);
    CHECK(to_set(trivial) == std::set<std::int64_t>{2});
}

TEST_CASE("multiplicity census counts words") {
    // N_P(T) = 4 + #reduced words with sup norm <= T
    struct Counter {
        std::int64_t T;
        std::uint64_t count = 0;
        void walk(const Quadruple& q, int last) {
            const std::int64_t s = q.lsum();
            for (int i = 0; i < 4; ++i) {
                if (i == last) continue;
                const std::int64_t v = 2 * s - 3 * q[i];
                if (v > T) continue;
                Quadruple c = q;
                c[i] = v;
                ++count;
                walk(c, i);
            }
        }
    };
    const Quadruple root(-1, 2, 2, 3);
    for (std::int64_t T : {3, 20, 100, 1000}) {
        CensusOptions opts;
        opts.mode = CensusMode::multiplicity;
        const auto c = census(root, T, opts);
        Counter cnt{T};
        cnt.walk(root, -1);
        CHECK(c.circles_counted == cnt.count + 4);
        CHECK(c.checkpoint_counts.back() == cnt.count + 4);
    }
}

TEST_CASE("multiplicity census at T=3 sees five circles") {
    CensusOptions opts;
    opts.mode = CensusMode::multiplicity;
    const auto c = census(Quadruple(-1, 2, 2, 3), 3, opts);
    CHECK(c.circles_counted == 5);
}

TEST_CASE("census results are independent of the thread count") {
    CensusOptions one;
    one.threads = 1;
    const auto reference = census(Quadruple(-1, 2, 2, 3), 5000, one).present.words();
    for (int threads : {2, 4}) {
        CensusOptions opts;
        opts.threads = threads;
        const auto c = census(Quadruple(-1, 2, 2, 3), 5000, opts);
        CHECK(c.present.words() == reference);
    }
}

TEST_CASE("checkpoint save, load and resume reproduce the one-shot run") {
    const Quadruple root(-1, 2, 2, 3);
    const std::int64_t T = 4000;
    const auto oneshot = census(root, T);

    CensusRun run(root, T);
    CHECK_FALSE(run.run(2000));  // partial
    const auto path = std::filesystem::temp_directory_path() / "apcs_test.checkpoint";
    run.save(path);

    auto resumed = CensusRun::load(path);
    CHECK(resumed.run());
    const auto c = std::move(resumed).take();
    CHECK(c.present.words() == oneshot.present.words());
    CHECK(c.circles_counted == oneshot.circles_counted);
    std::filesystem::remove(path);
}

TEST_CASE("missing values against the printed rows") {
    const auto c = census(Quadruple(-1, 2, 2, 3), 2000);
    const auto rep = missing_values(c, 12);
    CHECK(rep.allowed_classes == std::vector<std::int64_t>{2, 3, 6, 11});
    CHECK(rep.missing.at(3) ==
          std::vector<std::int64_t>{159, 207, 243, 435, 603, 711, 1923});
    CHECK(rep.missing.at(6) == std::vector<std::int64_t>{78, 246, 342, 834, 1422});
    CHECK_THROWS_AS(missing_values(c, 0), validation_error);
}

TEST_CASE("present values respect the congruence classes") {
    const auto c = census(Quadruple(-1, 2, 2, 3), 2000);
    const auto allowed = allowed_classes(c.root, 12);
    for (std::int64_t v = 1; v <= 2000; ++v) {
        if (!c.present.test(v)) continue;
        CHECK(v >= 2);  // nothing below the smallest positive root entry
        CHECK(allowed.count(v % 12) == 1);
    }
}

TEST_CASE("allowed classes") {
    CHECK(allowed_classes(Quadruple(-1, 2, 2, 3), 12) == std::set<std::int64_t>{2, 3, 6, 11});
    CHECK(allowed_classes(Quadruple(0, 0, 1, 1), 24) ==
          std::set<std::int64_t>{0, 1, 4, 9, 12, 16});
    CHECK(allowed_classes(Quadruple(0, 0, 1, 1), 12) == std::set<std::int64_t>{0, 1, 4, 9});
}

TEST_CASE("orbit partition mod 12") {
    const auto table = orbit_partition(12);
    REQUIRE(table.orbits.size() == 8);
    for (const auto& orb : table.orbits) CHECK(orb.patterns.size() == 5);

    const auto* y = table.find({0, 0, 1, 1});
    REQUIRE(y != nullptr);
    const std::vector<std::array<int, 4>> y_expected{
        {0, 0, 1, 1}, {0, 1, 1, 4}, {0, 1, 4, 9}, {1, 4, 4, 9}, {4, 4, 9, 9}};
    CHECK(y->patterns == y_expected);

    const auto* o2 = table.find({2, 2, 3, 3});
    REQUIRE(o2 != nullptr);
    const std::vector<std::array<int, 4>> o2_expected{
        {2, 2, 3, 3}, {2, 2, 3, 11}, {2, 3, 6, 11}, {2, 6, 11, 11}, {6, 6, 11, 11}};
    CHECK(o2->patterns == o2_expected);
}

TEST_CASE("orbit transition counts out of (0,0,1,1) mod 12") {
    // row 1 of the transition structure: 2,2,0,0,0 out of 4
    const std::array<int, 4> p{0, 0, 1, 1};
    std::map<std::array<int, 4>, int> counts;
    const int s = p[0] + p[1] + p[2] + p[3];
    for (int i = 0; i < 4; ++i) {
        auto c = p;
        c[static_cast<std::size_t>(i)] =
            ((2 * (s - p[static_cast<std::size_t>(i)]) - p[static_cast<std::size_t>(i)]) % 12 +
             12) %
            12;
        std::sort(c.begin(), c.end());
        counts[c]++;
    }
    CHECK(counts[{0, 0, 1, 1}] == 2);
    CHECK(counts[{0, 1, 1, 4}] == 2);
}

TEST_CASE("orbit partition mod 2") {
    const auto table = orbit_partition(2);
    const auto* orb = table.find({0, 0, 1, 1});
    REQUIRE(orb != nullptr);
    CHECK(orb->patterns.size() == 1);
}

TEST_CASE("residue cover witness") {
    const auto c1223 = census(Quadruple(-1, 2, 2, 3), 10000);
    const auto w7 = residue_cover_witness(c1223, 7);
    CHECK(w7.complete);
    for (auto v : w7.smallest) CHECK(v >= 1);

    const auto c0011 = census(Quadruple(0, 0, 1, 1), 10000);
    CHECK(residue_cover_witness(c0011, 7).complete);

    const auto w12 = residue_cover_witness(c0011, 12);
    CHECK_FALSE(w12.complete);
    std::set<std::int64_t> witnessed;
    for (std::int64_t r = 0; r < 12; ++r)
        if (w12.smallest[static_cast<std::size_t>(r)] >= 0) witnessed.insert(r);
    CHECK(witnessed == std::set<std::int64_t>{0, 1, 4, 9});

    // gcd(m,30)=1 and no cover below the cap: the cap is at fault
    const auto tiny = census(Quadruple(-1, 2, 2, 3), 5);
    CHECK_THROWS_AS(residue_cover_witness(tiny, 49), unsupported_error);
}

TEST_CASE("r3_square against the brute-force triple loop") {
    auto brute = [](std::int64_t m) {
        std::int64_t count = 0;
        for (std::int64_t x = -m; x <= m; ++x)
            for (std::int64_t y = -m; y <= m; ++y) {
                const std::int64_t rest = m * m - x * x - y * y;
                if (rest < 0) continue;
                const auto z = static_cast<std::int64_t>(std::lround(std::sqrt(
                    static_cast<double>(rest))));
                if (z * z == rest) count += (z == 0) ? 1 : 2;
            }
        return count;
    };
    CHECK(r3_square(1) == 6);
    CHECK(r3_square(3) == 30);
    CHECK(r3_square(21) == 270);
    for (std::int64_t m = 1; m <= 60; ++m) CHECK(r3_square(m) == brute(m));
}

TEST_CASE("primitive r3 by Moebius inversion") {
    CHECK(r3_square_primitive(1) == 6);
    CHECK(r3_square_primitive(2) == 0);
    CHECK(r3_square_primitive(3) == 24);
    for (std::int64_t m = 1; m <= 60; ++m) {
        std::int64_t sum = 0;
        for (std::int64_t d = 1; d <= m; ++d)
            if (m % d == 0) sum += r3_square_primitive(d);
        CHECK(sum == r3_square(m));  // the inversion inverts
    }
}

TEST_CASE("quadruple counts by height") {
    CHECK(count_quadruples(0.0) == 1);
    CHECK(count_quadruples(std::sqrt(2.0)) == 13);
    CHECK(count_quadruples(std::sqrt(2.0), true) == 12);

    SUBCASE("brute force box agreement") {
        auto brute = [](std::int64_t T, bool primitive) {
            std::int64_t count = 0;
            const std::int64_t T2 = T * T;
            for (std::int64_t a = -T; a <= T; ++a)
                for (std::int64_t b = -T; b <= T; ++b)
                    for (std::int64_t c = -T; c <= T; ++c) {
                        if (a * a + b * b + c * c > T2) continue;
                        const std::int64_t rad = a * b + b * c + a * c;
                        if (rad < 0) continue;
                        const auto s = static_cast<std::int64_t>(
                            std::lround(std::sqrt(static_cast<double>(rad))));
                        if (s * s != rad) continue;
                        std::vector<std::int64_t> ds{a + b + c + 2 * s};
                        if (s != 0) ds.push_back(a + b + c - 2 * s);
                        for (const std::int64_t d : ds) {
                            if (a * a + b * b + c * c + d * d > T2) continue;
                            const Quadruple q(a, b, c, d);
                            if (primitive && (q.is_zero() || !is_primitive(q))) continue;
                            ++count;
                        }
                    }
            return count;
        };
        for (std::int64_t T : {5, 10, 20}) {
            CHECK(count_quadruples(static_cast<double>(T)) == brute(T, false));
            CHECK(count_quadruples(static_cast<double>(T), true) == brute(T, true));
        }
    }
}

TEST_CASE("growth exponent on a small bounded census") {
    CensusOptions opts;
    opts.mode = CensusMode::multiplicity;
    const auto c = census(Quadruple(-1, 2, 2, 3), 100000, opts);
    const double alpha = growth_exponent(c);
    CHECK(alpha > 1.1);
    CHECK(alpha < 1.5);

    // the exponent does not depend on the packing
    const auto c2 = census(Quadruple(-2, 3, 6, 7), 100000, opts);
    CHECK(std::abs(growth_exponent(c2) - alpha) < 0.05);

    // counts at every checkpoint are cumulative, so never decrease
    for (std::size_t i = 1; i < c.checkpoint_counts.size(); ++i)
        CHECK(c.checkpoint_counts[i] >= c.checkpoint_counts[i - 1]);

    const auto values_census = census(Quadruple(-1, 2, 2, 3), 20000);
    CHECK_THROWS_AS(growth_exponent(values_census), validation_error);
}
