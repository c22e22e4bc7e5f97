#include "apollonian/census.hpp"

#include "apollonian/group.hpp"
#include "apollonian/numtheory.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <thread>

namespace apollonian {

namespace {

// safe bound for the unchecked 2*s - 3*q arithmetic in the hot loop
constexpr std::int64_t kMaxBound = std::int64_t{1} << 40;

std::int64_t positive_mod(std::int64_t v, std::int64_t m) {
    const std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

} // namespace

void Bitset::unite(const Bitset& o) {
    if (o.size_ != size_) throw validation_error("bitset size mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
}

std::int64_t Bitset::count() const {
    std::int64_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

namespace {

std::vector<std::int64_t> default_checkpoints(std::int64_t T, std::int64_t root_max) {
    std::vector<std::int64_t> cps;
    const double lo = std::log10(static_cast<double>(std::max<std::int64_t>(10, root_max)));
    const int steps_per_decade = 8;
    for (int k = static_cast<int>(std::ceil(lo * steps_per_decade));; ++k) {
        const auto t = static_cast<std::int64_t>(
            std::llround(std::pow(10.0, static_cast<double>(k) / steps_per_decade)));
        if (t > T) break;
        if (cps.empty() || t > cps.back()) cps.push_back(t);
    }
    if (cps.empty() || cps.back() != T) cps.push_back(T);
    return cps;
}

// worker-local tallies, merged into the census by commutative union/add
struct Accumulator {
    Bitset bits;
    std::uint64_t nodes = 0;
    std::vector<std::uint64_t> bucket_counts;
    std::vector<std::uint64_t> residue_counts;
};

struct TallyContext {
    CensusMode mode;
    std::int64_t T = 0;
    std::int64_t modulus = 0;
    const std::vector<std::int64_t>* checkpoints = nullptr;
    std::vector<std::uint8_t> bucket_table;  // value -> checkpoint index, when T is small

    void build(const Census& c) {
        mode = c.mode;
        T = c.bound;
        modulus = c.residue_modulus;
        checkpoints = &c.checkpoints;
        if (mode == CensusMode::multiplicity && T <= (std::int64_t{1} << 23) &&
            c.checkpoints.size() < 250) {
            bucket_table.assign(static_cast<std::size_t>(T) + 1, 0);
            std::uint8_t b = 0;
            for (std::int64_t v = 1; v <= T; ++v) {
                while ((*checkpoints)[b] < v) ++b;
                bucket_table[static_cast<std::size_t>(v)] = b;
            }
        }
    }

    std::size_t bucket(std::int64_t v) const {
        if (!bucket_table.empty()) return bucket_table[static_cast<std::size_t>(v)];
        return static_cast<std::size_t>(
            std::lower_bound(checkpoints->begin(), checkpoints->end(), v) -
            checkpoints->begin());
    }
};

struct TaskNode {
    std::array<std::int64_t, 4> q;
    std::int8_t forbidden;
};

template <CensusMode M>
void record(const TallyContext& ctx, Accumulator& acc, std::int64_t v) {
    ++acc.nodes;
    if constexpr (M == CensusMode::values) {
        acc.bits.set(v);
    } else {
        ++acc.bucket_counts[ctx.bucket(v)];
        if (ctx.modulus) ++acc.residue_counts[static_cast<std::size_t>(positive_mod(v, ctx.modulus))];
    }
}

// Depth-first expansion of one subtree. Every child value is <= T by the
// pruning rule, and each new value is the largest entry of its quadruple, so
// a child above T can be discarded with its whole subtree. In values mode a
// child equal to its parent as a multiset re-enters a packing symmetry and is
// skipped. Stops early when the node limit is hit, pushing the unexplored
// subtrees onto `overflow`.
template <CensusMode M>
void dfs_subtree(const TallyContext& ctx, TaskNode start, Accumulator& acc,
                 std::uint64_t node_limit, std::vector<TaskNode>* overflow) {
    const std::int64_t T = ctx.T;
    std::vector<TaskNode> stack;
    stack.reserve(1024);
    stack.push_back(start);
    while (!stack.empty()) {
        if (node_limit && acc.nodes >= node_limit) {
            overflow->insert(overflow->end(), stack.begin(), stack.end());
            return;
        }
        TaskNode n = stack.back();
        stack.pop_back();
        const std::int64_t s = n.q[0] + n.q[1] + n.q[2] + n.q[3];
        for (std::int8_t i = 0; i < 4; ++i) {
            if (i == n.forbidden) continue;
            const std::int64_t v = 2 * s - 3 * n.q[static_cast<std::size_t>(i)];
            if (v > T) continue;
            if constexpr (M == CensusMode::values) {
                if (v == n.q[static_cast<std::size_t>(i)]) continue;
            }
            record<M>(ctx, acc, v);
            TaskNode c = n;
            c.q[static_cast<std::size_t>(i)] = v;
            c.forbidden = i;
            stack.push_back(c);
        }
    }
}

void merge(Census& c, const Accumulator& acc) {
    c.circles_counted += acc.nodes;
    if (c.mode == CensusMode::values) {
        c.present.unite(acc.bits);
    } else {
        for (std::size_t i = 0; i < acc.bucket_counts.size(); ++i)
            c.checkpoint_counts[i] += acc.bucket_counts[i];
        for (std::size_t i = 0; i < acc.residue_counts.size(); ++i)
            c.residue_counts[i] += acc.residue_counts[i];
    }
}

Accumulator make_accumulator(const Census& c) {
    Accumulator acc;
    if (c.mode == CensusMode::values)
        acc.bits = Bitset(c.bound);
    else {
        acc.bucket_counts.assign(c.checkpoints.size(), 0);
        acc.residue_counts.assign(static_cast<std::size_t>(c.residue_modulus), 0);
    }
    return acc;
}

} // namespace

CensusRun::CensusRun(const Quadruple& root, std::int64_t T, CensusOptions opts) : opts_(opts) {
    if (!is_root(root))
        throw validation_error("census requires a root quadruple; run reduce first");
    if (T < 1 || T > kMaxBound)
        throw validation_error("census bound must be in [1, 2^40]");
    const Quadruple s = root.sorted();
    census_.root = s;
    census_.bound = T;
    census_.mode = opts.mode;
    census_.trivial = T < s[3];
    if (opts.mode == CensusMode::multiplicity && s[0] >= 0)
        throw unsupported_error(
            "multiplicity census of an unbounded packing is infinite; use values mode");
    if (opts.mode == CensusMode::values) {
        census_.present = Bitset(T);
    } else {
        census_.checkpoints = opts.checkpoints.empty() ? default_checkpoints(T, s[3])
                                                       : opts.checkpoints;
        std::sort(census_.checkpoints.begin(), census_.checkpoints.end());
        census_.checkpoints.erase(
            std::unique(census_.checkpoints.begin(), census_.checkpoints.end()),
            census_.checkpoints.end());
        if (census_.checkpoints.empty() || census_.checkpoints.front() < 1 ||
            census_.checkpoints.back() > T)
            throw validation_error("checkpoints must lie in [1, T]");
        if (census_.checkpoints.back() != T) census_.checkpoints.push_back(T);
        census_.checkpoint_counts.assign(census_.checkpoints.size(), 0);
        census_.residue_modulus = opts.residue_modulus;
        if (opts.residue_modulus < 0) throw validation_error("modulus must be nonnegative");
        census_.residue_counts.assign(static_cast<std::size_t>(opts.residue_modulus), 0);
    }
    seed();
}

void CensusRun::seed() {
    TallyContext ctx;
    ctx.build(census_);
    // the four root circles
    for (int i = 0; i < 4; ++i) {
        const std::int64_t e = census_.root[i];
        if (e <= 0) {
            census_.nonpositive_entries.push_back(e);
        } else if (e <= census_.bound) {
            if (census_.mode == CensusMode::values) census_.present.set(e);
        } else {
            continue;  // above the bound: not part of this census
        }
        ++census_.circles_counted;
        if (census_.mode == CensusMode::multiplicity) {
            ++census_.checkpoint_counts[e <= 0 ? 0 : ctx.bucket(e)];
            if (census_.residue_modulus)
                ++census_.residue_counts[static_cast<std::size_t>(
                    positive_mod(e, census_.residue_modulus))];
        }
    }
    frontier_.push_back(Task{census_.root.k, -1});
}

bool CensusRun::run(std::uint64_t node_budget) {
    TallyContext ctx;
    ctx.build(census_);

    int threads = opts_.threads;
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;

    const auto run_task = [&](TaskNode t, Accumulator& acc, std::uint64_t limit,
                              std::vector<TaskNode>* overflow) {
        if (census_.mode == CensusMode::values)
            dfs_subtree<CensusMode::values>(ctx, t, acc, limit, overflow);
        else
            dfs_subtree<CensusMode::multiplicity>(ctx, t, acc, limit, overflow);
    };

    if (node_budget > 0 || threads == 1) {
        Accumulator acc = make_accumulator(census_);
        std::vector<TaskNode> overflow;
        while (!frontier_.empty()) {
            if (node_budget && acc.nodes >= node_budget) break;
            TaskNode t{frontier_.back().q, frontier_.back().forbidden};
            frontier_.pop_back();
            run_task(t, acc, node_budget, &overflow);
        }
        for (const auto& t : overflow) frontier_.push_back(Task{t.q, t.forbidden});
        merge(census_, acc);
        return finished();
    }

    // split the frontier into enough disjoint subtrees for the workers
    const std::size_t want = static_cast<std::size_t>(threads) * 8;
    while (!frontier_.empty() && frontier_.size() < want) {
        Accumulator acc = make_accumulator(census_);
        std::vector<TaskNode> overflow;
        TaskNode t{frontier_.back().q, frontier_.back().forbidden};
        frontier_.pop_back();
        run_task(t, acc, 4096, &overflow);
        for (const auto& o : overflow) frontier_.push_back(Task{o.q, o.forbidden});
        merge(census_, acc);
    }

    if (!frontier_.empty()) {
        // workers own disjoint subtrees; merging is a union/sum, so the result
        // does not depend on the schedule
        std::vector<TaskNode> tasks;
        tasks.reserve(frontier_.size());
        for (const auto& t : frontier_) tasks.push_back(TaskNode{t.q, t.forbidden});
        frontier_.clear();

        std::atomic<std::size_t> next{0};
        std::vector<Accumulator> accs;
        accs.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) accs.push_back(make_accumulator(census_));
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    run_task(tasks[i], accs[static_cast<std::size_t>(w)], 0, nullptr);
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& acc : accs) merge(census_, acc);
    }
    return finished();
}

Census CensusRun::take() && {
    if (!finished())
        throw unsupported_error("census run is not finished; run() it to completion first");
    if (census_.mode == CensusMode::multiplicity && !census_.checkpoint_counts.empty()) {
        // raw per-bucket tallies -> cumulative N_P(t)
        for (std::size_t i = 1; i < census_.checkpoint_counts.size(); ++i)
            census_.checkpoint_counts[i] += census_.checkpoint_counts[i - 1];
    }
    return std::move(census_);
}

Census census(const Quadruple& root, std::int64_t T, CensusOptions opts) {
    CensusRun run(root, T, opts);
    run.run();
    return std::move(run).take();
}

namespace {

void write_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> b;
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b.data()), 8);
}
void write_i64(std::ostream& os, std::int64_t v) { write_u64(os, static_cast<std::uint64_t>(v)); }
void write_u32(std::ostream& os, std::uint32_t v) {
    std::array<unsigned char, 4> b;
    for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b.data()), 4);
}
std::uint64_t read_u64(std::istream& is) {
    std::array<unsigned char, 8> b;
    is.read(reinterpret_cast<char*>(b.data()), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}
std::int64_t read_i64(std::istream& is) { return static_cast<std::int64_t>(read_u64(is)); }
std::uint32_t read_u32(std::istream& is) {
    std::array<unsigned char, 4> b;
    is.read(reinterpret_cast<char*>(b.data()), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

} // namespace

void CensusRun::save(const std::filesystem::path& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw error("cannot open checkpoint file for writing: " + path.string());
    os.write("APCS", 4);
    os.put(1);  // version
    os.put(census_.mode == CensusMode::values ? 0 : 1);
    os.put(census_.trivial ? 1 : 0);
    for (int i = 0; i < 4; ++i) write_i64(os, census_.root[i]);
    write_u64(os, static_cast<std::uint64_t>(census_.bound));
    write_u64(os, census_.circles_counted);
    write_u32(os, static_cast<std::uint32_t>(census_.nonpositive_entries.size()));
    for (auto e : census_.nonpositive_entries) write_i64(os, e);
    write_u64(os, static_cast<std::uint64_t>(census_.present.words().size()));
    for (auto w : census_.present.words()) write_u64(os, w);
    write_u32(os, static_cast<std::uint32_t>(census_.checkpoints.size()));
    for (auto t : census_.checkpoints) write_i64(os, t);
    for (auto n : census_.checkpoint_counts) write_u64(os, n);
    write_i64(os, census_.residue_modulus);
    for (auto n : census_.residue_counts) write_u64(os, n);
    write_u32(os, static_cast<std::uint32_t>(frontier_.size()));
    for (const auto& t : frontier_) {
        for (int i = 0; i < 4; ++i) write_i64(os, t.q[static_cast<std::size_t>(i)]);
        os.put(static_cast<char>(t.forbidden));
    }
    if (!os) throw error("checkpoint write failed: " + path.string());
}

CensusRun CensusRun::load(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw error("cannot open checkpoint file: " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "APCS", 4) != 0)
        throw validation_error("not a census checkpoint file");
    if (is.get() != 1) throw validation_error("unsupported checkpoint version");
    CensusRun run;
    Census& c = run.census_;
    c.mode = is.get() == 0 ? CensusMode::values : CensusMode::multiplicity;
    c.trivial = is.get() != 0;
    for (int i = 0; i < 4; ++i) c.root[i] = read_i64(is);
    c.bound = static_cast<std::int64_t>(read_u64(is));
    c.circles_counted = read_u64(is);
    const auto n_nonpos = read_u32(is);
    for (std::uint32_t i = 0; i < n_nonpos; ++i) c.nonpositive_entries.push_back(read_i64(is));
    const auto n_words = read_u64(is);
    if (n_words) {
        c.present = Bitset(c.bound);
        if (c.present.words().size() != n_words)
            throw validation_error("checkpoint bitset size mismatch");
        for (auto& w : c.present.words()) w = read_u64(is);
    }
    const auto n_cps = read_u32(is);
    for (std::uint32_t i = 0; i < n_cps; ++i) c.checkpoints.push_back(read_i64(is));
    for (std::uint32_t i = 0; i < n_cps; ++i) c.checkpoint_counts.push_back(read_u64(is));
    c.residue_modulus = read_i64(is);
    for (std::int64_t i = 0; i < c.residue_modulus; ++i) c.residue_counts.push_back(read_u64(is));
    const auto n_tasks = read_u32(is);
    for (std::uint32_t i = 0; i < n_tasks; ++i) {
        Task t{};
        for (int j = 0; j < 4; ++j) t.q[static_cast<std::size_t>(j)] = read_i64(is);
        t.forbidden = static_cast<std::int8_t>(is.get());
        run.frontier_.push_back(t);
    }
    if (!is) throw validation_error("truncated checkpoint file");
    run.opts_.mode = c.mode;
    run.opts_.residue_modulus = c.residue_modulus;
    run.opts_.checkpoints = c.checkpoints;
    return run;
}

MissingReport missing_values(const Census& c, std::int64_t m) {
    if (m < 1) throw validation_error("modulus must be positive");
    if (c.mode != CensusMode::values)
        throw validation_error("missing-value reports need a values-mode census");
    MissingReport rep;
    rep.modulus = m;
    for (auto r : allowed_classes(c.root, m)) rep.allowed_classes.push_back(r);
    std::sort(rep.allowed_classes.begin(), rep.allowed_classes.end());
    for (auto r : rep.allowed_classes) {
        auto& list = rep.missing[r];
        for (std::int64_t v = (r == 0 ? m : r); v <= c.bound; v += m)
            if (!c.present.test(v)) list.push_back(v);
    }
    return rep;
}

std::set<std::int64_t> allowed_classes(const Quadruple& root, std::int64_t m) {
    if (m < 1) throw validation_error("modulus must be positive");
    if (descartes_defect(root) != 0)
        throw validation_error("allowed_classes needs a Descartes quadruple");
    using Pattern = std::array<std::int64_t, 4>;
    Pattern start;
    for (int i = 0; i < 4; ++i) start[static_cast<std::size_t>(i)] = positive_mod(root[i], m);
    std::sort(start.begin(), start.end());
    std::set<Pattern> seen{start};
    std::vector<Pattern> work{start};
    std::set<std::int64_t> residues(start.begin(), start.end());
    while (!work.empty()) {
        const Pattern p = work.back();
        work.pop_back();
        const std::int64_t s = p[0] + p[1] + p[2] + p[3];
        for (int i = 0; i < 4; ++i) {
            Pattern c = p;
            c[static_cast<std::size_t>(i)] =
                positive_mod(2 * (s - p[static_cast<std::size_t>(i)]) -
                                 p[static_cast<std::size_t>(i)],
                             m);
            std::sort(c.begin(), c.end());
            if (seen.insert(c).second) {
                residues.insert(c.begin(), c.end());
                work.push_back(c);
            }
        }
    }
    return residues;
}

const OrbitTable::Orbit* OrbitTable::find(const std::array<int, 4>& sorted_pattern) const {
    for (const auto& orb : orbits)
        if (std::binary_search(orb.patterns.begin(), orb.patterns.end(), sorted_pattern))
            return &orb;
    return nullptr;
}

OrbitTable orbit_partition(std::int64_t m, OrbitFilter filter) {
    if (m < 2) throw validation_error("modulus must be at least 2");
    using Pattern = std::array<int, 4>;

    // Residue patterns realized by integer Descartes quadruples: a box search
    // over (a,b,c) with the two integral fourth curvatures. The generator
    // closure below can only add realized patterns, so the box only has to hit
    // each orbit once.
    std::set<Pattern> pats;
    const std::int64_t B = std::max<std::int64_t>(2 * m, 8);
    for (std::int64_t a = -B; a <= B; ++a)
        for (std::int64_t b = -B; b <= B; ++b)
            for (std::int64_t c = -B; c <= B; ++c) {
                const std::int64_t rad = a * b + b * c + c * a;
                if (rad < 0) continue;
                const std::int64_t s = nt::isqrt(rad);
                if (s * s != rad) continue;
                for (const std::int64_t d : {a + b + c + 2 * s, a + b + c - 2 * s}) {
                    if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                    if (filter == OrbitFilter::primitive_classes) {
                        const std::int64_t g = std::gcd(
                            std::gcd(std::gcd(std::abs(a), std::abs(b)),
                                     std::gcd(std::abs(c), std::abs(d))),
                            m);
                        if (g != 1) continue;
                    }
                    Pattern p{static_cast<int>(positive_mod(a, m)),
                              static_cast<int>(positive_mod(b, m)),
                              static_cast<int>(positive_mod(c, m)),
                              static_cast<int>(positive_mod(d, m))};
                    std::sort(p.begin(), p.end());
                    pats.insert(p);
                }
            }

    const auto children = [m](const Pattern& p) {
        std::array<Pattern, 4> out;
        const std::int64_t s = p[0] + p[1] + p[2] + p[3];
        for (int i = 0; i < 4; ++i) {
            Pattern c = p;
            c[static_cast<std::size_t>(i)] = static_cast<int>(
                positive_mod(2 * (s - p[static_cast<std::size_t>(i)]) -
                                 p[static_cast<std::size_t>(i)],
                             m));
            std::sort(c.begin(), c.end());
            out[static_cast<std::size_t>(i)] = c;
        }
        return out;
    };

    // closure
    std::vector<Pattern> work(pats.begin(), pats.end());
    while (!work.empty()) {
        const Pattern p = work.back();
        work.pop_back();
        for (const auto& c : children(p))
            if (pats.insert(c).second) work.push_back(c);
    }

    // union-find over the patterns
    std::vector<Pattern> all(pats.begin(), pats.end());
    std::map<Pattern, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
    std::vector<std::size_t> parent(all.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t i = 0; i < all.size(); ++i)
        for (const auto& c : children(all[i])) {
            const std::size_t j = index.at(c);
            const std::size_t ri = find(i), rj = find(j);
            if (ri != rj) parent[ri] = rj;
        }

    std::map<std::size_t, std::vector<Pattern>> groups;
    for (std::size_t i = 0; i < all.size(); ++i) groups[find(i)].push_back(all[i]);

    OrbitTable table;
    table.modulus = m;
    for (auto& [key, patterns] : groups) {
        OrbitTable::Orbit orb;
        std::sort(patterns.begin(), patterns.end());
        orb.patterns = std::move(patterns);
        for (const auto& p : orb.patterns)
            for (int r : p) orb.residues.insert(r);
        table.orbits.push_back(std::move(orb));
    }
    std::sort(table.orbits.begin(), table.orbits.end(),
              [](const OrbitTable::Orbit& a, const OrbitTable::Orbit& b) {
                  return a.patterns.front() < b.patterns.front();
              });
    return table;
}

WitnessReport residue_cover_witness(const Census& c, std::int64_t m) {
    if (m < 1) throw validation_error("modulus must be positive");
    if (c.mode != CensusMode::values)
        throw validation_error("witness search needs a values-mode census");
    WitnessReport rep;
    rep.modulus = m;
    rep.cap = c.bound;
    rep.smallest.assign(static_cast<std::size_t>(m), -1);
    std::int64_t found = 0;
    for (std::int64_t v = 1; v <= c.bound && found < m; ++v) {
        if (!c.present.test(v)) continue;
        auto& slot = rep.smallest[static_cast<std::size_t>(v % m)];
        if (slot < 0) {
            slot = v;
            ++found;
        }
    }
    rep.complete = (found == m);
    if (!rep.complete && std::gcd(m, std::int64_t{30}) == 1)
        throw unsupported_error("cover incomplete below the cap; raise the cap (gcd(m,30)=1 "
                                "guarantees a full cover exists)");
    return rep;
}

WitnessReport residue_cover_witness(const Quadruple& root, std::int64_t m, std::int64_t cap) {
    CensusOptions opts;
    opts.mode = CensusMode::values;
    Census c = census(root, cap, opts);
    return residue_cover_witness(c, m);
}

std::int64_t r3_square(std::int64_t m) {
    if (m < 1) throw validation_error("m must be positive");
    std::int64_t r = 6;
    for (const auto& [p, e] : nt::factorize(m)) {
        if (p == 2) continue;
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe = checked::mul(pe, p);
        if (nt::chi4(p) == 1)
            r = checked::mul(r, pe);
        else
            r = checked::mul(r, checked::add(pe, 2 * ((pe - 1) / (p - 1))));
    }
    return r;
}

std::int64_t r3_square_primitive(std::int64_t m) {
    if (m < 1) throw validation_error("m must be positive");
    std::int64_t total = 0;
    for (auto d : nt::divisors(m)) {
        const int mu = nt::mobius(d);
        if (mu == 0) continue;
        total = checked::add(total, mu * r3_square(m / d));
    }
    return total;
}

std::int64_t count_quadruples(double T, bool primitive) {
    if (T < 0 || !std::isfinite(T)) throw validation_error("height bound must be nonnegative");
    // largest W with 2 W^2 <= T^2
    const long double t2 = static_cast<long double>(T) * static_cast<long double>(T);
    auto M = static_cast<std::int64_t>(std::sqrt(static_cast<double>(t2 / 2.0L)));
    while (2.0L * static_cast<long double>(M + 1) * static_cast<long double>(M + 1) <= t2) ++M;
    while (M > 0 && 2.0L * static_cast<long double>(M) * static_cast<long double>(M) > t2) --M;
    std::int64_t sum = 0;
    for (std::int64_t w = 1; w <= M; ++w)
        sum = checked::add(sum, primitive ? r3_square_primitive(w) : r3_square(w));
    const std::int64_t both_signs = checked::mul(2, sum);
    return primitive ? both_signs : checked::add(1, both_signs);
}

double growth_exponent(const Census& c) {
    if (c.mode != CensusMode::multiplicity)
        throw validation_error("growth exponent needs a multiplicity-mode census");
    if (c.bound < 10000)
        throw validation_error("growth exponent needs a census bound of at least 10^4");
    // fit over the top decades; below ~100 the counts are too grainy
    const double t_min = std::max(100.0, static_cast<double>(c.bound) * 1e-4);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < c.checkpoints.size(); ++i) {
        const double t = static_cast<double>(c.checkpoints[i]);
        if (t < t_min || c.checkpoint_counts[i] == 0) continue;
        const double x = std::log(t);
        const double y = std::log(static_cast<double>(c.checkpoint_counts[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw validation_error("not enough checkpoints for a fit");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace apollonian
