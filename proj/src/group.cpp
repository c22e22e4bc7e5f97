#include "apollonian/group.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace apollonian {

Word Word::from_letters(std::vector<int> letters) {
    for (std::size_t i = 0; i < letters.size(); ++i) {
        if (letters[i] < 1 || letters[i] > 4)
            throw validation_error("word letter out of range 1..4");
        if (i > 0 && letters[i] == letters[i - 1])
            throw validation_error("word is not reduced: adjacent equal letters at position " +
                                   std::to_string(i));
    }
    Word w;
    w.letters_ = std::move(letters);
    return w;
}

std::string Word::str() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (int g : letters_) {
        s += 'S';
        s += static_cast<char>('0' + g);
    }
    return s;
}

BigInt GroupElement::entry(int r, int c) const {
    if (wide()) return std::get<1>(m_)[static_cast<std::size_t>(4 * r + c)];
    return BigInt(std::get<0>(m_)(r, c));
}

BigInt GroupElement::frobenius_sq() const {
    if (!wide()) {
        // recompute in wide arithmetic: the sum of squares may not fit
        BigInt s = 0;
        for (auto v : std::get<0>(m_).a) s += BigInt(v) * v;
        return s;
    }
    BigInt s = 0;
    for (const auto& v : std::get<1>(m_)) s += v * v;
    return s;
}

double GroupElement::frobenius() const {
    return std::sqrt(static_cast<double>(frobenius_sq()));
}

const Mat4& GroupElement::narrow() const {
    if (wide())
        throw unsupported_error("matrix entries exceed 64 bits");
    return std::get<0>(m_);
}

Quadruple apply_generator(const Quadruple& q, Generator g) {
    if (g < 1 || g > 4) throw validation_error("generator index must be in 1..4");
    Quadruple r = q;
    const int i = g - 1;
    std::int64_t others = 0;
    for (int j = 0; j < 4; ++j)
        if (j != i) others = checked::add(others, q[j]);
    r[i] = checked::sub(checked::mul(2, others), q[i]);
    return r;
}

Quadruple apply_word(const Quadruple& q, const Word& w) {
    Quadruple r = q;
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) r = apply_generator(r, *it);
    return r;
}

GroupElement word_to_matrix(const Word& w) {
    try {
        Mat4 m = Mat4::identity();
        for (int g : w.letters()) m = m * generator_matrix(g);
        return GroupElement(m);
    } catch (const arithmetic_range_error&) {
        // promote to arbitrary precision and redo the product
        std::array<BigInt, 16> m{};
        m[0] = m[5] = m[10] = m[15] = 1;
        for (int g : w.letters()) {
            const Mat4 s = generator_matrix(g);
            std::array<BigInt, 16> r{};
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    BigInt acc = 0;
                    for (int k = 0; k < 4; ++k)
                        acc += m[static_cast<std::size_t>(4 * i + k)] * s(k, j);
                    r[static_cast<std::size_t>(4 * i + j)] = std::move(acc);
                }
            m = std::move(r);
        }
        return GroupElement(std::move(m));
    }
}

Mat4 descartes_form_matrix() {
    Mat4 q;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) q(i, j) = (i == j) ? 1 : -1;
    return q;
}

bool is_root(const Quadruple& q) {
    if (q.lsum() <= 0)
        throw validation_error("root test needs a positive entry sum; negate the quadruple first");
    const Quadruple s = q.sorted();
    if (!(s[0] <= 0 && 0 <= s[1])) return false;
    return checked::add(checked::add(s[0], s[1]), s[2]) >= s[3];
}

ReductionResult reduce(const Quadruple& q) {
    if (q.is_zero()) throw validation_error("cannot reduce the zero quadruple");
    if (descartes_defect(q) != 0)
        throw validation_error("not a Descartes quadruple: defect " +
                               std::to_string(descartes_defect(q)));
    ReductionResult res;
    Quadruple v = q;
    if (v.lsum() < 0) {
        v = v.negated();
        res.negated = true;
    }
    std::vector<int> applied;
    for (;;) {
        int imax = 0;
        for (int i = 1; i < 4; ++i)
            if (v[i] > v[imax]) imax = i;
        const std::int64_t s = v.lsum();
        const std::int64_t replaced =
            checked::sub(checked::mul(2, checked::sub(s, v[imax])), v[imax]);
        if (replaced >= v[imax]) break;  // no generator decreases the sum
        v[imax] = replaced;
        applied.push_back(imax + 1);
        ++res.steps;
    }
    res.root = v;
    res.word = Word::from_letters(std::move(applied));
    return res;
}

Word max_word(std::int64_t n) {
    if (n < 0) throw validation_error("word length must be nonnegative");
    const int i = static_cast<int>(n % 4);
    const std::int64_t blocks = n / 4;
    std::vector<int> letters;
    letters.reserve(static_cast<std::size_t>(n));
    for (int g = i; g >= 1; --g) letters.push_back(g);
    for (std::int64_t b = 0; b < blocks; ++b)
        for (int g = 4; g >= 1; --g) letters.push_back(g);
    return Word::from_letters(std::move(letters));
}

namespace {

std::int64_t sup_norm(const Quadruple& q) {
    std::int64_t s = 0;
    for (auto v : q.k) s = std::max(s, v < 0 ? checked::neg(v) : v);
    return s;
}

// depth-first over reduced words of exact length, letters ascending so the
// order is deterministic; prune(q) may cut a subtree, on_leaf sees the final
// quadruple and the letters in application order
template <typename Prune, typename OnLeaf>
void search_words(const Quadruple& v, int length, Prune&& prune, OnLeaf&& on_leaf) {
    std::vector<int> path;
    path.reserve(static_cast<std::size_t>(length));
    auto rec = [&](auto&& self, const Quadruple& q, int last, int depth) -> void {
        if (depth == length) {
            on_leaf(q, path);
            return;
        }
        for (int g = 1; g <= 4; ++g) {
            if (g == last) continue;
            Quadruple c = apply_generator(q, g);
            if (prune(c)) continue;
            path.push_back(g);
            self(self, c, g, depth + 1);
            path.pop_back();
        }
    };
    rec(rec, v, 0, 0);
}

} // namespace

GrowthResult extremal_growth(const Quadruple& root, int length, GrowthMode mode) {
    if (!is_root(root))
        throw validation_error("extremal growth requires a root quadruple");
    if (length < 0) throw validation_error("length must be nonnegative");
    const Quadruple v = root.sorted();
    if (mode == GrowthMode::max && v[0] >= 0)
        throw validation_error("max growth requires a bounded root (negative smallest entry)");

    if (length == 0) return {sup_norm(v), Word()};

    if (mode == GrowthMode::max) {
        const Word tn = max_word(length);
        const std::int64_t value = sup_norm(apply_word(v, tn));
        if (length <= 12) {
            std::int64_t best = 0;
            search_words(
                v, length, [](const Quadruple&) { return false; },
                [&](const Quadruple& q, const std::vector<int>&) {
                    best = std::max(best, sup_norm(q));
                });
            if (best != value)
                throw error("exhaustive search contradicts the extremal word");
        }
        return {value, tn};
    }

    // min: branch and bound; sup norms never decrease along reduced words from a root
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    std::vector<int> best_path;
    search_words(
        v, length, [&](const Quadruple& q) { return sup_norm(q) > best; },
        [&](const Quadruple& q, const std::vector<int>& p) {
            const std::int64_t s = sup_norm(q);
            if (s < best || best_path.empty()) {
                best = s;
                best_path = p;
            }
        });
    // stored application order; word letters are matrix order (last applied first)
    std::reverse(best_path.begin(), best_path.end());
    return {best, Word::from_letters(best_path)};
}

SpectralData joint_spectral_radius() {
    SpectralData out;
    // Along the extremal cycle each inserted value obeys
    //   x_n = 2 x_{n-1} + 2 x_{n-2} + 2 x_{n-3} - x_{n-4},
    // one reflection per step. Its companion matrix is the per-letter growth
    // operator; the four-letter word matrix S4 S3 S2 S1 has exactly the
    // fourth powers of its eigenvalues (checked in the test suite).
    Mat4 companion{};
    companion(0, 1) = 1;
    companion(1, 2) = 1;
    companion(2, 3) = 1;
    companion(3, 0) = -1;
    companion(3, 1) = 2;
    companion(3, 2) = 2;
    companion(3, 3) = 2;
    out.charpoly = characteristic_polynomial(companion);
    // Newton from the right of the largest root; the quartic is monic
    const auto& c = out.charpoly;
    auto p = [&](double x) {
        double r = static_cast<double>(c[0]);
        for (int i = 1; i <= 4; ++i) r = r * x + static_cast<double>(c[static_cast<std::size_t>(i)]);
        return r;
    };
    auto dp = [&](double x) {
        double r = 4.0 * static_cast<double>(c[0]);
        for (int i = 1; i <= 3; ++i)
            r = r * x + static_cast<double>(4 - i) * static_cast<double>(c[static_cast<std::size_t>(i)]);
        return r;
    };
    double x = 1.0;
    for (int i = 1; i <= 4; ++i)
        x = std::max(x, std::abs(static_cast<double>(c[static_cast<std::size_t>(i)])));
    x += 1.0;
    for (int it = 0; it < 100; ++it) {
        const double step = p(x) / dp(x);
        x -= step;
        if (std::abs(step) < 1e-15 * std::abs(x)) break;
    }
    out.theta = x;
    out.jsr = std::pow(x, 0.25);
    return out;
}

MedianGrowth median_growth_experiment(const Quadruple& root, int length, int samples,
                                      std::uint64_t seed) {
    if (!is_root(root))
        throw validation_error("median growth experiment requires a root quadruple");
    if (samples < 1) throw validation_error("need at least one sample");
    if (length < 0) throw validation_error("length must be nonnegative");
    const Quadruple v = root.sorted();
    if (length == 0) return {sup_norm(v), 0.0};

    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> sups;
    sups.reserve(static_cast<std::size_t>(samples));
    for (int s = 0; s < samples; ++s) {
        Quadruple q = v;
        int last = 0;
        for (int i = 0; i < length; ++i) {
            int g;
            if (last == 0) {
                g = 1 + static_cast<int>(rng() % 4);
            } else {
                int pick = static_cast<int>(rng() % 3);
                g = 0;
                for (int cand = 1; cand <= 4; ++cand) {
                    if (cand == last) continue;
                    if (pick-- == 0) {
                        g = cand;
                        break;
                    }
                }
            }
            q = apply_generator(q, g);
            last = g;
        }
        sups.push_back(sup_norm(q));
    }
    auto mid = sups.begin() + (samples - 1) / 2;  // lower median
    std::nth_element(sups.begin(), mid, sups.end());
    MedianGrowth out;
    out.median = *mid;
    out.log_rate = std::log(static_cast<double>(out.median)) / static_cast<double>(length);
    return out;
}

} // namespace apollonian
