#include <doctest.h>

#include "percolab/errors.hpp"
#include "percolab/predicates.hpp"

#include <algorithm>
#include <random>

using namespace percolab;

namespace {

Configuration random_config(const GraphShape& shape, double p, std::mt19937_64& rng)
{
    std::bernoulli_distribution coin(p);
    Configuration c(shape);
    for (SiteIndex v = 0; v < shape.volume(); ++v)
        if (coin(rng)) c.occupy(v);
    return c;
}

Configuration plane_from_rows(const std::vector<std::string>& rows, int theta = 2)
{
    const int n = static_cast<int>(rows.size());
    Configuration c(GraphShape(0, 2, 1, n, theta));
    for (int r = 0; r < n; ++r)
        for (int col = 0; col < n; ++col)
            if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] == 'x') c.occupy(Site{{}, {r, col}});
    return c;
}

// Plane i of the dynamics at time 1, computed with the generic engine.
bool opens_at_time_one(const Configuration& c, int plane, int k)
{
    const Configuration next = step_sync(c, Region::all(c.shape()), k);
    const SiteIndex ps = c.shape().plane_size();
    for (SiteIndex s = 0; s < ps; ++s) {
        const SiteIndex v = static_cast<SiteIndex>(plane) * ps + s;
        if (next.occupied(v) && !c.occupied(v)) return true;
    }
    return false;
}

// Open neighbors of (i, x) inside {i, j} x K_n^2, counted directly from the definition.
int open_in_pair(const Configuration& c, int i, int j, int r, int col)
{
    const int n = c.shape().n();
    int count = 0;
    for (int t = 0; t < n; ++t) {
        if (t != col && c.occupied(Site{{i}, {r, t}})) ++count;
        if (t != r && c.occupied(Site{{i}, {t, col}})) ++count;
    }
    if (c.occupied(Site{{j}, {r, col}})) ++count;
    return count;
}

std::vector<BlockingInterval> blocking_oracle(const Configuration& c, int theta)
{
    const int m = c.shape().m();
    const int n = c.shape().n();
    auto side_ok = [&](int i, int j) {
        for (int r = 0; r < n; ++r)
            for (int col = 0; col < n; ++col)
                if (open_in_pair(c, i, j, r, col) > theta - 2) return false;
        return true;
    };
    std::vector<BlockingInterval> out;
    for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2) {
            if (i1 == i2) continue;
            bool ok = side_ok(i1, (i1 + 1) % m) && side_ok(i2, (i2 + m - 1) % m);
            for (int i = (i1 + 1) % m; ok && i != i2; i = (i + 1) % m) ok = !opens_at_time_one(c, i, theta);
            if (ok) out.push_back({i1, i2});
        }
    return out;
}

} // namespace

TEST_CASE("plane view counts")
{
    auto c = plane_from_rows({"x..", ".x.", "xx."});
    PlaneView v(c);
    CHECK(v.n() == 3);
    CHECK(v.row_counts() == std::vector<int>{1, 1, 2});
    CHECK(v.col_counts() == std::vector<int>{2, 2, 0});
    CHECK(v.occupied_count() == 4);
    CHECK(v.to_configuration(2) == c);
}

TEST_CASE("viability")
{
    auto c = plane_from_rows({"x..x", "....", "..x.", "...."});
    PlaneView v(c);
    CHECK(is_viable(v, 2));
    CHECK_FALSE(is_viable(v, 3));
    CHECK(is_viable(v, 0));
}

TEST_CASE("plane kernel agrees with the generic engine")
{
    std::mt19937_64 rng(11);
    int spanned = 0;
    for (int iter = 0; iter < 3000; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 9);
        const int k = static_cast<int>(rng() % 7);
        const double p = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
        auto c = random_config(GraphShape(0, 2, 1, n, 2), p, rng);
        PlaneView v(c);
        const bool fast = is_internally_spanned(v, k);
        REQUIRE(fast == is_internally_spanned_reference(v, k));
        spanned += fast ? 1 : 0;
    }
    CHECK(spanned > 300);
    CHECK(spanned < 2700);
}

TEST_CASE("internal inertness matches one synchronous step")
{
    std::mt19937_64 rng(12);
    for (int iter = 0; iter < 1000; ++iter) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const int k = 1 + static_cast<int>(rng() % 5);
        auto c = random_config(GraphShape(0, 2, 1, n, k), 0.2, rng);
        PlaneView v(c);
        CHECK(is_internally_inert(v, k) == (step_sync(c, Region::all(c.shape()), k) == c));
    }
}

TEST_CASE("inertness with neighboring planes matches the time-1 dynamics")
{
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 400; ++iter) {
        const int m = 1 + static_cast<int>(rng() % 5);
        const int n = 2 + static_cast<int>(rng() % 5);
        const int k = 1 + static_cast<int>(rng() % 6);
        auto c = random_config(GraphShape(1, 2, m, n, k), 0.25, rng);
        for (int i = 0; i < m; ++i) CHECK(is_inert(c, i, k) == !opens_at_time_one(c, i, k));
    }
}

TEST_CASE("subsquares")
{
    auto sq = subsquares(7);
    REQUIRE(sq.size() == 4);
    CHECK(sq[0].row_begin == 0);
    CHECK(sq[0].size == 3);
    CHECK(sq[1].col_begin == 4);
    CHECK(sq[3].row_begin == 4);
    CHECK(sq[3].col_begin == 4);
    // Even n drops the last line and reuses the odd layout.
    auto even = subsquares(8);
    CHECK(even[3].row_begin == 4);
    CHECK(even[3].size == 3);
    for (int n = 3; n < 30; ++n)
        for (const auto& s : subsquares(n)) {
            const int odd = n % 2 ? n : n - 1;
            CHECK(s.row_begin + s.size <= odd);
            CHECK(s.row_begin != (odd - 1) / 2);
            CHECK(s.col_begin != (odd - 1) / 2);
        }
}

TEST_CASE("propriety")
{
    // n = 7 and theta = 2 (n >= 6 is required); subsquares have side 3.
    std::vector<std::string> rows = {"xx..xx.", "xx..xx.", ".......", ".......",
                                     "xx..xx.", "xx..xx.", "......."};
    auto c = plane_from_rows(rows);
    PlaneView v(c);
    CHECK(is_proper(v, 1, 2));
    CHECK(is_proper(v, 2, 2));
    CHECK_FALSE(is_proper(v, 3, 2));
    rows[4] = "......."; // bottom squares lose a row
    auto d = plane_from_rows(rows);
    CHECK_FALSE(is_proper(PlaneView(d), 1, 2));
    CHECK_THROWS_AS(is_proper(v, 1, 3), UnsupportedError);
}

TEST_CASE("single-plane implication chain")
{
    // (ell-viable and (ell-1)-proper) => (2ell-1)-IS => not (2ell-1)-II => ell-viable,
    // and (ell-1)-proper => (2ell-2)-IS, with propriety measured against theta = 2ell.
    std::mt19937_64 rng(14);
    struct Case {
        int ell;
        int n;
        double p;
    };
    for (const Case cs : {Case{2, 11, 0.4}, Case{2, 13, 0.35}, Case{3, 15, 0.5}, Case{3, 17, 0.45}}) {
        const int theta = 2 * cs.ell;
        int antecedent = 0;
        int proper = 0;
        for (int iter = 0; iter < 1500; ++iter) {
            auto c = random_config(GraphShape(0, 2, 1, cs.n, theta), cs.p, rng);
            PlaneView v(c);
            const bool viable = is_viable(v, cs.ell);
            const bool prop = is_proper(v, cs.ell - 1, theta);
            const bool is_odd = is_internally_spanned(v, 2 * cs.ell - 1);
            const bool ii_odd = is_internally_inert(v, 2 * cs.ell - 1);
            if (viable && prop) {
                ++antecedent;
                CHECK(is_odd);
            }
            if (is_odd) CHECK_FALSE(ii_odd);
            if (!ii_odd) CHECK(viable);
            if (prop) {
                ++proper;
                CHECK(is_internally_spanned(v, 2 * cs.ell - 2));
            }
        }
        CHECK(antecedent > 100);
        CHECK(proper > 100);
    }
}

TEST_CASE("classification carries three thresholds")
{
    std::mt19937_64 rng(15);
    auto c = random_config(GraphShape(1, 2, 4, 10, 4), 0.15, rng);
    auto planes = classify_planes(c, 4);
    REQUIRE(planes.size() == 4);
    for (const auto& pc : planes) {
        REQUIRE(pc.flags.size() == 3);
        CHECK(pc.at(2).k == 2);
        CHECK(pc.at(4).proper.has_value());
        // Internal spanning is monotone in the threshold.
        CHECK((!pc.at(4).internally_spanned || pc.at(3).internally_spanned));
        CHECK((!pc.at(3).internally_spanned || pc.at(2).internally_spanned));
        CHECK(pc.exceptional == (pc.at(4).internally_spanned || !pc.at(3).internally_spanned));
    }
    CHECK_THROWS_AS(planes[0].at(7), std::out_of_range);
    auto small = classify_planes(random_config(GraphShape(1, 2, 3, 6, 3), 0.3, rng), 3);
    CHECK_FALSE(small[0].at(3).proper.has_value());
}

TEST_CASE("blocking intervals match the definition")
{
    std::mt19937_64 rng(16);
    int found = 0;
    for (int iter = 0; iter < 300; ++iter) {
        const int m = 3 + static_cast<int>(rng() % 5);
        const int n = 2 + static_cast<int>(rng() % 4);
        const int theta = 2 + static_cast<int>(rng() % 4);
        const double p = std::uniform_real_distribution<double>(0.0, 0.3)(rng);
        auto c = random_config(GraphShape(1, 2, m, n, theta), p, rng);
        auto fast = find_blocking_intervals(c, theta);
        auto oracle = blocking_oracle(c, theta);
        std::sort(fast.begin(), fast.end(), [](auto a, auto b) { return std::pair(a.i1, a.i2) < std::pair(b.i1, b.i2); });
        REQUIRE(fast == oracle);
        found += fast.empty() ? 0 : 1;
        CHECK(has_blocking_interval(c, theta) == !fast.empty());
        if (!fast.empty()) CHECK(find_blocking_intervals(c, theta, 1).size() == 1);
    }
    CHECK(found > 30);
}

TEST_CASE("a blocking interval survives a fully occupied outside")
{
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int iter = 0; iter < 300; ++iter) {
        const int m = 3 + static_cast<int>(rng() % 6);
        const int n = 3 + static_cast<int>(rng() % 4);
        const int theta = 2 + static_cast<int>(rng() % 4);
        const GraphShape shape(1, 2, m, n, theta);
        auto c = random_config(shape, 0.1, rng);
        for (const auto& b : find_blocking_intervals(c, theta, 4)) {
            Configuration filled = c;
            std::vector<bool> inside(static_cast<std::size_t>(m), false);
            for (int i = b.i1;; i = (i + 1) % m) {
                inside[static_cast<std::size_t>(i)] = true;
                if (i == b.i2) break;
            }
            for (SiteIndex v = 0; v < shape.volume(); ++v)
                if (!inside[plane_of(shape, v)]) filled.occupy(v);
            const auto after = run_fast(filled, theta).final;
            for (SiteIndex v = 0; v < shape.volume(); ++v)
                if (inside[plane_of(shape, v)]) REQUIRE(after.occupied(v) == c.occupied(v));
            ++checked;
        }
    }
    CHECK(checked > 30);
}

TEST_CASE("two adjacent empty planes block at theta = 2")
{
    GraphShape shape(1, 2, 5, 4, 2);
    Configuration c = Configuration::full(shape);
    Configuration holes(shape);
    for (SiteIndex v = 0; v < shape.volume(); ++v)
        if (plane_of(shape, v) != 1 && plane_of(shape, v) != 2) holes.occupy(v);
    CHECK(has_blocking_interval(holes, 2));
    CHECK_FALSE(spans(holes, 2));
    CHECK_FALSE(necessary_condition(holes, 2));
    CHECK_FALSE(has_blocking_interval(c, 2));
}

TEST_CASE("sufficient and necessary conditions bracket spanning")
{
    std::mt19937_64 rng(18);
    int suff = 0, span_count = 0, nec = 0;
    for (int iter = 0; iter < 1500; ++iter) {
        const int m = 3 + static_cast<int>(rng() % 6);
        const int n = 3 + static_cast<int>(rng() % 6);
        const int theta = 3 + static_cast<int>(rng() % 3);
        const double p = std::uniform_real_distribution<double>(0.05, 0.5)(rng);
        auto c = random_config(GraphShape(1, 2, m, n, theta), p, rng);
        const bool s = sufficient_condition(c, theta);
        const bool sp = spans(c, theta);
        const bool ne = necessary_condition(c, theta);
        if (s) REQUIRE(sp);
        if (sp) REQUIRE(ne);
        suff += s;
        span_count += sp;
        nec += ne;
    }
    CHECK(suff > 50);
    CHECK(span_count > suff);
    CHECK(nec > span_count);
    CHECK(nec < 1500);
}

TEST_CASE("sufficient condition against a direct evaluation")
{
    std::mt19937_64 rng(19);
    for (int iter = 0; iter < 500; ++iter) {
        const int m = 3 + static_cast<int>(rng() % 5);
        const int n = 3 + static_cast<int>(rng() % 5);
        const int theta = 3 + static_cast<int>(rng() % 3);
        auto c = random_config(GraphShape(1, 2, m, n, theta), 0.35, rng);
        bool all_low = true, any_top = false;
        std::vector<bool> top(static_cast<std::size_t>(m)), bad(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            PlaneView v(c, static_cast<SiteIndex>(i));
            all_low = all_low && is_internally_spanned_reference(v, theta - 2);
            top[static_cast<std::size_t>(i)] = is_internally_spanned_reference(v, theta);
            bad[static_cast<std::size_t>(i)] = !is_internally_spanned_reference(v, theta - 1);
            any_top = any_top || top[static_cast<std::size_t>(i)];
        }
        bool between = true;
        for (int i = 0; i < m; ++i) {
            if (!bad[static_cast<std::size_t>(i)]) continue;
            // walk to the next bad plane; a top plane must appear strictly before it
            bool seen = false;
            for (int s = 1; s <= m; ++s) {
                const int j = (i + s) % m;
                if (bad[static_cast<std::size_t>(j)]) break;
                seen = seen || top[static_cast<std::size_t>(j)];
            }
            between = between && seen;
        }
        CHECK(sufficient_condition(c, theta) == (all_low && any_top && between));
    }
}

TEST_CASE("z-assisted counts")
{
    std::mt19937_64 rng(20);
    for (int iter = 0; iter < 100; ++iter) {
        const int m = 3 + static_cast<int>(rng() % 4);
        const int n = 2 + static_cast<int>(rng() % 5);
        const int theta = 2 + static_cast<int>(rng() % 4);
        const GraphShape shape(1, 2, m, n, theta);
        auto c = random_config(shape, 0.3, rng);
        SiteIndex a = 0, b = 0, d = 0;
        for (SiteIndex v = 0; v < shape.volume(); ++v) {
            int zn = 0, kn = 0;
            const Site s = site_of(shape, v);
            for (const Site& w : neighbors(shape, s)) {
                if (!c.occupied(w)) continue;
                (w.z == s.z ? kn : zn) += 1;
            }
            a += (zn >= 1 && kn >= theta - 2);
            b += (zn >= 1 && kn >= theta - 1);
            d += (zn >= 2 && kn >= theta - 2);
        }
        CHECK(count_z_assisted(c, theta, AssistVariant::one_z_theta_minus_2) == a);
        CHECK(count_z_assisted(c, theta, AssistVariant::one_z_theta_minus_1) == b);
        CHECK(count_z_assisted(c, theta, AssistVariant::two_z_theta_minus_2) == d);
    }
}

TEST_CASE("empty safe boxes prevent spanning")
{
    std::mt19937_64 rng(21);
    int boxes = 0;
    for (int iter = 0; iter < 400; ++iter) {
        const int d = 1 + static_cast<int>(rng() % 2);
        const int theta = d + 1 + static_cast<int>(rng() % (d + 1));
        const int m = 3 + static_cast<int>(rng() % 4);
        const int n = 2 + static_cast<int>(rng() % 4);
        const GraphShape shape(d, 1, m, n, theta);
        auto c = random_config(shape, std::uniform_real_distribution<double>(0.05, 0.6)(rng), rng);
        const auto box = find_empty_safe_box(c, theta);
        if (!box) continue;
        ++boxes;
        CHECK_FALSE(spans(c, theta));
        int doubled = 0;
        for (bool b : box->doubled) doubled += b;
        CHECK(doubled == 2 * d + 1 - theta);
        // every line of the box is empty
        for (unsigned corner = 0; corner < (1U << d); ++corner) {
            Site s;
            bool in_box = true;
            for (int i = 0; i < d; ++i) {
                const bool up = (corner >> i) & 1U;
                if (up && !box->doubled[static_cast<std::size_t>(i)]) in_box = false;
                s.z.push_back((box->lower[static_cast<std::size_t>(i)] + (up ? 1 : 0)) % m);
            }
            if (!in_box) continue;
            for (int k = 0; k < n; ++k) {
                s.k = {k};
                CHECK_FALSE(c.occupied(s));
            }
        }
    }
    CHECK(boxes > 40);
    CHECK_THROWS_AS(find_empty_safe_box(Configuration(GraphShape(1, 2, 4, 3, 2)), 2), UnsupportedError);
    CHECK_THROWS_AS(find_empty_safe_box(Configuration(GraphShape(2, 1, 4, 3, 6)), 6), UnsupportedError);
}

TEST_CASE("shape preconditions")
{
    Configuration c(GraphShape(2, 2, 3, 3, 3));
    CHECK_THROWS_AS(classify_planes(c, 3), UnsupportedError);
    CHECK_THROWS_AS(sufficient_condition(Configuration(GraphShape(1, 2, 2, 3, 3)), 3), UnsupportedError);
    CHECK_THROWS_AS(PlaneView(Configuration(GraphShape(1, 1, 3, 3, 3))), UnsupportedError);
}
