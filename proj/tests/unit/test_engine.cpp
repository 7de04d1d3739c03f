#include <doctest.h>

#include "percolab/engine.hpp"

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

GraphShape random_shape(std::mt19937_64& rng)
{
    const int d1 = static_cast<int>(rng() % 3);
    const int d2 = 1 + static_cast<int>(rng() % 2);
    const int m = 1 + static_cast<int>(rng() % 6);
    const int n = 2 + static_cast<int>(rng() % 7);
    const int theta = 1 + static_cast<int>(rng() % 7);
    return {d1, d2, m, n, theta};
}

} // namespace

TEST_CASE("step_sync fixpoints")
{
    GraphShape shape(1, 2, 3, 3, 2);
    auto all = Region::all(shape);
    auto full = Configuration::full(shape);
    CHECK(step_sync(full, all, 2) == full);
    auto empty = Configuration::empty(shape);
    CHECK(step_sync(empty, all, 1) == empty);
}

TEST_CASE("step_sync on a K_3^2 plane with two diagonal sites")
{
    GraphShape plane(0, 2, 1, 3, 2);
    Configuration c(plane);
    c.occupy(Site{{}, {0, 0}});
    c.occupy(Site{{}, {1, 1}});
    auto next = step_sync(c, Region::all(plane), 2);
    CHECK(next.occupied_count() == 4);
    CHECK(next.occupied(Site{{}, {0, 1}}));
    CHECK(next.occupied(Site{{}, {1, 0}}));

    auto run = run_naive(c, Region::all(plane), 2);
    CHECK(run.stats.spanned);
    CHECK(run.stats.rounds == 3); // (2,2) needs a full row first
    CHECK(run.stats.activations == 7);
}

TEST_CASE("complete graph with theta or theta-1 occupied sites")
{
    GraphShape kn(0, 1, 1, 6, 3);
    Configuration c(kn);
    c.occupy(0);
    c.occupy(1);
    CHECK(run_naive(c, Region::all(kn), 3).final == c);
    CHECK(run_fast(c, Region::all(kn), 3).final == c);
    c.occupy(4);
    CHECK(run_naive(c, Region::all(kn), 3).stats.spanned);
    CHECK(run_fast(c, Region::all(kn), 3).stats.spanned);
}

TEST_CASE("a single full plane of Z_3 x K_3^2 at theta 2")
{
    GraphShape shape(1, 2, 3, 3, 2);
    Configuration c(shape);
    for (SiteIndex v = 0; v < shape.plane_size(); ++v) c.occupy(v);

    // Sites of planes 1 and 2 see exactly one open neighbor (their copy in
    // plane 0), so the full plane alone is stable.
    auto naive = run_naive(c, Region::all(shape), 2);
    CHECK(naive.final == c);
    CHECK(naive.stats.rounds == 0);
    CHECK(run_fast(c, Region::all(shape), 2).final == c);

    // One extra seed in plane 1 opens its two lines, then plane 1 fills and
    // plane 2 sees two open cycle neighbors everywhere.
    c.occupy(Site{{1}, {1, 2}});
    naive = run_naive(c, Region::all(shape), 2);
    CHECK(naive.stats.spanned);
    CHECK(naive.stats.rounds == 3);
    CHECK(run_fast(c, Region::all(shape), 2).final == naive.final);
}

TEST_CASE("fast engine matches naive engine on random instances")
{
    std::mt19937_64 rng(2024);
    const double ps[] = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
    for (int t = 0; t < 400; ++t) {
        GraphShape shape = random_shape(rng);
        if (shape.volume() > 4000) continue;
        auto c = random_config(shape, ps[t % 6], rng);
        auto region = Region::all(shape);
        auto a = run_naive(c, region, shape.theta());
        auto b = run_fast(c, region, shape.theta());
        REQUIRE(a.final == b.final);
        REQUIRE(a.stats.activations == b.stats.activations);
        REQUIRE(a.stats.spanned == b.stats.spanned);
        REQUIRE(b.stats.rounds == 0);
    }
}

TEST_CASE("restricted runs: fast matches naive and never counts outside sites")
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        GraphShape shape(1, 2, 3 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 5),
                         1 + static_cast<int>(rng() % 5));
        auto c = random_config(shape, 0.3, rng);
        const int i1 = static_cast<int>(rng() % shape.m());
        const int i2 = static_cast<int>(rng() % shape.m());
        auto region = Region::slab(shape, i1, i2);
        auto a = run_naive(c, region, shape.theta());
        auto b = run_fast(c, region, shape.theta());
        REQUIRE(a.final == b.final);
        // Outside the region nothing changes.
        for (SiteIndex v = 0; v < shape.volume(); ++v)
            if (!region.contains(v)) REQUIRE(a.final.occupied(v) == c.occupied(v));
        // Restricted growth is a lower bound on unrestricted growth.
        auto free = run_fast(c, Region::all(shape), shape.theta());
        REQUIRE(b.final.is_subset_of(free.final));
    }
}

TEST_CASE("theta above the degree: nothing grows")
{
    GraphShape shape(1, 2, 4, 2, 5);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto c = random_config(shape, 0.6, rng);
        auto r = run_fast(c, 5);
        CHECK(r.final == c);
        CHECK(r.stats.spanned == (c.occupied_count() == shape.volume()));
    }
    CHECK(spans(Configuration::full(shape), 5));
}

TEST_CASE("spans and final_density trivial cases")
{
    GraphShape shape(1, 2, 4, 3, 2);
    CHECK(spans(Configuration::full(shape), 2));
    CHECK_FALSE(spans(Configuration::empty(shape), 2));
    CHECK(final_density(Configuration::full(shape), 2).value() == 1.0);
    CHECK(final_density(Configuration::empty(shape), 2).value() == 0.0);
    auto r = run_fast(Configuration::empty(shape), 2);
    CHECK(r.stats.activations == 0);
    CHECK(run_fast(Configuration::full(shape), 3).stats.spanned);
}

TEST_CASE("dynamics invariants on random instances")
{
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        GraphShape shape = random_shape(rng);
        if (shape.volume() > 3000) continue;
        auto region = Region::all(shape);
        auto c = random_config(shape, 0.25, rng);
        const int theta = shape.theta();

        auto step = step_sync(c, region, theta);
        REQUIRE(c.is_subset_of(step));

        auto fin = run_fast(c, region, theta).final;
        REQUIRE(step_sync(fin, region, theta) == fin);
        REQUIRE(final_density(c, theta).value() >= static_cast<double>(c.occupied_count()) /
                                                       static_cast<double>(shape.volume()));

        // Monotone in the initial set.
        auto bigger = c;
        for (SiteIndex v = 0; v < shape.volume(); ++v)
            if (rng() % 5 == 0) bigger.occupy(v);
        REQUIRE(fin.is_subset_of(run_fast(bigger, region, theta).final));

        // Monotone in the threshold.
        REQUIRE(run_fast(c, region, theta + 1).final.is_subset_of(fin));
    }
}

TEST_CASE("line counters agree with a direct recount")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        GraphShape shape = random_shape(rng);
        if (shape.volume() > 3000) continue;
        auto c = random_config(shape, 0.3, rng);
        auto region = Region::all(shape);
        LineCounters counters(c, region);
        for (SiteIndex v = 0; v < shape.volume(); ++v)
            REQUIRE(counters.neighbor_count(c, region, v) == occupied_neighbor_count(c, region, v));
    }
}
