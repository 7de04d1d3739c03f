#include "percolab/engine.hpp"

#include "percolab/errors.hpp"

#include <limits>
#include <utility>

namespace percolab {

Configuration::Configuration(GraphShape shape) : shape_(std::move(shape)), bits_(shape_.volume()) {}

Configuration Configuration::full(const GraphShape& shape)
{
    Configuration c(shape);
    c.bits_ = BitSet(shape.volume(), true);
    c.count_ = shape.volume();
    return c;
}

void Configuration::assign(BitSet bits)
{
    if (bits.size() != shape_.volume()) throw ParameterError("bit set size does not match the shape");
    bits_ = std::move(bits);
    count_ = bits_.count();
}

Region Region::all(const GraphShape& shape)
{
    Region r;
    r.size_ = shape.volume();
    return r;
}

Region Region::plane(const GraphShape& shape, SiteIndex plane_index)
{
    if (plane_index >= shape.plane_count()) throw std::out_of_range("plane index out of range");
    BitSet mask(shape.volume());
    const SiteIndex base = plane_index * shape.plane_size();
    for (SiteIndex i = 0; i < shape.plane_size(); ++i) mask.set(base + i);
    return from_mask(shape, std::move(mask));
}

Region Region::slab(const GraphShape& shape, int i1, int i2)
{
    if (shape.d1() != 1) throw UnsupportedError("slab regions require d1 = 1");
    const int m = shape.m();
    if (i1 < 0 || i1 >= m || i2 < 0 || i2 >= m) throw std::out_of_range("slab endpoint out of range");
    BitSet mask(shape.volume());
    for (int i = i1;; i = (i + 1) % m) {
        const SiteIndex base = static_cast<SiteIndex>(i) * shape.plane_size();
        for (SiteIndex s = 0; s < shape.plane_size(); ++s) mask.set(base + s);
        if (i == i2) break;
    }
    return from_mask(shape, std::move(mask));
}

Region Region::from_mask(const GraphShape& shape, BitSet mask)
{
    if (mask.size() != shape.volume()) throw ParameterError("region mask size does not match the shape");
    Region r;
    r.all_ = false;
    r.size_ = mask.count();
    r.mask_ = std::move(mask);
    return r;
}

int occupied_neighbor_count(const Configuration& config, const Region& region, SiteIndex idx)
{
    std::vector<SiteIndex> nb;
    neighbor_indices(config.shape(), idx, nb);
    int c = 0;
    for (SiteIndex w : nb)
        if (region.contains(w) && config.occupied(w)) ++c;
    return c;
}

Configuration step_sync(const Configuration& config, const Region& region, int theta)
{
    Configuration next = config;
    std::vector<SiteIndex> nb;
    for (SiteIndex v = 0; v < config.size(); ++v) {
        if (!region.contains(v) || config.occupied(v)) continue;
        neighbor_indices(config.shape(), v, nb);
        int c = 0;
        for (SiteIndex w : nb)
            if (region.contains(w) && config.occupied(w)) ++c;
        if (c >= theta) next.occupy(v);
    }
    return next;
}

namespace {

SiteIndex region_occupied(const Configuration& c, const Region& region)
{
    if (region.is_all()) return c.occupied_count();
    BitSet b = c.bits();
    b &= region.mask();
    return b.count();
}

} // namespace

RunResult run_naive(const Configuration& config, const Region& region, int theta)
{
    RunResult r{config, {}};
    for (;;) {
        Configuration next = step_sync(r.final, region, theta);
        if (next.occupied_count() == r.final.occupied_count()) break;
        r.stats.activations += next.occupied_count() - r.final.occupied_count();
        ++r.stats.rounds;
        r.final = std::move(next);
    }
    r.stats.spanned = region_occupied(r.final, region) == region.size();
    return r;
}

// LineCounters --------------------------------------------------------------

LineCounters::LineCounters(const Configuration& config, const Region& region)
    : n_(static_cast<SiteIndex>(config.shape().n()))
{
    const GraphShape& shape = config.shape();
    const SiteIndex lines = shape.volume() / n_;
    for (int j = 0; j < shape.d2(); ++j) {
        strides_.push_back(shape.k_stride(j));
        counts_.emplace_back(lines, 0U);
    }
    config.bits().for_each_set([&](SiteIndex v) {
        if (region.contains(v)) add(v);
    });
}

int LineCounters::cycle_count(const Configuration& config, const Region& region, SiteIndex v) const
{
    const GraphShape& shape = config.shape();
    const auto m = static_cast<SiteIndex>(shape.m());
    if (m == 1) return 0;
    int c = 0;
    for (int i = 0; i < shape.d1(); ++i) {
        const SiteIndex stride = shape.z_stride(i);
        const SiteIndex z = detail::index_mod(detail::index_div(v, stride), m);
        const SiteIndex base = v - z * stride;
        const SiteIndex up = base + (z + 1 == m ? 0 : z + 1) * stride;
        if (region.contains(up) && config.occupied(up)) ++c;
        if (m >= 3) {
            const SiteIndex down = base + (z == 0 ? m - 1 : z - 1) * stride;
            if (region.contains(down) && config.occupied(down)) ++c;
        }
    }
    return c;
}

int LineCounters::neighbor_count(const Configuration& config, const Region& region, SiteIndex v) const
{
    int c = cycle_count(config, region, v);
    const bool self = region.contains(v) && config.occupied(v);
    for (std::size_t j = 0; j < counts_.size(); ++j)
        c += static_cast<int>(counts_[j][line_id(static_cast<int>(j), v)]) - (self ? 1 : 0);
    return c;
}

// Fast engine ---------------------------------------------------------------
//
// Every line whose counter reaches theta opens completely, so it is flooded
// once and never rescanned; below theta a line is rescanned at most theta - 1
// times. Total work is O(theta * d2 * |V| + activations * d1).

class FastPropagator {
public:
    FastPropagator(Configuration& config, const Region& region, int theta)
        : config_(config), region_(region), theta_(theta), counters_(config, region),
          queued_(config.bits())
    {
    }

    template <class Index>
    std::uint64_t run()
    {
        std::vector<Index> stack;
        auto push = [&](SiteIndex v) {
            if (region_.contains(v) && queued_.insert(v)) stack.push_back(static_cast<Index>(v));
        };
        const GraphShape& shape = config_.shape();
        const SiteIndex n = counters_.n_;
        const int d2 = shape.d2();
        const auto m = static_cast<SiteIndex>(shape.m());
        std::vector<SiteIndex> z_strides;
        for (int i = 0; i < shape.d1(); ++i) z_strides.push_back(shape.z_stride(i));
        const int cycle_max = m == 1 ? 0 : shape.cycle_neighbors_per_axis() * shape.d1();
        const bool whole = region_.is_all();
        auto open_in_region = [&](SiteIndex w) { return (whole || region_.contains(w)) && config_.occupied(w); };
        // Same test as neighbor_count >= theta, stopping as soon as the answer is known.
        auto reaches_theta = [&](SiteIndex v) {
            int c = 0;
            for (int j = 0; j < d2; ++j) c += static_cast<int>(counters_.line_count(j, v));
            if (c >= theta_) return true;
            if (c + cycle_max < theta_) return false;
            for (const SiteIndex stride : z_strides) {
                const SiteIndex z = detail::index_mod(detail::index_div(v, stride), m);
                const SiteIndex base = v - z * stride;
                c += open_in_region(base + (z + 1 == m ? 0 : z + 1) * stride) ? 1 : 0;
                if (m >= 3) c += open_in_region(base + (z == 0 ? m - 1 : z - 1) * stride) ? 1 : 0;
                if (c >= theta_) return true;
            }
            return false;
        };
        auto consider = [&](SiteIndex v) {
            if (!queued_.test(v) && (whole || region_.contains(v)) && reaches_theta(v)) push(v);
        };

        auto visit_line = [&](int j, SiteIndex v, bool flood) {
            const SiteIndex stride = counters_.strides_[static_cast<std::size_t>(j)];
            const SiteIndex base = v - detail::index_mod(detail::index_div(v, stride), n) * stride;
            for (SiteIndex t = 0; t < n; ++t) {
                const SiteIndex w = base + t * stride;
                if (flood)
                    push(w);
                else
                    consider(w);
            }
        };
        auto visit_cycle = [&](SiteIndex v) {
            if (m == 1) return;
            for (const SiteIndex stride : z_strides) {
                const SiteIndex z = detail::index_mod(detail::index_div(v, stride), m);
                const SiteIndex base = v - z * stride;
                consider(base + (z + 1 == m ? 0 : z + 1) * stride);
                if (m >= 3) consider(base + (z == 0 ? m - 1 : z - 1) * stride);
            }
        };

        // Lines whose count rose but stayed below theta are scanned lazily once
        // the stack drains; a line that floods in the meantime needs no scan.
        const auto utheta = static_cast<std::uint32_t>(theta_);
        std::vector<std::vector<bool>> dirty;
        std::vector<std::pair<int, SiteIndex>> dirty_lines;
        for (int j = 0; j < d2; ++j) dirty.emplace_back(counters_.counts_[static_cast<std::size_t>(j)].size(), false);
        auto mark = [&](int j, SiteIndex line) {
            auto&& bit = dirty[static_cast<std::size_t>(j)][line];
            if (!bit) {
                bit = true;
                dirty_lines.emplace_back(j, line);
            }
        };
        auto line_base = [&](int j, SiteIndex line) {
            const SiteIndex stride = counters_.strides_[static_cast<std::size_t>(j)];
            return (line / stride) * stride * n + line % stride;
        };

        for (int j = 0; j < d2; ++j) {
            const auto& counts = counters_.counts_[static_cast<std::size_t>(j)];
            for (SiteIndex line = 0; line < counts.size(); ++line) {
                if (counts[line] == 0) continue;
                if (counts[line] >= utheta) visit_line(j, line_base(j, line), true);
                else mark(j, line);
            }
        }
        config_.bits().for_each_set([&](SiteIndex v) {
            if (region_.contains(v)) visit_cycle(v);
        });

        std::uint64_t activations = 0;
        for (;;) {
            while (!stack.empty()) {
                const SiteIndex v = stack.back();
                stack.pop_back();
                config_.occupy(v);
                ++activations;
                for (int j = 0; j < d2; ++j) {
                    auto& counts = counters_.counts_[static_cast<std::size_t>(j)];
                    const SiteIndex line = counters_.line_id(j, v);
                    const std::uint32_t c = ++counts[line];
                    if (c < utheta)
                        mark(j, line);
                    else if (c == utheta)
                        visit_line(j, v, true);
                }
                visit_cycle(v);
            }
            if (dirty_lines.empty()) break;
            auto pending = std::move(dirty_lines);
            dirty_lines.clear();
            for (const auto& [j, line] : pending) {
                dirty[static_cast<std::size_t>(j)][line] = false;
                if (counters_.counts_[static_cast<std::size_t>(j)][line] < utheta)
                    visit_line(j, line_base(j, line), false);
            }
        }
        return activations;
    }

private:
    Configuration& config_;
    const Region& region_;
    int theta_;
    LineCounters counters_;
    BitSet queued_;
};

RunResult run_fast(const Configuration& config, const Region& region, int theta)
{
    RunResult r{config, {}};
    if (theta <= 0) {
        // Every closed region site already has >= theta open neighbors.
        const SiteIndex before = r.final.occupied_count();
        for (SiteIndex v = 0; v < config.size(); ++v)
            if (region.contains(v)) r.final.occupy(v);
        r.stats.activations = r.final.occupied_count() - before;
    } else {
        FastPropagator prop(r.final, region, theta);
        if (config.size() <= std::numeric_limits<std::uint32_t>::max())
            r.stats.activations = prop.run<std::uint32_t>();
        else
            r.stats.activations = prop.run<std::uint64_t>();
    }
    r.stats.spanned = region_occupied(r.final, region) == region.size();
    return r;
}

bool spans(const Configuration& config, const Region& region, int theta)
{
    return run_fast(config, region, theta).stats.spanned;
}

Ratio final_density(const Configuration& config, int theta)
{
    const RunResult r = run_fast(config, Region::all(config.shape()), theta);
    return {r.final.occupied_count(), config.size()};
}

} // namespace percolab
