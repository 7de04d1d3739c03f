#pragma once

// Bootstrap percolation dynamics on Z_m^{d1} x K_n^{d2}.
//
// A closed site opens once at least theta of its neighbors are open; open
// sites never close. Two engines compute the same fixpoint:
//   * run_naive iterates the fully synchronous update and counts rounds;
//   * run_fast propagates a work stack driven by per-line occupancy counters.
// Both may be restricted to a Region: only region sites can open, and only
// occupied region sites are counted as neighbors.

#include "percolab/bitset.hpp"
#include "percolab/topology.hpp"

#include <cstdint>
#include <vector>

namespace percolab {

namespace detail {
// 32-bit division is markedly cheaper on common hardware; indices usually fit.
inline SiteIndex index_div(SiteIndex a, SiteIndex b) noexcept
{
    if (((a | b) >> 32) == 0) return static_cast<std::uint32_t>(a) / static_cast<std::uint32_t>(b);
    return a / b;
}
inline SiteIndex index_mod(SiteIndex a, SiteIndex b) noexcept
{
    if (((a | b) >> 32) == 0) return static_cast<std::uint32_t>(a) % static_cast<std::uint32_t>(b);
    return a % b;
}
} // namespace detail

class Configuration {
public:
    explicit Configuration(GraphShape shape);

    static Configuration empty(const GraphShape& shape) { return Configuration(shape); }
    static Configuration full(const GraphShape& shape);

    const GraphShape& shape() const noexcept { return shape_; }
    SiteIndex size() const noexcept { return shape_.volume(); }
    SiteIndex occupied_count() const noexcept { return count_; }

    bool occupied(SiteIndex i) const noexcept { return bits_.test(i); }
    bool occupied(const Site& s) const { return bits_.test(index_of(shape_, s)); }
    void occupy(SiteIndex i) noexcept
    {
        if (bits_.insert(i)) ++count_;
    }
    void occupy(const Site& s) { occupy(index_of(shape_, s)); }

    const BitSet& bits() const noexcept { return bits_; }
    /// Replaces the site set; the occupied count is recomputed.
    void assign(BitSet bits);

    bool is_subset_of(const Configuration& o) const noexcept { return bits_.is_subset_of(o.bits_); }

    friend bool operator==(const Configuration& a, const Configuration& b)
    {
        return a.shape_ == b.shape_ && a.bits_ == b.bits_;
    }

private:
    GraphShape shape_;
    BitSet bits_;
    SiteIndex count_ = 0;
};

/// Subset of sites the dynamics is restricted to. A default region is all of V.
class Region {
public:
    static Region all(const GraphShape& shape);
    /// One Hamming plane, addressed by its plane index in [0, m^{d1}).
    static Region plane(const GraphShape& shape, SiteIndex plane_index);
    /// Cyclic run of planes i1, i1+1, ..., i2 (mod m); requires d1 = 1.
    static Region slab(const GraphShape& shape, int i1, int i2);
    static Region from_mask(const GraphShape& shape, BitSet mask);

    bool is_all() const noexcept { return all_; }
    bool contains(SiteIndex i) const noexcept { return all_ || mask_.test(i); }
    SiteIndex size() const noexcept { return size_; }
    const BitSet& mask() const noexcept { return mask_; }

private:
    Region() = default;

    bool all_ = true;
    BitSet mask_;
    SiteIndex size_ = 0;
};

struct RunStats {
    std::uint64_t rounds = 0; ///< strict-growth synchronous steps; 0 for run_fast
    std::uint64_t activations = 0;
    bool spanned = false;
};

struct RunResult {
    Configuration final;
    RunStats stats;
};

/// Occupied-in-region neighbor count of a site, by direct enumeration.
int occupied_neighbor_count(const Configuration& config, const Region& region, SiteIndex idx);

Configuration step_sync(const Configuration& config, const Region& region, int theta);
RunResult run_naive(const Configuration& config, const Region& region, int theta);
RunResult run_fast(const Configuration& config, const Region& region, int theta);

inline RunResult run_fast(const Configuration& config, int theta)
{
    return run_fast(config, Region::all(config.shape()), theta);
}

bool spans(const Configuration& config, const Region& region, int theta);
inline bool spans(const Configuration& config, int theta)
{
    return spans(config, Region::all(config.shape()), theta);
}

struct Ratio {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;
    double value() const noexcept
    {
        return static_cast<double>(numerator) / static_cast<double>(denominator);
    }
};

/// |final occupied set| / |V| for the unrestricted dynamics.
Ratio final_density(const Configuration& config, int theta);

/// Per-line occupancy counters over a region.
///
/// Lines are the maximal K_n cliques: line_id(j, v) enumerates the n^{d2-1}
/// m^{d1} lines of direction j. Counts include only occupied region sites.
class LineCounters {
public:
    LineCounters(const Configuration& config, const Region& region);

    SiteIndex line_id(int j, SiteIndex v) const noexcept
    {
        const SiteIndex s = strides_[static_cast<std::size_t>(j)];
        return detail::index_div(v, s * n_) * s + detail::index_mod(v, s);
    }
    std::uint32_t line_count(int j, SiteIndex v) const noexcept
    {
        return counts_[static_cast<std::size_t>(j)][line_id(j, v)];
    }
    /// Occupied region sites among the cycle neighbors of v.
    int cycle_count(const Configuration& config, const Region& region, SiteIndex v) const;
    /// Occupied region neighbors of v, assembled from the line and cycle counts.
    int neighbor_count(const Configuration& config, const Region& region, SiteIndex v) const;

    void add(SiteIndex v)
    {
        for (std::size_t j = 0; j < counts_.size(); ++j) ++counts_[j][line_id(static_cast<int>(j), v)];
    }

private:
    friend class FastPropagator;
    SiteIndex n_;
    std::vector<SiteIndex> strides_;
    std::vector<std::vector<std::uint32_t>> counts_;
};

} // namespace percolab
