#pragma once

// Vertex set and neighbor structure of the product graph Z_m^{d1} x K_n^{d2}.
//
// Sites are stored by flat index in row-major order with the cycle
// coordinates outermost, so every Hamming plane (fixed cycle coordinates)
// is a contiguous block of n^{d2} indices.

#include <cstdint>
#include <vector>

namespace percolab {

using SiteIndex = std::uint64_t;

struct Site {
    std::vector<int> z; ///< cycle coordinates, each in [0, m)
    std::vector<int> k; ///< complete-graph coordinates, each in [0, n)

    friend bool operator==(const Site&, const Site&) = default;
};

class GraphShape {
public:
    GraphShape(int d1, int d2, int m, int n, int theta);

    int d1() const noexcept { return d1_; }
    int d2() const noexcept { return d2_; }
    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    int theta() const noexcept { return theta_; }

    SiteIndex volume() const noexcept { return volume_; }
    /// n^{d2}: sites in one Hamming plane.
    SiteIndex plane_size() const noexcept { return plane_size_; }
    /// m^{d1}: number of Hamming planes.
    SiteIndex plane_count() const noexcept { return plane_count_; }

    /// Stride of K-coordinate j in the flat index.
    SiteIndex k_stride(int j) const { return k_strides_.at(static_cast<std::size_t>(j)); }
    /// Stride of cycle coordinate i in the flat index.
    SiteIndex z_stride(int i) const { return z_strides_.at(static_cast<std::size_t>(i)); }

    /// Number of distinct neighbors per cycle coordinate (0, 1 or 2).
    int cycle_neighbors_per_axis() const noexcept { return m_ >= 3 ? 2 : m_ - 1; }

    /// Same shape with a different threshold.
    GraphShape with_theta(int theta) const { return {d1_, d2_, m_, n_, theta}; }

    friend bool operator==(const GraphShape&, const GraphShape&) = default;

private:
    int d1_;
    int d2_;
    int m_;
    int n_;
    int theta_;
    SiteIndex volume_ = 1;
    SiteIndex plane_size_ = 1;
    SiteIndex plane_count_ = 1;
    std::vector<SiteIndex> k_strides_;
    std::vector<SiteIndex> z_strides_;
};

SiteIndex index_of(const GraphShape& shape, const Site& site);
Site site_of(const GraphShape& shape, SiteIndex idx);

std::vector<Site> neighbors(const GraphShape& shape, const Site& site);

/// Flat-index neighbors; same set and order as neighbors().
void neighbor_indices(const GraphShape& shape, SiteIndex idx, std::vector<SiteIndex>& out);

/// 2*d1 + d2*(n-1) for m >= 3, with degenerate cycles contributing fewer.
int degree(const GraphShape& shape) noexcept;

/// K-coordinate j of a flat index.
inline int k_coord(const GraphShape& shape, SiteIndex idx, int j)
{
    return static_cast<int>((idx / shape.k_stride(j)) % static_cast<SiteIndex>(shape.n()));
}

/// Index of the Hamming plane (the cycle part of the flat index).
inline SiteIndex plane_of(const GraphShape& shape, SiteIndex idx) { return idx / shape.plane_size(); }

} // namespace percolab
