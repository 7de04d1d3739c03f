#include "percolab/topology.hpp"

#include "percolab/errors.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace percolab {

namespace {

SiteIndex checked_mul(SiteIndex a, SiteIndex b)
{
    if (b != 0 && a > std::numeric_limits<SiteIndex>::max() / b)
        throw ParameterError("vertex count m^d1 * n^d2 overflows the index range");
    return a * b;
}

} // namespace

GraphShape::GraphShape(int d1, int d2, int m, int n, int theta)
    : d1_(d1), d2_(d2), m_(m), n_(n), theta_(theta)
{
    if (d1 < 0) throw ParameterError("d1 must be nonnegative");
    if (d2 < 1) throw ParameterError("d2 must be positive");
    if (m < 1) throw ParameterError("m must be positive");
    if (n < 2) throw ParameterError("n must be at least 2");
    if (theta < 0) throw ParameterError("theta must be nonnegative");

    k_strides_.assign(static_cast<std::size_t>(d2), 1);
    for (int j = d2 - 1; j >= 0; --j) {
        k_strides_[static_cast<std::size_t>(j)] = plane_size_;
        plane_size_ = checked_mul(plane_size_, static_cast<SiteIndex>(n));
    }
    z_strides_.assign(static_cast<std::size_t>(d1), 1);
    SiteIndex stride = plane_size_;
    for (int i = d1 - 1; i >= 0; --i) {
        z_strides_[static_cast<std::size_t>(i)] = stride;
        stride = checked_mul(stride, static_cast<SiteIndex>(m));
        plane_count_ = checked_mul(plane_count_, static_cast<SiteIndex>(m));
    }
    volume_ = stride;
}

SiteIndex index_of(const GraphShape& shape, const Site& site)
{
    if (site.z.size() != static_cast<std::size_t>(shape.d1()) ||
        site.k.size() != static_cast<std::size_t>(shape.d2()))
        throw std::out_of_range("site has the wrong number of coordinates");
    SiteIndex idx = 0;
    for (int i = 0; i < shape.d1(); ++i) {
        int c = site.z[static_cast<std::size_t>(i)];
        if (c < 0 || c >= shape.m()) throw std::out_of_range("cycle coordinate out of range");
        idx += static_cast<SiteIndex>(c) * shape.z_stride(i);
    }
    for (int j = 0; j < shape.d2(); ++j) {
        int c = site.k[static_cast<std::size_t>(j)];
        if (c < 0 || c >= shape.n()) throw std::out_of_range("complete-graph coordinate out of range");
        idx += static_cast<SiteIndex>(c) * shape.k_stride(j);
    }
    return idx;
}

Site site_of(const GraphShape& shape, SiteIndex idx)
{
    if (idx >= shape.volume())
        throw std::out_of_range("site index " + std::to_string(idx) + " out of range");
    Site s;
    s.z.resize(static_cast<std::size_t>(shape.d1()));
    s.k.resize(static_cast<std::size_t>(shape.d2()));
    for (int i = 0; i < shape.d1(); ++i)
        s.z[static_cast<std::size_t>(i)] =
            static_cast<int>((idx / shape.z_stride(i)) % static_cast<SiteIndex>(shape.m()));
    for (int j = 0; j < shape.d2(); ++j)
        s.k[static_cast<std::size_t>(j)] = k_coord(shape, idx, j);
    return s;
}

void neighbor_indices(const GraphShape& shape, SiteIndex idx, std::vector<SiteIndex>& out)
{
    out.clear();
    const auto m = static_cast<SiteIndex>(shape.m());
    const auto n = static_cast<SiteIndex>(shape.n());
    for (int i = 0; i < shape.d1(); ++i) {
        if (m == 1) break;
        const SiteIndex stride = shape.z_stride(i);
        const SiteIndex c = (idx / stride) % m;
        const SiteIndex base = idx - c * stride;
        out.push_back(base + ((c + 1) % m) * stride);
        if (m >= 3) out.push_back(base + ((c + m - 1) % m) * stride);
    }
    for (int j = 0; j < shape.d2(); ++j) {
        const SiteIndex stride = shape.k_stride(j);
        const SiteIndex c = (idx / stride) % n;
        const SiteIndex base = idx - c * stride;
        for (SiteIndex v = 0; v < n; ++v)
            if (v != c) out.push_back(base + v * stride);
    }
}

std::vector<Site> neighbors(const GraphShape& shape, const Site& site)
{
    std::vector<SiteIndex> idx;
    neighbor_indices(shape, index_of(shape, site), idx);
    std::vector<Site> out;
    out.reserve(idx.size());
    for (SiteIndex i : idx) out.push_back(site_of(shape, i));
    return out;
}

int degree(const GraphShape& shape) noexcept
{
    return shape.d1() * shape.cycle_neighbors_per_axis() + shape.d2() * (shape.n() - 1);
}

} // namespace percolab
