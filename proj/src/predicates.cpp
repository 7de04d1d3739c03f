#include "percolab/predicates.hpp"

#include "percolab/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>

namespace percolab {

// PlaneView -------------------------------------------------------------------

PlaneView::PlaneView(const Configuration& config, SiteIndex plane)
    : config_(&config), offset_(0), n_(config.shape().n())
{
    if (config.shape().d2() != 2) throw UnsupportedError("plane predicates require d2 = 2");
    if (plane >= config.shape().plane_count()) throw std::out_of_range("plane index out of range");
    offset_ = plane * config.shape().plane_size();
}

std::vector<int> PlaneView::row_counts() const
{
    std::vector<int> rows(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) rows[static_cast<std::size_t>(r)] += occupied(r, c) ? 1 : 0;
    return rows;
}

std::vector<int> PlaneView::col_counts() const
{
    std::vector<int> cols(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r)
        for (int c = 0; c < n_; ++c) cols[static_cast<std::size_t>(c)] += occupied(r, c) ? 1 : 0;
    return cols;
}

int PlaneView::occupied_count() const
{
    int total = 0;
    for (int r : row_counts()) total += r;
    return total;
}

Configuration PlaneView::to_configuration(int theta) const
{
    Configuration out(GraphShape(0, 2, 1, n_, theta));
    const auto size = static_cast<SiteIndex>(n_) * static_cast<SiteIndex>(n_);
    for (SiteIndex i = 0; i < size; ++i)
        if (config_->occupied(offset_ + i)) out.occupy(i);
    return out;
}

// Plane kernel ----------------------------------------------------------------
//
// Threshold-k dynamics on one K_n^2 with row/column counters. A row (column)
// whose count reaches k fills completely; once k rows (or k columns) are
// saturated every remaining site has k open neighbors, so the plane spans.

namespace {

class PlaneKernel {
public:
    PlaneKernel(const PlaneView& view, int k)
        : n_(view.n()), k_(k), occ_(static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(n_)),
          queued_(occ_.size()), rows_(static_cast<std::size_t>(n_), 0), cols_(static_cast<std::size_t>(n_), 0)
    {
        for (int r = 0; r < n_; ++r)
            for (int c = 0; c < n_; ++c)
                if (view.occupied(r, c)) {
                    occ_.set(at(r, c));
                    queued_.set(at(r, c));
                    ++rows_[static_cast<std::size_t>(r)];
                    ++cols_[static_cast<std::size_t>(c)];
                    ++count_;
                }
    }

    bool spans()
    {
        const std::uint64_t total = occ_.size();
        if (k_ <= 0 || count_ == total) return true;
        int sat_rows = 0;
        int sat_cols = 0;
        for (int i = 0; i < n_; ++i) {
            sat_rows += rows_[static_cast<std::size_t>(i)] >= k_ ? 1 : 0;
            sat_cols += cols_[static_cast<std::size_t>(i)] >= k_ ? 1 : 0;
        }
        if (sat_rows >= k_ || sat_cols >= k_) return true;

        for (int i = 0; i < n_; ++i) {
            const int rc = rows_[static_cast<std::size_t>(i)];
            if (rc > 0) visit_row(i, rc >= k_);
            const int cc = cols_[static_cast<std::size_t>(i)];
            if (cc > 0) visit_col(i, cc >= k_);
        }
        while (!stack_.empty()) {
            const std::uint32_t v = stack_.back();
            stack_.pop_back();
            const int r = static_cast<int>(v / static_cast<std::uint32_t>(n_));
            const int c = static_cast<int>(v % static_cast<std::uint32_t>(n_));
            occ_.set(v);
            ++count_;
            const int rc = ++rows_[static_cast<std::size_t>(r)];
            if (rc < k_) {
                visit_row(r, false);
            } else if (rc == k_) {
                visit_row(r, true);
                if (++sat_rows >= k_) return true;
            }
            const int cc = ++cols_[static_cast<std::size_t>(c)];
            if (cc < k_) {
                visit_col(c, false);
            } else if (cc == k_) {
                visit_col(c, true);
                if (++sat_cols >= k_) return true;
            }
        }
        return count_ == total;
    }

private:
    std::uint32_t at(int r, int c) const noexcept
    {
        return static_cast<std::uint32_t>(r) * static_cast<std::uint32_t>(n_) + static_cast<std::uint32_t>(c);
    }
    void offer(int r, int c, bool flood)
    {
        const std::uint32_t v = at(r, c);
        if (queued_.test(v)) return;
        if (flood || rows_[static_cast<std::size_t>(r)] + cols_[static_cast<std::size_t>(c)] >= k_) {
            queued_.set(v);
            stack_.push_back(v);
        }
    }
    void visit_row(int r, bool flood)
    {
        for (int c = 0; c < n_; ++c) offer(r, c, flood);
    }
    void visit_col(int c, bool flood)
    {
        for (int r = 0; r < n_; ++r) offer(r, c, flood);
    }

    int n_;
    int k_;
    BitSet occ_;
    BitSet queued_;
    std::vector<int> rows_;
    std::vector<int> cols_;
    std::vector<std::uint32_t> stack_;
    std::uint64_t count_ = 0;
};

void require_cycle_plane_shape(const GraphShape& shape, const char* what, bool need_m3)
{
    if (shape.d1() != 1 || shape.d2() != 2)
        throw UnsupportedError(std::string(what) + " requires the shape Z_m x K_n^2 (d1 = 1, d2 = 2)");
    if (need_m3 && shape.m() < 3) throw UnsupportedError(std::string(what) + " requires m >= 3");
}

// Open cycle neighbors of (plane, r, c); distinct neighbors only.
int open_cycle_neighbors(const Configuration& config, int plane, SiteIndex offset_in_plane)
{
    const GraphShape& shape = config.shape();
    if (shape.d1() == 0 || shape.m() == 1) return 0;
    const int m = shape.m();
    const SiteIndex ps = shape.plane_size();
    int c = 0;
    const int up = (plane + 1) % m;
    c += config.occupied(static_cast<SiteIndex>(up) * ps + offset_in_plane) ? 1 : 0;
    if (m >= 3) {
        const int down = (plane + m - 1) % m;
        c += config.occupied(static_cast<SiteIndex>(down) * ps + offset_in_plane) ? 1 : 0;
    }
    return c;
}

} // namespace

bool is_viable(const PlaneView& plane, int k)
{
    if (k <= 0) return true;
    for (int c : plane.row_counts())
        if (c >= k) return true;
    for (int c : plane.col_counts())
        if (c >= k) return true;
    return false;
}

bool is_internally_spanned(const PlaneView& plane, int k)
{
    return PlaneKernel(plane, k).spans();
}

bool is_internally_spanned_reference(const PlaneView& plane, int k)
{
    return spans(plane.to_configuration(k), k);
}

bool is_internally_inert(const PlaneView& plane, int k)
{
    const auto rows = plane.row_counts();
    const auto cols = plane.col_counts();
    const int n = plane.n();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!plane.occupied(r, c) &&
                rows[static_cast<std::size_t>(r)] + cols[static_cast<std::size_t>(c)] >= k)
                return false;
    return true;
}

bool is_inert(const Configuration& config, int plane, int k)
{
    const GraphShape& shape = config.shape();
    if (shape.d2() != 2 || shape.d1() > 1) throw UnsupportedError("is_inert requires d1 <= 1 and d2 = 2");
    PlaneView view(config, static_cast<SiteIndex>(plane));
    const auto rows = view.row_counts();
    const auto cols = view.col_counts();
    const int n = shape.n();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (view.occupied(r, c)) continue;
            const SiteIndex off = static_cast<SiteIndex>(r) * static_cast<SiteIndex>(n) + static_cast<SiteIndex>(c);
            const int count = rows[static_cast<std::size_t>(r)] + cols[static_cast<std::size_t>(c)] +
                              open_cycle_neighbors(config, plane, off);
            if (count >= k) return false;
        }
    return true;
}

std::vector<Subsquare> subsquares(int n)
{
    const int odd = (n % 2 == 1) ? n : n - 1;
    const int h = (odd - 1) / 2;
    return {{0, 0, h}, {0, h + 1, h}, {h + 1, 0, h}, {h + 1, h + 1, h}};
}

bool is_proper(const PlaneView& plane, int k, int theta)
{
    const int n = plane.n();
    if (n < 2 * theta + 2)
        throw UnsupportedError("k-proper needs n >= 2*theta + 2 (n = " + std::to_string(n) +
                               ", theta = " + std::to_string(theta) + ")");
    for (const Subsquare& sq : subsquares(n)) {
        int good_rows = 0;
        int good_cols = 0;
        for (int i = 0; i < sq.size; ++i) {
            int in_row = 0;
            int in_col = 0;
            for (int t = 0; t < sq.size; ++t) {
                in_row += plane.occupied(sq.row_begin + i, sq.col_begin + t) ? 1 : 0;
                in_col += plane.occupied(sq.row_begin + t, sq.col_begin + i) ? 1 : 0;
            }
            good_rows += in_row >= k ? 1 : 0;
            good_cols += in_col >= k ? 1 : 0;
        }
        if (good_rows < theta || good_cols < theta) return false;
    }
    return true;
}

const PlaneFlags& PlaneClass::at(int k) const
{
    for (const auto& f : flags)
        if (f.k == k) return f;
    throw std::out_of_range("no flags recorded for k = " + std::to_string(k));
}

std::vector<PlaneClass> classify_planes(const Configuration& config, int theta)
{
    const GraphShape& shape = config.shape();
    if (shape.d2() != 2 || shape.d1() > 1) throw UnsupportedError("classify_planes requires d1 <= 1 and d2 = 2");
    const bool with_proper = shape.n() >= 2 * theta + 2;
    std::vector<PlaneClass> out;
    for (SiteIndex i = 0; i < shape.plane_count(); ++i) {
        PlaneView view(config, i);
        PlaneClass pc;
        pc.plane = static_cast<int>(i);
        for (int k = theta - 2; k <= theta; ++k) {
            PlaneFlags f;
            f.k = k;
            f.viable = is_viable(view, k);
            f.internally_spanned = is_internally_spanned(view, k);
            f.internally_inert = is_internally_inert(view, k);
            f.inert = is_inert(config, static_cast<int>(i), k);
            if (with_proper) f.proper = is_proper(view, k, theta);
            pc.flags.push_back(f);
        }
        pc.exceptional = pc.at(theta).internally_spanned || !pc.at(theta - 1).internally_spanned;
        out.push_back(std::move(pc));
    }
    return out;
}

// Blocking intervals ---------------------------------------------------------

namespace {

struct BlockingData {
    std::vector<bool> inert;
    std::vector<bool> left_ok;  // plane i can open an interval [i, .]
    std::vector<bool> right_ok; // plane i can close an interval [., i]
};

BlockingData blocking_data(const Configuration& config, int theta)
{
    const GraphShape& shape = config.shape();
    require_cycle_plane_shape(shape, "blocking intervals", true);
    const int m = shape.m();
    const int n = shape.n();
    const SiteIndex ps = shape.plane_size();
    BlockingData d;
    d.inert.resize(static_cast<std::size_t>(m));
    d.left_ok.resize(static_cast<std::size_t>(m));
    d.right_ok.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        PlaneView view(config, static_cast<SiteIndex>(i));
        const auto rows = view.row_counts();
        const auto cols = view.col_counts();
        const SiteIndex up = static_cast<SiteIndex>((i + 1) % m) * ps;
        const SiteIndex down = static_cast<SiteIndex>((i + m - 1) % m) * ps;
        bool left = true;
        bool right = true;
        for (int r = 0; r < n && (left || right); ++r)
            for (int c = 0; c < n; ++c) {
                const SiteIndex off = static_cast<SiteIndex>(r) * static_cast<SiteIndex>(n) + static_cast<SiteIndex>(c);
                const int self = view.occupied(r, c) ? 1 : 0;
                const int hamming = rows[static_cast<std::size_t>(r)] + cols[static_cast<std::size_t>(c)] - 2 * self;
                if (hamming + (config.occupied(up + off) ? 1 : 0) > theta - 2) left = false;
                if (hamming + (config.occupied(down + off) ? 1 : 0) > theta - 2) right = false;
            }
        d.left_ok[static_cast<std::size_t>(i)] = left;
        d.right_ok[static_cast<std::size_t>(i)] = right;
        d.inert[static_cast<std::size_t>(i)] = is_inert(config, i, theta);
    }
    return d;
}

template <class Emit>
void scan_blocking(const BlockingData& d, int m, Emit&& emit)
{
    for (int i1 = 0; i1 < m; ++i1) {
        if (!d.left_ok[static_cast<std::size_t>(i1)]) continue;
        for (int step = 1; step < m; ++step) {
            const int j = (i1 + step) % m;
            if (d.right_ok[static_cast<std::size_t>(j)] && !emit(BlockingInterval{i1, j})) return;
            if (!d.inert[static_cast<std::size_t>(j)]) break;
        }
    }
}

} // namespace

std::vector<BlockingInterval> find_blocking_intervals(const Configuration& config, int theta, std::size_t limit)
{
    const BlockingData d = blocking_data(config, theta);
    std::vector<BlockingInterval> out;
    scan_blocking(d, config.shape().m(), [&](BlockingInterval b) {
        out.push_back(b);
        return limit == 0 || out.size() < limit;
    });
    return out;
}

bool has_blocking_interval(const Configuration& config, int theta)
{
    return !find_blocking_intervals(config, theta, 1).empty();
}

bool sufficient_condition(const Configuration& config, int theta)
{
    require_cycle_plane_shape(config.shape(), "sufficient_condition", true);
    const int m = config.shape().m();
    std::vector<bool> top(static_cast<std::size_t>(m));
    std::vector<int> bad;
    bool any_top = false;
    for (int i = 0; i < m; ++i) {
        PlaneView view(config, static_cast<SiteIndex>(i));
        if (!is_internally_spanned(view, theta - 2)) return false;
        const bool t = is_internally_spanned(view, theta);
        top[static_cast<std::size_t>(i)] = t;
        any_top = any_top || t;
        if (!t && !is_internally_spanned(view, theta - 1)) bad.push_back(i);
    }
    if (!any_top) return false;
    for (std::size_t b = 0; b < bad.size(); ++b) {
        const int from = bad[b];
        const int to = bad[(b + 1) % bad.size()];
        bool found = false;
        for (int i = (from + 1) % m; i != to; i = (i + 1) % m)
            if (top[static_cast<std::size_t>(i)]) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

bool necessary_condition(const Configuration& config, int theta)
{
    require_cycle_plane_shape(config.shape(), "necessary_condition", true);
    if (has_blocking_interval(config, theta)) return false;
    if (config.occupied_count() == config.size()) return true; // nothing left to activate
    for (int i = 0; i < config.shape().m(); ++i)
        if (!is_inert(config, i, theta)) return true;
    return false;
}

SiteIndex count_z_assisted(const Configuration& config, int theta, AssistVariant variant)
{
    require_cycle_plane_shape(config.shape(), "count_z_assisted", true);
    const int m = config.shape().m();
    const int n = config.shape().n();
    const SiteIndex ps = config.shape().plane_size();
    SiteIndex total = 0;
    for (int i = 0; i < m; ++i) {
        PlaneView view(config, static_cast<SiteIndex>(i));
        const auto rows = view.row_counts();
        const auto cols = view.col_counts();
        const SiteIndex up = static_cast<SiteIndex>((i + 1) % m) * ps;
        const SiteIndex down = static_cast<SiteIndex>((i + m - 1) % m) * ps;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const SiteIndex off = static_cast<SiteIndex>(r) * static_cast<SiteIndex>(n) + static_cast<SiteIndex>(c);
                const int self = view.occupied(r, c) ? 1 : 0;
                const int kn = rows[static_cast<std::size_t>(r)] + cols[static_cast<std::size_t>(c)] - 2 * self;
                const int zn = (config.occupied(up + off) ? 1 : 0) + (config.occupied(down + off) ? 1 : 0);
                bool hit = false;
                switch (variant) {
                case AssistVariant::one_z_theta_minus_2: hit = zn >= 1 && kn >= theta - 2; break;
                case AssistVariant::one_z_theta_minus_1: hit = zn >= 1 && kn >= theta - 1; break;
                case AssistVariant::two_z_theta_minus_2: hit = zn >= 2 && kn >= theta - 2; break;
                }
                total += hit ? 1 : 0;
            }
    }
    return total;
}

std::optional<SafeBox> find_empty_safe_box(const Configuration& config, int theta)
{
    const GraphShape& shape = config.shape();
    const int d = shape.d1();
    if (shape.d2() != 1 || d < 1) throw UnsupportedError("safe boxes require d1 >= 1 and d2 = 1");
    if (theta < d + 1 || theta > 2 * d + 1)
        throw UnsupportedError("safe boxes are defined for d+1 <= theta <= 2d+1 (d = " + std::to_string(d) +
                               ", theta = " + std::to_string(theta) + ")");
    if (shape.m() < 3) throw UnsupportedError("safe boxes require m >= 3");
    const int m = shape.m();
    const SiteIndex lines = shape.plane_count();
    std::vector<bool> empty(lines);
    for (SiteIndex z = 0; z < lines; ++z) {
        bool e = true;
        for (SiteIndex t = 0; t < shape.plane_size() && e; ++t) e = !config.occupied(z * shape.plane_size() + t);
        empty[z] = e;
    }
    const int s = 2 * d + 1 - theta;
    std::vector<int> coords(static_cast<std::size_t>(d));
    for (SiteIndex base = 0; base < lines; ++base) {
        if (!empty[base]) continue;
        SiteIndex rest = base;
        for (int i = d - 1; i >= 0; --i) {
            coords[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<SiteIndex>(m));
            rest /= static_cast<SiteIndex>(m);
        }
        for (unsigned mask = 0; mask < (1U << d); ++mask) {
            if (std::popcount(mask) != s) continue;
            bool all_empty = true;
            for (unsigned corner = mask;; corner = (corner - 1) & mask) {
                SiteIndex z = 0;
                for (int i = 0; i < d; ++i) {
                    const int c = (coords[static_cast<std::size_t>(i)] + (((corner >> i) & 1U) ? 1 : 0)) % m;
                    z = z * static_cast<SiteIndex>(m) + static_cast<SiteIndex>(c);
                }
                if (!empty[z]) {
                    all_empty = false;
                    break;
                }
                if (corner == 0) break;
            }
            if (all_empty) {
                SafeBox box;
                box.lower = coords;
                for (int i = 0; i < d; ++i) box.doubled.push_back(((mask >> i) & 1U) != 0);
                return box;
            }
        }
    }
    return std::nullopt;
}

} // namespace percolab
