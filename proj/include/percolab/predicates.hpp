#pragma once

// Structural properties of Hamming planes {i} x K_n^2 and the spanning
// conditions built from them, for Z_m x K_n^2 (and Z_m^d x K_n for safe boxes).
//
// Plane-level predicates take a PlaneView: one K_n^2 copy inside a larger
// configuration, or a standalone d1 = 0, d2 = 2 configuration.

#include "percolab/engine.hpp"

#include <optional>
#include <vector>

namespace percolab {

class PlaneView {
public:
    /// Plane `plane` of a configuration with d2 = 2 (any d1).
    explicit PlaneView(const Configuration& config, SiteIndex plane = 0);

    int n() const noexcept { return n_; }
    bool occupied(int row, int col) const noexcept
    {
        return config_->occupied(offset_ + static_cast<SiteIndex>(row) * static_cast<SiteIndex>(n_) +
                                 static_cast<SiteIndex>(col));
    }
    SiteIndex offset() const noexcept { return offset_; }
    std::vector<int> row_counts() const;
    std::vector<int> col_counts() const;
    int occupied_count() const;

    /// Standalone copy on the shape (d1 = 0, d2 = 2, n) with the given threshold.
    Configuration to_configuration(int theta) const;

private:
    const Configuration* config_;
    SiteIndex offset_;
    int n_;
};

/// Some row or column holds at least k open sites.
bool is_viable(const PlaneView& plane, int k);
/// Threshold-k dynamics restricted to the plane fills it.
bool is_internally_spanned(const PlaneView& plane, int k);
/// Threshold-k dynamics restricted to the plane adds nothing.
bool is_internally_inert(const PlaneView& plane, int k);
/// No closed site of plane i has k open neighbors, counting its plane and its
/// cycle neighbors in planes i-1 and i+1 (time-1 reading). Requires d1 = 1, d2 = 2.
bool is_inert(const Configuration& config, int plane, int k);

/// Each of the four subsquares has at least theta rows and theta columns with
/// at least k open sites inside the subsquare. Subsquares are the corners of
/// the odd-sized K_{n'}^2 (n' = n, or n - 1 dropping the last row and column
/// when n is even) with the middle row and column excluded. Requires n >= 2*theta + 2.
bool is_proper(const PlaneView& plane, int k, int theta);

/// Rows [first, first + size) and columns likewise, for the four subsquares.
struct Subsquare {
    int row_begin;
    int col_begin;
    int size;
};
std::vector<Subsquare> subsquares(int n);

/// Internal spanning, via the generic fast engine instead of the plane kernel.
bool is_internally_spanned_reference(const PlaneView& plane, int k);

struct PlaneFlags {
    int k = 0;
    bool viable = false;
    bool internally_spanned = false;
    bool internally_inert = false;
    bool inert = false;
    std::optional<bool> proper; ///< set only when n >= 2*theta + 2
};

struct PlaneClass {
    int plane = 0;
    std::vector<PlaneFlags> flags; ///< for k = theta - 2, theta - 1, theta
    bool exceptional = false;      ///< theta-IS or not (theta-1)-IS

    const PlaneFlags& at(int k) const;
};

std::vector<PlaneClass> classify_planes(const Configuration& config, int theta);

struct BlockingInterval {
    int i1;
    int i2;
    friend bool operator==(const BlockingInterval&, const BlockingInterval&) = default;
};

/// All cyclic intervals [i1, i2] of planes that no outside occupation can
/// invade. At most `limit` intervals are returned (0 = unlimited).
std::vector<BlockingInterval> find_blocking_intervals(const Configuration& config, int theta,
                                                      std::size_t limit = 0);
bool has_blocking_interval(const Configuration& config, int theta);

/// Every plane (theta-2)-IS; a theta-IS plane between any two cyclically
/// consecutive planes that are not (theta-1)-IS; at least one theta-IS plane.
bool sufficient_condition(const Configuration& config, int theta);
/// No blocking interval and at least one plane that is not theta-inert (or
/// nothing closed at all).
bool necessary_condition(const Configuration& config, int theta);

enum class AssistVariant {
    one_z_theta_minus_2, ///< >= 1 open cycle neighbor and >= theta-2 open K-neighbors
    one_z_theta_minus_1, ///< >= 1 open cycle neighbor and >= theta-1 open K-neighbors
    two_z_theta_minus_2, ///< 2 open cycle neighbors and >= theta-2 open K-neighbors
};

SiteIndex count_z_assisted(const Configuration& config, int theta, AssistVariant variant);

/// prod_i [lower_i, lower_i + (doubled_i ? 1 : 0)] x K_n, cyclic in each axis.
struct SafeBox {
    std::vector<int> lower;
    std::vector<bool> doubled;
};

/// An initially empty safe box, if any. Requires d2 = 1, m >= 3 and
/// d1 + 1 <= theta <= 2*d1 + 1.
std::optional<SafeBox> find_empty_safe_box(const Configuration& config, int theta);

} // namespace percolab
