#pragma once

#include <cstdint>

namespace percolab {

struct LatticeCertificate {
    bool holds = false;
    std::uint64_t sets_checked = 0; ///< connected sets, up to translation
    int max_size = 0;               ///< largest set size examined
};

/// Finite certificate for: every A in Z^d with |A| < 2^{2d+1-theta} has a
/// point with at least theta neighbors outside A, for d+1 <= theta <= 2d+1.
///
/// If A splits into mutually non-adjacent parts, each point's outside-neighbor
/// count is the same as within its own part, so it suffices to enumerate the
/// connected sets (fixed lattice animals) of each size up to translation.
/// Every such set fits in [0, B)^d once B >= its size; B smaller than the size
/// bound is rejected. Throws BudgetError when the enumeration would exceed
/// `max_sets`.
LatticeCertificate verify_small_lattice_lemma(int d, int theta, int box_side,
                                              std::uint64_t max_sets = 5'000'000);

} // namespace percolab
