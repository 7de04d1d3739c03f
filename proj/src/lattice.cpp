#include "percolab/lattice.hpp"

#include "percolab/errors.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace percolab {

namespace {

using Point = std::vector<int>;
using Animal = std::vector<Point>; // sorted, translated so each axis minimum is 0

Animal normalize(Animal a)
{
    const std::size_t d = a.front().size();
    for (std::size_t ax = 0; ax < d; ++ax) {
        int lo = a.front()[ax];
        for (const auto& p : a) lo = std::min(lo, p[ax]);
        for (auto& p : a) p[ax] -= lo;
    }
    std::sort(a.begin(), a.end());
    return a;
}

bool has_exposed_point(const Animal& a, int theta)
{
    const std::size_t d = a.front().size();
    for (const auto& p : a) {
        int outside = 0;
        Point q = p;
        for (std::size_t ax = 0; ax < d; ++ax)
            for (int delta : {-1, 1}) {
                q[ax] = p[ax] + delta;
                if (!std::binary_search(a.begin(), a.end(), q)) ++outside;
                q[ax] = p[ax];
            }
        if (outside >= theta) return true;
    }
    return false;
}

} // namespace

LatticeCertificate verify_small_lattice_lemma(int d, int theta, int box_side, std::uint64_t max_sets)
{
    if (d < 1 || theta < d + 1 || theta > 2 * d + 1)
        throw UnsupportedError("the small-set lemma needs d >= 1 and d+1 <= theta <= 2d+1");
    const int exponent = 2 * d + 1 - theta;
    if (exponent > 20) throw BudgetError("size bound 2^" + std::to_string(exponent) + " is far beyond enumeration");
    const int bound = 1 << exponent;
    const int max_size = bound - 1;
    if (box_side < max_size)
        throw ParameterError("box side " + std::to_string(box_side) + " cannot hold sets of size " +
                             std::to_string(max_size));

    LatticeCertificate cert;
    cert.max_size = max_size;
    cert.holds = true;
    if (max_size == 0) return cert;

    std::set<Animal> level{Animal{Point(static_cast<std::size_t>(d), 0)}};
    for (int size = 1;; ++size) {
        for (const auto& a : level) {
            ++cert.sets_checked;
            for (const auto& p : a)
                for (int c : p)
                    if (c >= box_side) throw ParameterError("lattice set escaped the box");
            if (!has_exposed_point(a, theta)) {
                cert.holds = false;
                return cert;
            }
        }
        if (size == max_size) break;
        std::set<Animal> next;
        for (const auto& a : level)
            for (const auto& p : a)
                for (int ax = 0; ax < d; ++ax)
                    for (int delta : {-1, 1}) {
                        Point q = p;
                        q[static_cast<std::size_t>(ax)] += delta;
                        if (std::binary_search(a.begin(), a.end(), q)) continue;
                        Animal grown = a;
                        grown.push_back(q);
                        next.insert(normalize(std::move(grown)));
                        if (cert.sets_checked + next.size() > max_sets)
                            throw BudgetError("lattice-set enumeration exceeds " + std::to_string(max_sets) + " sets");
                    }
        level = std::move(next);
    }
    return cert;
}

} // namespace percolab
