#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace percolab {

/// Fixed-size dense bit set over site indices.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::uint64_t size, bool value = false)
        : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0)
    {
        if (value) trim();
    }

    std::uint64_t size() const noexcept { return size_; }

    bool test(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::uint64_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::uint64_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    /// Sets bit i and reports whether it was previously clear.
    bool insert(std::uint64_t i) noexcept
    {
        auto& w = words_[i >> 6];
        const std::uint64_t bit = std::uint64_t{1} << (i & 63);
        const bool fresh = (w & bit) == 0;
        w |= bit;
        return fresh;
    }

    std::uint64_t count() const noexcept
    {
        std::uint64_t c = 0;
        for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
        return c;
    }

    bool is_subset_of(const BitSet& other) const noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    BitSet& operator|=(const BitSet& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitSet& operator&=(const BitSet& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    const std::vector<std::uint64_t>& words() const noexcept { return words_; }
    std::vector<std::uint64_t>& words() noexcept { return words_; }

    /// Calls f(i) for every set bit in increasing order.
    template <class F>
    void for_each_set(F&& f) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                f(static_cast<std::uint64_t>(wi) * 64 + static_cast<std::uint64_t>(b));
                w &= w - 1;
            }
        }
    }

    friend bool operator==(const BitSet&, const BitSet&) = default;

private:
    void trim() noexcept
    {
        if (size_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    }

    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace percolab
