#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace lincsp {

/// Counter-based generator: the i-th output is a fixed mixing function of
/// (seed, stream, i). Output sequences are identical on every platform, which
/// std::uniform_int_distribution does not guarantee.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

    result_type operator()() noexcept
    {
        ++counter_;
        return mix64(key_ + counter_ * kGolden);
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        // Lemire's nearly-divisionless method.
        auto x = (*this)();
        auto m = static_cast<u128>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = (*this)();
                m = static_cast<u128>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    std::uint64_t counter() const noexcept { return counter_; }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

    // SplitMix64 finalizer.
    static constexpr std::uint64_t mix64(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    __extension__ using u128 = unsigned __int128;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Sub-seed for trial `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Fisher-Yates shuffle driven by CounterRng, reproducible across standard libraries.
template <typename T>
void shuffle(std::span<T> items, CounterRng& rng)
{
    for (std::size_t i = items.size(); i > 1; --i) {
        auto j = static_cast<std::size_t>(rng.below(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

} // namespace lincsp
