#include "lincsp/random.hpp"

namespace lincsp {

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(mix64(seed + kGolden) ^ mix64(~stream * kGolden))
{
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
{
    return CounterRng::mix64(CounterRng::mix64(master) ^ (index * CounterRng::kGolden + 0x632BE59BD9B4E019ULL));
}

} // namespace lincsp
