#include "fep/rng.hpp"

namespace fep {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replica)
{
    // splitmix64 is a bijection, so distinct replicas give distinct seeds
    return splitmix64(splitmix64(master) + 0x9e3779b97f4a7c15ULL * (replica + 1));
}

std::uint64_t Rng::index(std::uint64_t n)
{
    // Lemire's multiply-shift with rejection
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < n) {
        std::uint64_t threshold = -n % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(engine_()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace fep
