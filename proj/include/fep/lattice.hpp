#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fep {

using BigInt = boost::multiprecision::cpp_int;

/// Local configuration on a finite window, one byte per site (0 or 1).
using LocalConfig = std::vector<std::uint8_t>;

enum class ClassLabel { Ergodic, TransientGood, TransientBad, Blocked };

const char* to_string(ClassLabel c);

/// Particle configuration on the discrete torus of size N.
///
/// Sites are indexed 0..N-1; index 0 is the first character of the text
/// encoding. Indices passed to operator() are reduced modulo N.
/// Occupancy is bit-packed in 64-bit words.
class ExclusionConfig {
public:
    ExclusionConfig() = default;
    explicit ExclusionConfig(int n);
    explicit ExclusionConfig(const LocalConfig& bits);

    static ExclusionConfig from_string(std::string_view s);
    std::string to_string() const;

    int size() const { return n_; }
    int particles() const { return k_; }

    bool operator[](int x) const {
        return (words_[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1u;
    }
    /// Periodic access.
    bool operator()(long x) const { return (*this)[wrap(x)]; }
    int wrap(long x) const {
        long r = x % n_;
        return static_cast<int>(r < 0 ? r + n_ : r);
    }

    void set(int x, bool v);
    /// Exchange occupations of x and x+1 (periodic).
    void swap_with_right(int x);

    /// Number of x with eta(x)=eta(x+1)=0.
    int adjacent_hole_pairs() const;
    /// Number of x with eta(x)=eta(x+1)=1.
    int adjacent_particle_pairs() const;

    LocalConfig bits() const;
    /// Packed key, valid for N <= 64.
    std::uint64_t key() const;

    friend bool operator==(const ExclusionConfig&, const ExclusionConfig&) = default;

private:
    int n_ = 0;
    int k_ = 0;
    std::vector<std::uint64_t> words_;
};

ClassLabel classify(const ExclusionConfig& eta);

/// Binomial with C(n,r)=0 when r<0, r>n or n<0.
BigInt binomial(long n, long r);

/// C(k,m) + C(k-1,m-1), m = N-k.
BigInt count_hole_isolated(int n, int k);

/// Number of ergodic configurations on the N-torus with k particles whose
/// restriction to sites 0..l-1 is sigma. Throws if sigma has adjacent holes.
BigInt count_with_window(int n, int k, const LocalConfig& sigma);

inline constexpr int kDefaultEnumerationCap = 24;

/// Streams hole-isolated configurations with k particles on the N-torus
/// (no two cyclically adjacent holes), in lexicographic order of hole sets.
class HoleIsolatedEnumerator {
public:
    HoleIsolatedEnumerator(int n, int k, int cap = kDefaultEnumerationCap);
    std::optional<ExclusionConfig> next();

private:
    bool advance();
    bool valid() const;

    int n_, m_;
    std::vector<int> holes_;
    bool started_ = false;
    bool done_ = false;
};

/// All of Omega_N^k: empty when 2k <= N.
std::vector<ExclusionConfig> enumerate_ergodic(int n, int k, int cap = kDefaultEnumerationCap);

struct AdjacencyGraph {
    std::vector<ExclusionConfig> nodes;
    std::vector<std::pair<int, int>> edges;

    bool connected() const;
};

/// States of Omega_N^k, with an edge wherever a single allowed jump links them.
AdjacencyGraph adjacency_graph(int n, int k, int cap = kDefaultEnumerationCap);

}  // namespace fep
