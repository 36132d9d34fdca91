/**
 * Exact number types and small bitmask helpers shared across the library.
 *
 * All lattice and cohomology arithmetic is carried out over
 * boost::multiprecision integers/rationals; no rounding ever occurs outside
 * the floating-point sampling paths of the polytope module.
 */

#ifndef KN_NUMERIC_HPP
#define KN_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace kn {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/// Subsets of [m] (m <= 64) as bitmasks; bit i-1 stands for vertex i.
using Bitset = std::uint64_t;

constexpr int kMaxVertices = 64;

inline Bitset full_mask(int m) {
    return m >= 64 ? ~Bitset{0} : (Bitset{1} << m) - 1;
}

inline Bitset bit_of(int vertex_1based) {
    return Bitset{1} << (vertex_1based - 1);
}

inline int popcount(Bitset s) {
    return __builtin_popcountll(s);
}

/// Bits strictly below the given 1-based vertex.
inline Bitset bits_below(int vertex_1based) {
    return bit_of(vertex_1based) - 1;
}

inline bool contains(Bitset set, int vertex_1based) {
    return (set & bit_of(vertex_1based)) != 0;
}

/// Unpack a bitmask into ascending 1-based vertex labels.
std::vector<int> set_to_vertices(Bitset s);

/// Pack 1-based vertex labels into a bitmask; throws on out-of-range input.
Bitset vertices_to_set(const std::vector<int>& vs, int m);

/**
 * Deterministic 64-bit generator (splitmix64).  Used instead of std::
 * distributions so that identical seeds give identical streams on every
 * platform.
 */
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [lo, hi] (inclusive); lo <= hi.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

    /// Uniform double in [0, 1).
    double unit() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

} // namespace kn

#endif // KN_NUMERIC_HPP
