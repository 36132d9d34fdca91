/**
 * Rational simplicial fans: validation, regularity/completeness tests, the
 * underlying simplicial complex of generator subsets, and the structure of
 * the torus subgroup cut out by the rays.
 */

#ifndef KN_FAN_HPP
#define KN_FAN_HPP

#include <cstdint>
#include <vector>

#include "kn/exact.hpp"
#include "kn/simplicial.hpp"

namespace kn {

/// A simplicial cone, referenced by the indices of its generating rays.
struct Cone {
    Bitset generators = 0;
};

class Fan {
  public:
    /**
     * Validate and build a fan from primitive ray candidates and maximal
     * cones (1-based ray indices).  Rays are divided by their gcd when not
     * primitive (recorded in primitivized()).  Throws validation_error with
     * kinds ContainsLine, NonSimplicialCone, BadIntersection, or input
     * errors.  Only simplicial fans are supported.
     */
    static Fan validate(int n, std::vector<IntVector> rays,
                        const std::vector<std::vector<int>>& maximal_cones);

    int n() const { return n_; }
    int m() const { return static_cast<int>(rays_.size()); }
    const std::vector<IntVector>& rays() const { return rays_; }
    const std::vector<Cone>& maximal_cones() const { return maximal_; }

    /// True when some input ray had to be divided by its gcd.
    bool primitivized() const { return primitivized_; }

    /// n x m matrix whose columns are the rays.
    IntegerMatrix ray_matrix() const;

    /// The complex of generator subsets of cones (g-subsets) on [m].
    SimplicialComplex underlying_complex() const;

    /// Every maximal cone's generators extend to a Z-basis of the lattice.
    bool is_regular() const;

    /**
     * Maximal cones cover the whole space.  Decided by the wall condition
     * (all maximal cones full-dimensional, every wall shared by exactly two,
     * dual graph connected) and cross-checked by exact point location of
     * pseudo-random rational vectors.
     */
    bool is_complete(std::uint64_t seed = 11) const;

    /**
     * Structure of the kernel of the torus map induced by the rays:
     * free rank m - n plus the finite part (torsion of the ray cokernel).
     * Throws RaysDoNotSpan when the rays do not span.
     */
    AbelianGroup group_structure() const;

    /// Exact membership of a rational point in a (simplicial) cone.
    bool contains_point(const Cone& c, const RatVector& v) const;

  private:
    int n_ = 0;
    std::vector<IntVector> rays_;
    std::vector<Cone> maximal_;
    bool primitivized_ = false;
};

} // namespace kn

#endif // KN_FAN_HPP
