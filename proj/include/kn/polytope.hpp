/**
 * Simple convex polytopes from integer H-representation: exact vertex
 * enumeration, normal fans, the cokernel matrix presenting the associated
 * intersection of real quadrics, and floating-point sampling of points on
 * that intersection.
 */

#ifndef KN_POLYTOPE_HPP
#define KN_POLYTOPE_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kn/exact.hpp"
#include "kn/fan.hpp"
#include "kn/simplicial.hpp"

namespace kn {

struct PolytopeVertex {
    RatVector point;
    Bitset incident = 0; // facets active at the vertex, as a bitmask
};

/**
 * Integer coefficient system of quadrics cutting out the lifted polytope:
 * row j encodes sum_k C(j,k) * (|z_{perm[k]}|^2 - b[k]) = 0.  Columns follow
 * the recorded facet permutation; the leading n facets meet at a vertex.
 * When the leading normal block is unimodular the matrix has the
 * (-a_{n+j,k} | identity) template shape (template_form).
 */
struct QuadricSystem {
    IntegerMatrix C;              // (m-n) x m
    IntVector b;                  // offsets, permuted order
    std::vector<int> permutation; // permutation[k] = original 1-based facet index
    bool template_form = false;

    /// C * b: the value of the moment map cutting out the level set.
    IntVector moment_target() const { return C * b; }

    /// Plaintext rendering of one quadric, original facet indices.
    std::string equation_text(std::size_t row) const;
};

struct SampledPoint {
    std::vector<std::complex<double>> z; // original facet order
    RatVector x;                         // exact preimage in the polytope
    std::vector<double> residuals;       // per quadric equation
};

class HPolytope {
  public:
    /**
     * Validate {x : A x + b >= 0} as a bounded, full-dimensional,
     * irredundant integer H-polytope; rows are divided together with their
     * offsets when a common factor allows, otherwise NonPrimitiveRow.
     * Throws validation_error with kinds Unbounded, EmptyPolytope,
     * NotFullDimensional, RedundantInequality.
     */
    static HPolytope from_inequalities(IntegerMatrix A, IntVector b);

    int n() const { return n_; }
    int m() const { return m_; }
    const IntegerMatrix& facet_matrix() const { return A_; }
    const IntVector& offsets() const { return b_; }
    bool rows_rescaled() const { return rescaled_; }

    /// All vertices with exact coordinates and facet-incidence sets.
    const std::vector<PolytopeVertex>& vertices() const { return vertices_; }

    /// Exactly n facets meet at every vertex.
    bool is_simple() const;

    /// Normal fan: rays are the facet normals, maximal cones the vertex
    /// incidence sets.  Runs full fan validation.  Throws NotSimple.
    Fan normal_fan() const;

    /// Complex on [m] of facet sets with nonempty intersection.
    SimplicialComplex facet_nerve() const;

    /**
     * Cokernel presentation of the facet matrix.  Without an explicit
     * order the lexicographically smallest vertex incidence set leads; an
     * explicit facet order must be a permutation of [m] whose first n
     * entries are a vertex's facets.
     */
    QuadricSystem quadric_system(const std::optional<std::vector<int>>& facet_order = std::nullopt) const;

    /// Random points on the quadric intersection, lifted from the polytope
    /// with pseudo-random phases.  Deterministic in the seed.
    std::vector<SampledPoint> sample_on_Z(int count, std::uint64_t seed,
                                          const QuadricSystem& q) const;
    std::vector<SampledPoint> sample_on_Z(int count, std::uint64_t seed) const;

  private:
    int n_ = 0, m_ = 0;
    IntegerMatrix A_;
    IntVector b_;
    bool rescaled_ = false;
    std::vector<PolytopeVertex> vertices_;
};

/**
 * True iff the real Jacobian of the quadric system at the point has full
 * rank m-n; points whose residuals exceed resid_tol fail immediately
 * (they are not on the variety, so the question does not apply).
 */
bool jacobian_rank_check(const SampledPoint& pt, const QuadricSystem& q,
                         double resid_tol = 1e-9, double sv_rel_cut = 1e-7);

} // namespace kn

#endif // KN_POLYTOPE_HPP
