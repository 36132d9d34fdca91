/**
 * Abstract simplicial complexes on [m] (m <= 64, bitmask faces), full
 * subcomplexes, minimal non-faces, and reduced integer cohomology.
 */

#ifndef KN_SIMPLICIAL_HPP
#define KN_SIMPLICIAL_HPP

#include <map>
#include <string>
#include <vector>

#include "kn/exact.hpp"
#include "kn/numeric.hpp"

namespace kn {

/**
 * A complex is stored through its maximal faces (an antichain of bitmasks).
 * The empty set is a face of every complex; vertices may be "ghosts"
 * (present in [m] but in no face), which matters for full subcomplexes and
 * for the Hochster sweep.
 */
class SimplicialComplex {
  public:
    SimplicialComplex() : m_(0) {}

    /// Smallest complex containing the given faces (1-based vertex labels).
    /// Throws validation_error on out-of-range vertices or m > 64.
    static SimplicialComplex from_maximal_faces(int m, const std::vector<std::vector<int>>& maximal);

    /// Same, but with faces already packed as bitmasks.
    static SimplicialComplex from_masks(int m, std::vector<Bitset> faces,
                                        std::vector<int> labels = {});

    int vertex_count() const { return m_; }

    /// Original 1-based labels of the vertices (identity unless this complex
    /// was produced by full_subcomplex).
    const std::vector<int>& labels() const { return labels_; }

    /// Maximal faces, ascending by mask; empty when the only face is {}.
    const std::vector<Bitset>& maximal_faces() const { return maximal_; }

    bool is_face(Bitset s) const;

    /// All faces contained in I, the empty face included, grouped by size.
    std::vector<std::vector<Bitset>> faces_within_by_size(Bitset I) const;

    /// All faces of the complex of the given cardinality.
    std::vector<Bitset> faces_of_size(int k) const;

    /// Largest face cardinality (0 when only the empty face exists).
    int max_face_size() const;

    /// Restriction to I, vertices relabeled to 1..|I| with original labels
    /// kept as metadata.
    SimplicialComplex full_subcomplex(Bitset I) const;

    /// Inclusion-minimal non-faces; generators of the Stanley-Reisner ideal.
    std::vector<Bitset> minimal_non_faces() const;

    bool operator==(const SimplicialComplex& o) const {
        return m_ == o.m_ && maximal_ == o.maximal_ && labels_ == o.labels_;
    }
    bool operator!=(const SimplicialComplex& o) const { return !(*this == o); }

    /// Stable serialization used for hashing and cache keys.
    std::string canonical_string() const;

  private:
    int m_;
    std::vector<Bitset> maximal_;
    std::vector<int> labels_;
};

/// Reduced cohomology groups indexed by degree >= -1; absent degrees are zero.
struct CohomologyTable {
    std::map<int, AbelianGroup> groups;

    AbelianGroup at(int degree) const {
        auto it = groups.find(degree);
        return it == groups.end() ? AbelianGroup{} : it->second;
    }
    void set(int degree, AbelianGroup g) {
        if (!g.is_trivial()) groups[degree] = std::move(g);
    }
    bool operator==(const CohomologyTable& o) const { return groups == o.groups; }
    bool operator!=(const CohomologyTable& o) const { return !(*this == o); }
};

/**
 * Coboundary matrices of the augmented simplicial cochain complex of K(I).
 * delta[s] maps cochains on size-s faces to cochains on size-(s+1) faces;
 * delta[0] is the augmentation.  Faces are ordered ascending by mask within
 * each size; the sign of inserting vertex v into a face is (-1)^{number of
 * face vertices below v}.
 */
std::vector<IntegerMatrix> augmented_coboundaries(const SimplicialComplex& K, Bitset I);

/// Reduced integer cohomology of the full subcomplex K(I).
CohomologyTable reduced_cohomology(const SimplicialComplex& K, Bitset I);

/// Reduced integer cohomology of K itself.
CohomologyTable reduced_cohomology(const SimplicialComplex& K);

} // namespace kn

#endif // KN_SIMPLICIAL_HPP
