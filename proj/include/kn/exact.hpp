/**
 * Exact integer and rational linear algebra: Smith normal forms, kernels,
 * cokernels, rational solving, and lattice membership.
 *
 * Everything here is pure and side-effect free; matrices are immutable in
 * shape after construction and all arithmetic is arbitrary precision.
 */

#ifndef KN_EXACT_HPP
#define KN_EXACT_HPP

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "kn/numeric.hpp"

namespace kn {

/**
 * Dense matrix over Z with arbitrary-precision entries, row-major storage.
 * Zero-row and zero-column matrices are legal everywhere.
 */
class IntegerMatrix {
  public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows);
    static IntegerMatrix column(const IntVector& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntegerMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const IntegerMatrix& o) const { return !(*this == o); }

    IntegerMatrix operator*(const IntegerMatrix& rhs) const;
    IntVector operator*(const IntVector& v) const;
    IntegerMatrix transposed() const;

    bool is_zero() const;
    bool is_identity() const;

    IntVector row(std::size_t i) const;
    IntVector col(std::size_t j) const;

    /// Columns listed in `which`, in that order.
    IntegerMatrix select_columns(const std::vector<std::size_t>& which) const;
    IntegerMatrix select_rows(const std::vector<std::size_t>& which) const;

    std::string to_string() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

/// Dense matrix over Q; boost keeps every entry gcd-reduced with positive
/// denominator, so no explicit normalization pass is needed.
class RationalMatrix {
  public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix from_integer(const IntegerMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

/**
 * Factorization U * M * V = D with U, V unimodular and D the Smith normal
 * form of M: diagonal, nonnegative, each entry dividing the next.
 */
struct SnfFactorization {
    IntegerMatrix U; // rows x rows
    IntegerMatrix D; // rows x cols
    IntegerMatrix V; // cols x cols
    std::size_t source_rows = 0;
    std::size_t source_cols = 0;

    std::size_t rank() const;
    std::vector<Int> diagonal() const;
};

/**
 * Finitely generated abelian group in invariant-factor form: free rank plus
 * a divisibility chain of torsion coefficients (no 1s).
 */
struct AbelianGroup {
    std::size_t free_rank = 0;
    IntVector torsion;

    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    /// Direct sum, re-canonicalized into a single divisibility chain.
    AbelianGroup direct_sum(const AbelianGroup& o) const;

    std::string to_string() const; // e.g. "Z^2 + Z/2 + Z/6", "0"
};

/// Normalize a multiset of moduli (>= 0 allowed: 0 counts as a free factor)
/// into a divisibility chain with no unit entries.
AbelianGroup group_from_moduli(std::size_t free_rank, IntVector moduli);

/// Smith normal form by minimal-pivot elimination.  Handles empty matrices.
SnfFactorization smith_normal_form(const IntegerMatrix& M);

/// Rank over Q obtained from the SNF diagonal.
std::size_t snf_rank(const IntegerMatrix& M);

/// Rank over Q by fraction-free (Bareiss) elimination; independent of SNF.
std::size_t bareiss_rank(IntegerMatrix M);

/// coker(M : Z^cols -> Z^rows) as free rank plus torsion.
AbelianGroup cokernel_invariants(const IntegerMatrix& M);

/// Columns form a Z-basis of ker(M); the basis spans a saturated sublattice.
IntegerMatrix kernel_basis(const IntegerMatrix& M);

/// Exact inverse of a unimodular matrix (throws if not unimodular).
IntegerMatrix unimodular_inverse(const IntegerMatrix& U);

/// One exact solution of M x = b, if any.
std::optional<RatVector> solve_rational(const RationalMatrix& M, const RatVector& b);

/// True iff v lies in the integer span of the generator columns.
bool lattice_membership(const IntVector& v, const IntegerMatrix& generators);

/// Integer coordinates x with generators * x = v, if v lies in the lattice.
std::optional<IntVector> lattice_coordinates(const IntVector& v, const IntegerMatrix& generators);

/**
 * Presentation of the subquotient ker(d_out) / im(d_in) of Z^N, where
 * d_out is given as a matrix out of Z^N and d_in as a matrix into Z^N
 * (columns of d_in must be cycles).  Supplies the group, explicit generator
 * vectors, and canonical coordinates of arbitrary cycles.
 */
class LatticeQuotient {
  public:
    LatticeQuotient(const IntegerMatrix& d_out, const IntegerMatrix& d_in);

    const AbelianGroup& group() const { return group_; }
    std::size_t ambient_dim() const { return ambient_; }

    /// Generators of the free part (columns, length = ambient dim).
    const std::vector<IntVector>& free_generators() const { return free_gens_; }
    /// Generators of the torsion part, aligned with group().torsion.
    const std::vector<IntVector>& torsion_generators() const { return torsion_gens_; }

    /// Canonical coordinates of a class: free coordinates exactly, torsion
    /// coordinates reduced into [0, e_i).  Order matches the generator lists.
    struct Coords {
        IntVector free;
        IntVector torsion;
        bool is_zero() const;
        bool operator==(const Coords& o) const { return free == o.free && torsion == o.torsion; }
    };

    /// nullopt when x is not a cycle (not in the kernel lattice).
    std::optional<Coords> classify(const IntVector& x) const;

    /// Cycle vector realizing the given coordinates.
    IntVector representative(const Coords& c) const;

  private:
    std::size_t ambient_;
    IntegerMatrix kernel_;   // ambient x p
    IntegerMatrix adapted_;  // kernel * U^{-1}
    IntegerMatrix basis_change_; // U: adapted coords = U * kernel coords
    IntVector invariants_;   // length p; e_i >= 1 for image slots, 0 for free
    AbelianGroup group_;
    std::vector<IntVector> free_gens_;
    std::vector<IntVector> torsion_gens_;
    std::vector<std::size_t> free_slots_;
    std::vector<std::size_t> torsion_slots_;
};

/// Exact solve of M x = b over Z via SNF; nullopt when no integral solution.
std::optional<IntVector> solve_integer(const IntegerMatrix& M, const IntVector& b);

} // namespace kn

#endif // KN_EXACT_HPP
