/**
 * Integer cohomology of the moment-angle complex / toric Kempf-Ness set of
 * a simplicial complex K: the full-subcomplex (Hochster) decomposition, the
 * finite Koszul-type differential graded model carrying the ring structure,
 * cup products, and triple Massey products.
 *
 * The Koszul model is the reduced complex Lambda[u_1..u_m] (x) Z[K] with
 * v_i^2 = u_i v_i = 0, deg u_i = 1, deg v_i = 2, d u_i = v_i.  Monomials
 * u_sigma v_tau with sigma and tau disjoint and tau a face of K form a
 * basis; the differential and the product preserve the multidegree
 * sigma union tau, so everything decomposes into finite blocks indexed by
 * subsets I of [m].
 */

#ifndef KN_COHOMOLOGY_HPP
#define KN_COHOMOLOGY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kn/exact.hpp"
#include "kn/simplicial.hpp"

namespace kn {

struct KoszulMonomial {
    Bitset sigma = 0; // exterior variables, kept in ascending index order
    Bitset tau = 0;   // polynomial variables; must be a face of K

    bool operator<(const KoszulMonomial& o) const {
        return sigma != o.sigma ? sigma < o.sigma : tau < o.tau;
    }
    bool operator==(const KoszulMonomial& o) const { return sigma == o.sigma && tau == o.tau; }

    int degree() const { return popcount(sigma) + 2 * popcount(tau); }
    Bitset multidegree() const { return sigma | tau; }
};

/// Integer combination of Koszul monomials; zero coefficients never stored.
using Cochain = std::map<KoszulMonomial, Int>;

Cochain cochain_scaled_sum(Cochain a, const Cochain& b, const Int& scale);

/// The Koszul differential: d(u_sigma v_tau) = sum over i in sigma of
/// (-1)^{pos(i in sigma)} u_{sigma - i} v_{tau + i}, terms with tau + i not
/// a face dropped.
Cochain koszul_differential(const SimplicialComplex& K, const Cochain& c);

/// Product in the reduced model: zero on overlapping multidegrees or when
/// the merged tau is a non-face; otherwise the Koszul shuffle sign.
Cochain cochain_product(const SimplicialComplex& K, const Cochain& a, const Cochain& b);

/// Degree when homogeneous; nullopt for 0 or mixed-degree cochains.
std::optional<int> cochain_degree(const Cochain& c);

/// Renders e.g. "u_1u_3v_4v_6 - 2u_2v_5"; "0" for the empty cochain.
std::string cochain_text(const Cochain& c);

/// Parses the same notation (u/v factors in any order, optional integer
/// coefficients).  Monomials that vanish in the model are dropped.
/// Throws validation_error(BadInput) on malformed input.
Cochain parse_cochain(const SimplicialComplex& K, const std::string& text);

/// Cocycle with its total degree.
struct CohomologyClass {
    Cochain rep;
    int degree = 0;
};

/**
 * The multidegree-I component of the reduced Koszul model: basis monomials
 * u_{I - tau} v_tau for faces tau of K(I), graded by total degree |I|+|tau|,
 * with SNF-backed cohomology, explicit generators, and canonical class
 * coordinates.
 */
class KoszulBlock {
  public:
    KoszulBlock(const SimplicialComplex& K, Bitset I);

    Bitset multidegree() const { return I_; }

    /// Cohomology by total degree.
    const CohomologyTable& groups() const { return table_; }

    struct Generator {
        Cochain rep;
        Int order; // 0 for a free generator
    };
    /// Free generators first, then torsion generators (aligned with the
    /// group's torsion coefficients).
    std::vector<Generator> generators(int total_degree) const;

    /// Coordinates of a block-homogeneous cocycle; nullopt when the input
    /// is not a cocycle of this block and degree.
    std::optional<LatticeQuotient::Coords> classify(const Cochain& z, int total_degree) const;

    /// Cochain in this block realizing the coordinates.
    Cochain realize(const LatticeQuotient::Coords& coords, int total_degree) const;

    /// Primitive e with d e = target (a block cochain of the given degree);
    /// nullopt when target is not an integral coboundary.
    std::optional<Cochain> solve_primitive(const Cochain& target, int target_degree) const;

  private:
    int tau_size_of_degree(int total_degree) const;
    IntVector to_vector(const Cochain& z, int tau_size) const;
    Cochain to_cochain(const IntVector& vec, int tau_size) const;

    Bitset I_;
    int card_;
    std::vector<std::vector<Bitset>> faces_; // by |tau|
    std::vector<IntegerMatrix> diff_;        // diff_[s]: tau-size s -> s+1
    std::vector<LatticeQuotient> quotients_; // per tau-size
    CohomologyTable table_;
};

/// H^k contribution table b^{-i,2j}; rank of the Tor position.
struct BigradedEntry {
    int i = 0;
    int j2 = 0; // the even index 2j
    std::size_t rank = 0;
    bool operator==(const BigradedEntry& o) const {
        return i == o.i && j2 == o.j2 && rank == o.rank;
    }
};

struct GeneratorInfo {
    int degree = 0;
    Bitset multidegree = 0;
    Cochain rep;
    Int order; // 0 for free
};

struct CohomologyReport {
    std::vector<AbelianGroup> by_degree;            // index = total degree
    std::vector<BigradedEntry> bigraded;            // nonzero ranks, sorted by (j2, i)
    std::map<Bitset, CohomologyTable> provenance;   // subsets with nontrivial contribution
    std::vector<GeneratorInfo> generators;          // filled by attach_generators

    std::vector<std::size_t> betti() const;
};

/// Pluggable store for reduced cohomology of full subcomplexes; file-backed
/// implementation lives with the IO layer.  Implementations must be safe to
/// call from several worker threads.
class SubcomplexCache {
  public:
    virtual ~SubcomplexCache() = default;
    virtual std::optional<CohomologyTable> lookup(Bitset I) = 0;
    virtual void store(Bitset I, const CohomologyTable& t) = 0;
};

struct HochsterOptions {
    int jobs = 1;
    SubcomplexCache* cache = nullptr;
};

/**
 * Full-subcomplex decomposition: sweeps every I subset of [m], computes the
 * reduced cohomology of K(I) through the simplicial cochain pipeline, and
 * accumulates it into total degree (cohomological degree) + |I| + 1.
 */
CohomologyReport hochster_cohomology(const SimplicialComplex& K, const HochsterOptions& opt = {});

/// b_k == b_{m+n-k} for all k (free ranks only).
bool poincare_duality_check(const CohomologyReport& report, int m, int n);

/**
 * Lazy per-multidegree view of the Koszul model of one complex, plus the
 * class-level ring operations.  Not thread-safe (blocks are memoized).
 */
class CohomologyRing {
  public:
    explicit CohomologyRing(SimplicialComplex K);

    const SimplicialComplex& complex() const { return K_; }
    const KoszulBlock& block(Bitset I);

    bool is_cocycle(const Cochain& c) const;

    /// True when the cocycle is a coboundary (class zero in every block).
    bool class_is_zero(const Cochain& cocycle);

    /// Classes equal up to sign, modulo coboundaries.
    bool classes_equal_up_to_sign(const Cochain& x, const Cochain& y);

    /// Product of classes, reduced to a canonical representative modulo
    /// coboundaries blockwise.
    CohomologyClass cup(const CohomologyClass& x, const CohomologyClass& y);

    struct MasseyResult {
        bool defined = false;
        int failing_pair = 0; // 1: x*y nonzero, 2: y*z nonzero
        CohomologyClass representative;
        bool trivial = false;
        Cochain witness_e, witness_f;
    };

    /// Triple Massey product <a,b,c>; representative a*f + (-1)^{|a|+1} e*c.
    /// Triviality is decided by exact lattice membership of the
    /// representative in the span of coboundaries plus a*H + H*c.
    MasseyResult massey(const CohomologyClass& a, const CohomologyClass& b,
                        const CohomologyClass& c);

    /// Koszul-side generators appended degree by degree, multidegrees in
    /// popcount-then-lex order; monomial representatives preferred when a
    /// generator's class admits one.
    void attach_generators(CohomologyReport& report);

  private:
    std::optional<Cochain> solve_primitive_global(const Cochain& target);
    SimplicialComplex K_;
    std::map<Bitset, std::unique_ptr<KoszulBlock>> blocks_;
};

/// Convenience wrapper over KoszulBlock for a single multidegree.
struct BlockCohomology {
    CohomologyTable table;
    std::map<int, std::vector<KoszulBlock::Generator>> generators;
};
BlockCohomology koszul_cohomology(const SimplicialComplex& K, Bitset I);

/**
 * Verifies, for every multidegree I, that the Koszul block cohomology
 * matches the shifted reduced simplicial cohomology of K(I), and that the
 * two aggregates agree.  On mismatch returns false and appends a
 * description to diff when given.
 */
bool cross_check_hochster_koszul(const SimplicialComplex& K, std::string* diff = nullptr);

/// Subsets of [m] ordered by popcount, then lexicographically as ascending
/// index sequences.
std::vector<Bitset> subsets_by_popcount(int m);

} // namespace kn

#endif // KN_COHOMOLOGY_HPP
