// Shared fixtures: small complexes, fans, and polytopes used across suites.

#ifndef KN_TESTS_FIXTURES_HPP
#define KN_TESTS_FIXTURES_HPP

#include <vector>

#include "kn/exact.hpp"
#include "kn/simplicial.hpp"

namespace fixtures {

/// Nerve of the cube-with-two-cut-edges polytope: 12 vertex triples on 8
/// facets.  Derived by hand from the inequality description (x>=0, y>=0,
/// z>=0, x<=3, y<=3, z<=3, y-x>=-2, y+z<=5).
inline kn::SimplicialComplex cut_cube_complex() {
    return kn::SimplicialComplex::from_maximal_faces(
        8, {{1, 2, 3},
            {1, 3, 5},
            {1, 2, 6},
            {3, 4, 5},
            {2, 3, 7},
            {3, 4, 7},
            {2, 6, 7},
            {4, 6, 7},
            {1, 6, 8},
            {1, 5, 8},
            {4, 6, 8},
            {4, 5, 8}});
}

/// The ten non-edges of the cut-cube nerve (Stanley-Reisner generators).
inline std::vector<std::vector<int>> cut_cube_non_edges() {
    return {{1, 4}, {1, 7}, {2, 4}, {2, 5}, {2, 8}, {3, 6}, {3, 8}, {5, 6}, {5, 7}, {7, 8}};
}

inline kn::SimplicialComplex triangle_boundary() {
    return kn::SimplicialComplex::from_maximal_faces(3, {{1, 2}, {2, 3}, {1, 3}});
}

inline kn::SimplicialComplex three_points() {
    return kn::SimplicialComplex::from_maximal_faces(3, {{1}, {2}, {3}});
}

inline kn::SimplicialComplex octahedron_boundary() {
    return kn::SimplicialComplex::from_maximal_faces(6, {{1, 2, 3},
                                                         {1, 2, 6},
                                                         {1, 5, 3},
                                                         {1, 5, 6},
                                                         {4, 2, 3},
                                                         {4, 2, 6},
                                                         {4, 5, 3},
                                                         {4, 5, 6}});
}

/// Boundary of the d-simplex on d+1 vertices.
inline kn::SimplicialComplex simplex_boundary(int d) {
    std::vector<std::vector<int>> faces;
    const int m = d + 1;
    for (int omit = 1; omit <= m; ++omit) {
        std::vector<int> f;
        for (int v = 1; v <= m; ++v)
            if (v != omit) f.push_back(v);
        faces.push_back(f);
    }
    return kn::SimplicialComplex::from_maximal_faces(m, faces);
}

/// Cut-cube polytope data: the eight inequalities.
inline kn::IntegerMatrix cut_cube_A() {
    return kn::IntegerMatrix::from_rows({{1, 0, 0},
                                         {0, 1, 0},
                                         {0, 0, 1},
                                         {-1, 0, 0},
                                         {0, -1, 0},
                                         {0, 0, -1},
                                         {-1, 1, 0},
                                         {0, -1, -1}});
}

inline kn::IntVector cut_cube_b() {
    return {kn::Int(0), kn::Int(0), kn::Int(0), kn::Int(3),
            kn::Int(3), kn::Int(3), kn::Int(2), kn::Int(5)};
}

/// Standard simplex in dimension n: e_i . x >= 0 and sum x_i <= 1.
inline void standard_simplex(int n, kn::IntegerMatrix& A, kn::IntVector& b) {
    A = kn::IntegerMatrix(n + 1, n);
    b.assign(n + 1, kn::Int(0));
    for (int i = 0; i < n; ++i) A(i, i) = 1;
    for (int j = 0; j < n; ++j) A(n, j) = -1;
    b[n] = 1;
}

/// Random complex on m <= 8 vertices with a handful of random maximal faces.
inline kn::SimplicialComplex random_complex(kn::SplitMix64& rng, int max_m = 8) {
    const int m = static_cast<int>(rng.range(1, max_m));
    const int count = static_cast<int>(rng.range(0, 5));
    std::vector<std::vector<int>> faces;
    for (int f = 0; f < count; ++f) {
        std::vector<int> face;
        for (int v = 1; v <= m; ++v)
            if (rng.range(0, 2) == 0) face.push_back(v);
        faces.push_back(face);
    }
    return kn::SimplicialComplex::from_maximal_faces(m, faces);
}

} // namespace fixtures

#endif // KN_TESTS_FIXTURES_HPP
