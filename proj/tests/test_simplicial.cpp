#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "fixtures.hpp"
#include "kn/errors.hpp"
#include "kn/simplicial.hpp"

using namespace kn;

namespace {

AbelianGroup z_group(std::size_t rank) {
    AbelianGroup g;
    g.free_rank = rank;
    return g;
}

/// Reduced Euler characteristic from face counts.
long long reduced_euler_from_faces(const SimplicialComplex& K) {
    long long chi = 0;
    const auto by_size = K.faces_within_by_size(full_mask(K.vertex_count()));
    for (std::size_t s = 0; s < by_size.size(); ++s) {
        const long long sign = (static_cast<int>(s) - 1) % 2 == 0 ? 1 : -1;
        chi += sign * static_cast<long long>(by_size[s].size());
    }
    return chi;
}

long long reduced_euler_from_cohomology(const CohomologyTable& t) {
    long long chi = 0;
    for (const auto& [deg, g] : t.groups)
        chi += (deg % 2 == 0 ? 1 : -1) * static_cast<long long>(g.free_rank);
    return chi;
}

} // namespace

TEST_CASE("construction from maximal faces") {
    SUBCASE("triangle boundary") {
        const auto K = fixtures::triangle_boundary();
        CHECK(K.vertex_count() == 3);
        CHECK(K.maximal_faces().size() == 3);
        CHECK(K.is_face(vertices_to_set({1, 2}, 3)));
        CHECK(!K.is_face(vertices_to_set({1, 2, 3}, 3)));
    }
    SUBCASE("three disjoint points") {
        const auto K = fixtures::three_points();
        CHECK(K.maximal_faces().size() == 3);
        CHECK(K.max_face_size() == 1);
    }
    SUBCASE("empty complex") {
        const auto K = SimplicialComplex::from_maximal_faces(0, {});
        CHECK(K.vertex_count() == 0);
        CHECK(K.maximal_faces().empty());
        CHECK(K.is_face(0));
    }
    SUBCASE("redundant faces are absorbed") {
        const auto K = SimplicialComplex::from_maximal_faces(3, {{1, 2}, {1}, {2}});
        CHECK(K.maximal_faces().size() == 1);
    }
    SUBCASE("out-of-range vertex is rejected") {
        CHECK_THROWS_AS(SimplicialComplex::from_maximal_faces(2, {{3}}), validation_error);
    }
}

TEST_CASE("full subcomplexes") {
    SUBCASE("edge of the triangle") {
        const auto K = fixtures::triangle_boundary();
        const auto E = K.full_subcomplex(vertices_to_set({1, 2}, 3));
        CHECK(E.vertex_count() == 2);
        CHECK(E.maximal_faces() == std::vector<Bitset>{0b11});
        CHECK(E.labels() == std::vector<int>{1, 2});
    }
    SUBCASE("two of three points") {
        const auto K = fixtures::three_points();
        const auto P = K.full_subcomplex(vertices_to_set({1, 3}, 3));
        CHECK(P.vertex_count() == 2);
        CHECK(P.maximal_faces().size() == 2);
        CHECK(P.labels() == std::vector<int>{1, 3});
    }
    SUBCASE("cut cube restricted to a non-edge gives two points") {
        const auto K = fixtures::cut_cube_complex();
        const auto P = K.full_subcomplex(vertices_to_set({2, 4}, 8));
        CHECK(P.vertex_count() == 2);
        CHECK(P.maximal_faces() == (std::vector<Bitset>{0b01, 0b10}));
    }
}

TEST_CASE("minimal non-faces") {
    SUBCASE("cut cube has the ten expected pairs") {
        const auto K = fixtures::cut_cube_complex();
        std::vector<Bitset> expected;
        for (const auto& pair : fixtures::cut_cube_non_edges())
            expected.push_back(vertices_to_set(pair, 8));
        std::sort(expected.begin(), expected.end());
        CHECK(K.minimal_non_faces() == expected);
    }
    SUBCASE("full simplex has none") {
        const auto K = SimplicialComplex::from_maximal_faces(4, {{1, 2, 3, 4}});
        CHECK(K.minimal_non_faces().empty());
    }
    SUBCASE("triangle boundary misses only the top face") {
        const auto K = fixtures::triangle_boundary();
        CHECK(K.minimal_non_faces() == std::vector<Bitset>{0b111});
    }
    SUBCASE("ghost vertices appear as singleton non-faces") {
        const auto K = SimplicialComplex::from_maximal_faces(3, {{1, 2}});
        CHECK(K.minimal_non_faces() == std::vector<Bitset>{bit_of(3)});
    }
}

TEST_CASE("reduced cohomology of the named fixtures") {
    SUBCASE("three points: H~0 = Z^2") {
        const auto t = reduced_cohomology(fixtures::three_points());
        CHECK(t.at(0) == z_group(2));
        CHECK(t.groups.size() == 1);
    }
    SUBCASE("triangle boundary: a circle") {
        const auto t = reduced_cohomology(fixtures::triangle_boundary());
        CHECK(t.at(1) == z_group(1));
        CHECK(t.at(0).is_trivial());
    }
    SUBCASE("empty complex: H~(-1) = Z") {
        const auto t = reduced_cohomology(SimplicialComplex::from_maximal_faces(0, {}));
        CHECK(t.at(-1) == z_group(1));
        CHECK(t.groups.size() == 1);
    }
    SUBCASE("ghost-only complex uses the empty-complex convention") {
        const auto t = reduced_cohomology(SimplicialComplex::from_maximal_faces(5, {}));
        CHECK(t.at(-1) == z_group(1));
        CHECK(t.groups.size() == 1);
    }
    SUBCASE("octahedron boundary: a 2-sphere") {
        const auto t = reduced_cohomology(fixtures::octahedron_boundary());
        CHECK(t.at(2) == z_group(1));
        CHECK(t.groups.size() == 1);
    }
    SUBCASE("projective-plane torsion is reported exactly") {
        // minimal 6-vertex triangulation of RP^2: H~1 = 0, H~2 = Z/2
        const auto RP2 = SimplicialComplex::from_maximal_faces(
            6, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6}, {2, 3, 5},
                {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
        const auto t = reduced_cohomology(RP2);
        CHECK(t.at(1).is_trivial());
        REQUIRE(t.at(2).torsion.size() == 1);
        CHECK(t.at(2).torsion[0] == 2);
        CHECK(t.at(2).free_rank == 0);
    }
}

TEST_CASE("coboundaries compose to zero") {
    SplitMix64 rng(0x51AB);
    for (int trial = 0; trial < 40; ++trial) {
        const auto K = fixtures::random_complex(rng);
        const auto deltas = augmented_coboundaries(K, full_mask(K.vertex_count()));
        for (std::size_t s = 0; s + 1 < deltas.size(); ++s)
            CHECK((deltas[s + 1] * deltas[s]).is_zero());
    }
}

TEST_CASE("Euler characteristic matches cohomology ranks") {
    SplitMix64 rng(0xE011);
    for (int trial = 0; trial < 30; ++trial) {
        const auto K = fixtures::random_complex(rng);
        CHECK(reduced_euler_from_faces(K) == reduced_euler_from_cohomology(reduced_cohomology(K)));
    }
}

TEST_CASE("full subcomplex identities") {
    SplitMix64 rng(0xF0F0);
    for (int trial = 0; trial < 25; ++trial) {
        const auto K = fixtures::random_complex(rng);
        const int m = K.vertex_count();
        CHECK(K.full_subcomplex(full_mask(m)) == K);

        // nested restriction: K(I)(J) = K(J) for J inside I
        Bitset I = rng.next() & full_mask(m);
        Bitset J = rng.next() & I;
        const auto KI = K.full_subcomplex(I);
        // J translated to positions within I
        Bitset Jpos = 0;
        {
            int pos = 0;
            for (int v = 1; v <= m; ++v)
                if (contains(I, v)) {
                    ++pos;
                    if (contains(J, v)) Jpos |= bit_of(pos);
                }
        }
        CHECK(KI.full_subcomplex(Jpos) == K.full_subcomplex(J));
    }
}

TEST_CASE("faces and minimal non-faces are complementary") {
    SplitMix64 rng(0xCAFE);
    for (int trial = 0; trial < 25; ++trial) {
        const auto K = fixtures::random_complex(rng, 7);
        const int m = K.vertex_count();
        const auto mnf = K.minimal_non_faces();
        for (Bitset s = 0; s <= full_mask(m); ++s) {
            bool blocked = false;
            for (Bitset nf : mnf)
                if ((s & nf) == nf) blocked = true;
            CHECK(K.is_face(s) == !blocked);
            if (s == full_mask(m)) break;
        }
    }
}

TEST_CASE("simplex boundaries are spheres") {
    for (int d = 1; d <= 6; ++d) {
        const auto t = reduced_cohomology(fixtures::simplex_boundary(d));
        CHECK(t.groups.size() == 1);
        CHECK(t.at(d - 1) == z_group(1));
    }
}

TEST_CASE("restricted cohomology agrees with relabeled subcomplex") {
    SplitMix64 rng(0xABCD);
    for (int trial = 0; trial < 25; ++trial) {
        const auto K = fixtures::random_complex(rng);
        const Bitset I = rng.next() & full_mask(K.vertex_count());
        CHECK(reduced_cohomology(K, I) == reduced_cohomology(K.full_subcomplex(I)));
    }
}
