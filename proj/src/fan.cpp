#include "kn/fan.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "kn/errors.hpp"

namespace kn {

namespace {

/// Divide by the gcd of the entries; returns true when the vector changed.
bool primitivize(IntVector& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    if (g <= 1) return false;
    for (Int& x : v) x /= g;
    return true;
}

/**
 * Searches for a nonzero nonnegative dependency among the given columns,
 * i.e. lambda >= 0, lambda != 0 with cols * lambda = 0, where at least one
 * coordinate from `flagged` is positive.  Works by enumerating candidate
 * supports of size <= n+1: every extreme ray of the nonnegative kernel cone
 * is carried by columns with a one-dimensional, fully supported,
 * sign-constant kernel.
 */
bool has_flagged_nonneg_dependency(const IntegerMatrix& cols, const std::vector<bool>& flagged) {
    const std::size_t n = cols.rows();
    const std::size_t k = cols.cols();
    const std::size_t max_support = std::min(k, n + 1);

    std::vector<std::size_t> support;
    // enumerate subsets in lexicographic order by ascending size
    std::vector<std::size_t> idx;
    for (std::size_t size = 2; size <= max_support; ++size) {
        idx.assign(size, 0);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            bool any_flagged = false;
            for (std::size_t i : idx) any_flagged |= flagged[i];
            if (any_flagged) {
                IntegerMatrix sub = cols.select_columns(idx);
                IntegerMatrix ker = kernel_basis(sub);
                if (ker.cols() == 1) {
                    bool full = true, nonneg = true, nonpos = true;
                    for (std::size_t i = 0; i < size; ++i) {
                        if (ker(i, 0) == 0) full = false;
                        if (ker(i, 0) < 0) nonneg = false;
                        if (ker(i, 0) > 0) nonpos = false;
                    }
                    if (full && (nonneg || nonpos)) return true;
                }
            }
            // next combination
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == k - size + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

} // namespace

Fan Fan::validate(int n, std::vector<IntVector> rays,
                  const std::vector<std::vector<int>>& maximal_cones) {
    if (n < 0 || n > 16)
        throw validation_error(ValidationKind::BadInput, "lattice rank must lie in [0,16]");
    if (static_cast<int>(rays.size()) > kMaxVertices)
        throw validation_error(ValidationKind::BadInput, "at most 64 rays are supported");
    const int m = static_cast<int>(rays.size());

    Fan fan;
    fan.n_ = n;
    for (int i = 0; i < m; ++i) {
        IntVector& r = rays[i];
        if (static_cast<int>(r.size()) != n)
            throw validation_error(ValidationKind::BadInput,
                                   "ray " + std::to_string(i + 1) + " has wrong dimension");
        bool zero = true;
        for (const Int& x : r) zero &= (x == 0);
        if (zero)
            throw validation_error(ValidationKind::BadInput,
                                   "ray " + std::to_string(i + 1) + " is zero", i + 1);
        fan.primitivized_ |= primitivize(r);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (rays[i] == rays[j])
                throw validation_error(ValidationKind::BadInput,
                                       "rays " + std::to_string(i + 1) + " and " +
                                           std::to_string(j + 1) + " coincide",
                                       j + 1);
    fan.rays_ = std::move(rays);

    std::vector<Bitset> cone_masks;
    for (const auto& cone : maximal_cones)
        cone_masks.push_back(vertices_to_set(cone, m));

    // per-cone checks: strong convexity first, then linear independence
    for (std::size_t ci = 0; ci < cone_masks.size(); ++ci) {
        const auto verts = set_to_vertices(cone_masks[ci]);
        const std::size_t k = verts.size();
        if (k == 0) continue;
        IntegerMatrix gens(n, k);
        for (std::size_t j = 0; j < k; ++j)
            for (int i = 0; i < n; ++i) gens(i, j) = fan.rays_[verts[j] - 1][i];
        std::vector<bool> all(k, true);
        if (has_flagged_nonneg_dependency(gens, all))
            throw validation_error(ValidationKind::ContainsLine,
                                   "cone " + std::to_string(ci + 1) + " contains a line",
                                   static_cast<int>(ci + 1));
        if (snf_rank(gens) != k)
            throw validation_error(ValidationKind::NonSimplicialCone,
                                   "cone " + std::to_string(ci + 1) +
                                       " has dependent generators; only simplicial fans are supported",
                                   static_cast<int>(ci + 1));
    }

    // every listed ray is a one-dimensional cone of the fan: rays not
    // referenced by any maximal cone stand alone as singleton cones
    {
        Bitset covered = 0;
        for (Bitset c : cone_masks) covered |= c;
        for (int i = 1; i <= m; ++i)
            if (!contains(covered, i)) cone_masks.push_back(bit_of(i));
    }

    // absorb cones that are faces of other listed cones
    std::vector<Bitset> maximal;
    std::sort(cone_masks.begin(), cone_masks.end());
    cone_masks.erase(std::unique(cone_masks.begin(), cone_masks.end()), cone_masks.end());
    for (Bitset c : cone_masks) {
        bool dominated = false;
        for (Bitset d : cone_masks)
            if (c != d && (c & d) == c) dominated = true;
        if (!dominated && c != 0) maximal.push_back(c);
    }

    // pairwise intersection condition
    for (std::size_t a = 0; a < maximal.size(); ++a)
        for (std::size_t b = a + 1; b < maximal.size(); ++b) {
            const Bitset S = maximal[a], T = maximal[b];
            const auto sv = set_to_vertices(S), tv = set_to_vertices(T);
            IntegerMatrix cols(n, sv.size() + tv.size());
            std::vector<bool> flagged(sv.size() + tv.size());
            std::size_t col = 0;
            for (int v : sv) {
                for (int i = 0; i < n; ++i) cols(i, col) = fan.rays_[v - 1][i];
                flagged[col] = !contains(T, v);
                ++col;
            }
            for (int v : tv) {
                for (int i = 0; i < n; ++i) cols(i, col) = -fan.rays_[v - 1][i];
                flagged[col] = !contains(S, v);
                ++col;
            }
            if (has_flagged_nonneg_dependency(cols, flagged))
                throw validation_error(ValidationKind::BadIntersection,
                                       "cones " + std::to_string(a + 1) + " and " +
                                           std::to_string(b + 1) +
                                           " meet outside a common face");
        }

    for (Bitset c : maximal) fan.maximal_.push_back(Cone{c});
    return fan;
}

IntegerMatrix Fan::ray_matrix() const {
    IntegerMatrix out(n_, rays_.size());
    for (std::size_t j = 0; j < rays_.size(); ++j)
        for (int i = 0; i < n_; ++i) out(i, j) = rays_[j][i];
    return out;
}

SimplicialComplex Fan::underlying_complex() const {
    std::vector<Bitset> faces;
    for (const Cone& c : maximal_) faces.push_back(c.generators);
    return SimplicialComplex::from_masks(m(), std::move(faces));
}

bool Fan::is_regular() const {
    for (const Cone& c : maximal_) {
        const auto verts = set_to_vertices(c.generators);
        IntegerMatrix gens(n_, verts.size());
        for (std::size_t j = 0; j < verts.size(); ++j)
            for (int i = 0; i < n_; ++i) gens(i, j) = rays_[verts[j] - 1][i];
        const auto diag = smith_normal_form(gens).diagonal();
        if (diag.size() < verts.size()) return false;
        for (const Int& d : diag)
            if (d != 1) return false;
    }
    return true;
}

bool Fan::is_complete(std::uint64_t seed) const {
    if (n_ == 0) return true;
    if (maximal_.empty()) return false;
    for (const Cone& c : maximal_)
        if (popcount(c.generators) != n_) return false;

    // every wall must separate exactly two maximal cones
    std::map<Bitset, std::vector<std::size_t>> walls;
    for (std::size_t ci = 0; ci < maximal_.size(); ++ci)
        for (int v : set_to_vertices(maximal_[ci].generators))
            walls[maximal_[ci].generators & ~bit_of(v)].push_back(ci);
    for (const auto& [wall, cones] : walls)
        if (cones.size() != 2) return false;

    // dual graph connectivity
    std::vector<std::vector<std::size_t>> adj(maximal_.size());
    for (const auto& [wall, cones] : walls) {
        adj[cones[0]].push_back(cones[1]);
        adj[cones[1]].push_back(cones[0]);
    }
    std::vector<bool> seen(maximal_.size(), false);
    std::queue<std::size_t> bfs;
    bfs.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!bfs.empty()) {
        std::size_t c = bfs.front();
        bfs.pop();
        for (std::size_t d : adj[c])
            if (!seen[d]) {
                seen[d] = true;
                ++reached;
                bfs.push(d);
            }
    }
    if (reached != maximal_.size()) return false;

    // cross-check: pseudo-random rational points must land in some cone
    SplitMix64 rng(seed);
    for (int trial = 0; trial < 32; ++trial) {
        RatVector v(n_);
        bool zero = true;
        for (int i = 0; i < n_; ++i) {
            const std::int64_t num = rng.range(-99, 99);
            const std::int64_t den = rng.range(1, 9);
            v[i] = Rat(num, den);
            zero &= (num == 0);
        }
        if (zero) continue;
        bool located = false;
        for (const Cone& c : maximal_)
            if (contains_point(c, v)) {
                located = true;
                break;
            }
        if (!located) return false;
    }
    return true;
}

AbelianGroup Fan::group_structure() const {
    const IntegerMatrix rm = ray_matrix();
    SnfFactorization f = smith_normal_form(rm);
    if (f.rank() != static_cast<std::size_t>(n_))
        throw validation_error(ValidationKind::RaysDoNotSpan,
                               "the rays do not span the ambient space");
    IntVector torsion;
    for (const Int& d : f.diagonal())
        if (d > 1) torsion.push_back(d);
    AbelianGroup g = group_from_moduli(rays_.size() - n_, std::move(torsion));
    return g;
}

bool Fan::contains_point(const Cone& c, const RatVector& v) const {
    if (static_cast<int>(v.size()) != n_)
        throw validation_error(ValidationKind::BadInput, "point has wrong dimension");
    const auto verts = set_to_vertices(c.generators);
    if (verts.empty()) {
        for (const Rat& x : v)
            if (x != 0) return false;
        return true;
    }
    RationalMatrix gens(n_, verts.size());
    for (std::size_t j = 0; j < verts.size(); ++j)
        for (int i = 0; i < n_; ++i) gens(i, j) = Rat(rays_[verts[j] - 1][i]);
    auto sol = solve_rational(gens, v);
    if (!sol) return false;
    for (const Rat& x : *sol)
        if (x < 0) return false;
    return true;
}

} // namespace kn
