#include "kn/simplicial.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kn/errors.hpp"

namespace kn {

namespace {

/// Keep only inclusion-maximal masks, sorted ascending; drops the empty mask.
std::vector<Bitset> antichain(std::vector<Bitset> faces) {
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::vector<Bitset> out;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        if (faces[i] == 0) continue;
        bool dominated = false;
        for (std::size_t j = 0; j < faces.size() && !dominated; ++j)
            if (j != i && (faces[i] & faces[j]) == faces[i] && faces[i] != faces[j])
                dominated = true;
        // equal masks were deduplicated above
        if (!dominated) out.push_back(faces[i]);
    }
    return out;
}

} // namespace

SimplicialComplex SimplicialComplex::from_maximal_faces(int m,
                                                        const std::vector<std::vector<int>>& maximal) {
    if (m < 0 || m > kMaxVertices)
        throw validation_error(ValidationKind::BadInput,
                               "vertex count must lie in [0,64], got " + std::to_string(m));
    std::vector<Bitset> masks;
    masks.reserve(maximal.size());
    for (const auto& face : maximal) {
        Bitset s = 0;
        for (int v : face) {
            if (v < 1 || v > m)
                throw validation_error(ValidationKind::VertexOutOfRange,
                                       "vertex " + std::to_string(v) + " outside [1," +
                                           std::to_string(m) + "]");
            s |= bit_of(v);
        }
        masks.push_back(s);
    }
    return from_masks(m, std::move(masks));
}

SimplicialComplex SimplicialComplex::from_masks(int m, std::vector<Bitset> faces,
                                                std::vector<int> labels) {
    if (m < 0 || m > kMaxVertices)
        throw validation_error(ValidationKind::BadInput, "vertex count outside [0,64]");
    const Bitset universe = full_mask(m);
    for (Bitset f : faces)
        if ((f & ~universe) != 0)
            throw validation_error(ValidationKind::VertexOutOfRange, "face mask exceeds [m]");
    SimplicialComplex K;
    K.m_ = m;
    K.maximal_ = antichain(std::move(faces));
    if (labels.empty()) {
        K.labels_.resize(m);
        for (int i = 0; i < m; ++i) K.labels_[i] = i + 1;
    } else {
        if (static_cast<int>(labels.size()) != m)
            throw validation_error(ValidationKind::BadInput, "label list length differs from m");
        K.labels_ = std::move(labels);
    }
    return K;
}

bool SimplicialComplex::is_face(Bitset s) const {
    if (s == 0) return true;
    for (Bitset f : maximal_)
        if ((s & f) == s) return true;
    return false;
}

std::vector<std::vector<Bitset>> SimplicialComplex::faces_within_by_size(Bitset I) const {
    I &= full_mask(m_);
    std::vector<std::vector<Bitset>> by_size(popcount(I) + 1);
    // Subset enumeration of I; for desk-scale m this dominates nothing else.
    Bitset s = I;
    while (true) {
        if (is_face(s)) by_size[popcount(s)].push_back(s);
        if (s == 0) break;
        s = (s - 1) & I;
    }
    int top = static_cast<int>(by_size.size());
    while (top > 1 && by_size[top - 1].empty()) --top;
    by_size.resize(top);
    for (auto& level : by_size) std::sort(level.begin(), level.end());
    return by_size;
}

std::vector<Bitset> SimplicialComplex::faces_of_size(int k) const {
    auto by_size = faces_within_by_size(full_mask(m_));
    if (k < 0 || k >= static_cast<int>(by_size.size())) return {};
    return by_size[static_cast<std::size_t>(k)];
}

int SimplicialComplex::max_face_size() const {
    int best = 0;
    for (Bitset f : maximal_) best = std::max(best, popcount(f));
    return best;
}

SimplicialComplex SimplicialComplex::full_subcomplex(Bitset I) const {
    I &= full_mask(m_);
    const std::vector<int> verts = set_to_vertices(I);
    const int mm = static_cast<int>(verts.size());
    // position of each original vertex within I (1-based)
    std::vector<int> pos(m_ + 1, 0);
    for (int i = 0; i < mm; ++i) pos[verts[i]] = i + 1;

    std::vector<Bitset> faces;
    for (Bitset f : maximal_) {
        Bitset restricted = f & I;
        Bitset packed = 0;
        for (int v : set_to_vertices(restricted)) packed |= bit_of(pos[v]);
        faces.push_back(packed);
    }
    std::vector<int> new_labels(mm);
    for (int i = 0; i < mm; ++i) new_labels[i] = labels_[verts[i] - 1];
    return from_masks(mm, std::move(faces), std::move(new_labels));
}

std::vector<Bitset> SimplicialComplex::minimal_non_faces() const {
    std::set<Bitset> found;
    const auto by_size = faces_within_by_size(full_mask(m_));
    for (const auto& level : by_size)
        for (Bitset f : level)
            for (int v = 1; v <= m_; ++v) {
                if (contains(f, v)) continue;
                const Bitset s = f | bit_of(v);
                if (is_face(s) || found.count(s)) continue;
                bool minimal = true;
                for (int w : set_to_vertices(s))
                    if (!is_face(s & ~bit_of(w))) {
                        minimal = false;
                        break;
                    }
                if (minimal) found.insert(s);
            }
    return std::vector<Bitset>(found.begin(), found.end());
}

std::string SimplicialComplex::canonical_string() const {
    std::ostringstream os;
    os << "m=" << m_ << ";labels=";
    for (int l : labels_) os << l << ",";
    os << ";maximal=";
    for (Bitset f : maximal_) {
        for (int v : set_to_vertices(f)) os << v << ".";
        os << ",";
    }
    return os.str();
}

std::vector<IntegerMatrix> augmented_coboundaries(const SimplicialComplex& K, Bitset I) {
    const auto by_size = K.faces_within_by_size(I);
    const int levels = static_cast<int>(by_size.size());
    std::vector<IntegerMatrix> deltas;
    deltas.reserve(levels);
    for (int s = 0; s + 1 <= levels; ++s) {
        const auto& src = by_size[s];
        const std::vector<Bitset> empty_level;
        const auto& dst = (s + 1 < levels) ? by_size[s + 1] : empty_level;
        IntegerMatrix d(dst.size(), src.size());
        std::map<Bitset, std::size_t> index;
        for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
        for (std::size_t j = 0; j < src.size(); ++j) {
            const Bitset f = src[j];
            Bitset rest = I & ~f;
            for (int v : set_to_vertices(rest)) {
                const Bitset g = f | bit_of(v);
                auto it = index.find(g);
                if (it == index.end()) continue;
                const int sign = popcount(f & bits_below(v)) % 2 == 0 ? 1 : -1;
                d(it->second, j) = sign;
            }
        }
        deltas.push_back(std::move(d));
    }
    return deltas;
}

CohomologyTable reduced_cohomology(const SimplicialComplex& K, Bitset I) {
    const auto deltas = augmented_coboundaries(K, I);
    CohomologyTable table;
    for (std::size_t s = 0; s < deltas.size(); ++s) {
        const IntegerMatrix& out = deltas[s];
        const IntegerMatrix in =
            s == 0 ? IntegerMatrix(out.cols(), 0) : deltas[s - 1];
        LatticeQuotient q(out, in);
        table.set(static_cast<int>(s) - 1, q.group());
    }
    return table;
}

CohomologyTable reduced_cohomology(const SimplicialComplex& K) {
    return reduced_cohomology(K, full_mask(K.vertex_count()));
}

} // namespace kn
