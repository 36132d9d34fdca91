#include "kn/cohomology.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kn/errors.hpp"

namespace kn {

namespace {

Bitset above_mask(int vertex_1based) {
    return ~(bit_of(vertex_1based) | bits_below(vertex_1based));
}

/// Koszul shuffle sign merging two ascending exterior index sets.
int shuffle_sign(Bitset sigma, Bitset sigma_prime) {
    int inversions = 0;
    for (int b : set_to_vertices(sigma_prime)) inversions += popcount(sigma & above_mask(b));
    return inversions % 2 == 0 ? 1 : -1;
}

void add_term(Cochain& acc, const KoszulMonomial& mono, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = acc.emplace(mono, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) acc.erase(it);
    }
}

} // namespace

Cochain cochain_scaled_sum(Cochain a, const Cochain& b, const Int& scale) {
    for (const auto& [mono, coeff] : b) add_term(a, mono, coeff * scale);
    return a;
}

Cochain koszul_differential(const SimplicialComplex& K, const Cochain& c) {
    Cochain out;
    for (const auto& [mono, coeff] : c)
        for (int i : set_to_vertices(mono.sigma)) {
            const Bitset tau = mono.tau | bit_of(i);
            if (!K.is_face(tau)) continue;
            const int sign = popcount(mono.sigma & bits_below(i)) % 2 == 0 ? 1 : -1;
            add_term(out, KoszulMonomial{mono.sigma & ~bit_of(i), tau}, coeff * sign);
        }
    return out;
}

Cochain cochain_product(const SimplicialComplex& K, const Cochain& a, const Cochain& b) {
    Cochain out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            if ((ma.multidegree() & mb.multidegree()) != 0) continue;
            const Bitset tau = ma.tau | mb.tau;
            if (!K.is_face(tau)) continue;
            const int sign = shuffle_sign(ma.sigma, mb.sigma);
            add_term(out, KoszulMonomial{ma.sigma | mb.sigma, tau}, ca * cb * sign);
        }
    return out;
}

std::optional<int> cochain_degree(const Cochain& c) {
    std::optional<int> deg;
    for (const auto& [mono, coeff] : c) {
        if (deg && *deg != mono.degree()) return std::nullopt;
        deg = mono.degree();
    }
    return deg;
}

std::string cochain_text(const Cochain& c) {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [mono, coeff] : c) {
        Int a = coeff < 0 ? Int(-coeff) : coeff;
        if (first) {
            if (coeff < 0) os << "-";
        } else {
            os << (coeff < 0 ? " - " : " + ");
        }
        if (a != 1 || mono.multidegree() == 0) os << a;
        for (int i : set_to_vertices(mono.sigma)) os << "u_" << i;
        for (int i : set_to_vertices(mono.tau)) os << "v_" << i;
        first = false;
    }
    return os.str();
}

Cochain parse_cochain(const SimplicialComplex& K, const std::string& text) {
    const int m = K.vertex_count();
    Cochain out;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) -> validation_error {
        return validation_error(ValidationKind::BadInput,
                                "cannot parse cochain at position " + std::to_string(pos) + ": " + why);
    };

    skip_ws();
    if (pos == text.size()) throw fail("empty expression");
    bool first = true;
    while (pos < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw fail("expected '+' or '-' between terms");
        }
        skip_ws();
        Int coeff = 1;
        bool saw_digit = false;
        std::string digits;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            digits += text[pos++];
            saw_digit = true;
        }
        if (saw_digit) coeff = Int(digits);

        std::vector<int> u_written;
        Bitset tau = 0;
        bool tau_repeat = false;
        bool saw_factor = false;
        while (pos < text.size() && (text[pos] == 'u' || text[pos] == 'v')) {
            const char kind = text[pos++];
            if (pos < text.size() && text[pos] == '_') ++pos;
            std::string num;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                num += text[pos++];
            if (num.empty()) throw fail("variable without index");
            const int idx = std::stoi(num);
            if (idx < 1 || idx > m) throw fail("index " + num + " outside [1," + std::to_string(m) + "]");
            if (kind == 'u') {
                u_written.push_back(idx);
            } else {
                if (contains(tau, idx)) tau_repeat = true;
                tau |= bit_of(idx);
            }
            saw_factor = true;
            skip_ws();
        }
        if (!saw_factor && !saw_digit) throw fail("expected a term");
        first = false;

        // normalize the exterior part to ascending order
        bool zero = tau_repeat;
        Bitset sigma = 0;
        int inversions = 0;
        for (std::size_t i = 0; i < u_written.size() && !zero; ++i) {
            for (std::size_t j = i + 1; j < u_written.size(); ++j) {
                if (u_written[i] == u_written[j]) zero = true;
                if (u_written[i] > u_written[j]) ++inversions;
            }
            sigma |= bit_of(u_written[i]);
        }
        if (!zero && (sigma & tau) != 0) zero = true;   // u_i v_i = 0
        if (!zero && !K.is_face(tau)) zero = true;      // non-face monomial
        if (!zero)
            add_term(out, KoszulMonomial{sigma, tau},
                     coeff * sign * (inversions % 2 == 0 ? 1 : -1));
        skip_ws();
    }
    return out;
}

KoszulBlock::KoszulBlock(const SimplicialComplex& K, Bitset I)
    : I_(I & full_mask(K.vertex_count())), card_(popcount(I_)) {
    faces_ = K.faces_within_by_size(I_);
    const int levels = static_cast<int>(faces_.size());

    diff_.reserve(levels);
    for (int s = 0; s < levels; ++s) {
        const auto& src = faces_[s];
        const std::vector<Bitset> none;
        const auto& dst = (s + 1 < levels) ? faces_[s + 1] : none;
        std::map<Bitset, std::size_t> index;
        for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
        IntegerMatrix d(dst.size(), src.size());
        for (std::size_t j = 0; j < src.size(); ++j) {
            const Bitset tau = src[j];
            const Bitset sigma = I_ & ~tau;
            for (int i : set_to_vertices(sigma)) {
                auto it = index.find(tau | bit_of(i));
                if (it == index.end()) continue;
                d(it->second, j) = popcount(sigma & bits_below(i)) % 2 == 0 ? 1 : -1;
            }
        }
        diff_.push_back(std::move(d));
    }
    for (int s = 0; s < levels; ++s) {
        const IntegerMatrix in =
            s == 0 ? IntegerMatrix(faces_[0].size(), 0) : diff_[s - 1];
        quotients_.emplace_back(diff_[s], in);
        table_.set(card_ + s, quotients_.back().group());
    }
}

int KoszulBlock::tau_size_of_degree(int total_degree) const {
    return total_degree - card_;
}

IntVector KoszulBlock::to_vector(const Cochain& z, int tau_size) const {
    if (tau_size < 0 || tau_size >= static_cast<int>(faces_.size()))
        return z.empty() ? IntVector{} : throw std::invalid_argument("cochain outside block range");
    const auto& basis = faces_[tau_size];
    IntVector v(basis.size(), Int(0));
    for (const auto& [mono, coeff] : z) {
        if (mono.multidegree() != I_ || popcount(mono.tau) != tau_size)
            throw std::invalid_argument("cochain does not belong to this block component");
        auto it = std::lower_bound(basis.begin(), basis.end(), mono.tau);
        if (it == basis.end() || *it != mono.tau)
            throw std::invalid_argument("monomial tau is not a face of the block");
        v[static_cast<std::size_t>(it - basis.begin())] = coeff;
    }
    return v;
}

Cochain KoszulBlock::to_cochain(const IntVector& vec, int tau_size) const {
    Cochain out;
    const auto& basis = faces_[tau_size];
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (vec[i] != 0) out[KoszulMonomial{I_ & ~basis[i], basis[i]}] = vec[i];
    return out;
}

std::vector<KoszulBlock::Generator> KoszulBlock::generators(int total_degree) const {
    const int s = tau_size_of_degree(total_degree);
    if (s < 0 || s >= static_cast<int>(quotients_.size())) return {};
    const LatticeQuotient& q = quotients_[s];
    std::vector<Generator> out;
    for (const IntVector& g : q.free_generators()) out.push_back({to_cochain(g, s), Int(0)});
    for (std::size_t i = 0; i < q.torsion_generators().size(); ++i)
        out.push_back({to_cochain(q.torsion_generators()[i], s), q.group().torsion[i]});
    return out;
}

std::optional<LatticeQuotient::Coords> KoszulBlock::classify(const Cochain& z,
                                                             int total_degree) const {
    const int s = tau_size_of_degree(total_degree);
    if (s < 0 || s >= static_cast<int>(quotients_.size())) {
        if (z.empty()) return LatticeQuotient::Coords{};
        return std::nullopt;
    }
    return quotients_[s].classify(to_vector(z, s));
}

Cochain KoszulBlock::realize(const LatticeQuotient::Coords& coords, int total_degree) const {
    const int s = tau_size_of_degree(total_degree);
    if (s < 0 || s >= static_cast<int>(quotients_.size())) return {};
    return to_cochain(quotients_[s].representative(coords), s);
}

std::optional<Cochain> KoszulBlock::solve_primitive(const Cochain& target,
                                                    int target_degree) const {
    if (target.empty()) return Cochain{};
    const int s = tau_size_of_degree(target_degree);
    if (s <= 0 || s >= static_cast<int>(faces_.size())) return std::nullopt;
    const IntVector rhs = to_vector(target, s);
    auto x = solve_integer(diff_[s - 1], rhs);
    if (!x) return std::nullopt;
    return to_cochain(*x, s - 1);
}

std::vector<Bitset> subsets_by_popcount(int m) {
    if (m < 0 || m > 26)
        throw validation_error(ValidationKind::BadInput,
                               "the 2^m subset sweep is infeasible for m > 26");
    std::vector<Bitset> out;
    out.reserve(std::size_t{1} << m);
    for (int k = 0; k <= m; ++k) {
        if (k == 0) {
            out.push_back(0);
            continue;
        }
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i + 1;
        while (true) {
            Bitset s = 0;
            for (int v : idx) s |= bit_of(v);
            out.push_back(s);
            int i = k;
            while (i > 0 && idx[i - 1] == m - k + i) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (int j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

std::vector<std::size_t> CohomologyReport::betti() const {
    std::vector<std::size_t> b(by_degree.size());
    for (std::size_t i = 0; i < by_degree.size(); ++i) b[i] = by_degree[i].free_rank;
    return b;
}

CohomologyReport hochster_cohomology(const SimplicialComplex& K, const HochsterOptions& opt) {
    const int m = K.vertex_count();
    if (m > 26)
        throw validation_error(ValidationKind::BadInput,
                               "the full-subcomplex sweep over 2^m subsets is infeasible for m > 26");
    const std::vector<Bitset> subsets = subsets_by_popcount(m);
    std::vector<CohomologyTable> tables(subsets.size());

    auto compute = [&](std::size_t idx) {
        const Bitset I = subsets[idx];
        if (opt.cache) {
            if (auto hit = opt.cache->lookup(I)) {
                tables[idx] = std::move(*hit);
                return;
            }
        }
        tables[idx] = reduced_cohomology(K, I);
        if (opt.cache) opt.cache->store(I, tables[idx]);
    };

    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || subsets.size() < 2) {
        for (std::size_t i = 0; i < subsets.size(); ++i) compute(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int width = std::min<int>(jobs, static_cast<int>(subsets.size()));
        pool.reserve(width);
        for (int t = 0; t < width; ++t)
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t idx = next.fetch_add(1);
                    if (idx >= subsets.size()) break;
                    compute(idx);
                }
            });
        for (auto& th : pool) th.join();
    }

    // deterministic merge in enumeration order
    CohomologyReport report;
    std::map<int, AbelianGroup> by_degree;
    std::map<std::pair<int, int>, std::size_t> bigraded; // (j2, i) -> rank
    for (std::size_t idx = 0; idx < subsets.size(); ++idx) {
        const Bitset I = subsets[idx];
        const CohomologyTable& t = tables[idx];
        if (t.groups.empty()) continue;
        report.provenance.emplace(I, t);
        const int j = popcount(I);
        for (const auto& [i_coh, g] : t.groups) {
            const int k = i_coh + j + 1;
            auto [it, inserted] = by_degree.emplace(k, g);
            if (!inserted) it->second = it->second.direct_sum(g);
            if (g.free_rank > 0) bigraded[{2 * j, j - i_coh - 1}] += g.free_rank;
        }
    }
    int top = 0;
    for (const auto& [k, g] : by_degree) top = std::max(top, k);
    report.by_degree.assign(top + 1, AbelianGroup{});
    for (const auto& [k, g] : by_degree) report.by_degree[k] = g;
    for (const auto& [key, rank] : bigraded)
        report.bigraded.push_back(BigradedEntry{key.second, key.first, rank});
    return report;
}

bool poincare_duality_check(const CohomologyReport& report, int m, int n) {
    std::vector<std::size_t> b = report.betti();
    if (static_cast<int>(b.size()) > m + n + 1) return false;
    b.resize(m + n + 1, 0);
    for (int k = 0; k <= m + n; ++k)
        if (b[k] != b[m + n - k]) return false;
    return true;
}

CohomologyRing::CohomologyRing(SimplicialComplex K) : K_(std::move(K)) {}

const KoszulBlock& CohomologyRing::block(Bitset I) {
    I &= full_mask(K_.vertex_count());
    auto it = blocks_.find(I);
    if (it == blocks_.end())
        it = blocks_.emplace(I, std::make_unique<KoszulBlock>(K_, I)).first;
    return *it->second;
}

bool CohomologyRing::is_cocycle(const Cochain& c) const {
    return koszul_differential(K_, c).empty();
}

namespace {

/// Split a cochain into its (multidegree, total degree) homogeneous parts.
std::map<std::pair<Bitset, int>, Cochain> split_blocks(const Cochain& c) {
    std::map<std::pair<Bitset, int>, Cochain> parts;
    for (const auto& [mono, coeff] : c)
        parts[{mono.multidegree(), mono.degree()}][mono] = coeff;
    return parts;
}

LatticeQuotient::Coords negate_coords(const LatticeQuotient::Coords& c, const AbelianGroup& g) {
    LatticeQuotient::Coords out;
    out.free.reserve(c.free.size());
    for (const Int& x : c.free) out.free.push_back(-x);
    out.torsion.reserve(c.torsion.size());
    for (std::size_t i = 0; i < c.torsion.size(); ++i) {
        Int r = c.torsion[i] == 0 ? Int(0) : g.torsion[i] - c.torsion[i];
        out.torsion.push_back(r);
    }
    return out;
}

} // namespace

bool CohomologyRing::class_is_zero(const Cochain& cocycle) {
    for (const auto& [key, part] : split_blocks(cocycle)) {
        auto coords = block(key.first).classify(part, key.second);
        if (!coords) throw std::invalid_argument("class_is_zero: input is not a cocycle");
        if (!coords->is_zero()) return false;
    }
    return true;
}

bool CohomologyRing::classes_equal_up_to_sign(const Cochain& x, const Cochain& y) {
    return class_is_zero(cochain_scaled_sum(x, y, Int(-1))) ||
           class_is_zero(cochain_scaled_sum(x, y, Int(1)));
}

CohomologyClass CohomologyRing::cup(const CohomologyClass& x, const CohomologyClass& y) {
    const Cochain prod = cochain_product(K_, x.rep, y.rep);
    CohomologyClass out;
    out.degree = x.degree + y.degree;
    for (const auto& [key, part] : split_blocks(prod)) {
        auto coords = block(key.first).classify(part, key.second);
        if (!coords) throw std::invalid_argument("cup: factors are not cocycles");
        out.rep = cochain_scaled_sum(std::move(out.rep),
                                     blocks_.at(key.first)->realize(*coords, key.second), Int(1));
    }
    return out;
}

std::optional<Cochain> CohomologyRing::solve_primitive_global(const Cochain& target) {
    Cochain e;
    for (const auto& [key, part] : split_blocks(target)) {
        auto piece = block(key.first).solve_primitive(part, key.second);
        if (!piece) return std::nullopt;
        e = cochain_scaled_sum(std::move(e), *piece, Int(1));
    }
    return e;
}

CohomologyRing::MasseyResult CohomologyRing::massey(const CohomologyClass& a,
                                                    const CohomologyClass& b,
                                                    const CohomologyClass& c) {
    MasseyResult res;
    const Cochain ab = cochain_product(K_, a.rep, b.rep);
    const Cochain bc = cochain_product(K_, b.rep, c.rep);
    if (!class_is_zero(ab)) {
        res.failing_pair = 1;
        return res;
    }
    if (!class_is_zero(bc)) {
        res.failing_pair = 2;
        return res;
    }
    res.defined = true;

    auto e = solve_primitive_global(ab);
    auto f = solve_primitive_global(bc);
    if (!e || !f) throw std::logic_error("massey: coboundary with no integral primitive");
    res.witness_e = *e;
    res.witness_f = *f;

    // a*f + (-1)^{deg a + 1} e*c is a cocycle for either parity of deg a
    const Int sign = (a.degree + 1) % 2 == 0 ? 1 : -1;
    Cochain rep = cochain_scaled_sum(cochain_product(K_, a.rep, *f),
                                     cochain_product(K_, *e, c.rep), sign);
    if (!is_cocycle(rep)) throw std::logic_error("massey: representative is not a cocycle");
    const int rep_degree = a.degree + b.degree + c.degree - 1;
    res.representative = CohomologyClass{rep, rep_degree};

    // Indeterminacy: a * H^{|b|+|c|-1} + H^{|a|+|b|-1} * c.  Both subgroups
    // are generated by products with multidegree-homogeneous generators, so
    // membership is a joint lattice problem over the touched blocks.
    const int gz_deg = b.degree + c.degree - 1;
    const int gw_deg = a.degree + b.degree - 1;
    const int m = K_.vertex_count();

    std::vector<Cochain> products;
    auto collect = [&](int gen_degree, bool left_factor) {
        for (const Bitset J : subsets_by_popcount(m)) {
            const int card = popcount(J);
            if (card > gen_degree || 2 * card < gen_degree) continue;
            for (const auto& gen : block(J).generators(gen_degree)) {
                Cochain p = left_factor ? cochain_product(K_, a.rep, gen.rep)
                                        : cochain_product(K_, gen.rep, c.rep);
                if (!p.empty()) products.push_back(std::move(p));
            }
        }
    };
    collect(gz_deg, true);
    collect(gw_deg, false);

    // joint coordinate layout over every touched block of the target degree
    std::vector<Bitset> relevant;
    auto touch = [&](const Cochain& z) {
        for (const auto& [key, part] : split_blocks(z))
            if (key.second == rep_degree) relevant.push_back(key.first);
    };
    touch(rep);
    for (const Cochain& p : products) touch(p);
    std::sort(relevant.begin(), relevant.end());
    relevant.erase(std::unique(relevant.begin(), relevant.end()), relevant.end());

    std::vector<std::size_t> offset;
    std::size_t dim = 0;
    std::vector<std::pair<Bitset, std::size_t>> torsion_slots; // block, slot
    for (const Bitset B : relevant) {
        offset.push_back(dim);
        const AbelianGroup& g = block(B).groups().at(rep_degree);
        for (std::size_t t = 0; t < g.torsion.size(); ++t) torsion_slots.emplace_back(B, t);
        dim += g.free_rank + g.torsion.size();
    }

    auto coords_of = [&](const Cochain& z) -> IntVector {
        IntVector v(dim, Int(0));
        for (const auto& [key, part] : split_blocks(z)) {
            if (key.second != rep_degree)
                throw std::logic_error("massey: product of wrong degree");
            auto it = std::lower_bound(relevant.begin(), relevant.end(), key.first);
            if (it == relevant.end() || *it != key.first)
                throw std::logic_error("massey: block missing from joint layout");
            const std::size_t at = offset[static_cast<std::size_t>(it - relevant.begin())];
            auto coords = block(key.first).classify(part, rep_degree);
            if (!coords) throw std::logic_error("massey: indeterminacy product is not a cocycle");
            std::size_t j = 0;
            for (const Int& x : coords->free) v[at + j++] = x;
            for (const Int& x : coords->torsion) v[at + j++] = x;
        }
        return v;
    };

    const IntVector rep_vec = coords_of(rep);
    IntegerMatrix gens(dim, products.size() + torsion_slots.size());
    for (std::size_t j = 0; j < products.size(); ++j) {
        const IntVector col = coords_of(products[j]);
        for (std::size_t i = 0; i < dim; ++i) gens(i, j) = col[i];
    }
    for (std::size_t t = 0; t < torsion_slots.size(); ++t) {
        const auto& [B, slot] = torsion_slots[t];
        const auto it = std::lower_bound(relevant.begin(), relevant.end(), B);
        const std::size_t bi = static_cast<std::size_t>(it - relevant.begin());
        const AbelianGroup& g = block(B).groups().at(rep_degree);
        gens(offset[bi] + g.free_rank + slot, products.size() + t) = g.torsion[slot];
    }
    res.trivial = dim == 0 || lattice_membership(rep_vec, gens);
    return res;
}

void CohomologyRing::attach_generators(CohomologyReport& report) {
    report.generators.clear();
    const int m = K_.vertex_count();
    std::vector<GeneratorInfo> collected;
    for (const Bitset I : subsets_by_popcount(m)) {
        const KoszulBlock& blk = block(I);
        for (const auto& [degree, group] : blk.groups().groups) {
            auto gens = blk.generators(degree);
            for (auto& g : gens) {
                // prefer a single monomial representative when the class has one
                auto target = blk.classify(g.rep, degree);
                Cochain rep = g.rep;
                const AbelianGroup grp = blk.groups().at(degree);
                const int s = degree - popcount(I);
                const auto faces = K_.faces_within_by_size(I);
                if (target && s >= 0 && s < static_cast<int>(faces.size())) {
                    // smallest monomial representative, when the class has one
                    std::optional<KoszulMonomial> best;
                    for (const Bitset tau : faces[s]) {
                        const KoszulMonomial m{I & ~tau, tau};
                        auto coords = blk.classify(Cochain{{m, Int(1)}}, degree);
                        if (!coords) continue;
                        if (*coords == *target || *coords == negate_coords(*target, grp))
                            if (!best || m < *best) best = m;
                    }
                    if (best) rep = Cochain{{*best, Int(1)}};
                }
                collected.push_back(GeneratorInfo{degree, I, std::move(rep), g.order});
            }
        }
    }
    std::stable_sort(collected.begin(), collected.end(),
                     [](const GeneratorInfo& a, const GeneratorInfo& b) { return a.degree < b.degree; });
    report.generators = std::move(collected);
}

BlockCohomology koszul_cohomology(const SimplicialComplex& K, Bitset I) {
    KoszulBlock blk(K, I);
    BlockCohomology out;
    out.table = blk.groups();
    for (const auto& [degree, group] : out.table.groups)
        out.generators[degree] = blk.generators(degree);
    return out;
}

bool cross_check_hochster_koszul(const SimplicialComplex& K, std::string* diff) {
    const int m = K.vertex_count();
    bool ok = true;
    std::ostringstream why;
    std::map<int, AbelianGroup> koszul_total;
    for (const Bitset I : subsets_by_popcount(m)) {
        const CohomologyTable simp = reduced_cohomology(K, I);
        const KoszulBlock blk(K, I);
        CohomologyTable shifted;
        for (const auto& [i, g] : simp.groups) shifted.set(popcount(I) + i + 1, g);
        if (shifted != blk.groups()) {
            ok = false;
            why << "multidegree {";
            for (int v : set_to_vertices(I)) why << v << " ";
            why << "}: simplicial and Koszul pipelines disagree\n";
        }
        for (const auto& [k, g] : blk.groups().groups) {
            auto [it, inserted] = koszul_total.emplace(k, g);
            if (!inserted) it->second = it->second.direct_sum(g);
        }
    }
    const CohomologyReport hoch = hochster_cohomology(K);
    for (std::size_t k = 0; k < hoch.by_degree.size(); ++k) {
        AbelianGroup expect = koszul_total.count(static_cast<int>(k))
                                  ? koszul_total[static_cast<int>(k)]
                                  : AbelianGroup{};
        if (hoch.by_degree[k] != expect) {
            ok = false;
            why << "aggregate degree " << k << ": " << hoch.by_degree[k].to_string() << " vs "
                << expect.to_string() << "\n";
        }
    }
    for (const auto& [k, g] : koszul_total)
        if (k >= static_cast<int>(hoch.by_degree.size()) && !g.is_trivial()) {
            ok = false;
            why << "aggregate degree " << k << " present only on the Koszul side\n";
        }
    if (!ok && diff) *diff = why.str();
    return ok;
}

} // namespace kn
