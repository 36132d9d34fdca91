#include "kn/polytope.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "kn/errors.hpp"

namespace kn {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

double to_double(const Rat& x) { return x.convert_to<double>(); }

/// Enumerate size-k index subsets of [0, total) in lexicographic order.
template <typename F>
void for_each_combination(std::size_t total, std::size_t k, F&& body) {
    if (k > total) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        body(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == total - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Lexicographic comparison of bitmasks viewed as ascending index lists.
bool lex_less(Bitset a, Bitset b) {
    while (a && b) {
        const int va = __builtin_ctzll(a), vb = __builtin_ctzll(b);
        if (va != vb) return va < vb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

} // namespace

std::string QuadricSystem::equation_text(std::size_t row) const {
    // terms ordered by original facet index
    std::vector<std::pair<int, Int>> terms;
    for (std::size_t k = 0; k < C.cols(); ++k)
        if (C(row, k) != 0) terms.emplace_back(permutation[k], C(row, k));
    std::sort(terms.begin(), terms.end());

    std::ostringstream os;
    bool first = true;
    for (const auto& [facet, coef] : terms) {
        Int a = coef < 0 ? Int(-coef) : coef;
        if (first) {
            if (coef < 0) os << "-";
        } else {
            os << (coef < 0 ? " - " : " + ");
        }
        if (a != 1) os << a;
        os << "|z_" << facet << "|^2";
        first = false;
    }
    if (first) os << "0";
    const Int target = moment_target()[row];
    if (target > 0)
        os << " - " << target;
    else if (target < 0)
        os << " + " << Int(-target);
    os << " = 0";
    return os.str();
}

HPolytope HPolytope::from_inequalities(IntegerMatrix A, IntVector b) {
    HPolytope P;
    const std::size_t m = A.rows(), n = A.cols();
    if (b.size() != m)
        throw validation_error(ValidationKind::BadInput, "offset vector length differs from row count");
    if (n < 1 || n > 16)
        throw validation_error(ValidationKind::BadInput, "dimension must lie in [1,16]");
    if (m > static_cast<std::size_t>(kMaxVertices))
        throw validation_error(ValidationKind::BadInput, "at most 64 facets are supported");

    for (std::size_t i = 0; i < m; ++i) {
        Int g = 0;
        for (std::size_t j = 0; j < n; ++j) g = boost::multiprecision::gcd(g, A(i, j));
        if (g == 0)
            throw validation_error(ValidationKind::BadInput,
                                   "row " + std::to_string(i + 1) + " is zero", static_cast<int>(i + 1));
        if (g > 1) {
            if (b[i] % g != 0)
                throw validation_error(ValidationKind::NonPrimitiveRow,
                                       "row " + std::to_string(i + 1) +
                                           " is not primitive and cannot be rescaled integrally",
                                       static_cast<int>(i + 1));
            for (std::size_t j = 0; j < n; ++j) A(i, j) /= g;
            b[i] /= g;
            P.rescaled_ = true;
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (A.row(i) == A.row(j) && b[i] == b[j])
                throw validation_error(ValidationKind::RedundantInequality,
                                       "inequality " + std::to_string(j + 1) + " duplicates " +
                                           std::to_string(i + 1),
                                       static_cast<int>(j + 1));

    // Boundedness: the recession cone {d : A d >= 0} must be {0}.  It is
    // pointed only if rank(A) = n; if nontrivial and pointed it has an
    // extreme ray tight on n-1 independent rows.
    if (bareiss_rank(A) != n)
        throw validation_error(ValidationKind::Unbounded, "facet normals do not span; the set is unbounded");
    bool unbounded = false;
    for_each_combination(m, n - 1, [&](const std::vector<std::size_t>& idx) {
        if (unbounded) return;
        IntegerMatrix sub = A.select_rows(idx);
        IntegerMatrix ker = kernel_basis(sub);
        if (ker.cols() != 1) return; // rank < n-1 or over-determined support
        for (int sign : {1, -1}) {
            bool feasible = true;
            for (std::size_t i = 0; i < m && feasible; ++i) {
                Int dot = 0;
                for (std::size_t j = 0; j < n; ++j) dot += A(i, j) * ker(j, 0);
                if (sign * dot < 0) feasible = false;
            }
            if (feasible) unbounded = true;
        }
    });
    if (unbounded)
        throw validation_error(ValidationKind::Unbounded, "recession cone contains a ray");

    // Vertex enumeration: exact solve over every n-subset of facets.
    std::map<RatVector, Bitset> verts;
    for_each_combination(m, n, [&](const std::vector<std::size_t>& idx) {
        RationalMatrix sub(n, n);
        RatVector rhs(n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) sub(r, c) = Rat(A(idx[r], c));
            rhs[r] = Rat(-b[idx[r]]);
        }
        auto x = solve_rational(sub, rhs);
        if (!x) return;
        // solve_rational zero-fills free coordinates; only accept genuine
        // nonsingular systems so every reported point is a basic solution
        IntegerMatrix isub = A.select_rows(idx);
        if (snf_rank(isub) != n) return;
        for (std::size_t i = 0; i < m; ++i) {
            Rat val = Rat(b[i]);
            for (std::size_t j = 0; j < n; ++j) val += Rat(A(i, j)) * (*x)[j];
            if (val < 0) return;
        }
        Bitset active = 0;
        for (std::size_t i = 0; i < m; ++i) {
            Rat val = Rat(b[i]);
            for (std::size_t j = 0; j < n; ++j) val += Rat(A(i, j)) * (*x)[j];
            if (val == 0) active |= Bitset{1} << i;
        }
        verts[*x] = active;
    });
    if (verts.empty())
        throw validation_error(ValidationKind::EmptyPolytope, "the inequality system has no solution");

    P.n_ = static_cast<int>(n);
    P.m_ = static_cast<int>(m);
    P.A_ = std::move(A);
    P.b_ = std::move(b);
    for (auto& [point, active] : verts) P.vertices_.push_back(PolytopeVertex{point, active});

    // Affine hull must be all of the ambient space.
    {
        const RatVector& v0 = P.vertices_.front().point;
        IntegerMatrix diffs(n, P.vertices_.size() - 1);
        Int scale = 1;
        for (const auto& v : P.vertices_)
            for (const Rat& x : v.point)
                scale = boost::multiprecision::lcm(scale, Int(boost::multiprecision::denominator(x)));
        for (std::size_t k = 1; k < P.vertices_.size(); ++k)
            for (std::size_t j = 0; j < n; ++j) {
                Rat d = (P.vertices_[k].point[j] - v0[j]) * Rat(scale);
                diffs(j, k - 1) = boost::multiprecision::numerator(d);
            }
        if (P.vertices_.size() < n + 1 || bareiss_rank(diffs) != n)
            throw validation_error(ValidationKind::NotFullDimensional,
                                   "the solution set does not span the ambient space");
    }

    // Every inequality must carry a facet: its contact set has affine
    // dimension n-1.
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<const PolytopeVertex*> on;
        for (const auto& v : P.vertices_)
            if (v.incident & (Bitset{1} << i)) on.push_back(&v);
        bool facet = false;
        if (on.size() >= n) {
            IntegerMatrix diffs(n, on.size() - 1);
            Int scale = 1;
            for (const auto* v : on)
                for (const Rat& x : v->point)
                    scale = boost::multiprecision::lcm(scale, Int(boost::multiprecision::denominator(x)));
            for (std::size_t k = 1; k < on.size(); ++k)
                for (std::size_t j = 0; j < n; ++j) {
                    Rat d = (on[k]->point[j] - on[0]->point[j]) * Rat(scale);
                    diffs(j, k - 1) = boost::multiprecision::numerator(d);
                }
            facet = bareiss_rank(diffs) == n - 1;
        }
        if (!facet)
            throw validation_error(ValidationKind::RedundantInequality,
                                   "inequality " + std::to_string(i + 1) +
                                       " does not support a facet",
                                   static_cast<int>(i + 1));
    }
    return P;
}

bool HPolytope::is_simple() const {
    for (const auto& v : vertices_)
        if (popcount(v.incident) != n_) return false;
    return true;
}

Fan HPolytope::normal_fan() const {
    if (!is_simple())
        throw validation_error(ValidationKind::NotSimple, "polytope is not simple");
    std::vector<IntVector> rays;
    for (int i = 0; i < m_; ++i) rays.push_back(A_.row(i));
    std::vector<std::vector<int>> cones;
    for (const auto& v : vertices_) cones.push_back(set_to_vertices(v.incident));
    return Fan::validate(n_, std::move(rays), cones);
}

SimplicialComplex HPolytope::facet_nerve() const {
    if (!is_simple())
        throw validation_error(ValidationKind::NotSimple, "polytope is not simple");
    std::vector<Bitset> faces;
    for (const auto& v : vertices_) faces.push_back(v.incident);
    return SimplicialComplex::from_masks(m_, std::move(faces));
}

QuadricSystem HPolytope::quadric_system(const std::optional<std::vector<int>>& facet_order) const {
    if (!is_simple())
        throw validation_error(ValidationKind::NotSimple, "polytope is not simple");
    const std::size_t m = m_, n = n_;

    std::vector<int> perm;
    if (facet_order) {
        perm = *facet_order;
        if (perm.size() != m)
            throw validation_error(ValidationKind::BadInput, "facet order must list every facet once");
        std::vector<bool> seen(m + 1, false);
        for (int f : perm) {
            if (f < 1 || f > m_ || seen[f])
                throw validation_error(ValidationKind::BadInput, "facet order is not a permutation of [m]");
            seen[f] = true;
        }
        Bitset lead = 0;
        for (std::size_t k = 0; k < n; ++k) lead |= bit_of(perm[k]);
        bool is_vertex = false;
        for (const auto& v : vertices_) is_vertex |= (v.incident == lead);
        if (!is_vertex)
            throw validation_error(ValidationKind::BadInput,
                                   "the first n facets of the given order do not meet at a vertex");
    } else {
        Bitset best = vertices_.front().incident;
        for (const auto& v : vertices_)
            if (lex_less(v.incident, best)) best = v.incident;
        for (int f : set_to_vertices(best)) perm.push_back(f);
        for (int f = 1; f <= m_; ++f)
            if (!contains(best, f)) perm.push_back(f);
    }

    IntegerMatrix Api(m, n);
    IntVector bpi(m);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < n; ++j) Api(k, j) = A_(perm[k] - 1, j);
        bpi[k] = b_[perm[k] - 1];
    }

    QuadricSystem q;
    q.permutation = perm;
    q.b = bpi;

    // Template form: C = (-A_rest * Lead^{-1} | I) whenever that block is
    // integral; otherwise fall back to a saturated kernel basis.
    RationalMatrix lead(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lead(i, j) = Rat(Api(i, j));
    bool integral = true;
    IntegerMatrix B(m - n, n);
    for (std::size_t r = 0; r < m - n && integral; ++r) {
        RatVector rhs(n);
        for (std::size_t j = 0; j < n; ++j) rhs[j] = Rat(Api(n + r, j));
        // solve lead^T y = a_{n+r}: row expressed in the lead basis
        RationalMatrix leadT(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) leadT(i, j) = lead(j, i);
        auto y = solve_rational(leadT, rhs);
        if (!y) throw std::logic_error("leading block is singular at a simple vertex");
        for (std::size_t j = 0; j < n; ++j) {
            if (boost::multiprecision::denominator((*y)[j]) != 1) {
                integral = false;
                break;
            }
            B(r, j) = boost::multiprecision::numerator((*y)[j]);
        }
    }
    if (integral) {
        q.template_form = true;
        q.C = IntegerMatrix(m - n, m);
        for (std::size_t r = 0; r < m - n; ++r) {
            for (std::size_t j = 0; j < n; ++j) q.C(r, j) = -B(r, j);
            q.C(r, n + r) = 1;
        }
    } else {
        q.template_form = false;
        q.C = kernel_basis(Api.transposed()).transposed();
    }

    if (!(q.C * Api).is_zero()) throw std::logic_error("cokernel matrix does not annihilate A");
    return q;
}

std::vector<SampledPoint> HPolytope::sample_on_Z(int count, std::uint64_t seed,
                                                 const QuadricSystem& q) const {
    std::vector<SampledPoint> out;
    if (count < 0) count = 0;
    out.reserve(count);
    SplitMix64 rng(seed);
    const std::size_t nv = vertices_.size();
    for (int s = 0; s < count; ++s) {
        IntVector w(nv);
        Int total = 0;
        for (std::size_t i = 0; i < nv; ++i) {
            w[i] = rng.range(0, 9);
            total += w[i];
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        RatVector x(n_, Rat(0));
        for (std::size_t i = 0; i < nv; ++i) {
            if (w[i] == 0) continue;
            const Rat wi(w[i], total);
            for (int j = 0; j < n_; ++j) x[j] += wi * vertices_[i].point[j];
        }
        SampledPoint pt;
        pt.x = x;
        pt.z.resize(m_);
        for (int i = 0; i < m_; ++i) {
            Rat y(b_[i]);
            for (int j = 0; j < n_; ++j) y += Rat(A_(i, j)) * x[j];
            const double r = std::sqrt(to_double(y));
            const double theta = kTau * rng.unit();
            pt.z[i] = std::complex<double>(r * std::cos(theta), r * std::sin(theta));
        }
        pt.residuals.resize(q.C.rows());
        for (std::size_t j = 0; j < q.C.rows(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < q.C.cols(); ++k) {
                if (q.C(j, k) == 0) continue;
                const double c = q.C(j, k).convert_to<double>();
                const double zz = std::norm(pt.z[q.permutation[k] - 1]);
                acc += c * (zz - q.b[k].convert_to<double>());
            }
            pt.residuals[j] = acc;
        }
        out.push_back(std::move(pt));
    }
    return out;
}

std::vector<SampledPoint> HPolytope::sample_on_Z(int count, std::uint64_t seed) const {
    return sample_on_Z(count, seed, quadric_system());
}

bool jacobian_rank_check(const SampledPoint& pt, const QuadricSystem& q, double resid_tol,
                         double sv_rel_cut) {
    for (double r : pt.residuals)
        if (std::abs(r) > resid_tol) return false;
    const std::size_t rows = q.C.rows(), m = q.C.cols();
    if (rows == 0) return true;
    Eigen::MatrixXd J(rows, 2 * m);
    for (std::size_t j = 0; j < rows; ++j)
        for (std::size_t k = 0; k < m; ++k) {
            const double c = q.C(j, k).convert_to<double>();
            const std::complex<double>& z = pt.z[q.permutation[k] - 1];
            J(j, 2 * k) = 2.0 * c * z.real();
            J(j, 2 * k + 1) = 2.0 * c * z.imag();
        }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return false;
    const double cut = sv_rel_cut * sv(0);
    std::size_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;
    return rank == rows;
}

} // namespace kn
