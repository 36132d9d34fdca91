#include "kn/exact.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kn {

std::vector<int> set_to_vertices(Bitset s) {
    std::vector<int> out;
    while (s) {
        const int b = __builtin_ctzll(s);
        out.push_back(b + 1);
        s &= s - 1;
    }
    return out;
}

Bitset vertices_to_set(const std::vector<int>& vs, int m) {
    Bitset s = 0;
    for (int v : vs) {
        if (v < 1 || v > m)
            throw std::out_of_range("vertex index " + std::to_string(v) +
                                    " outside [1," + std::to_string(m) + "]");
        s |= bit_of(v);
    }
    return s;
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntegerMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ragged row list");
        std::size_t j = 0;
        for (long long x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

IntegerMatrix IntegerMatrix::column(const IntVector& v) {
    IntegerMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    IntegerMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

IntVector IntegerMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

bool IntegerMatrix::is_zero() const {
    for (const Int& x : data_)
        if (x != 0) return false;
    return true;
}

bool IntegerMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

IntVector IntegerMatrix::row(std::size_t i) const {
    IntVector out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
}

IntVector IntegerMatrix::col(std::size_t j) const {
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

IntegerMatrix IntegerMatrix::select_columns(const std::vector<std::size_t>& which) const {
    IntegerMatrix out(rows_, which.size());
    for (std::size_t j = 0; j < which.size(); ++j)
        for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, which[j]);
    return out;
}

IntegerMatrix IntegerMatrix::select_rows(const std::vector<std::size_t>& which) const {
    IntegerMatrix out(which.size(), cols_);
    for (std::size_t i = 0; i < which.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(which[i], j);
    return out;
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i == 0 ? "[" : " ");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << (i + 1 == rows_ ? "]" : "\n");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
}

RationalMatrix RationalMatrix::from_integer(const IntegerMatrix& m) {
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
    return out;
}

std::size_t SnfFactorization::rank() const {
    std::size_t r = 0;
    const std::size_t k = std::min(D.rows(), D.cols());
    for (std::size_t i = 0; i < k; ++i)
        if (D(i, i) != 0) ++r;
    return r;
}

std::vector<Int> SnfFactorization::diagonal() const {
    const std::size_t k = std::min(D.rows(), D.cols());
    std::vector<Int> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = D(i, i);
    return d;
}

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

} // namespace

SnfFactorization smith_normal_form(const IntegerMatrix& M) {
    const std::size_t r = M.rows(), c = M.cols();
    SnfFactorization f;
    f.source_rows = r;
    f.source_cols = c;
    f.U = IntegerMatrix::identity(r);
    f.V = IntegerMatrix::identity(c);
    f.D = M;
    IntegerMatrix& D = f.D;
    IntegerMatrix& U = f.U;
    IntegerMatrix& V = f.V;

    auto row_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < c; ++j) std::swap(D(a, j), D(b, j));
        for (std::size_t j = 0; j < r; ++j) std::swap(U(a, j), U(b, j));
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < r; ++i) std::swap(D(i, a), D(i, b));
        for (std::size_t i = 0; i < c; ++i) std::swap(V(i, a), V(i, b));
    };
    // row dst -= q * row src
    auto row_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t j = 0; j < c; ++j) D(dst, j) -= q * D(src, j);
        for (std::size_t j = 0; j < r; ++j) U(dst, j) -= q * U(src, j);
    };
    auto col_axpy = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t i = 0; i < r; ++i) D(i, dst) -= q * D(i, src);
        for (std::size_t i = 0; i < c; ++i) V(i, dst) -= q * V(i, src);
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t j = 0; j < c; ++j) D(i, j) = -D(i, j);
        for (std::size_t j = 0; j < r; ++j) U(i, j) = -U(i, j);
    };

    const std::size_t k = std::min(r, c);
    for (std::size_t t = 0; t < k; ++t) {
        // Minimal-absolute-value pivot keeps intermediate entries small.
        auto find_pivot = [&]() -> std::pair<std::size_t, std::size_t> {
            std::size_t pi = r, pj = c;
            Int best;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (D(i, j) != 0) {
                        Int a = abs_int(D(i, j));
                        if (pi == r || a < best) {
                            best = a;
                            pi = i;
                            pj = j;
                        }
                    }
            return {pi, pj};
        };

        auto [pi, pj] = find_pivot();
        if (pi == r) break; // remaining block is zero
        row_swap(t, pi);
        col_swap(t, pj);

        while (true) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i)
                if (D(i, t) != 0) {
                    Int q = D(i, t) / D(t, t);
                    if (q != 0) row_axpy(i, t, q);
                    if (D(i, t) != 0) dirty = true;
                }
            if (!dirty) {
                for (std::size_t j = t + 1; j < c; ++j)
                    if (D(t, j) != 0) {
                        Int q = D(t, j) / D(t, t);
                        if (q != 0) col_axpy(j, t, q);
                        if (D(t, j) != 0) dirty = true;
                    }
            }
            if (dirty) {
                auto [qi, qj] = find_pivot();
                row_swap(t, qi);
                col_swap(t, qj);
                continue;
            }
            // Pivot now alone in its row and column; enforce divisibility.
            bool fixed = false;
            for (std::size_t i = t + 1; i < r && !fixed; ++i)
                for (std::size_t j = t + 1; j < c && !fixed; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_axpy(t, i, Int(-1)); // row t += row i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (D(t, t) < 0) row_negate(t);
    }
    return f;
}

std::size_t snf_rank(const IntegerMatrix& M) { return smith_normal_form(M).rank(); }

std::size_t bareiss_rank(IntegerMatrix M) {
    const std::size_t r = M.rows(), c = M.cols();
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
        std::size_t piv = r;
        for (std::size_t i = rank; i < r; ++i)
            if (M(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv == r) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < c; ++j) std::swap(M(rank, j), M(piv, j));
        for (std::size_t i = rank + 1; i < r; ++i) {
            for (std::size_t j = col + 1; j < c; ++j) {
                Int num = M(rank, col) * M(i, j) - M(i, col) * M(rank, j);
                Int q, rem;
                boost::multiprecision::divide_qr(num, prev, q, rem);
                if (rem != 0) throw std::logic_error("bareiss: inexact division");
                M(i, j) = q;
            }
            M(i, col) = 0;
        }
        prev = M(rank, col);
        ++rank;
    }
    return rank;
}

AbelianGroup group_from_moduli(std::size_t free_rank, IntVector moduli) {
    IntVector t;
    for (Int& m : moduli) {
        if (m < 0) m = -m;
        if (m == 0)
            ++free_rank;
        else if (m != 1)
            t.push_back(m);
    }
    // Pairwise (gcd, lcm) replacement until the list is a divisibility chain.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j) {
                if (t[j] % t[i] == 0) continue;
                Int g = boost::multiprecision::gcd(t[i], t[j]);
                Int l = t[i] / g * t[j];
                t[i] = g;
                t[j] = l;
                changed = true;
            }
    }
    IntVector chain;
    for (const Int& x : t)
        if (x != 1) chain.push_back(x);
    AbelianGroup g;
    g.free_rank = free_rank;
    g.torsion = std::move(chain);
    return g;
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& o) const {
    IntVector moduli = torsion;
    moduli.insert(moduli.end(), o.torsion.begin(), o.torsion.end());
    return group_from_moduli(free_rank + o.free_rank, std::move(moduli));
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
        os << "Z";
        first = false;
    } else if (free_rank > 1) {
        os << "Z^" << free_rank;
        first = false;
    }
    for (const Int& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

AbelianGroup cokernel_invariants(const IntegerMatrix& M) {
    SnfFactorization f = smith_normal_form(M);
    IntVector moduli;
    const std::size_t k = std::min(M.rows(), M.cols());
    for (std::size_t i = 0; i < k; ++i)
        if (f.D(i, i) != 0) moduli.push_back(f.D(i, i));
    const std::size_t rank = moduli.size();
    return group_from_moduli(M.rows() - rank, std::move(moduli));
}

IntegerMatrix kernel_basis(const IntegerMatrix& M) {
    SnfFactorization f = smith_normal_form(M);
    const std::size_t rank = f.rank();
    std::vector<std::size_t> which;
    for (std::size_t j = rank; j < M.cols(); ++j) which.push_back(j);
    return f.V.select_columns(which);
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& U) {
    if (U.rows() != U.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = U.rows();
    // Gauss-Jordan over Q; the result must come out integral.
    RationalMatrix a(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(U(i, j));
        a(i, n + i) = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = n;
        for (std::size_t i = col; i < n; ++i)
            if (a(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv == n) throw std::invalid_argument("matrix is singular");
        if (piv != col)
            for (std::size_t j = 0; j < 2 * n; ++j) std::swap(a(col, j), a(piv, j));
        const Rat p = a(col, col);
        for (std::size_t j = 0; j < 2 * n; ++j) a(col, j) /= p;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            const Rat q = a(i, col);
            for (std::size_t j = 0; j < 2 * n; ++j) a(i, j) -= q * a(col, j);
        }
    }
    IntegerMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat& x = a(i, n + j);
            if (boost::multiprecision::denominator(x) != 1)
                throw std::invalid_argument("matrix is not unimodular");
            inv(i, j) = boost::multiprecision::numerator(x);
        }
    return inv;
}

std::optional<RatVector> solve_rational(const RationalMatrix& M, const RatVector& b) {
    const std::size_t r = M.rows(), c = M.cols();
    if (b.size() != r) throw std::invalid_argument("solve_rational: shape mismatch");
    RationalMatrix a(r, c + 1);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) a(i, j) = M(i, j);
        a(i, c) = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c && row < r; ++col) {
        std::size_t piv = r;
        for (std::size_t i = row; i < r; ++i)
            if (a(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv == r) continue;
        if (piv != row)
            for (std::size_t j = 0; j <= c; ++j) std::swap(a(row, j), a(piv, j));
        const Rat p = a(row, col);
        for (std::size_t j = col; j <= c; ++j) a(row, j) /= p;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == row || a(i, col) == 0) continue;
            const Rat q = a(i, col);
            for (std::size_t j = col; j <= c; ++j) a(i, j) -= q * a(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < r; ++i)
        if (a(i, c) != 0) return std::nullopt; // inconsistent
    RatVector x(c, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a(i, c);
    return x;
}

std::optional<IntVector> solve_integer(const IntegerMatrix& M, const IntVector& b) {
    if (b.size() != M.rows()) throw std::invalid_argument("solve_integer: shape mismatch");
    SnfFactorization f = smith_normal_form(M);
    const IntVector y = f.U * b;
    const std::size_t k = std::min(M.rows(), M.cols());
    IntVector xp(M.cols(), Int(0));
    for (std::size_t i = 0; i < M.rows(); ++i) {
        const Int d = i < k ? f.D(i, i) : Int(0);
        if (d == 0) {
            if (y[i] != 0) return std::nullopt;
        } else {
            Int q, rem;
            boost::multiprecision::divide_qr(y[i], d, q, rem);
            if (rem != 0) return std::nullopt;
            xp[i] = q;
        }
    }
    return f.V * xp;
}

bool lattice_membership(const IntVector& v, const IntegerMatrix& generators) {
    return solve_integer(generators, v).has_value();
}

std::optional<IntVector> lattice_coordinates(const IntVector& v, const IntegerMatrix& generators) {
    return solve_integer(generators, v);
}

LatticeQuotient::LatticeQuotient(const IntegerMatrix& d_out, const IntegerMatrix& d_in) {
    ambient_ = d_out.cols();
    if (d_in.rows() != ambient_)
        throw std::invalid_argument("LatticeQuotient: boundary maps do not compose");
    kernel_ = kernel_basis(d_out);
    const std::size_t p = kernel_.cols();
    const std::size_t q = d_in.cols();

    IntegerMatrix coords(p, q);
    for (std::size_t j = 0; j < q; ++j) {
        auto y = lattice_coordinates(d_in.col(j), kernel_);
        if (!y) throw std::invalid_argument("LatticeQuotient: d_in column is not a cycle");
        for (std::size_t i = 0; i < p; ++i) coords(i, j) = (*y)[i];
    }

    SnfFactorization f = smith_normal_form(coords);
    basis_change_ = f.U;
    adapted_ = kernel_ * unimodular_inverse(f.U);
    invariants_.assign(p, Int(0));
    const std::size_t k = std::min(p, q);
    for (std::size_t i = 0; i < k; ++i) invariants_[i] = f.D(i, i);

    std::size_t free_count = 0;
    IntVector torsion;
    for (std::size_t i = 0; i < p; ++i) {
        if (invariants_[i] == 0) {
            free_slots_.push_back(i);
            ++free_count;
        } else if (invariants_[i] > 1) {
            torsion_slots_.push_back(i);
            torsion.push_back(invariants_[i]);
        }
    }
    group_.free_rank = free_count;
    group_.torsion = torsion; // SNF already yields a divisibility chain
    for (std::size_t s : free_slots_) free_gens_.push_back(adapted_.col(s));
    for (std::size_t s : torsion_slots_) torsion_gens_.push_back(adapted_.col(s));
}

bool LatticeQuotient::Coords::is_zero() const {
    for (const Int& x : free)
        if (x != 0) return false;
    for (const Int& x : torsion)
        if (x != 0) return false;
    return true;
}

std::optional<LatticeQuotient::Coords> LatticeQuotient::classify(const IntVector& x) const {
    auto y = lattice_coordinates(x, kernel_);
    if (!y) return std::nullopt;
    const IntVector c = basis_change_ * *y;
    Coords out;
    out.free.reserve(free_slots_.size());
    for (std::size_t s : free_slots_) out.free.push_back(c[s]);
    out.torsion.reserve(torsion_slots_.size());
    for (std::size_t i = 0; i < torsion_slots_.size(); ++i) {
        Int m = c[torsion_slots_[i]] % group_.torsion[i];
        if (m < 0) m += group_.torsion[i];
        out.torsion.push_back(m);
    }
    return out;
}

IntVector LatticeQuotient::representative(const Coords& c) const {
    IntVector x(ambient_, Int(0));
    for (std::size_t i = 0; i < c.free.size(); ++i)
        for (std::size_t k = 0; k < ambient_; ++k) x[k] += c.free[i] * free_gens_[i][k];
    for (std::size_t i = 0; i < c.torsion.size(); ++i)
        for (std::size_t k = 0; k < ambient_; ++k) x[k] += c.torsion[i] * torsion_gens_[i][k];
    return x;
}

} // namespace kn
