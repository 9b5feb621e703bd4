#include "shape/exactlat.hpp"

#include "shape/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace shape {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_)
            throw ShapeError(Errc::DimensionMismatch, "ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector> &columns, std::size_t rows) {
    IntMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows)
            throw ShapeError(Errc::DimensionMismatch, "column length differs from row count");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::column_block(std::size_t first, std::size_t count) const {
    IntMatrix b(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) b(i, j) = (*this)(i, first + j);
    return b;
}

bool IntMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Int &v) { return v == 0; });
}

bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
    if (a.cols_ != b.rows_) throw ShapeError(Errc::DimensionMismatch, "matrix product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Int &aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

IntMatrix operator*(const Int &s, const IntMatrix &a) {
    IntMatrix c = a;
    for (auto &v : c.data_) v *= s;
    return c;
}

IntVector operator*(const IntMatrix &a, const IntVector &x) {
    if (a.cols() != x.size()) throw ShapeError(Errc::DimensionMismatch, "matrix-vector product");
    IntVector y(a.rows(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// GramMatrix

namespace {

// Bareiss elimination without pivoting; returns the leading principal
// minors d_1..d_n, stopping early (and returning fewer) at the first zero.
std::vector<Int> leading_minors(const IntMatrix &m) {
    const std::size_t n = m.rows();
    IntMatrix a = m;
    std::vector<Int> minors;
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        minors.push_back(a(k, k));
        if (a(k, k) == 0) break;
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return minors;
}

Int gcd_all(const IntMatrix &m) {
    Int g = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
    return g;
}

} // namespace

GramMatrix::GramMatrix(IntMatrix m) : m_(std::move(m)) {
    if (!m_.is_square()) throw ShapeError(Errc::NotSquare, "Gram matrix must be square");
    if (!m_.is_symmetric()) throw ShapeError(Errc::NotSymmetric, "Gram matrix must be symmetric");
}

bool GramMatrix::is_positive_definite() const {
    auto minors = leading_minors(m_);
    if (minors.size() != rank()) return false;
    return std::all_of(minors.begin(), minors.end(), [](const Int &d) { return d > 0; });
}

bool GramMatrix::is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (mpz_odd_p(m_(i, i).get_mpz_t())) return false;
    return true;
}

Int GramMatrix::determinant() const { return det_exact(m_); }

Int GramMatrix::content() const { return gcd_all(m_); }

GramMatrix GramMatrix::divided_by(const Int &d) const {
    if (d == 0) throw ShapeError(Errc::NotIntegral, "division by zero");
    IntMatrix r = m_;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) {
            if (!mpz_divisible_p(r(i, j).get_mpz_t(), d.get_mpz_t()))
                throw ShapeError(Errc::NotIntegral,
                                 "entry " + r(i, j).get_str() + " not divisible by " + d.get_str());
            mpz_divexact(r(i, j).get_mpz_t(), r(i, j).get_mpz_t(), d.get_mpz_t());
        }
    return GramMatrix(std::move(r));
}

GramMatrix GramMatrix::scaled_by(const Int &s) const { return GramMatrix(s * m_); }

GramMatrix congruence(const GramMatrix &g, const IntMatrix &u) {
    if (u.rows() != g.rank()) throw ShapeError(Errc::DimensionMismatch, "congruence transform");
    return GramMatrix(u.transpose() * g.matrix() * u);
}

Int pairing(const GramMatrix &g, const IntVector &x, const IntVector &y) {
    IntVector gy = g.matrix() * y;
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * gy[i];
    return s;
}

// ---------------------------------------------------------------------------
// QuadForm

QuadForm::QuadForm(std::size_t rank) : rank_(rank), c_(rank * (rank + 1) / 2, Int(0)) {}

namespace {
std::size_t tri_index(std::size_t n, std::size_t i, std::size_t j) {
    // row i of the upper triangle starts after Σ_{r<i}(n - r) entries
    return i * n - i * (i - 1) / 2 + (j - i);
}
} // namespace

Int &QuadForm::coeff(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return c_.at(tri_index(rank_, i, j));
}

const Int &QuadForm::coeff(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return c_.at(tri_index(rank_, i, j));
}

QuadForm QuadForm::from_doubled_gram(const GramMatrix &d) {
    if (!d.is_even())
        throw ShapeError(Errc::NotIntegral, "doubled Gram must have an even diagonal");
    QuadForm q(d.rank());
    for (std::size_t i = 0; i < d.rank(); ++i) {
        q.coeff(i, i) = d(i, i) / 2;
        for (std::size_t j = i + 1; j < d.rank(); ++j) q.coeff(i, j) = d(i, j);
    }
    return q;
}

QuadForm QuadForm::from_gram(const GramMatrix &g) {
    QuadForm q(g.rank());
    for (std::size_t i = 0; i < g.rank(); ++i) {
        q.coeff(i, i) = g(i, i);
        for (std::size_t j = i + 1; j < g.rank(); ++j) q.coeff(i, j) = 2 * g(i, j);
    }
    return q;
}

GramMatrix QuadForm::doubled_gram() const {
    IntMatrix d(rank_, rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
        d(i, i) = 2 * coeff(i, i);
        for (std::size_t j = i + 1; j < rank_; ++j) d(i, j) = d(j, i) = coeff(i, j);
    }
    return GramMatrix(std::move(d));
}

Int QuadForm::content() const {
    Int g = 0;
    for (const auto &v : c_) g = gcd(g, v);
    return g;
}

QuadForm QuadForm::primitive_part() const {
    QuadForm q = *this;
    Int g = content();
    if (g > 1)
        for (auto &v : q.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return q;
}

std::string QuadForm::to_string() const {
    auto var = [this](std::size_t i) -> std::string {
        if (rank_ <= 3) return std::string(1, "xyz"[i]);
        return "x" + std::to_string(i + 1);
    };
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < rank_; ++i)
        for (std::size_t j = i; j < rank_; ++j) {
            Int c = coeff(i, j);
            if (c == 0) continue;
            Int a = abs(c);
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            if (a != 1) os << a.get_str() << '*';
            if (i == j)
                os << var(i) << "^2";
            else
                os << var(i) << '*' << var(j);
            first = false;
        }
    if (first) os << '0';
    return os.str();
}

// ---------------------------------------------------------------------------
// Hermite / Smith / kernel / determinant

namespace {

// (col a, col b) <- (s·a + t·b, u·a + v·b)
void combine_columns(IntMatrix &m, std::size_t a, std::size_t b, const Int &s, const Int &t,
                     const Int &u, const Int &v) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int x = m(i, a), y = m(i, b);
        m(i, a) = s * x + t * y;
        m(i, b) = u * x + v * y;
    }
}

void axpy_column(IntMatrix &m, std::size_t dst, std::size_t src, const Int &q) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void negate_column(IntMatrix &m, std::size_t j) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

} // namespace

HnfResult hnf(const IntMatrix &m) {
    const std::size_t n = m.cols();
    HnfResult r{m, IntMatrix::identity(n), 0};
    IntMatrix &h = r.h;
    IntMatrix &u = r.u;
    std::size_t piv = 0;
    for (std::size_t i = 0; i < m.rows() && piv < n; ++i) {
        for (std::size_t j = piv + 1; j < n; ++j) {
            if (h(i, j) == 0) continue;
            Int x = h(i, piv), y = h(i, j), g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            Int uu = -y / g, vv = x / g;
            combine_columns(h, piv, j, s, t, uu, vv);
            combine_columns(u, piv, j, s, t, uu, vv);
        }
        if (h(i, piv) == 0) continue;
        if (h(i, piv) < 0) {
            negate_column(h, piv);
            negate_column(u, piv);
        }
        const Int p = h(i, piv);
        for (std::size_t j = 0; j < piv; ++j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), p.get_mpz_t());
            if (q == 0) continue;
            axpy_column(h, j, piv, q);
            axpy_column(u, j, piv, q);
        }
        ++piv;
    }
    r.rank = piv;
    return r;
}

IntMatrix int_kernel(const IntMatrix &m) {
    HnfResult r = hnf(m);
    return r.u.column_block(r.rank, m.cols() - r.rank);
}

std::vector<Int> smith_invariants(const IntMatrix &m) {
    IntMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<Int> out;
    auto swap_rows = [&](std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols; ++j) std::swap(a(i, j), a(k, j));
    };
    auto swap_cols = [&](std::size_t j, std::size_t k) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, j), a(i, k));
    };
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        // move the smallest nonzero entry of the trailing block to (t, t)
        auto place_min = [&]() {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (bi == rows || abs(a(i, j)) < abs(a(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows) return false;
            swap_rows(t, bi);
            swap_cols(t, bj);
            return true;
        };
        if (!place_min()) break;
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Int q = a(i, t) / a(t, t);
                for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Int q = a(t, j) / a(t, t);
                for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) {
                place_min();
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        for (std::size_t k = t; k < cols; ++k) a(t, k) += a(i, k);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        out.push_back(abs(a(t, t)));
    }
    return out;
}

Int det_exact(const IntMatrix &m) {
    if (!m.is_square()) throw ShapeError(Errc::NotSquare, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix &u) {
    if (!u.is_square()) throw ShapeError(Errc::NotSquare, "inverse of non-square matrix");
    const std::size_t n = u.rows();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = u(i, j);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw ShapeError(Errc::NotIntegral, "singular matrix has no inverse");
        std::swap(a[p], a[c]);
        Rat inv = 1 / a[c][c];
        for (auto &v : a[c]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IntMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rat &v = a[i][n + j];
            if (v.get_den() != 1) throw ShapeError(Errc::NotIntegral, "matrix is not unimodular");
            inv(i, j) = v.get_num();
        }
    return inv;
}

// ---------------------------------------------------------------------------
// LLL and enumeration

namespace {

struct Gso {
    std::vector<std::vector<Rat>> mu;
    std::vector<Rat> b; // squared norms of the Gram–Schmidt vectors
};

Gso gram_schmidt(const IntMatrix &g) {
    const std::size_t n = g.rows();
    Gso s{std::vector<std::vector<Rat>>(n, std::vector<Rat>(n)), std::vector<Rat>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rat r = g(i, j);
            for (std::size_t k = 0; k < j; ++k) r -= s.mu[j][k] * s.mu[i][k] * s.b[k];
            s.mu[i][j] = r / s.b[j];
        }
        Rat r = g(i, i);
        for (std::size_t k = 0; k < i; ++k) r -= s.mu[i][k] * s.mu[i][k] * s.b[k];
        s.b[i] = r;
        s.mu[i][i] = 1;
    }
    return s;
}

Int round_nearest(const Rat &r) {
    // floor(r + 1/2)
    Int num = 2 * r.get_num() + r.get_den(), den = 2 * r.get_den(), q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

void require_positive_definite(const GramMatrix &g) {
    if (!g.is_positive_definite())
        throw ShapeError(Errc::NotPositiveDefinite, "Gram matrix is not positive definite");
}

bool lex_less(const IntVector &a, const IntVector &b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool first_nonzero_positive(const IntVector &v) {
    for (const auto &x : v)
        if (x != 0) return x > 0;
    return false;
}

} // namespace

LllResult lll_reduce(const GramMatrix &gram) {
    require_positive_definite(gram);
    const std::size_t n = gram.rank();
    IntMatrix g = gram.matrix();
    IntMatrix u = IntMatrix::identity(n);
    if (n <= 1) return {GramMatrix(g), u};

    const Rat delta(3, 4);
    const Rat half(1, 2);
    Gso s = gram_schmidt(g);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t jj = k; jj-- > 0;) {
            if (abs(s.mu[k][jj]) <= half) continue;
            Int q = round_nearest(s.mu[k][jj]);
            // b_k <- b_k - q b_j
            g(k, k) = g(k, k) - 2 * q * g(k, jj) + q * q * g(jj, jj);
            for (std::size_t i = 0; i < n; ++i) {
                if (i == k) continue;
                g(k, i) -= q * g(jj, i);
                g(i, k) = g(k, i);
            }
            axpy_column(u, k, jj, q);
            for (std::size_t i = 0; i < jj; ++i) s.mu[k][i] -= q * s.mu[jj][i];
            s.mu[k][jj] -= q;
        }
        if (s.b[k] >= (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b[k - 1]) {
            ++k;
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) std::swap(g(k, j), g(k - 1, j));
        for (std::size_t i = 0; i < n; ++i) std::swap(g(i, k), g(i, k - 1));
        for (std::size_t i = 0; i < n; ++i) std::swap(u(i, k), u(i, k - 1));
        s = gram_schmidt(g);
        k = std::max<std::size_t>(k - 1, 1);
    }
    return {GramMatrix(g), u};
}

namespace {

// Fincke–Pohst enumeration of every x ≠ 0 with xᵀGx ≤ bound (both signs).
class Enumerator {
  public:
    Enumerator(const IntMatrix &g, const Int &bound)
        : n_(g.rows()), s_(gram_schmidt(g)), x_(n_, Int(0)), bound_(bound) {}

    std::vector<IntVector> run() {
        if (n_ > 0) descend(n_ - 1, Rat(bound_));
        return std::move(out_);
    }

  private:
    void descend(std::size_t i, const Rat &remaining) {
        Rat c = 0;
        for (std::size_t j = i + 1; j < n_; ++j) c -= s_.mu[j][i] * x_[j];
        auto fits = [&](const Int &x, Rat &rest) {
            Rat d = Rat(x) - c;
            rest = remaining - s_.b[i] * d * d;
            return rest >= 0;
        };
        Int start;
        mpz_cdiv_q(start.get_mpz_t(), c.get_num_mpz_t(), c.get_den_mpz_t());
        Rat rest;
        for (Int x = start; fits(x, rest); ++x) visit(i, x, rest);
        for (Int x = start - 1; fits(x, rest); --x) visit(i, x, rest);
        x_[i] = 0;
    }

    void visit(std::size_t i, const Int &x, const Rat &rest) {
        x_[i] = x;
        if (i > 0) {
            descend(i - 1, rest);
            return;
        }
        if (std::any_of(x_.begin(), x_.end(), [](const Int &v) { return v != 0; }))
            out_.push_back(x_);
    }

    std::size_t n_;
    Gso s_;
    IntVector x_;
    Int bound_;
    std::vector<IntVector> out_;
};

std::vector<IntVector> all_short_vectors(const GramMatrix &g, const Int &bound) {
    if (bound <= 0) return {};
    return Enumerator(g.matrix(), bound).run();
}

} // namespace

std::vector<IntVector> short_vectors(const GramMatrix &g, const Int &bound) {
    require_positive_definite(g);
    std::vector<IntVector> all = all_short_vectors(g, bound);
    std::vector<IntVector> reps;
    for (auto &v : all)
        if (first_nonzero_positive(v)) reps.push_back(std::move(v));
    std::sort(reps.begin(), reps.end(), lex_less);
    return reps;
}

namespace {

// Backtracking search for V with Vᵀ·R1·V = R2, columns drawn from the
// short vectors of R1. Both Grams are LLL-reduced beforehand.
class IsometrySearch {
  public:
    IsometrySearch(const GramMatrix &r1, const GramMatrix &r2, std::vector<IntVector> candidates)
        : r1_(r1), r2_(r2), n_(r2.rank()) {
        for (auto &v : candidates) {
            Candidate c;
            c.image = r1_.matrix() * v;
            c.norm = 0;
            for (std::size_t i = 0; i < n_; ++i) c.norm += v[i] * c.image[i];
            c.positive = first_nonzero_positive(v);
            c.coords = std::move(v);
            cands_.push_back(std::move(c));
        }
        std::sort(cands_.begin(), cands_.end(), [](const Candidate &a, const Candidate &b) {
            if (a.norm != b.norm) return a.norm < b.norm;
            return lex_less(a.coords, b.coords);
        });
        chosen_.reserve(n_);
    }

    std::optional<IntMatrix> find() {
        if (!extend()) return std::nullopt;
        std::vector<IntVector> cols;
        for (std::size_t idx : chosen_) cols.push_back(cands_[idx].coords);
        return IntMatrix::from_columns(cols, n_);
    }

  private:
    struct Candidate {
        IntVector coords;
        IntVector image; // R1 · coords
        Int norm;
        bool positive = false;
    };

    bool extend() {
        const std::size_t i = chosen_.size();
        if (i == n_) return true;
        for (std::size_t c = 0; c < cands_.size(); ++c) {
            const Candidate &cand = cands_[c];
            if (cand.norm != r2_(i, i)) continue;
            // -V is a witness whenever V is, so fix the sign of the first image
            if (i == 0 && !cand.positive) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                const IntVector &img = cands_[chosen_[j]].image;
                Int dot = 0;
                for (std::size_t t = 0; t < n_; ++t) dot += img[t] * cand.coords[t];
                ok = dot == r2_(j, i);
            }
            if (!ok) continue;
            chosen_.push_back(c);
            if (extend()) return true;
            chosen_.pop_back();
        }
        return false;
    }

    const GramMatrix &r1_;
    const GramMatrix &r2_;
    std::size_t n_;
    std::vector<Candidate> cands_;
    std::vector<std::size_t> chosen_;
};

std::map<Int, std::size_t> norm_counts(const GramMatrix &g, const std::vector<IntVector> &vs) {
    std::map<Int, std::size_t> counts;
    for (const auto &v : vs) ++counts[pairing(g, v, v)];
    return counts;
}

} // namespace

std::optional<IsometryWitness> is_isometric(const GramMatrix &g1, const GramMatrix &g2) {
    if (g1.rank() != g2.rank())
        throw ShapeError(Errc::RankMismatch, "ranks " + std::to_string(g1.rank()) + " and " +
                                                 std::to_string(g2.rank()));
    require_positive_definite(g1);
    require_positive_definite(g2);
    const std::size_t n = g1.rank();
    if (n == 0) return IsometryWitness{IntMatrix(0, 0)};
    if (g1.determinant() != g2.determinant()) return std::nullopt;

    LllResult red1 = lll_reduce(g1);
    LllResult red2 = lll_reduce(g2);
    Int bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bound = std::max(bound, red1.gram(i, i));
        bound = std::max(bound, red2.gram(i, i));
    }
    std::vector<IntVector> sv1 = all_short_vectors(red1.gram, bound);
    std::vector<IntVector> sv2 = all_short_vectors(red2.gram, bound);
    if (sv1.size() != sv2.size()) return std::nullopt;
    if (norm_counts(red1.gram, sv1) != norm_counts(red2.gram, sv2)) return std::nullopt;

    IsometrySearch search(red1.gram, red2.gram, std::move(sv1));
    std::optional<IntMatrix> v = search.find();
    if (!v) return std::nullopt;

    IsometryWitness w{red1.transform * *v * unimodular_inverse(red2.transform)};
    if (!verify_witness(g1, g2, w))
        throw ShapeError(Errc::CertificationFailed, "isometry witness failed re-verification");
    return w;
}

bool verify_witness(const GramMatrix &g1, const GramMatrix &g2, const IsometryWitness &w) {
    if (w.transform.rows() != g1.rank() || w.transform.cols() != g2.rank()) return false;
    if (abs(det_exact(w.transform)) != 1) return false;
    return congruence(g1, w.transform) == g2;
}

FormClass classify_form(const QuadForm &q) {
    FormClass c;
    c.integral = true; // coefficients are integers by construction
    c.primitive = q.content() == 1;
    c.even_lattice = true;
    for (std::size_t i = 0; i < q.rank(); ++i)
        if (mpz_odd_p(q.coeff(i, i).get_mpz_t())) c.even_lattice = false;
    c.det_doubled = q.doubled_gram().determinant();
    return c;
}

} // namespace shape
