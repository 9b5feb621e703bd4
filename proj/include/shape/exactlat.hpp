#ifndef SHAPE_EXACTLAT_HPP
#define SHAPE_EXACTLAT_HPP

// Exact integer linear algebra and small-rank lattice algorithms.
//
// Everything here works over GMP integers/rationals; no floating point is
// used anywhere, so results are reproducible bit for bit.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace shape {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(const std::vector<IntVector> &columns, std::size_t rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector column(std::size_t j) const;
    IntMatrix transpose() const;
    /// Columns [first, first + count).
    IntMatrix column_block(std::size_t first, std::size_t count) const;

    bool is_symmetric() const;
    bool is_zero() const;

    friend bool operator==(const IntMatrix &a, const IntMatrix &b);
    friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
    friend IntMatrix operator*(const Int &s, const IntMatrix &a);

    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

IntVector operator*(const IntMatrix &a, const IntVector &x);

/// Symmetric integer matrix of a bilinear pairing. Positive definiteness
/// is not enforced at construction; operations that need it check it.
class GramMatrix {
  public:
    GramMatrix() = default;
    explicit GramMatrix(IntMatrix m);
    GramMatrix(std::initializer_list<std::initializer_list<long>> rows)
        : GramMatrix(IntMatrix(rows)) {}

    std::size_t rank() const noexcept { return m_.rows(); }
    const IntMatrix &matrix() const noexcept { return m_; }
    const Int &operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// All leading principal minors are positive.
    bool is_positive_definite() const;
    /// Every diagonal entry is even.
    bool is_even() const;
    Int determinant() const;
    /// gcd of all entries.
    Int content() const;

    /// Exact entrywise division; throws NotIntegral if some entry is not
    /// divisible by d.
    GramMatrix divided_by(const Int &d) const;
    GramMatrix scaled_by(const Int &s) const;

    friend bool operator==(const GramMatrix &a, const GramMatrix &b) { return a.m_ == b.m_; }

  private:
    IntMatrix m_;
};

/// Uᵀ·G·U.
GramMatrix congruence(const GramMatrix &g, const IntMatrix &u);
/// xᵀ·G·y.
Int pairing(const GramMatrix &g, const IntVector &x, const IntVector &y);

/// Q(x) = Σ_{i≤j} a_ij x_i x_j with integer coefficients.
class QuadForm {
  public:
    QuadForm() = default;
    explicit QuadForm(std::size_t rank);

    /// Reads D as the doubled Gram of a form: a_ii = D_ii / 2, a_ij = D_ij.
    /// Requires an even diagonal.
    static QuadForm from_doubled_gram(const GramMatrix &d);
    /// The form x ↦ xᵀGx, i.e. a_ii = G_ii, a_ij = 2G_ij.
    static QuadForm from_gram(const GramMatrix &g);

    std::size_t rank() const noexcept { return rank_; }
    Int &coeff(std::size_t i, std::size_t j);
    const Int &coeff(std::size_t i, std::size_t j) const;

    GramMatrix doubled_gram() const;
    Int content() const;
    QuadForm primitive_part() const;
    /// Human-readable polynomial, e.g. "x1^2 - x1*x2 + x2^2".
    std::string to_string() const;

    friend bool operator==(const QuadForm &a, const QuadForm &b) {
        return a.rank_ == b.rank_ && a.c_ == b.c_;
    }

  private:
    std::size_t rank_ = 0;
    std::vector<Int> c_; // upper triangle, row-major
};

struct IsometryWitness {
    IntMatrix transform; // U with Uᵀ·G1·U = G2
};

struct HnfResult {
    IntMatrix h;
    IntMatrix u;
    std::size_t rank = 0;
};

/// Column-style Hermite normal form: H = M·U with U unimodular, H lower
/// echelon with positive pivots; in each pivot row the entries left of the
/// pivot lie in [0, pivot). Zero columns come last.
HnfResult hnf(const IntMatrix &m);

/// Saturated ℤ-basis (as columns) of {x ∈ ℤ^cols : M·x = 0}.
IntMatrix int_kernel(const IntMatrix &m);

/// Nonzero elementary divisors d_1 | d_2 | ... of M.
std::vector<Int> smith_invariants(const IntMatrix &m);

/// Bareiss fraction-free determinant.
Int det_exact(const IntMatrix &m);

/// Inverse of a unimodular matrix; throws NotIntegral otherwise.
IntMatrix unimodular_inverse(const IntMatrix &u);

struct LllResult {
    GramMatrix gram; // Uᵀ·G·U
    IntMatrix transform;
};

/// LLL with δ = 3/4 on a Gram matrix, exact rational Gram–Schmidt.
LllResult lll_reduce(const GramMatrix &g);

/// All x ≠ 0 with xᵀGx ≤ bound, one per ± pair (first nonzero coordinate
/// positive), sorted lexicographically.
std::vector<IntVector> short_vectors(const GramMatrix &g, const Int &bound);

/// Returns U with Uᵀ·G1·U = G2 when the lattices are isometric.
std::optional<IsometryWitness> is_isometric(const GramMatrix &g1, const GramMatrix &g2);

/// Exact re-check of a witness.
bool verify_witness(const GramMatrix &g1, const GramMatrix &g2, const IsometryWitness &w);

struct FormClass {
    bool integral = true;
    bool primitive = false;
    bool even_lattice = false;
    Int det_doubled;
};

FormClass classify_form(const QuadForm &q);

} // namespace shape

#endif
