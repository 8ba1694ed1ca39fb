#pragma once

// Exact rational scalars and sparse linear algebra over Q.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace freefft {

using Rational = mpq_class;

/// Parses "p" or "p/q" (optional sign on p). Throws std::invalid_argument
/// on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

struct SparseEntry {
    std::size_t col;
    Rational value;

    bool operator==(const SparseEntry&) const = default;
};

// Sorted by column, no stored zeros.
using SparseVector = std::vector<SparseEntry>;

namespace sparse {

/// x += a * y.
void axpy(SparseVector& x, const Rational& a, const SparseVector& y);
void scale(SparseVector& x, const Rational& a);
/// Sorts by column, merges duplicates and drops zeros.
void canonicalize(SparseVector& x);
SparseVector from_dense(const std::vector<Rational>& dense);
std::vector<Rational> to_dense(const SparseVector& x, std::size_t dim);

} // namespace sparse

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
    /// Rows must already be canonical and in range.
    static RationalMatrix from_rows(std::size_t cols, std::vector<SparseVector> rows);

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    std::size_t nonzeros() const;

    const SparseVector& row(std::size_t i) const { return rows_.at(i); }
    const std::vector<SparseVector>& row_data() const { return rows_; }
    void set_row(std::size_t i, SparseVector v);
    void append_row(SparseVector v);

    Rational at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Rational& value);
    void add(std::size_t i, std::size_t j, const Rational& value);

    RationalMatrix transpose() const;
    std::vector<std::vector<Rational>> dense() const;
    bool is_zero() const { return nonzeros() == 0; }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
    bool operator==(const RationalMatrix& other) const = default;

private:
    void check_row(const SparseVector& v) const;

    std::size_t cols_ = 0;
    std::vector<SparseVector> rows_;
};

/// Kronecker product; the left factor indexes the most significant digit.
RationalMatrix kron(const RationalMatrix& a, const RationalMatrix& b);
std::string to_string(const RationalMatrix& m);

struct RrefResult {
    RationalMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

RrefResult rref(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);

/// Incremental semi-echelon form. Pivot of a row is its first nonzero
/// column; stored rows are monic and have pairwise distinct pivots, but
/// are only top-reduced. Column ids may be arbitrary 64-bit keys.
class EchelonForm {
public:
    /// Returns true if v was independent of the rows already present.
    bool insert(SparseVector v);
    /// Full reduction: result has no entry on a pivot column. Zero iff v is
    /// in the row space.
    SparseVector reduce(SparseVector v) const;
    bool contains(const SparseVector& v) const { return reduce(v).empty(); }

    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::size_t col) const { return pivot_.count(col) != 0; }
    const std::vector<SparseVector>& rows() const { return rows_; }
    /// Pivot columns in increasing order.
    std::vector<std::size_t> pivot_cols() const;
    /// Rows brought to reduced form, sorted by pivot column.
    std::vector<SparseVector> reduced_rows() const;

private:
    std::vector<SparseVector> rows_;
    std::unordered_map<std::size_t, std::size_t> pivot_;
};

/// A subspace of Q^n stored by a basis in reduced row-echelon form.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim);

    /// Row space of m.
    static Subspace span(const RationalMatrix& m);
    static Subspace span(std::size_t ambient_dim, const std::vector<SparseVector>& vectors);

    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const RationalMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

    /// Throws std::invalid_argument on a dimension mismatch.
    bool contains(const SparseVector& v) const;
    bool contains(const std::vector<Rational>& v) const;
    bool contains(const Subspace& other) const;
    /// Exact reduction modulo the subspace (zero iff contained).
    SparseVector reduce(SparseVector v) const;

    bool operator==(const Subspace& other) const { return basis_ == other.basis_; }

private:
    RationalMatrix basis_;
    std::vector<std::size_t> pivots_;
    std::unordered_map<std::size_t, std::size_t> pivot_row_;
};

/// {x : m x = 0}.
Subspace kernel_basis(const RationalMatrix& m);

} // namespace freefft
