#pragma once

#include <vector>
#include <utility>
#include <optional>
#include <functional>
#include "oforge/rational.hpp"

namespace oforge {

// Sparse vector over the rationals: sorted (index, coeff) pairs with nonzero
// coefficients. Indices are nonnegative.
class SparseVec {
public:
    using Term = std::pair<int, Rat>;

    SparseVec() = default;
    static SparseVec unit(int index, Rat coeff = Rat(1));

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    Rat coeff(int index) const;
    int leading_index() const; // largest index; -1 if empty

    SparseVec& add(int index, const Rat& c); // in place, keeps canonical form
    SparseVec& axpy(const Rat& a, const SparseVec& x);
    SparseVec& operator+=(const SparseVec& o) { return axpy(Rat(1), o); }
    SparseVec& operator-=(const SparseVec& o) { return axpy(Rat(-1), o); }
    SparseVec& operator*=(const Rat& c);
    SparseVec operator+(const SparseVec& o) const;
    SparseVec operator-(const SparseVec& o) const;
    SparseVec operator*(const Rat& c) const;
    SparseVec operator-() const { return *this * Rat(-1); }
    bool operator==(const SparseVec& o) const { return terms_ == o.terms_; }

    // Applies f to every basis index, summing coeff * f(index).
    SparseVec map(const std::function<SparseVec(int)>& f) const;
    // Reindexes basis indices (injective map), keeping coefficients.
    SparseVec reindex(const std::function<int(int)>& f) const;

private:
    std::vector<Term> terms_;
};

// Column-sparse rational matrix.
class SparseMat {
public:
    SparseMat() : rows_(0) {}
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_zero() const;

    const SparseVec& col(int j) const { return cols_at(j); }
    void set_col(int j, SparseVec v);
    void add_entry(int i, int j, const Rat& c);
    Rat entry(int i, int j) const { return col(j).coeff(i); }

    SparseVec apply(const SparseVec& v) const;      // matrix * vector
    SparseMat compose(const SparseMat& inner) const; // (*this) o inner
    SparseMat transpose() const;
    SparseMat operator+(const SparseMat& o) const;
    SparseMat operator-(const SparseMat& o) const;
    SparseMat operator*(const Rat& c) const;
    bool operator==(const SparseMat& o) const;

    static SparseMat identity(int n);

private:
    const SparseVec& cols_at(int j) const;
    int rows_;
    int cols_ = 0;
    std::vector<SparseVec> data_;
    static const SparseVec kZero;
};

// Row space in reduced echelon form, built incrementally; used for ranks,
// spans, quotients and membership tests. Pivoting prefers the *largest*
// index, so that in quotient bases the earliest basis vectors survive as
// standard monomials.
class RowSpace {
public:
    // Returns the residue of v after reduction by the current basis.
    SparseVec reduce(const SparseVec& v) const;
    // Reduces and inserts if independent. Returns true if the rank grew.
    bool insert(const SparseVec& v);
    int rank() const { return static_cast<int>(rows_.size()); }
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    std::vector<int> pivots() const;

private:
    std::vector<SparseVec> rows_; // each monic at its pivot (leading index)
    std::vector<std::pair<int, int>> pivot_of_; // sorted (pivot index, row)
};

// A quotient V / U presented with an explicit section. Basis of the quotient:
// the standard monomials (indices of V that are not pivots of U), in
// increasing index order.
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(int ambient_dim, const RowSpace& relations);

    int dim() const { return static_cast<int>(basis_.size()); }
    int ambient_dim() const { return ambient_; }
    const std::vector<int>& basis_indices() const { return basis_; }

    SparseVec project(const SparseVec& ambient) const; // class in quotient coords
    SparseVec section(int quotient_index) const;       // representative in V
    SparseVec section_vec(const SparseVec& q) const;

private:
    int ambient_ = 0;
    std::vector<SparseVec> reduced_rows_;
    std::vector<std::pair<int, int>> pivot_of_;
    std::vector<int> basis_;            // ambient indices of standard monomials
    std::vector<int> ambient_to_basis_; // -1 for pivots
};

// Solves A x = b exactly (A given by columns); returns nullopt if
// inconsistent. If the solution is not unique an arbitrary one is returned.
std::optional<SparseVec> solve(const SparseMat& A, const SparseVec& b);

} // namespace oforge
