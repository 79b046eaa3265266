#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmiso/field.hpp"
#include "mmiso/rng.hpp"

namespace mmiso {

/// Dense matrix over an exact field, row-major storage. All operations are
/// pure; values are immutable in practice (mutation only through at() during
/// construction-style code).
class Mat {
public:
    Mat(int rows, int cols, const FieldSpec& field);

    static Mat identity(int n, const FieldSpec& f);
    /// Matrix unit e_{ij} (0-based indices).
    static Mat unit(int rows, int cols, int i, int j, const FieldSpec& f);
    /// E_r: r leading ones on the diagonal of an n x n matrix.
    static Mat diagonal_ones(int n, int r, const FieldSpec& f);
    static Mat random(Rng& rng, int rows, int cols, const FieldSpec& f);
    /// Rejection-samples until invertible.
    static Mat random_invertible(Rng& rng, int n, const FieldSpec& f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Scalar& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const Scalar& s) const;
    Mat transpose() const;

    /// Exact inverse; throws NotInvertibleError if singular or non-square.
    Mat inverse() const;
    /// Contragredient (x^t)^{-1}; an involution, and multiplicative.
    Mat contragredient() const;

    /// Rank by exact Gaussian elimination.
    int rank() const;
    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }
    bool is_zero() const;
    bool is_identity() const;
    /// lambda * E for some scalar lambda (including zero).
    bool is_scalar_matrix() const;

    /// First nonzero entry in row-major order, or nullopt for the zero matrix.
    std::optional<Scalar> first_nonzero() const;
    /// Scales so the first nonzero entry becomes 1; zero matrix unchanged.
    Mat normalized() const;
    /// lambda with other == lambda * this, if it exists; requires *this nonzero.
    std::optional<Scalar> proportionality_to(const Mat& other) const;

    friend bool operator==(const Mat& a, const Mat& b);
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    /// Canonical content key ("rows cols entries..."), usable for dedup sets.
    std::string key() const;

private:
    void require_compatible(const Mat& o) const;

    int rows_, cols_;
    FieldSpec field_;
    std::vector<Scalar> a_;
};

/// Tr(x*y) for x in M_{a,b}, y in M_{b,a}; symmetric and invariant under
/// (x,y) -> (g1 x g2^{-1}, g2 y g1^{-1}).
Scalar trace_pairing(const Mat& x, const Mat& y);

} // namespace mmiso
