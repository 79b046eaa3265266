#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmiso/matrix.hpp"

namespace mmiso {

/// Shape (m,n,p) of the multiplication tensor <m,n,p>.
struct Shape {
    int m = 0, n = 0, p = 0;
    friend bool operator==(const Shape&, const Shape&) = default;
    std::string str() const {
        return std::to_string(m) + "x" + std::to_string(n) + "x" + std::to_string(p);
    }
};

struct FactorDims {
    int rows = 0, cols = 0;
    int dim() const { return rows * cols; }
    friend bool operator==(const FactorDims&, const FactorDims&) = default;
};

using TensorDims = std::array<FactorDims, 3>;

/// Factor spaces of <m,n,p>: M_{m,n} (x) M_{n,p} (x) M_{p,m}.
TensorDims mmt_dims(const Shape& s);

/// Order-3 tensor over a triple of matrix spaces, dense exact coefficients.
///
/// Coefficient layout is the 6-index array c[r1][c1][r2][c2][r3][c3] indexing
/// the basis e_{r1 c1} (x) e_{r2 c2} (x) e_{r3 c3}, row-major in that index
/// order. For the <m,n,p> factor pattern this is the documented
/// (i, j, j', k, k', i') layout of the tensor file format.
class Tensor3 {
public:
    Tensor3(const TensorDims& dims, const FieldSpec& field);

    const TensorDims& dims() const { return dims_; }
    const FieldSpec& field() const { return field_; }

    /// The (m,n,p) pattern of the dims, when they have one.
    std::optional<Shape> mmt_shape() const;

    Scalar& at(int r1, int c1, int r2, int c2, int r3, int c3) {
        return c_[index(r1, c1, r2, c2, r3, c3)];
    }
    const Scalar& at(int r1, int c1, int r2, int c2, int r3, int c3) const {
        return c_[index(r1, c1, r2, c2, r3, c3)];
    }

    Tensor3 operator+(const Tensor3& o) const;
    Tensor3 operator-(const Tensor3& o) const;
    friend bool operator==(const Tensor3& a, const Tensor3& b);
    friend bool operator!=(const Tensor3& a, const Tensor3& b) { return !(a == b); }

    bool is_zero() const;
    std::size_t nonzero_count() const;

    /// Applies one operator per factor. Each op acts on a factor's composite
    /// index in row-major (r*cols + c) convention; op_k has out_dims[k].dim()
    /// rows and dims()[k].dim() columns.
    Tensor3 mode_apply(const Mat& op1, const Mat& op2, const Mat& op3,
                       const TensorDims& out_dims) const;

    const std::vector<Scalar>& raw() const { return c_; }
    Scalar& raw_at(std::size_t i) { return c_[i]; }

private:
    std::size_t index(int r1, int c1, int r2, int c2, int r3, int c3) const;

    TensorDims dims_;
    FieldSpec field_;
    std::vector<Scalar> c_;
};

/// The tensor <m,n,p> = sum_{i,j,k} e_{ij} (x) e_{jk} (x) e_{ki}.
Tensor3 mmt_tensor(const Shape& s, const FieldSpec& f);

/// Element of C_l (x) R_l with coefficient matrix d[i][j] on basis e_i (x) e^j.
class Tensor2 {
public:
    explicit Tensor2(Mat coeffs);
    static Tensor2 identity(int l, const FieldSpec& f);

    int size() const { return coeffs_.rows(); }
    const Mat& coeffs() const { return coeffs_; }
    friend bool operator==(const Tensor2& a, const Tensor2& b) { return a.coeffs_ == b.coeffs_; }

private:
    Mat coeffs_;
};

/// The identity tensor delta_l = sum_i e_i (x) e^i.
Tensor2 identity_tensor(int l, const FieldSpec& f);

/// GL_l action g(v (x) v') = gv (x) v'g^{-1}: conjugates the coefficient matrix.
Tensor2 apply_gl_action(const Mat& g, const Tensor2& d);

/// Maps dm (x) dn (x) dp in (C_m R_m)(C_n R_n)(C_p R_p) into L by pairing each
/// column space with the next row space cyclically: c1 r2 (x) c2 r3 (x) c3 r1.
/// Sends delta (x) delta (x) delta to <m,n,p>.
Tensor3 cyclic_contraction(const Tensor2& dm, const Tensor2& dn, const Tensor2& dp);

/// Rank-one triple u (x) v (x) w with u in M_{m,n}, v in M_{n,p}, w in M_{p,m};
/// all three factors nonzero.
struct RankOneTriple {
    Mat u, v, w;
};

Tensor3 rank_one_tensor(const RankOneTriple& t);

/// Ordered list of rank-one terms summing to a tensor of the given shape.
struct Decomposition {
    Shape shape;
    FieldSpec field = FieldSpec::rationals();
    std::vector<RankOneTriple> terms;

    /// Checks factor shapes, shared field, and nonzero factors.
    void validate() const;
};

/// Exact sum of the rank-one terms.
Tensor3 decomposition_sum(const Decomposition& d);

/// Carries every coefficient into the target field (used to reduce rational
/// decompositions mod q before finite-field searches).
Decomposition decomposition_to_field(const Decomposition& d, const FieldSpec& f);

/// True iff the two triples are equal as tensors: factors proportional with
/// the product of the three factors equal to 1.
bool decomposable_equal(const RankOneTriple& s, const RankOneTriple& r);

/// dim { x*y : y in M_{n,p} } = p * rank(x), for x in M_{m,n}.
int left_span_dim(const Mat& x, const Shape& s);
/// dim { y*x : y in M_{m,n} } = m * rank(x), for x in M_{n,p}.
int right_span_dim(const Mat& x, const Shape& s);

} // namespace mmiso
