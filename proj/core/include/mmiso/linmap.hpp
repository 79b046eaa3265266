#pragma once

#include <array>

#include "mmiso/tensor.hpp"

namespace mmiso {

/// Linear map between matrix spaces M_{dom.rows,dom.cols} -> M_{cod.rows,cod.cols}.
/// The action matrix is (cod.dim()) x (dom.dim()) and acts on column-major
/// flattened matrices; this flattening convention also fixes the linmap file
/// format.
class LinMap {
public:
    LinMap(const FactorDims& dom, const FactorDims& cod, Mat action);

    static LinMap identity(const FactorDims& d, const FieldSpec& f);
    /// x -> l * x * r.
    static LinMap sandwich(const Mat& l, const Mat& r);
    /// x -> x^t.
    static LinMap transpose_map(const FactorDims& dom, const FieldSpec& f);
    /// Builds the action column-by-column from a function on matrices.
    template <typename F>
    static LinMap from_function(const FactorDims& dom, const FactorDims& cod,
                                const FieldSpec& field, F&& fn);

    const FactorDims& dom() const { return dom_; }
    const FactorDims& cod() const { return cod_; }
    const FieldSpec& field() const { return action_.field(); }
    const Mat& action() const { return action_; }

    Mat apply(const Mat& x) const;
    /// this after inner.
    LinMap compose(const LinMap& inner) const;
    LinMap inverse() const;
    bool is_invertible() const { return action_.is_invertible(); }
    LinMap scaled(const Scalar& s) const;

    /// Dual map under the trace pairing: M_{cod.cols,cod.rows} -> M_{dom.cols,dom.rows},
    /// the unique map with <A(x), y> = <x, dual(y)>.
    LinMap dual() const;
    /// Contragredient (dual^{-1}); satisfies <x, y> = <A(x), contragredient()(y)>.
    LinMap contragredient() const;

    /// Action matrix re-indexed to the row-major composite convention used by
    /// Tensor3::mode_apply.
    Mat row_major_operator() const;

    friend bool operator==(const LinMap& a, const LinMap& b) {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.action_ == b.action_;
    }

private:
    FactorDims dom_, cod_;
    Mat action_;
};

/// Column-major flatten / unflatten.
Mat flatten_cm(const Mat& x);                       // dim x 1 column
Mat unflatten_cm(const Mat& v, const FactorDims& d);

/// Kronecker product with lexicographic (I1,I2,I3) composite indices.
Mat kron3(const Mat& m1, const Mat& m2, const Mat& m3);

/// Factors a Kronecker-structured operator exactly: returns (f1,f2,f3) with
/// kron3(f1,f2,f3) == big; throws NotDecomposableError otherwise. dims[i] is
/// the square size of factor i.
std::array<Mat, 3> split_kronecker(const Mat& big, const std::array<int, 3>& dims);

/// Applies one map per tensor factor (the decomposable operator f1 (x) f2 (x) f3).
Tensor3 apply_factor_maps(const LinMap& f1, const LinMap& f2, const LinMap& f3,
                          const Tensor3& t);

template <typename F>
LinMap LinMap::from_function(const FactorDims& dom, const FactorDims& cod,
                             const FieldSpec& field, F&& fn) {
    Mat action(cod.dim(), dom.dim(), field);
    for (int j = 0; j < dom.cols; ++j)
        for (int i = 0; i < dom.rows; ++i) {
            const int col = j * dom.rows + i;
            const Mat img = fn(Mat::unit(dom.rows, dom.cols, i, j, field));
            if (img.rows() != cod.rows || img.cols() != cod.cols)
                throw DimensionMismatchError("from_function image shape mismatch");
            for (int cc = 0; cc < cod.cols; ++cc)
                for (int rr = 0; rr < cod.rows; ++rr)
                    action.at(cc * cod.rows + rr, col) = img.at(rr, cc);
        }
    return LinMap(dom, cod, std::move(action));
}

} // namespace mmiso
