#include "mmiso/linmap.hpp"

namespace mmiso {

LinMap::LinMap(const FactorDims& dom, const FactorDims& cod, Mat action)
    : dom_(dom), cod_(cod), action_(std::move(action)) {
    if (action_.rows() != cod_.dim() || action_.cols() != dom_.dim())
        throw DimensionMismatchError("linmap action matrix shape mismatch");
}

LinMap LinMap::identity(const FactorDims& d, const FieldSpec& f) {
    return LinMap(d, d, Mat::identity(d.dim(), f));
}

LinMap LinMap::sandwich(const Mat& l, const Mat& r) {
    if (!(l.field() == r.field()))
        throw FieldMismatchError("sandwich factor field mismatch");
    const FactorDims dom{l.cols(), r.rows()};
    const FactorDims cod{l.rows(), r.cols()};
    return from_function(dom, cod, l.field(), [&](const Mat& x) { return l * x * r; });
}

LinMap LinMap::transpose_map(const FactorDims& dom, const FieldSpec& f) {
    return from_function(dom, FactorDims{dom.cols, dom.rows}, f,
                         [](const Mat& x) { return x.transpose(); });
}

Mat flatten_cm(const Mat& x) {
    Mat v(x.rows() * x.cols(), 1, x.field());
    for (int j = 0; j < x.cols(); ++j)
        for (int i = 0; i < x.rows(); ++i)
            v.at(j * x.rows() + i, 0) = x.at(i, j);
    return v;
}

Mat unflatten_cm(const Mat& v, const FactorDims& d) {
    if (v.cols() != 1 || v.rows() != d.dim())
        throw DimensionMismatchError("unflatten size mismatch");
    Mat x(d.rows, d.cols, v.field());
    for (int j = 0; j < d.cols; ++j)
        for (int i = 0; i < d.rows; ++i)
            x.at(i, j) = v.at(j * d.rows + i, 0);
    return x;
}

Mat LinMap::apply(const Mat& x) const {
    if (x.rows() != dom_.rows || x.cols() != dom_.cols)
        throw DimensionMismatchError("linmap argument shape mismatch");
    return unflatten_cm(action_ * flatten_cm(x), cod_);
}

LinMap LinMap::compose(const LinMap& inner) const {
    if (!(inner.cod_ == dom_))
        throw DimensionMismatchError("linmap composition shape mismatch");
    return LinMap(inner.dom_, cod_, action_ * inner.action_);
}

LinMap LinMap::inverse() const {
    return LinMap(cod_, dom_, action_.inverse());
}

LinMap LinMap::scaled(const Scalar& s) const {
    return LinMap(dom_, cod_, action_.scaled(s));
}

LinMap LinMap::dual() const {
    // dual(e_{uv})[c,d] = A(e_{dc})[v,u] for e_{uv} in M_{cod.cols,cod.rows};
    // this realizes <A(x), y> = <x, dual(y)> with <x,y> = Tr(xy).
    const FactorDims ddom{cod_.cols, cod_.rows};
    const FactorDims dcod{dom_.cols, dom_.rows};
    const FieldSpec f = field();
    Mat act(dcod.dim(), ddom.dim(), f);
    for (int v = 0; v < cod_.rows; ++v)
        for (int u = 0; u < cod_.cols; ++u) {
            const int col = v * ddom.rows + u; // cm index of e_{uv} in M_{cod.cols,cod.rows}
            for (int d = 0; d < dom_.rows; ++d)
                for (int c = 0; c < dom_.cols; ++c) {
                    // A(e_{dc})[v,u] sits at cm position (u*cod.rows+v, c*dom.rows+d).
                    const Scalar& val = action_.at(u * cod_.rows + v, c * dom_.rows + d);
                    act.at(d * dcod.rows + c, col) = val;
                }
        }
    return LinMap(ddom, dcod, std::move(act));
}

LinMap LinMap::contragredient() const {
    return dual().inverse();
}

Mat LinMap::row_major_operator() const {
    Mat op(cod_.dim(), dom_.dim(), field());
    for (int r = 0; r < cod_.rows; ++r)
        for (int c = 0; c < cod_.cols; ++c)
            for (int i = 0; i < dom_.rows; ++i)
                for (int j = 0; j < dom_.cols; ++j)
                    op.at(r * cod_.cols + c, i * dom_.cols + j) =
                        action_.at(c * cod_.rows + r, j * dom_.rows + i);
    return op;
}

Mat kron3(const Mat& m1, const Mat& m2, const Mat& m3) {
    const int r1 = m1.rows(), r2 = m2.rows(), r3 = m3.rows();
    const int c1 = m1.cols(), c2 = m2.cols(), c3 = m3.cols();
    Mat out(r1 * r2 * r3, c1 * c2 * c3, m1.field());
    for (int i1 = 0; i1 < r1; ++i1)
        for (int j1 = 0; j1 < c1; ++j1) {
            const Scalar& a = m1.at(i1, j1);
            if (a.is_zero()) continue;
            for (int i2 = 0; i2 < r2; ++i2)
                for (int j2 = 0; j2 < c2; ++j2) {
                    const Scalar ab = a * m2.at(i2, j2);
                    if (ab.is_zero()) continue;
                    for (int i3 = 0; i3 < r3; ++i3)
                        for (int j3 = 0; j3 < c3; ++j3)
                            out.at((i1 * r2 + i2) * r3 + i3, (j1 * c2 + j2) * c3 + j3) =
                                ab * m3.at(i3, j3);
                }
        }
    return out;
}

std::array<Mat, 3> split_kronecker(const Mat& big, const std::array<int, 3>& dims) {
    const int d1 = dims[0], d2 = dims[1], d3 = dims[2];
    if (big.rows() != d1 * d2 * d3 || big.cols() != d1 * d2 * d3)
        throw DimensionMismatchError("split_kronecker size mismatch");
    const FieldSpec f = big.field();

    // Anchor at a nonzero entry ((P1,P2,P3),(Q1,Q2,Q3)).
    int pr = -1, pc = -1;
    for (int i = 0; i < big.rows() && pr < 0; ++i)
        for (int j = 0; j < big.cols(); ++j)
            if (!big.at(i, j).is_zero()) { pr = i; pc = j; break; }
    if (pr < 0) throw NotDecomposableError("zero operator");
    const int p3 = pr % d3, p2 = (pr / d3) % d2, p1 = pr / (d2 * d3);
    const int q3 = pc % d3, q2 = (pc / d3) % d2, q1 = pc / (d2 * d3);

    // Slices through the anchor recover each factor up to a scalar.
    Mat f1(d1, d1, f), f2(d2, d2, f), f3(d3, d3, f);
    for (int i = 0; i < d1; ++i)
        for (int j = 0; j < d1; ++j)
            f1.at(i, j) = big.at((i * d2 + p2) * d3 + p3, (j * d2 + q2) * d3 + q3);
    for (int i = 0; i < d2; ++i)
        for (int j = 0; j < d2; ++j)
            f2.at(i, j) = big.at((p1 * d2 + i) * d3 + p3, (q1 * d2 + j) * d3 + q3);
    for (int i = 0; i < d3; ++i)
        for (int j = 0; j < d3; ++j)
            f3.at(i, j) = big.at((p1 * d2 + p2) * d3 + i, (q1 * d2 + q2) * d3 + j);

    // Rescale so the product reproduces big exactly, then verify.
    const Scalar ref = f1.at(p1, q1) * f2.at(p2, q2) * f3.at(p3, q3);
    const Scalar kappa = ref / big.at(pr, pc);
    f1 = f1.scaled(kappa.inverse());
    if (kron3(f1, f2, f3) != big)
        throw NotDecomposableError("operator is not a product of factor maps");
    return {f1, f2, f3};
}

Tensor3 apply_factor_maps(const LinMap& f1, const LinMap& f2, const LinMap& f3,
                          const Tensor3& t) {
    if (!(f1.dom() == t.dims()[0]) || !(f2.dom() == t.dims()[1]) || !(f3.dom() == t.dims()[2]))
        throw DimensionMismatchError("factor map / tensor shape mismatch");
    const TensorDims out{f1.cod(), f2.cod(), f3.cod()};
    return t.mode_apply(f1.row_major_operator(), f2.row_major_operator(),
                        f3.row_major_operator(), out);
}

} // namespace mmiso
