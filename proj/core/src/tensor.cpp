#include "mmiso/tensor.hpp"

namespace mmiso {

TensorDims mmt_dims(const Shape& s) {
    if (s.m < 1 || s.n < 1 || s.p < 1)
        throw DimensionMismatchError("shape components must be positive");
    return {FactorDims{s.m, s.n}, FactorDims{s.n, s.p}, FactorDims{s.p, s.m}};
}

Tensor3::Tensor3(const TensorDims& dims, const FieldSpec& field)
    : dims_(dims), field_(field) {
    std::size_t total = 1;
    for (const FactorDims& d : dims_) {
        if (d.rows < 1 || d.cols < 1)
            throw DimensionMismatchError("tensor factor dims must be positive");
        total *= static_cast<std::size_t>(d.dim());
    }
    c_.assign(total, Scalar::zero(field));
}

std::optional<Shape> Tensor3::mmt_shape() const {
    Shape s{dims_[0].rows, dims_[0].cols, dims_[1].cols};
    if (mmt_dims(s) == dims_) return s;
    return std::nullopt;
}

std::size_t Tensor3::index(int r1, int c1, int r2, int c2, int r3, int c3) const {
    std::size_t i = static_cast<std::size_t>(r1);
    i = i * dims_[0].cols + c1;
    i = i * dims_[1].rows + r2;
    i = i * dims_[1].cols + c2;
    i = i * dims_[2].rows + r3;
    i = i * dims_[2].cols + c3;
    return i;
}

Tensor3 Tensor3::operator+(const Tensor3& o) const {
    if (dims_ != o.dims_) throw DimensionMismatchError("tensor sum shape mismatch");
    Tensor3 r(dims_, field_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

Tensor3 Tensor3::operator-(const Tensor3& o) const {
    if (dims_ != o.dims_) throw DimensionMismatchError("tensor difference shape mismatch");
    Tensor3 r(dims_, field_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

bool operator==(const Tensor3& a, const Tensor3& b) {
    if (a.dims_ != b.dims_) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

bool Tensor3::is_zero() const {
    for (const Scalar& s : c_)
        if (!s.is_zero()) return false;
    return true;
}

std::size_t Tensor3::nonzero_count() const {
    std::size_t n = 0;
    for (const Scalar& s : c_)
        if (!s.is_zero()) ++n;
    return n;
}

Tensor3 Tensor3::mode_apply(const Mat& op1, const Mat& op2, const Mat& op3,
                            const TensorDims& out_dims) const {
    const int d1 = dims_[0].dim(), d2 = dims_[1].dim(), d3 = dims_[2].dim();
    const int e1 = out_dims[0].dim(), e2 = out_dims[1].dim(), e3 = out_dims[2].dim();
    if (op1.rows() != e1 || op1.cols() != d1 || op2.rows() != e2 || op2.cols() != d2 ||
        op3.rows() != e3 || op3.cols() != d3)
        throw DimensionMismatchError("mode operator shape mismatch");

    const Scalar zero = Scalar::zero(field_);
    // pass 1: contract factor 1
    std::vector<Scalar> t1(static_cast<std::size_t>(e1) * d2 * d3, zero);
    for (int i = 0; i < e1; ++i)
        for (int i0 = 0; i0 < d1; ++i0) {
            const Scalar& w = op1.at(i, i0);
            if (w.is_zero()) continue;
            const std::size_t src = static_cast<std::size_t>(i0) * d2 * d3;
            const std::size_t dst = static_cast<std::size_t>(i) * d2 * d3;
            for (int jk = 0; jk < d2 * d3; ++jk)
                t1[dst + jk] += w * c_[src + jk];
        }
    // pass 2: contract factor 2
    std::vector<Scalar> t2(static_cast<std::size_t>(e1) * e2 * d3, zero);
    for (int j = 0; j < e2; ++j)
        for (int j0 = 0; j0 < d2; ++j0) {
            const Scalar& w = op2.at(j, j0);
            if (w.is_zero()) continue;
            for (int i = 0; i < e1; ++i) {
                const std::size_t src = (static_cast<std::size_t>(i) * d2 + j0) * d3;
                const std::size_t dst = (static_cast<std::size_t>(i) * e2 + j) * d3;
                for (int k = 0; k < d3; ++k)
                    t2[dst + k] += w * t1[src + k];
            }
        }
    // pass 3: contract factor 3
    Tensor3 out(out_dims, field_);
    for (int k = 0; k < e3; ++k)
        for (int k0 = 0; k0 < d3; ++k0) {
            const Scalar& w = op3.at(k, k0);
            if (w.is_zero()) continue;
            for (int ij = 0; ij < e1 * e2; ++ij)
                out.c_[static_cast<std::size_t>(ij) * e3 + k] +=
                    w * t2[static_cast<std::size_t>(ij) * d3 + k0];
        }
    return out;
}

Tensor3 mmt_tensor(const Shape& s, const FieldSpec& f) {
    Tensor3 t(mmt_dims(s), f);
    const Scalar one = Scalar::one(f);
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < s.n; ++j)
            for (int k = 0; k < s.p; ++k)
                t.at(i, j, j, k, k, i) = one;
    return t;
}

Tensor2::Tensor2(Mat coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != coeffs_.cols())
        throw DimensionMismatchError("Tensor2 coefficient matrix must be square");
}

Tensor2 Tensor2::identity(int l, const FieldSpec& f) {
    return Tensor2(Mat::identity(l, f));
}

Tensor2 identity_tensor(int l, const FieldSpec& f) { return Tensor2::identity(l, f); }

Tensor2 apply_gl_action(const Mat& g, const Tensor2& d) {
    if (g.rows() != d.size())
        throw DimensionMismatchError("GL action size mismatch");
    return Tensor2(g * d.coeffs() * g.inverse());
}

Tensor3 cyclic_contraction(const Tensor2& dm, const Tensor2& dn, const Tensor2& dp) {
    const FieldSpec& f = dm.coeffs().field();
    if (!(dn.coeffs().field() == f) || !(dp.coeffs().field() == f))
        throw FieldMismatchError("cyclic contraction field mismatch");
    const int m = dm.size(), n = dn.size(), p = dp.size();
    Tensor3 out(mmt_dims(Shape{m, n, p}), f);
    // e_i e^{i'} (x) e_j e^{j'} (x) e_k e^{k'} maps to the basis element
    // e_{i j'} (x) e_{j k'} (x) e_{k i'}; each target index is hit once.
    for (int r1 = 0; r1 < m; ++r1)
        for (int c1 = 0; c1 < n; ++c1)
            for (int r2 = 0; r2 < n; ++r2)
                for (int c2 = 0; c2 < p; ++c2)
                    for (int r3 = 0; r3 < p; ++r3)
                        for (int c3 = 0; c3 < m; ++c3)
                            out.at(r1, c1, r2, c2, r3, c3) =
                                dm.coeffs().at(r1, c3) * dn.coeffs().at(r2, c1) *
                                dp.coeffs().at(r3, c2);
    return out;
}

Tensor3 rank_one_tensor(const RankOneTriple& t) {
    const FieldSpec& f = t.u.field();
    TensorDims dims{FactorDims{t.u.rows(), t.u.cols()},
                    FactorDims{t.v.rows(), t.v.cols()},
                    FactorDims{t.w.rows(), t.w.cols()}};
    Tensor3 out(dims, f);
    for (int r1 = 0; r1 < t.u.rows(); ++r1)
        for (int c1 = 0; c1 < t.u.cols(); ++c1) {
            const Scalar& a = t.u.at(r1, c1);
            if (a.is_zero()) continue;
            for (int r2 = 0; r2 < t.v.rows(); ++r2)
                for (int c2 = 0; c2 < t.v.cols(); ++c2) {
                    const Scalar ab = a * t.v.at(r2, c2);
                    if (ab.is_zero()) continue;
                    for (int r3 = 0; r3 < t.w.rows(); ++r3)
                        for (int c3 = 0; c3 < t.w.cols(); ++c3)
                            out.at(r1, c1, r2, c2, r3, c3) = ab * t.w.at(r3, c3);
                }
        }
    return out;
}

void Decomposition::validate() const {
    const TensorDims want = mmt_dims(shape);
    for (const RankOneTriple& t : terms) {
        if (!(t.u.field() == field) || !(t.v.field() == field) || !(t.w.field() == field))
            throw FieldMismatchError("decomposition term field mismatch");
        if (t.u.rows() != want[0].rows || t.u.cols() != want[0].cols ||
            t.v.rows() != want[1].rows || t.v.cols() != want[1].cols ||
            t.w.rows() != want[2].rows || t.w.cols() != want[2].cols)
            throw DimensionMismatchError("decomposition term shape mismatch");
        if (t.u.is_zero() || t.v.is_zero() || t.w.is_zero())
            throw Error("decomposition term has a zero factor");
    }
}

Tensor3 decomposition_sum(const Decomposition& d) {
    d.validate();
    Tensor3 acc(mmt_dims(d.shape), d.field);
    for (const RankOneTriple& t : d.terms)
        acc = acc + rank_one_tensor(t);
    return acc;
}

namespace {

Mat mat_to_field(const Mat& m, const FieldSpec& f) {
    Mat r(m.rows(), m.cols(), f);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            r.at(i, j) = m.at(i, j).to_field(f);
    return r;
}

} // namespace

Decomposition decomposition_to_field(const Decomposition& d, const FieldSpec& f) {
    Decomposition out;
    out.shape = d.shape;
    out.field = f;
    out.terms.reserve(d.terms.size());
    for (const RankOneTriple& t : d.terms)
        out.terms.push_back(RankOneTriple{mat_to_field(t.u, f), mat_to_field(t.v, f),
                                          mat_to_field(t.w, f)});
    out.validate(); // a factor may reduce to zero mod q
    return out;
}

bool decomposable_equal(const RankOneTriple& s, const RankOneTriple& r) {
    auto l1 = s.u.proportionality_to(r.u);
    if (!l1 || l1->is_zero()) return false;
    auto l2 = s.v.proportionality_to(r.v);
    if (!l2 || l2->is_zero()) return false;
    auto l3 = s.w.proportionality_to(r.w);
    if (!l3 || l3->is_zero()) return false;
    return (*l1 * *l2 * *l3).is_one();
}

namespace {

// Rank of the span of {act(basis of M_{r,c})} inside a matrix space,
// with images flattened row-major into the rows of a stacked matrix.
template <typename F>
int span_rank(int basis_rows, int basis_cols, int img_rows, int img_cols,
              const FieldSpec& field, F&& act) {
    Mat stacked(basis_rows * basis_cols, img_rows * img_cols, field);
    int row = 0;
    for (int i = 0; i < basis_rows; ++i)
        for (int j = 0; j < basis_cols; ++j, ++row) {
            Mat img = act(Mat::unit(basis_rows, basis_cols, i, j, field));
            for (int r = 0; r < img_rows; ++r)
                for (int c = 0; c < img_cols; ++c)
                    stacked.at(row, r * img_cols + c) = img.at(r, c);
        }
    return stacked.rank();
}

} // namespace

int left_span_dim(const Mat& x, const Shape& s) {
    if (x.rows() != s.m || x.cols() != s.n)
        throw DimensionMismatchError("left_span_dim expects x in M_{m,n}");
    return span_rank(s.n, s.p, s.m, s.p, x.field(), [&](const Mat& y) { return x * y; });
}

int right_span_dim(const Mat& x, const Shape& s) {
    if (x.rows() != s.n || x.cols() != s.p)
        throw DimensionMismatchError("right_span_dim expects x in M_{n,p}");
    return span_rank(s.m, s.n, s.m, s.p, x.field(), [&](const Mat& y) { return y * x; });
}

} // namespace mmiso
