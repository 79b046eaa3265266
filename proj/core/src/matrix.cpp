#include "mmiso/matrix.hpp"

#include <sstream>

namespace mmiso {

Mat::Mat(int rows, int cols, const FieldSpec& field)
    : rows_(rows), cols_(cols), field_(field),
      a_(static_cast<std::size_t>(rows) * cols, Scalar::zero(field)) {
    if (rows < 1 || cols < 1)
        throw DimensionMismatchError("matrix dimensions must be positive");
}

Mat Mat::identity(int n, const FieldSpec& f) {
    Mat m(n, n, f);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::unit(int rows, int cols, int i, int j, const FieldSpec& f) {
    Mat m(rows, cols, f);
    m.at(i, j) = Scalar::one(f);
    return m;
}

Mat Mat::diagonal_ones(int n, int r, const FieldSpec& f) {
    Mat m(n, n, f);
    for (int i = 0; i < r; ++i) m.at(i, i) = Scalar::one(f);
    return m;
}

Mat Mat::random(Rng& rng, int rows, int cols, const FieldSpec& f) {
    Mat m(rows, cols, f);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = rng.scalar(f);
    return m;
}

Mat Mat::random_invertible(Rng& rng, int n, const FieldSpec& f) {
    for (;;) {
        Mat m = random(rng, n, n, f);
        if (m.is_invertible()) return m;
    }
}

void Mat::require_compatible(const Mat& o) const {
    if (!(field_ == o.field_))
        throw FieldMismatchError("matrix field mismatch");
}

Mat Mat::operator*(const Mat& o) const {
    require_compatible(o);
    if (cols_ != o.rows_)
        throw DimensionMismatchError("matrix product shape mismatch");
    Mat r(rows_, o.cols_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    require_compatible(o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix sum shape mismatch");
    Mat r(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    require_compatible(o);
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix difference shape mismatch");
    Mat r(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

Mat Mat::scaled(const Scalar& s) const {
    Mat r(rows_, cols_, field_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_, field_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            r.at(j, i) = at(i, j);
    return r;
}

Mat Mat::inverse() const {
    if (rows_ != cols_)
        throw NotInvertibleError("inverse of a non-square matrix");
    const int n = rows_;
    Mat work(*this);
    Mat inv = identity(n, field_);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (!work.at(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0) throw NotInvertibleError("singular matrix");
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(work.at(pivot, j), work.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        const Scalar d = work.at(col, col).inverse();
        for (int j = 0; j < n; ++j) {
            work.at(col, j) *= d;
            inv.at(col, j) *= d;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || work.at(i, col).is_zero()) continue;
            const Scalar f = work.at(i, col);
            for (int j = 0; j < n; ++j) {
                work.at(i, j) -= f * work.at(col, j);
                inv.at(i, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

Mat Mat::contragredient() const {
    return transpose().inverse();
}

int Mat::rank() const {
    Mat work(*this);
    int rank = 0;
    for (int col = 0; col < cols_ && rank < rows_; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows_; ++i)
            if (!work.at(i, col).is_zero()) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = col; j < cols_; ++j)
                std::swap(work.at(pivot, j), work.at(rank, j));
        const Scalar d = work.at(rank, col).inverse();
        for (int j = col; j < cols_; ++j) work.at(rank, j) *= d;
        for (int i = rank + 1; i < rows_; ++i) {
            if (work.at(i, col).is_zero()) continue;
            const Scalar f = work.at(i, col);
            for (int j = col; j < cols_; ++j)
                work.at(i, j) -= f * work.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

bool Mat::is_zero() const {
    for (const Scalar& s : a_)
        if (!s.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    return true;
}

bool Mat::is_scalar_matrix() const {
    if (rows_ != cols_) return false;
    const Scalar& d = at(0, 0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (i == j ? at(i, j) != d : !at(i, j).is_zero()) return false;
    return true;
}

std::optional<Scalar> Mat::first_nonzero() const {
    for (const Scalar& s : a_)
        if (!s.is_zero()) return s;
    return std::nullopt;
}

Mat Mat::normalized() const {
    auto lead = first_nonzero();
    if (!lead) return *this;
    return scaled(lead->inverse());
}

std::optional<Scalar> Mat::proportionality_to(const Mat& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_ || !(field_ == other.field_))
        return std::nullopt;
    std::size_t lead = a_.size();
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!a_[i].is_zero()) { lead = i; break; }
    if (lead == a_.size()) return std::nullopt; // zero matrix: no well-defined factor
    const Scalar lambda = other.a_[lead] / a_[lead];
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (other.a_[i] != a_[i] * lambda) return std::nullopt;
    return lambda;
}

bool operator==(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    a.require_compatible(b);
    for (std::size_t i = 0; i < a.a_.size(); ++i)
        if (a.a_[i] != b.a_[i]) return false;
    return true;
}

std::string Mat::key() const {
    std::ostringstream os;
    os << rows_ << ' ' << cols_;
    for (const Scalar& s : a_) os << ' ' << s.str();
    return os.str();
}

Scalar trace_pairing(const Mat& x, const Mat& y) {
    if (!(x.field() == y.field()))
        throw FieldMismatchError("trace pairing field mismatch");
    if (x.rows() != y.cols() || x.cols() != y.rows())
        throw DimensionMismatchError("trace pairing needs x in M_{a,b}, y in M_{b,a}");
    Scalar acc = Scalar::zero(x.field());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            acc += x.at(i, j) * y.at(j, i);
    return acc;
}

} // namespace mmiso
