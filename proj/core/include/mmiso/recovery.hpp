#pragma once

#include <optional>

#include "mmiso/isotropy.hpp"
#include "mmiso/linmap.hpp"

namespace mmiso {

enum class RecoveredKind { Sandwich, TransposeSandwich };

/// Classified form of an invertible rank-one-preserving map on M_{m,n}:
/// A(x) = a*x*b, or (square case only) A(x) = a*x^t*b. a is normalized with
/// the scalar pushed into b.
struct RecoveredForm {
    RecoveredKind kind;
    Mat a, b;
};

/// Classifies an invertible map that sends rank-one matrices to rank-one
/// matrices. Probes the matrix-unit basis, factors each image, reads the
/// column/row-space pattern to pick the branch, assembles (a,b) from a
/// rank-one scalar grid, and verifies the form on the full basis before
/// returning. Throws NotRankOnePreservingError when any step refutes the
/// rank-one-preserver hypothesis.
RecoveredForm classify_rank1_preserver(const LinMap& A);

/// Result of recover_triple: B(y) = a*y*b, A(x) = b^{-1}*x*c, C(z) = a*z*c.
struct RecoveredTriple {
    Mat a, b, c; // a in GL_p, b in GL_n, c in GL_m
};

/// Recovers the sandwich factors of a multiplicative triple of invertible
/// maps A on M_{n,m}, B on M_{p,n}, C on M_{p,m} with B(y)*A(x) = C(y*x)
/// for all x, y (the isotropy condition of the composition map). The
/// hypothesis is checked on all basis pairs first; the recovered forms are
/// verified on all basis pairs before returning.
RecoveredTriple recover_triple(const LinMap& A, const LinMap& B, const LinMap& C);

/// Bilinear map f: X x Y -> Z between matrix spaces, dense coefficients
/// f[z-basis][x-basis][y-basis] in the column-major basis order of each space.
class BilinearMap {
public:
    BilinearMap(const FactorDims& x, const FactorDims& y, const FactorDims& z,
                const FieldSpec& field);

    /// The composition map phi(x,y) = y*x on M_{n,m} x M_{p,n} -> M_{p,m}.
    static BilinearMap composition_map(const Shape& s, const FieldSpec& f);

    const FactorDims& xdims() const { return x_; }
    const FactorDims& ydims() const { return y_; }
    const FactorDims& zdims() const { return z_; }
    const FieldSpec& field() const { return field_; }

    Scalar& coeff(int zi, int xi, int yi) { return c_[idx(zi, xi, yi)]; }
    const Scalar& coeff(int zi, int xi, int yi) const { return c_[idx(zi, xi, yi)]; }

    Mat eval(const Mat& x, const Mat& y) const;

    /// Action of (g1,g2,g3): f -> g3 . f . (g1^{-1} x g2^{-1}).
    BilinearMap transformed(const LinMap& g1, const LinMap& g2, const LinMap& g3) const;

    bool is_zero() const;
    friend bool operator==(const BilinearMap& a, const BilinearMap& b) {
        return a.x_ == b.x_ && a.y_ == b.y_ && a.z_ == b.z_ && a.c_ == b.c_;
    }

private:
    std::size_t idx(int zi, int xi, int yi) const {
        return (static_cast<std::size_t>(zi) * x_.dim() + xi) * y_.dim() + yi;
    }

    FactorDims x_, y_, z_;
    FieldSpec field_;
    std::vector<Scalar> c_;
};

/// Structure tensor of f in X* (x) Y* (x) Z, with the duals of the matrix
/// spaces identified via the trace pairing (e_{ij} <-> e_{ji}). For the
/// composition map of shape (m,n,p) the result lives in the <m,n,p> factor
/// pattern and equals mmt_tensor.
Tensor3 structure_tensor(const BilinearMap& f);

/// f(A x, B y) == C f(x, y) on all basis pairs.
bool delta_membership(const LinMap& A, const LinMap& B, const LinMap& C, const BilinearMap& f);

/// The decomposable map A^v (x) B^v (x) C on the tensor space of the
/// structure tensor, plus its group-element form when the triple is
/// multiplicative for the composition map.
struct InducedTensorMap {
    LinMap f1, f2, f3; // on X*, Y*, Z
    std::optional<IsotropyElement> element;
};

InducedTensorMap gamma_from_delta(const LinMap& A, const LinMap& B, const LinMap& C);

/// The symmetry R(g) = (A,B,C) of the composition map: A(x) = g2 x g1^{-1},
/// B(y) = g3 y g2^{-1}, C(z) = g3 z g1^{-1}, for g1 in GL_m, g2 in GL_n,
/// g3 in GL_p.
struct DeltaTriple {
    LinMap A, B, C;
};

DeltaTriple composition_symmetry(const Shape& s, const Mat& g1, const Mat& g2, const Mat& g3);

/// Round trip certifying the constructive recovery: builds the sandwich map
/// of (a,b,c) as a raw operator on the tensor space, splits it into factor
/// maps, dualizes factors 1-2 via the trace pairing, recovers the triple,
/// and compares the reconstructed element with small_element(a,b,c) modulo
/// scalars.
bool sandwich_recovery_roundtrip(const Shape& s, const Mat& a, const Mat& b, const Mat& c);

} // namespace mmiso
