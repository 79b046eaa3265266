#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmiso/tensor.hpp"

namespace mmiso {

/// Element of S3, acting on the three tensor factors.
enum class Perm3 : unsigned char { id, t12, t13, t23, c123, c132 };

/// Slot that factor i is sent to (0-based).
int perm_apply(Perm3 p, int i);
/// Function composition s after t (t acts first).
Perm3 perm_compose(Perm3 s, Perm3 t);
Perm3 perm_inverse(Perm3 p);
bool perm_is_transposition(Perm3 p);
/// Transpose-and-permute maps are well-defined only when the permuted factor
/// spaces coincide: (23) needs m=n, (12) needs m=p, (13) needs n=p,
/// 3-cycles need m=n=p.
bool perm_admissible(Perm3 p, const Shape& s);
std::vector<Perm3> admissible_perms(const Shape& s);
const char* perm_name(Perm3 p); // "id", "12", "13", "23", "123", "132"
std::optional<Perm3> perm_from_name(const std::string& name);

/// Group element rho_pi . T(a,b,c) acting on L = M_{m,n} (x) M_{n,p} (x) M_{p,m):
/// first the sandwich map x(x)y(x)z -> axb^{-1} (x) byc^{-1} (x) cza^{-1},
/// then the transpose-and-permute symmetry for pi. Stored in this one
/// canonical order; (m,n,p) = (1,1,1) is rejected.
class IsotropyElement {
public:
    IsotropyElement(const Shape& shape, Perm3 pi, Mat a, Mat b, Mat c);

    const Shape& shape() const { return shape_; }
    const FieldSpec& field() const { return a_.field(); }
    Perm3 perm() const { return pi_; }
    const Mat& a() const { return a_; }
    const Mat& b() const { return b_; }
    const Mat& c() const { return c_; }

private:
    Shape shape_;
    Perm3 pi_;
    Mat a_, b_, c_;
};

/// T(a,b,c) with trivial permutation part.
IsotropyElement small_element(const Shape& s, Mat a, Mat b, Mat c);
/// Random T(a,b,c) from rejection-sampled invertible factors.
IsotropyElement random_small_element(Rng& rng, const Shape& s, const FieldSpec& f);
/// Random element with a random admissible permutation part.
IsotropyElement random_element(Rng& rng, const Shape& s, const FieldSpec& f);
/// rho_pi with identity sandwich part; throws InadmissiblePermutationError.
IsotropyElement rho_element(Perm3 pi, const Shape& s, const FieldSpec& f);
IsotropyElement identity_element(const Shape& s, const FieldSpec& f);

/// Dense action on the tensor space.
Tensor3 apply(const IsotropyElement& g, const Tensor3& t);
/// Action restricted to a decomposable tensor, consistent with apply().
RankOneTriple apply_to_rank_one(const IsotropyElement& g, const RankOneTriple& r);

/// Group operation: apply(compose(g,h), t) == apply(g, apply(h, t)).
IsotropyElement compose(const IsotropyElement& g, const IsotropyElement& h);
IsotropyElement invert(const IsotropyElement& g);

/// Same map on L: equal permutation parts and factor matrices proportional
/// by nonzero scalars (independently per factor).
bool equal_mod_scalars(const IsotropyElement& g, const IsotropyElement& h);

/// Canonical representative: each of a, b, c scaled so its first nonzero
/// entry (row-major) is 1. Idempotent; two elements are equal_mod_scalars
/// iff their normalizations compare equal.
IsotropyElement normalize(const IsotropyElement& g);

/// Content key of the normalized element, usable for dedup sets.
std::string element_key(const IsotropyElement& g);

/// apply(g, t) == t exactly.
bool is_isotropy(const IsotropyElement& g, const Tensor3& t);

/// True iff T(a,b,c) is the identity map on L, i.e. a, b, c are all scalar
/// matrices. Inputs must be invertible.
bool kernel_test(const Mat& a, const Mat& b, const Mat& c);

} // namespace mmiso
