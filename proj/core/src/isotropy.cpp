#include "mmiso/isotropy.hpp"

#include <array>
#include <sstream>

namespace mmiso {

namespace {

constexpr int kPermCount = 6;

// perm_table[p][i] = slot that factor i is sent to.
constexpr std::array<std::array<int, 3>, kPermCount> perm_table = {{
    {0, 1, 2}, // id
    {1, 0, 2}, // (12)
    {2, 1, 0}, // (13)
    {0, 2, 1}, // (23)
    {1, 2, 0}, // (123): 1->2->3->1
    {2, 0, 1}, // (132)
}};

constexpr std::array<const char*, kPermCount> perm_names = {"id", "12", "13", "23", "123", "132"};

Perm3 perm_from_table(const std::array<int, 3>& t) {
    for (int p = 0; p < kPermCount; ++p)
        if (perm_table[p] == t) return static_cast<Perm3>(p);
    throw Error("corrupt permutation table");
}

} // namespace

int perm_apply(Perm3 p, int i) { return perm_table[static_cast<int>(p)][i]; }

Perm3 perm_compose(Perm3 s, Perm3 t) {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = perm_apply(s, perm_apply(t, i));
    return perm_from_table(r);
}

Perm3 perm_inverse(Perm3 p) {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[perm_apply(p, i)] = i;
    return perm_from_table(r);
}

bool perm_is_transposition(Perm3 p) {
    return p == Perm3::t12 || p == Perm3::t13 || p == Perm3::t23;
}

bool perm_admissible(Perm3 p, const Shape& s) {
    switch (p) {
        case Perm3::id: return true;
        case Perm3::t23: return s.m == s.n;
        case Perm3::t12: return s.m == s.p;
        case Perm3::t13: return s.n == s.p;
        case Perm3::c123:
        case Perm3::c132: return s.m == s.n && s.n == s.p;
    }
    return false;
}

std::vector<Perm3> admissible_perms(const Shape& s) {
    std::vector<Perm3> out;
    for (int p = 0; p < kPermCount; ++p)
        if (perm_admissible(static_cast<Perm3>(p), s)) out.push_back(static_cast<Perm3>(p));
    return out;
}

const char* perm_name(Perm3 p) { return perm_names[static_cast<int>(p)]; }

std::optional<Perm3> perm_from_name(const std::string& name) {
    for (int p = 0; p < kPermCount; ++p)
        if (name == perm_names[p]) return static_cast<Perm3>(p);
    return std::nullopt;
}

IsotropyElement::IsotropyElement(const Shape& shape, Perm3 pi, Mat a, Mat b, Mat c)
    : shape_(shape), pi_(pi), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    if (shape.m == 1 && shape.n == 1 && shape.p == 1)
        throw DimensionMismatchError("group elements need (m,n,p) != (1,1,1)");
    if (!(a_.field() == b_.field()) || !(a_.field() == c_.field()))
        throw FieldMismatchError("element factor field mismatch");
    if (a_.rows() != shape.m || a_.cols() != shape.m || b_.rows() != shape.n ||
        b_.cols() != shape.n || c_.rows() != shape.p || c_.cols() != shape.p)
        throw DimensionMismatchError("element factor sizes must be (m,m),(n,n),(p,p)");
    if (!perm_admissible(pi, shape))
        throw InadmissiblePermutationError(std::string("permutation (") + perm_name(pi) +
                                           ") inadmissible for shape " + shape.str());
    if (!a_.is_invertible() || !b_.is_invertible() || !c_.is_invertible())
        throw NotInvertibleError("element factors must be invertible");
}

IsotropyElement small_element(const Shape& s, Mat a, Mat b, Mat c) {
    return IsotropyElement(s, Perm3::id, std::move(a), std::move(b), std::move(c));
}

IsotropyElement random_small_element(Rng& rng, const Shape& s, const FieldSpec& f) {
    return small_element(s, Mat::random_invertible(rng, s.m, f),
                         Mat::random_invertible(rng, s.n, f),
                         Mat::random_invertible(rng, s.p, f));
}

IsotropyElement random_element(Rng& rng, const Shape& s, const FieldSpec& f) {
    const std::vector<Perm3> perms = admissible_perms(s);
    const Perm3 pi = perms[static_cast<std::size_t>(rng.uniform(0, perms.size() - 1))];
    return IsotropyElement(s, pi, Mat::random_invertible(rng, s.m, f),
                           Mat::random_invertible(rng, s.n, f),
                           Mat::random_invertible(rng, s.p, f));
}

IsotropyElement rho_element(Perm3 pi, const Shape& s, const FieldSpec& f) {
    return IsotropyElement(s, pi, Mat::identity(s.m, f), Mat::identity(s.n, f),
                           Mat::identity(s.p, f));
}

IsotropyElement identity_element(const Shape& s, const FieldSpec& f) {
    return rho_element(Perm3::id, s, f);
}

namespace {

// Row-major composite operator of x -> l * x * r on M_{a,b}:
// op[(r,s),(i,j)] = l[r,i] * r[j,s].
Mat sandwich_operator(const Mat& left, const Mat& right) {
    const int a = left.rows(), b = right.cols();
    const int a0 = left.cols(), b0 = right.rows();
    Mat op(a * b, a0 * b0, left.field());
    for (int r = 0; r < a; ++r)
        for (int s = 0; s < b; ++s)
            for (int i = 0; i < a0; ++i)
                for (int j = 0; j < b0; ++j)
                    op.at(r * b + s, i * b0 + j) = left.at(r, i) * right.at(j, s);
    return op;
}

// Slot permutation / transposition scatter for an admissible pi.
Tensor3 permute_factors(Perm3 pi, const Tensor3& t) {
    if (pi == Perm3::id) return t;
    const bool tr = perm_is_transposition(pi);
    const Perm3 inv = perm_inverse(pi);
    const std::array<int, 3> src = {perm_apply(inv, 0), perm_apply(inv, 1), perm_apply(inv, 2)};
    const TensorDims& in = t.dims();
    TensorDims out_dims;
    for (int s = 0; s < 3; ++s)
        out_dims[s] = tr ? FactorDims{in[src[s]].cols, in[src[s]].rows} : in[src[s]];
    Tensor3 out(out_dims, t.field());
    std::array<int, 3> r{}, c{};
    for (r[0] = 0; r[0] < in[0].rows; ++r[0])
        for (c[0] = 0; c[0] < in[0].cols; ++c[0])
            for (r[1] = 0; r[1] < in[1].rows; ++r[1])
                for (c[1] = 0; c[1] < in[1].cols; ++c[1])
                    for (r[2] = 0; r[2] < in[2].rows; ++r[2])
                        for (c[2] = 0; c[2] < in[2].cols; ++c[2]) {
                            const Scalar& v = t.at(r[0], c[0], r[1], c[1], r[2], c[2]);
                            if (v.is_zero()) continue;
                            std::array<int, 3> rr{}, cc{};
                            for (int s = 0; s < 3; ++s) {
                                rr[s] = tr ? c[src[s]] : r[src[s]];
                                cc[s] = tr ? r[src[s]] : c[src[s]];
                            }
                            out.at(rr[0], cc[0], rr[1], cc[1], rr[2], cc[2]) = v;
                        }
    return out;
}

// Conjugation by the permutation part: rho_pi . T(a,b,c) . rho_pi^{-1}
// = T of the returned triple.
std::array<Mat, 3> conjugate_triple(Perm3 pi, const Mat& a, const Mat& b, const Mat& c) {
    switch (pi) {
        case Perm3::id: return {a, b, c};
        case Perm3::t23: return {b.contragredient(), a.contragredient(), c.contragredient()};
        case Perm3::t12: return {c.contragredient(), b.contragredient(), a.contragredient()};
        case Perm3::t13: return {a.contragredient(), c.contragredient(), b.contragredient()};
        case Perm3::c123: return {c, a, b};
        case Perm3::c132: return {b, c, a};
    }
    throw Error("unreachable");
}

} // namespace

Tensor3 apply(const IsotropyElement& g, const Tensor3& t) {
    if (!(g.field() == t.field()))
        throw FieldMismatchError("element/tensor field mismatch");
    if (mmt_dims(g.shape()) != t.dims())
        throw DimensionMismatchError("element/tensor shape mismatch");
    const Mat op1 = sandwich_operator(g.a(), g.b().inverse());
    const Mat op2 = sandwich_operator(g.b(), g.c().inverse());
    const Mat op3 = sandwich_operator(g.c(), g.a().inverse());
    return permute_factors(g.perm(), t.mode_apply(op1, op2, op3, t.dims()));
}

RankOneTriple apply_to_rank_one(const IsotropyElement& g, const RankOneTriple& r) {
    const Mat u = g.a() * r.u * g.b().inverse();
    const Mat v = g.b() * r.v * g.c().inverse();
    const Mat w = g.c() * r.w * g.a().inverse();
    const bool tr = perm_is_transposition(g.perm());
    const Perm3 inv = perm_inverse(g.perm());
    const std::array<const Mat*, 3> in = {&u, &v, &w};
    std::array<Mat, 3> out = {u, v, w};
    for (int s = 0; s < 3; ++s) {
        const Mat& f = *in[perm_apply(inv, s)];
        out[s] = tr ? f.transpose() : f;
    }
    return RankOneTriple{out[0], out[1], out[2]};
}

IsotropyElement compose(const IsotropyElement& g, const IsotropyElement& h) {
    if (!(g.shape() == h.shape()) || !(g.field() == h.field()))
        throw DimensionMismatchError("compose shape/field mismatch");
    // rho_g T_g rho_h T_h = rho_{g h} . (rho_h^{-1} T_g rho_h) . T_h
    const auto moved = conjugate_triple(perm_inverse(h.perm()), g.a(), g.b(), g.c());
    return IsotropyElement(g.shape(), perm_compose(g.perm(), h.perm()), moved[0] * h.a(),
                           moved[1] * h.b(), moved[2] * h.c());
}

IsotropyElement invert(const IsotropyElement& g) {
    const auto moved = conjugate_triple(g.perm(), g.a().inverse(), g.b().inverse(),
                                        g.c().inverse());
    return IsotropyElement(g.shape(), perm_inverse(g.perm()), moved[0], moved[1], moved[2]);
}

bool equal_mod_scalars(const IsotropyElement& g, const IsotropyElement& h) {
    if (!(g.shape() == h.shape()) || !(g.field() == h.field()))
        throw DimensionMismatchError("comparison shape/field mismatch");
    if (g.perm() != h.perm()) return false;
    return g.a().proportionality_to(h.a()).has_value() &&
           g.b().proportionality_to(h.b()).has_value() &&
           g.c().proportionality_to(h.c()).has_value();
}

IsotropyElement normalize(const IsotropyElement& g) {
    return IsotropyElement(g.shape(), g.perm(), g.a().normalized(), g.b().normalized(),
                           g.c().normalized());
}

std::string element_key(const IsotropyElement& g) {
    const IsotropyElement n = normalize(g);
    std::ostringstream os;
    os << perm_name(n.perm()) << '|' << n.a().key() << '|' << n.b().key() << '|' << n.c().key();
    return os.str();
}

bool is_isotropy(const IsotropyElement& g, const Tensor3& t) {
    return apply(g, t) == t;
}

bool kernel_test(const Mat& a, const Mat& b, const Mat& c) {
    if (!a.is_invertible() || !b.is_invertible() || !c.is_invertible())
        throw NotInvertibleError("kernel test expects an invertible triple");
    return a.is_scalar_matrix() && b.is_scalar_matrix() && c.is_scalar_matrix();
}

} // namespace mmiso
