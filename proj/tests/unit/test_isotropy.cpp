#include <doctest.h>

#include "mmiso/isotropy.hpp"

using namespace mmiso;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime_field(5);

Tensor3 random_tensor(Rng& rng, const Shape& s, const FieldSpec& f) {
    Tensor3 t(mmt_dims(s), f);
    const int total = mmt_dims(s)[0].dim() * mmt_dims(s)[1].dim() * mmt_dims(s)[2].dim();
    for (int i = 0; i < total; ++i) t.raw_at(static_cast<std::size_t>(i)) = rng.scalar(f);
    return t;
}

RankOneTriple random_rank_one(Rng& rng, const Shape& s, const FieldSpec& f) {
    for (;;) {
        Mat u = Mat::random(rng, s.m, s.n, f);
        Mat v = Mat::random(rng, s.n, s.p, f);
        Mat w = Mat::random(rng, s.p, s.m, f);
        if (!u.is_zero() && !v.is_zero() && !w.is_zero())
            return RankOneTriple{std::move(u), std::move(v), std::move(w)};
    }
}

} // namespace

TEST_CASE("S3 machinery") {
    // the table is a faithful S3:6 elements, homomorphic composition
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            const Perm3 pa = static_cast<Perm3>(a), pb = static_cast<Perm3>(b);
            const Perm3 ab = perm_compose(pa, pb);
            for (int i = 0; i < 3; ++i)
                CHECK(perm_apply(ab, i) == perm_apply(pa, perm_apply(pb, i)));
            CHECK(perm_compose(pa, perm_inverse(pa)) == Perm3::id);
        }
    CHECK(perm_compose(Perm3::t12, Perm3::t23) == Perm3::c123);
    CHECK(perm_compose(Perm3::t23, Perm3::t12) == Perm3::c132);
    CHECK(perm_inverse(Perm3::c123) == Perm3::c132);
    CHECK(*perm_from_name("132") == Perm3::c132);
    CHECK(perm_from_name("21") == std::nullopt);
}

TEST_CASE("permutation admissibility by shape") {
    CHECK(admissible_perms(Shape{2, 3, 4}) == std::vector<Perm3>{Perm3::id});
    CHECK(admissible_perms(Shape{2, 2, 3}) == std::vector<Perm3>{Perm3::id, Perm3::t23});
    CHECK(admissible_perms(Shape{2, 3, 2}) == std::vector<Perm3>{Perm3::id, Perm3::t12});
    CHECK(admissible_perms(Shape{3, 2, 2}) == std::vector<Perm3>{Perm3::id, Perm3::t13});
    CHECK(admissible_perms(Shape{2, 2, 2}).size() == 6);
    CHECK_THROWS_AS(rho_element(Perm3::t23, Shape{2, 3, 2}, Q), InadmissiblePermutationError);
    CHECK_THROWS_AS(rho_element(Perm3::c123, Shape{2, 2, 3}, Q), InadmissiblePermutationError);
}

TEST_CASE("element construction errors") {
    const Shape s{2, 2, 2};
    CHECK_THROWS_AS(small_element(s, Mat(2, 2, Q), Mat::identity(2, Q), Mat::identity(2, Q)),
                    NotInvertibleError);
    CHECK_THROWS_AS(small_element(Shape{1, 1, 1}, Mat::identity(1, Q), Mat::identity(1, Q),
                                  Mat::identity(1, Q)),
                    DimensionMismatchError);
    CHECK_THROWS_AS(small_element(s, Mat::identity(3, Q), Mat::identity(2, Q),
                                  Mat::identity(2, Q)),
                    DimensionMismatchError);
}

TEST_CASE("sandwich maps fix the multiplication tensor") {
    Rng rng(21);
    for (const Shape s : {Shape{2, 2, 2}, Shape{2, 3, 4}, Shape{1, 2, 2}, Shape{3, 3, 3}})
        for (const FieldSpec f : {Q, FieldSpec::prime_field(2), F5}) {
            const Tensor3 t = mmt_tensor(s, f);
            for (int it = 0; it < 20; ++it)
                CHECK(is_isotropy(random_small_element(rng, s, f), t));
        }
}

TEST_CASE("identity element and scalar kernel act trivially") {
    const Shape s{2, 3, 4};
    Rng rng(22);
    const Tensor3 r = random_tensor(rng, s, Q);
    CHECK(apply(identity_element(s, Q), r) == r);
    const IsotropyElement lam = small_element(
        s, Mat::identity(2, Q).scaled(Scalar::of_int(Q, 5)),
        Mat::identity(3, Q).scaled(Scalar::of_fraction(Q, -2, 3)),
        Mat::identity(4, Q).scaled(Scalar::of_int(Q, 7)));
    CHECK(apply(lam, r) == r);
}

TEST_CASE("transpose symmetries fix the tensor and square to the identity") {
    for (const FieldSpec f : {Q, F5}) {
        const Shape s{2, 2, 3};
        const Tensor3 t = mmt_tensor(s, f);
        const IsotropyElement r23 = rho_element(Perm3::t23, s, f);
        CHECK(is_isotropy(r23, t));
        CHECK(equal_mod_scalars(compose(r23, r23), identity_element(s, f)));

        const Shape c{3, 3, 3};
        const Tensor3 tc = mmt_tensor(c, f);
        for (Perm3 pi : admissible_perms(c)) {
            CHECK(is_isotropy(rho_element(pi, c, f), tc));
        }
        const IsotropyElement r123 = rho_element(Perm3::c123, c, f);
        CHECK(equal_mod_scalars(compose(r123, compose(r123, r123)), identity_element(c, f)));

        // one factor of dimension one still admits the matching swap
        const Shape w{1, 2, 2};
        CHECK(is_isotropy(rho_element(Perm3::t13, w, f), mmt_tensor(w, f)));
    }
}

TEST_CASE("rho action on rank-one triples") {
    const Shape s{2, 2, 2};
    Rng rng(23);
    const RankOneTriple r = random_rank_one(rng, s, Q);
    const RankOneTriple img = apply_to_rank_one(rho_element(Perm3::t23, s, Q), r);
    CHECK(img.u == r.u.transpose());
    CHECK(img.v == r.w.transpose());
    CHECK(img.w == r.v.transpose());
    const RankOneTriple rot = apply_to_rank_one(rho_element(Perm3::c123, s, Q), r);
    CHECK(rot.u == r.w);
    CHECK(rot.v == r.u);
    CHECK(rot.w == r.v);
}

TEST_CASE("rank-one action is consistent with the dense action") {
    Rng rng(24);
    for (const Shape s : {Shape{2, 2, 2}, Shape{2, 3, 2}, Shape{3, 3, 3}})
        for (const FieldSpec f : {Q, F5})
            for (int it = 0; it < 25; ++it) {
                const IsotropyElement g = random_element(rng, s, f);
                const RankOneTriple r = random_rank_one(rng, s, f);
                CHECK(rank_one_tensor(apply_to_rank_one(g, r)) == apply(g, rank_one_tensor(r)));
            }
}

TEST_CASE("composition is a homomorphism on tensors") {
    Rng rng(25);
    for (const Shape s : {Shape{2, 2, 2}, Shape{2, 2, 3}})
        for (const FieldSpec f : {Q, F5}) {
            const Tensor3 t = mmt_tensor(s, f);
            for (int it = 0; it < 20; ++it) {
                const IsotropyElement g = random_element(rng, s, f);
                const IsotropyElement h = random_element(rng, s, f);
                CHECK(apply(compose(g, h), t) == apply(g, apply(h, t)));
                const Tensor3 r = random_tensor(rng, s, f);
                CHECK(apply(compose(g, h), r) == apply(g, apply(h, r)));
            }
        }
}

TEST_CASE("composition examples") {
    const Shape s{2, 2, 2};
    Rng rng(26);
    const IsotropyElement g = random_element(rng, s, Q);
    CHECK(element_key(compose(g, identity_element(s, Q))) == element_key(g));
    CHECK(compose(rho_element(Perm3::t12, s, Q), rho_element(Perm3::t23, s, Q)).perm() ==
          Perm3::c123);
}

TEST_CASE("composition is associative exactly in canonical form") {
    // pushing the sandwich part through the permutation part is functorial,
    // so both association orders give identical factor matrices
    Rng rng(127);
    for (const Shape s : {Shape{2, 2, 2}, Shape{2, 2, 3}, Shape{2, 3, 2}})
        for (int it = 0; it < 20; ++it) {
            const IsotropyElement g = random_element(rng, s, F5);
            const IsotropyElement h = random_element(rng, s, F5);
            const IsotropyElement k = random_element(rng, s, F5);
            const IsotropyElement l = compose(compose(g, h), k);
            const IsotropyElement r = compose(g, compose(h, k));
            CHECK(l.perm() == r.perm());
            CHECK(l.a() == r.a());
            CHECK(l.b() == r.b());
            CHECK(l.c() == r.c());
        }
}

TEST_CASE("associativity and inverses modulo scalars") {
    Rng rng(27);
    for (const Shape s : {Shape{2, 2, 2}, Shape{3, 2, 2}})
        for (const FieldSpec f : {Q, F5})
            for (int it = 0; it < 20; ++it) {
                const IsotropyElement g = random_element(rng, s, f);
                const IsotropyElement h = random_element(rng, s, f);
                const IsotropyElement k = random_element(rng, s, f);
                CHECK(equal_mod_scalars(compose(compose(g, h), k), compose(g, compose(h, k))));
                CHECK(equal_mod_scalars(compose(g, invert(g)), identity_element(s, f)));
                CHECK(equal_mod_scalars(compose(invert(g), g), identity_element(s, f)));
            }
    const IsotropyElement r23 = rho_element(Perm3::t23, Shape{2, 2, 3}, Q);
    CHECK(element_key(invert(r23)) == element_key(r23));
    const IsotropyElement g = random_small_element(rng, Shape{2, 2, 2}, Q);
    const IsotropyElement ginv = invert(g);
    CHECK(ginv.a() == g.a().inverse());
    CHECK(ginv.b() == g.b().inverse());
    CHECK(ginv.c() == g.c().inverse());
}

TEST_CASE("conjugation relations") {
    Rng rng(28);
    for (int n : {2, 3})
        for (const FieldSpec f : {Q, F5}) {
            const Shape s{n, n, n};
            for (int it = 0; it < 20; ++it) {
                const Mat a = Mat::random_invertible(rng, n, f);
                const Mat b = Mat::random_invertible(rng, n, f);
                const Mat c = Mat::random_invertible(rng, n, f);
                const IsotropyElement t = small_element(s, a, b, c);
                auto conj = [&](Perm3 pi) {
                    const IsotropyElement rho = rho_element(pi, s, f);
                    return compose(rho, compose(t, invert(rho)));
                };
                CHECK(element_key(conj(Perm3::t23)) ==
                      element_key(small_element(s, b.contragredient(), a.contragredient(),
                                                c.contragredient())));
                CHECK(element_key(conj(Perm3::t12)) ==
                      element_key(small_element(s, c.contragredient(), b.contragredient(),
                                                a.contragredient())));
                CHECK(element_key(conj(Perm3::t13)) ==
                      element_key(small_element(s, a.contragredient(), c.contragredient(),
                                                b.contragredient())));
                CHECK(element_key(conj(Perm3::c123)) == element_key(small_element(s, c, a, b)));
                CHECK(element_key(conj(Perm3::c132)) == element_key(small_element(s, b, c, a)));
            }
        }
}

TEST_CASE("equality modulo scalars") {
    const Shape s{2, 2, 2};
    Rng rng(29);
    const Mat a = Mat::random_invertible(rng, 2, Q);
    const Mat b = Mat::random_invertible(rng, 2, Q);
    const Mat c = Mat::random_invertible(rng, 2, Q);
    const IsotropyElement t1 = small_element(s, a, b, c);
    const IsotropyElement t2 = small_element(s, a.scaled(Scalar::of_int(Q, 2)),
                                             b.scaled(Scalar::of_int(Q, 3)), c);
    CHECK(equal_mod_scalars(t1, t2));
    CHECK(equal_mod_scalars(t1, t1));
    CHECK(!equal_mod_scalars(identity_element(s, Q), rho_element(Perm3::t23, s, Q)));
    // scalar-rescaled elements give the same map on tensors
    const Tensor3 r = random_tensor(rng, s, Q);
    CHECK(apply(t1, r) == apply(t2, r));
}

TEST_CASE("normalize is canonical") {
    Rng rng(30);
    const Shape s{2, 3, 2};
    for (int it = 0; it < 100; ++it) {
        const IsotropyElement g = random_element(rng, s, Q);
        const IsotropyElement n = normalize(g);
        CHECK(equal_mod_scalars(g, n));
        CHECK(element_key(n) == element_key(g));
        CHECK(n.a().first_nonzero()->is_one());
        CHECK(n.b().first_nonzero()->is_one());
        CHECK(n.c().first_nonzero()->is_one());
        const IsotropyElement nn = normalize(n);
        CHECK((nn.a() == n.a() && nn.b() == n.b() && nn.c() == n.c()));
    }
}

TEST_CASE("isotropy membership check") {
    const Shape s{2, 2, 2};
    const Tensor3 t = mmt_tensor(s, Q);
    Rng rng(31);
    CHECK(is_isotropy(random_small_element(rng, s, Q), t));
    CHECK(is_isotropy(rho_element(Perm3::t23, s, Q), t));
    // perturbing the tensor breaks membership for a non-kernel element
    Mat diag(2, 2, Q);
    diag.at(0, 0) = Scalar::of_int(Q, 1);
    diag.at(1, 1) = Scalar::of_int(Q, 2);
    const IsotropyElement g = small_element(s, diag, Mat::identity(2, Q), Mat::identity(2, Q));
    Tensor3 perturbed = t;
    perturbed.at(0, 1, 1, 0, 0, 1) = perturbed.at(0, 1, 1, 0, 0, 1) + Scalar::of_int(Q, 1);
    CHECK(is_isotropy(g, t));
    CHECK(!is_isotropy(g, perturbed));
}

TEST_CASE("kernel test") {
    const FieldSpec f = Q;
    CHECK(kernel_test(Mat::identity(2, f).scaled(Scalar::of_int(f, 3)),
                      Mat::identity(3, f).scaled(Scalar::of_int(f, -2)),
                      Mat::identity(4, f).scaled(Scalar::of_fraction(f, 1, 5))));
    CHECK(kernel_test(Mat::identity(2, f), Mat::identity(2, f), Mat::identity(2, f)));
    Mat shear(2, 2, f);
    shear.at(0, 0) = shear.at(0, 1) = shear.at(1, 1) = Scalar::of_int(f, 1);
    CHECK(!kernel_test(shear, Mat::identity(2, f), Mat::identity(2, f)));
    // the shear moves a basis tensor
    const Shape s{2, 2, 2};
    const IsotropyElement g =
        small_element(s, shear, Mat::identity(2, f), Mat::identity(2, f));
    Tensor3 basis(mmt_dims(s), f);
    basis.at(0, 1, 0, 0, 0, 0) = Scalar::of_int(f, 1);
    CHECK(apply(g, basis) != basis);
    CHECK_THROWS_AS(kernel_test(Mat(2, 2, f), Mat::identity(2, f), Mat::identity(2, f)),
                    NotInvertibleError);
}

TEST_CASE("semidirect structure: stripping the permutation part") {
    Rng rng(32);
    for (const Shape s : {Shape{2, 2, 2}, Shape{2, 2, 3}})
        for (int it = 0; it < 20; ++it) {
            const IsotropyElement g = random_element(rng, s, Q);
            const IsotropyElement stripped = compose(g, invert(rho_element(g.perm(), s, Q)));
            CHECK(stripped.perm() == Perm3::id);
            const IsotropyElement h = random_element(rng, s, Q);
            CHECK(compose(g, h).perm() == perm_compose(g.perm(), h.perm()));
        }
    // for m=n=p the rho elements compose exactly by the S3 table
    const Shape c{2, 2, 2};
    for (Perm3 a : admissible_perms(c))
        for (Perm3 b : admissible_perms(c))
            CHECK(element_key(compose(rho_element(a, c, Q), rho_element(b, c, Q))) ==
                  element_key(rho_element(perm_compose(a, b), c, Q)));
}

TEST_CASE("cyclic contraction is equivariant") {
    Rng rng(33);
    for (const Shape s : {Shape{2, 2, 2}, Shape{2, 3, 2}})
        for (const FieldSpec f : {Q, F5})
            for (int it = 0; it < 10; ++it) {
                const Mat a = Mat::random_invertible(rng, s.m, f);
                const Mat b = Mat::random_invertible(rng, s.n, f);
                const Mat c = Mat::random_invertible(rng, s.p, f);
                const Tensor2 dm(Mat::random(rng, s.m, s.m, f));
                const Tensor2 dn(Mat::random(rng, s.n, s.n, f));
                const Tensor2 dp(Mat::random(rng, s.p, s.p, f));
                CHECK(apply(small_element(s, a, b, c), cyclic_contraction(dm, dn, dp)) ==
                      cyclic_contraction(apply_gl_action(a, dm), apply_gl_action(b, dn),
                                         apply_gl_action(c, dp)));
            }
}
