#include <doctest.h>

#include "mmiso/linmap.hpp"
#include "mmiso/isotropy.hpp"

using namespace mmiso;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F5 = FieldSpec::prime_field(5);
} // namespace

TEST_CASE("sandwich maps act as advertised") {
    Rng rng(41);
    for (const FieldSpec f : {Q, F5}) {
        const Mat l = Mat::random(rng, 2, 3, f);
        const Mat r = Mat::random(rng, 4, 2, f);
        const LinMap s = LinMap::sandwich(l, r); // M_{3,4} -> M_{2,2}
        CHECK(s.dom() == FactorDims{3, 4});
        CHECK(s.cod() == FactorDims{2, 2});
        for (int it = 0; it < 20; ++it) {
            const Mat x = Mat::random(rng, 3, 4, f);
            CHECK(s.apply(x) == l * x * r);
        }
    }
}

TEST_CASE("transpose map, composition, inverse") {
    Rng rng(42);
    const LinMap t = LinMap::transpose_map(FactorDims{2, 3}, Q);
    const Mat x = Mat::random(rng, 2, 3, Q);
    CHECK(t.apply(x) == x.transpose());

    const Mat a = Mat::random_invertible(rng, 2, Q);
    const Mat b = Mat::random_invertible(rng, 3, Q);
    const LinMap s = LinMap::sandwich(a, b);
    const LinMap si = s.inverse();
    CHECK(si.apply(s.apply(x)) == x);
    const LinMap both = s.compose(si);
    CHECK(both.apply(x) == x);
    CHECK(s.is_invertible());
    CHECK_THROWS_AS(LinMap::sandwich(Mat(2, 2, Q), b).inverse(), NotInvertibleError);
}

TEST_CASE("trace-pairing dual of a sandwich map swaps the factors") {
    Rng rng(43);
    for (const FieldSpec f : {Q, F5}) {
        const Mat g1 = Mat::random(rng, 2, 3, f); // M_{3,4} -> M_{2,5}
        const Mat g2 = Mat::random(rng, 4, 5, f);
        const LinMap s = LinMap::sandwich(g1, g2);
        const LinMap d = s.dual(); // M_{5,2} -> M_{4,3}, y -> g2 y g1
        CHECK(d.dom() == FactorDims{5, 2});
        CHECK(d.cod() == FactorDims{4, 3});
        for (int it = 0; it < 10; ++it) {
            const Mat y = Mat::random(rng, 5, 2, f);
            CHECK(d.apply(y) == g2 * y * g1);
        }
        // defining identity <A(x), y> = <x, dual(y)>
        for (int it = 0; it < 10; ++it) {
            const Mat x = Mat::random(rng, 3, 4, f);
            const Mat y = Mat::random(rng, 5, 2, f);
            CHECK(trace_pairing(s.apply(x), y) == trace_pairing(x, d.apply(y)));
        }
    }
}

TEST_CASE("contragredient matches the induced dual action") {
    Rng rng(44);
    const Mat g1 = Mat::random_invertible(rng, 3, Q);
    const Mat g2 = Mat::random_invertible(rng, 2, Q);
    // x -> g1 x g2^{-1} on M_{3,2}; its contragredient on M_{2,3} is y -> g2 y g1^{-1}
    const LinMap s = LinMap::sandwich(g1, g2.inverse());
    const LinMap c = s.contragredient();
    for (int it = 0; it < 10; ++it) {
        const Mat y = Mat::random(rng, 2, 3, Q);
        CHECK(c.apply(y) == g2 * y * g1.inverse());
        const Mat x = Mat::random(rng, 3, 2, Q);
        CHECK(trace_pairing(x, y) == trace_pairing(s.apply(x), c.apply(y)));
    }
    // involution
    const LinMap cc = c.contragredient();
    for (int it = 0; it < 5; ++it) {
        const Mat x = Mat::random(rng, 3, 2, Q);
        CHECK(cc.apply(x) == s.apply(x));
    }
}

TEST_CASE("kronecker product matches the factorwise tensor action") {
    Rng rng(45);
    const Shape s{2, 3, 2};
    const TensorDims dims = mmt_dims(s);
    const Mat a = Mat::random_invertible(rng, s.m, Q);
    const Mat b = Mat::random_invertible(rng, s.n, Q);
    const Mat c = Mat::random_invertible(rng, s.p, Q);
    const LinMap a1 = LinMap::sandwich(a, b.inverse());
    const LinMap a2 = LinMap::sandwich(b, c.inverse());
    const LinMap a3 = LinMap::sandwich(c, a.inverse());

    Tensor3 t(dims, Q);
    const int total = dims[0].dim() * dims[1].dim() * dims[2].dim();
    for (int i = 0; i < total; ++i) t.raw_at(static_cast<std::size_t>(i)) = rng.scalar(Q);

    // dense application through the big operator == factorwise application
    const Mat big = kron3(a1.action(), a2.action(), a3.action());
    const Tensor3 lhs = apply_factor_maps(a1, a2, a3, t);
    // flatten t in the kron basis order ((I1,I2,I3) lexicographic, cm per factor)
    Mat vec(total, 1, Q);
    {
        int idx = 0;
        for (int i1 = 0; i1 < dims[0].dim(); ++i1)
            for (int i2 = 0; i2 < dims[1].dim(); ++i2)
                for (int i3 = 0; i3 < dims[2].dim(); ++i3, ++idx) {
                    // cm index (c,r) -> entry (r,c)
                    const int r1 = i1 % dims[0].rows, c1 = i1 / dims[0].rows;
                    const int r2 = i2 % dims[1].rows, c2 = i2 / dims[1].rows;
                    const int r3 = i3 % dims[2].rows, c3 = i3 / dims[2].rows;
                    vec.at(idx, 0) = t.at(r1, c1, r2, c2, r3, c3);
                }
    }
    const Mat out = big * vec;
    {
        int idx = 0;
        for (int i1 = 0; i1 < dims[0].dim(); ++i1)
            for (int i2 = 0; i2 < dims[1].dim(); ++i2)
                for (int i3 = 0; i3 < dims[2].dim(); ++i3, ++idx) {
                    const int r1 = i1 % dims[0].rows, c1 = i1 / dims[0].rows;
                    const int r2 = i2 % dims[1].rows, c2 = i2 / dims[1].rows;
                    const int r3 = i3 % dims[2].rows, c3 = i3 / dims[2].rows;
                    CHECK(out.at(idx, 0) == lhs.at(r1, c1, r2, c2, r3, c3));
                }
    }
    // and the factorwise application of the sandwich triple matches apply()
    CHECK(lhs == apply(small_element(s, a, b, c), t));
}

TEST_CASE("split_kronecker inverts kron3 exactly") {
    Rng rng(46);
    for (const FieldSpec f : {Q, F5})
        for (int it = 0; it < 10; ++it) {
            const Mat m1 = Mat::random_invertible(rng, 2, f);
            const Mat m2 = Mat::random_invertible(rng, 3, f);
            const Mat m3 = Mat::random_invertible(rng, 2, f);
            const Mat big = kron3(m1, m2, m3);
            const auto split = split_kronecker(big, {2, 3, 2});
            CHECK(kron3(split[0], split[1], split[2]) == big);
            // factors recovered up to scalars
            CHECK(split[0].proportionality_to(m1).has_value());
            CHECK(split[1].proportionality_to(m2).has_value());
            CHECK(split[2].proportionality_to(m3).has_value());
        }
    // a non-decomposable operator is rejected
    Mat bad = kron3(Mat::identity(2, Q), Mat::identity(2, Q), Mat::identity(2, Q));
    bad.at(0, 7) = Scalar::of_int(Q, 1);
    CHECK_THROWS_AS(split_kronecker(bad, {2, 2, 2}), NotDecomposableError);
    CHECK_THROWS_AS(split_kronecker(Mat(8, 8, Q), {2, 2, 2}), NotDecomposableError);
}
