#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "mmiso/errors.hpp"

namespace mmiso {

/// Coefficient field: the rationals or a prime field GF(q), q prime, q <= 2^31.
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec{0}; }
    static FieldSpec prime_field(std::int64_t q);

    bool is_rational() const { return q_ == 0; }
    bool is_prime_field() const { return q_ != 0; }
    std::int64_t modulus() const { return q_; }

    /// "rational" or "gf <q>", as written in file headers.
    std::string str() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    explicit FieldSpec(std::int64_t q) : q_(q) {}
    std::int64_t q_ = 0; // 0 = rationals
};

bool is_prime(std::int64_t n);

/// Exact field element: a reduced fraction (positive denominator) over the
/// rationals, or the canonical residue 0..q-1 over GF(q).
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()) {}

    static Scalar zero(const FieldSpec& f);
    static Scalar one(const FieldSpec& f);
    static Scalar of_int(const FieldSpec& f, std::int64_t v);
    static Scalar of_fraction(const FieldSpec& f, std::int64_t num, std::int64_t den);
    static Scalar of_rational(mpq_class v); // canonicalized
    static Scalar of_residue(const FieldSpec& f, std::int64_t r); // 0 <= r < q

    const FieldSpec& field() const { return field_; }

    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Multiplicative inverse; throws NotInvertibleError on zero.
    Scalar inverse() const;

    /// Exact equality; throws FieldMismatchError across fields.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical literal: "p" or "p/q" for rationals, the residue for GF(q).
    std::string str() const;

    /// Strict parse of a canonical literal (rejects non-reduced fractions
    /// and out-of-range residues).
    static Scalar parse(const FieldSpec& f, const std::string& token);

    /// Carry the value into another field. Rational -> GF(q) reduces num/den
    /// mod q (error if the denominator vanishes); same-field is the identity.
    Scalar to_field(const FieldSpec& f) const;

    std::int64_t residue() const { return res_; }
    const mpq_class& rational() const { return rat_; }

private:
    void require_same_field(const Scalar& o) const;

    FieldSpec field_;
    std::int64_t res_ = 0; // GF(q) value
    mpq_class rat_;        // rational value
};

} // namespace mmiso
