#include "mmiso/field.hpp"

#include <cstdlib>

namespace mmiso {

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime_field(std::int64_t q) {
    if (q < 2 || q > (std::int64_t{1} << 31))
        throw Error("prime field modulus out of range: " + std::to_string(q));
    if (!is_prime(q))
        throw Error("prime field modulus is not prime: " + std::to_string(q));
    return FieldSpec{q};
}

std::string FieldSpec::str() const {
    return is_rational() ? "rational" : "gf " + std::to_string(q_);
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t q) {
    std::int64_t r = a % q;
    return r < 0 ? r + q : r;
}

// Inverse of a mod q by extended Euclid; a in 1..q-1, q prime.
std::int64_t mod_inverse(std::int64_t a, std::int64_t q) {
    std::int64_t old_r = a, r = q;
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t quot = old_r / r;
        std::int64_t tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    return mod(old_s, q);
}

} // namespace

Scalar Scalar::zero(const FieldSpec& f) { return of_int(f, 0); }
Scalar Scalar::one(const FieldSpec& f) { return of_int(f, 1); }

Scalar Scalar::of_int(const FieldSpec& f, std::int64_t v) {
    Scalar s;
    s.field_ = f;
    if (f.is_rational()) {
        s.rat_ = mpq_class(static_cast<long>(v));
    } else {
        s.res_ = mod(v, f.modulus());
    }
    return s;
}

Scalar Scalar::of_fraction(const FieldSpec& f, std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error("zero denominator");
    if (f.is_rational()) {
        Scalar s;
        s.field_ = f;
        s.rat_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        s.rat_.canonicalize();
        return s;
    }
    return of_int(f, num) / of_int(f, den);
}

Scalar Scalar::of_rational(mpq_class v) {
    Scalar s;
    s.field_ = FieldSpec::rationals();
    v.canonicalize();
    s.rat_ = std::move(v);
    return s;
}

Scalar Scalar::of_residue(const FieldSpec& f, std::int64_t r) {
    if (!f.is_prime_field() || r < 0 || r >= f.modulus())
        throw Error("bad residue " + std::to_string(r));
    Scalar s;
    s.field_ = f;
    s.res_ = r;
    return s;
}

bool Scalar::is_zero() const {
    return field_.is_rational() ? rat_ == 0 : res_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rational() ? rat_ == 1 : res_ == 1;
}

void Scalar::require_same_field(const Scalar& o) const {
    if (!(field_ == o.field_))
        throw FieldMismatchError("scalar field mismatch: " + field_.str() + " vs " + o.field_.str());
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(o);
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational())
        r.rat_ = rat_ + o.rat_;
    else
        r.res_ = mod(res_ + o.res_, field_.modulus());
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    require_same_field(o);
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational())
        r.rat_ = rat_ - o.rat_;
    else
        r.res_ = mod(res_ - o.res_, field_.modulus());
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(o);
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational())
        r.rat_ = rat_ * o.rat_;
    else
        r.res_ = mod(res_ * o.res_, field_.modulus()); // q < 2^31 keeps the product in range
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    return *this * o.inverse();
}

Scalar Scalar::operator-() const {
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational())
        r.rat_ = -rat_;
    else
        r.res_ = mod(-res_, field_.modulus());
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw NotInvertibleError("scalar zero has no inverse");
    Scalar r;
    r.field_ = field_;
    if (field_.is_rational())
        r.rat_ = 1 / rat_;
    else
        r.res_ = mod_inverse(res_, field_.modulus());
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    a.require_same_field(b);
    return a.field_.is_rational() ? a.rat_ == b.rat_ : a.res_ == b.res_;
}

std::string Scalar::str() const {
    return field_.is_rational() ? rat_.get_str() : std::to_string(res_);
}

Scalar Scalar::parse(const FieldSpec& f, const std::string& token) {
    if (token.empty()) throw ParseError("empty scalar literal");
    if (f.is_prime_field()) {
        char* end = nullptr;
        errno = 0;
        std::int64_t v = std::strtoll(token.c_str(), &end, 10);
        if (errno != 0 || end != token.c_str() + token.size())
            throw ParseError("bad GF literal '" + token + "'");
        if (v < 0 || v >= f.modulus() || std::to_string(v) != token)
            throw ParseError("GF literal not a canonical residue: '" + token + "'");
        return of_residue(f, v);
    }
    mpq_class v;
    if (v.set_str(token.c_str(), 10) != 0)
        throw ParseError("bad rational literal '" + token + "'");
    mpq_class canon = v;
    canon.canonicalize();
    if (canon.get_str() != token)
        throw ParseError("rational literal not in lowest terms: '" + token + "'");
    return of_rational(std::move(canon));
}

Scalar Scalar::to_field(const FieldSpec& f) const {
    if (f == field_) return *this;
    if (field_.is_rational() && f.is_prime_field()) {
        const std::int64_t q = f.modulus();
        mpz_class num = rat_.get_num(), den = rat_.get_den();
        mpz_class qz(static_cast<long>(q));
        mpz_class nr = num % qz, dr = den % qz;
        std::int64_t n = mod(nr.get_si(), q), d = mod(dr.get_si(), q);
        if (d == 0)
            throw NotInvertibleError("denominator vanishes mod " + std::to_string(q));
        return of_residue(f, mod(n * mod_inverse(d, q), q));
    }
    throw FieldMismatchError("unsupported field conversion " + field_.str() + " -> " + f.str());
}

} // namespace mmiso
