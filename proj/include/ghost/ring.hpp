#pragma once

// Computable principal ideal rings: Z, Z/m and GF(p)[t]/(t^e).
//
// Elements are stored as canonical integer representatives so that equality
// is representational equality:
//  - Z:               the integer itself (arbitrary precision),
//  - Z/m:             the least non-negative residue in [0, m),
//  - GF(p)[t]/(t^e):  sum c_i p^i, where c_i in [0, p) is the coefficient of
//                     t^i (base-p digits, i < e).
//
// Every operation needed by Howell/Hermite elimination is provided here:
// unit normalisation, an extended gcd with a unimodular transform, exact
// division, annihilators and remainders modulo principal ideals.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ghost {

using Elem = mpz_class;

// Thrown for malformed descriptors, element literals, or ring mismatches.
class RingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Result of an extended gcd: [s t; u v] is invertible, s*a + t*b = g and
// u*a + v*b = 0.
struct Gcdex {
    Elem g, s, t, u, v;
};

class Ring {
public:
    enum class Kind { Integers, IntegersMod, TruncPoly };

    Ring() = default;  // Z

    static Ring integers();
    static Ring integers_mod(const Elem& m);
    static Ring trunc_poly(long p, int e);

    // Parses `Z`, `Z/<m>` or `GF(<p>)[t]/(t^<e>)`.
    static Ring parse(std::string_view descriptor);
    std::string to_string() const;

    Kind kind() const { return kind_; }
    const Elem& modulus() const { return m_; }
    long prime() const { return p_; }
    int exponent() const { return e_; }

    bool operator==(const Ring& o) const {
        return kind_ == o.kind_ && m_ == o.m_ && p_ == o.p_ && e_ == o.e_;
    }

    // Arithmetic on canonical representatives.
    Elem reduce(const Elem& a) const;
    Elem from_int(long v) const { return reduce(Elem(v)); }
    Elem zero() const { return Elem(0); }
    Elem one() const { return reduce(Elem(1)); }
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, unsigned k) const;

    bool is_zero(const Elem& a) const { return sgn(a) == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    bool is_unit(const Elem& a) const;

    // Inverse of a unit.
    Elem inverse(const Elem& a) const;

    // Generator of {x : x*a = 0}.
    Elem ann(const Elem& a) const;

    // Canonical generator of the principal ideal (a).
    Elem associate(const Elem& a) const;
    // A unit u with u*a == associate(a).
    Elem normalizing_unit(const Elem& a) const;

    // Some q with q*b == a, if b divides a.
    std::optional<Elem> divide(const Elem& a, const Elem& b) const;
    bool divides(const Elem& b, const Elem& a) const { return divide(a, b).has_value(); }

    // Canonical representative of a modulo the ideal (b); b must be canonical.
    Elem remainder(const Elem& a, const Elem& b) const;

    Gcdex gcdex(const Elem& a, const Elem& b) const;

    // Canonical generators of (a) + (b) and (a) ∩ (b).
    Elem ideal_sum(const Elem& a, const Elem& b) const;
    Elem ideal_intersection(const Elem& a, const Elem& b) const;

    // Number of elements, if finite.
    std::optional<unsigned long> size() const;
    // Number of elements of R/(d) for canonical d, if finite.
    std::optional<unsigned long> quotient_size(const Elem& d) const;
    // The i-th element in canonical order (finite rings only).
    Elem element(unsigned long i) const { return Elem(i); }

    std::string format(const Elem& a) const;
    // Integers (optionally signed); polynomial literals such as `1+2t^3` for
    // truncated polynomial rings.
    Elem parse_elem(std::string_view text) const;

    // Description of the cyclic module R/(d), e.g. `Z/2`.
    std::string cyclic_name(const Elem& d) const;

private:
    std::vector<long> digits(const Elem& a) const;
    Elem undigits(const std::vector<long>& c) const;
    int valuation(const Elem& a) const;  // TruncPoly: lowest nonzero degree, e for 0

    Kind kind_ = Kind::Integers;
    Elem m_ = 0;
    long p_ = 0;
    int e_ = 0;
};

}  // namespace ghost
