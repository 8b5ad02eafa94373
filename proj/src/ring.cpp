#include "ghost/ring.hpp"

#include <cctype>
#include <regex>
#include <sstream>

namespace ghost {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long mod_inverse_long(long a, long p) {
    // p prime, a != 0 mod p
    long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
    while (nr != 0) {
        long q = r / nr;
        long tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    return ((t % p) + p) % p;
}

}  // namespace

Ring Ring::integers() { return Ring(); }

Ring Ring::integers_mod(const Elem& m) {
    if (m < 2) throw RingError("Z/m requires m >= 2");
    Ring r;
    r.kind_ = Kind::IntegersMod;
    r.m_ = m;
    return r;
}

Ring Ring::trunc_poly(long p, int e) {
    if (!is_prime(p)) throw RingError("GF(p)[t]/(t^e) requires p prime");
    if (e < 1) throw RingError("GF(p)[t]/(t^e) requires e >= 1");
    Ring r;
    r.kind_ = Kind::TruncPoly;
    r.p_ = p;
    r.e_ = e;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    r.m_ = pe;  // number of elements
    return r;
}

Ring Ring::parse(std::string_view descriptor) {
    std::string s(descriptor);
    std::smatch mt;
    static const std::regex z_re(R"(^\s*Z\s*$)");
    static const std::regex zm_re(R"(^\s*Z\s*/\s*(\d+)\s*$)");
    static const std::regex tp_re(R"(^\s*GF\(\s*(\d+)\s*\)\s*\[\s*t\s*\]\s*/\s*\(\s*t\s*\^\s*(\d+)\s*\)\s*$)");
    if (std::regex_match(s, mt, z_re)) return integers();
    if (std::regex_match(s, mt, zm_re)) return integers_mod(Elem(mt[1].str()));
    if (std::regex_match(s, mt, tp_re)) return trunc_poly(std::stol(mt[1].str()), std::stoi(mt[2].str()));
    throw RingError("unknown ring descriptor '" + s + "'");
}

std::string Ring::to_string() const {
    switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::IntegersMod: return "Z/" + m_.get_str();
    case Kind::TruncPoly:
        return "GF(" + std::to_string(p_) + ")[t]/(t^" + std::to_string(e_) + ")";
    }
    return "?";
}

std::vector<long> Ring::digits(const Elem& a) const {
    std::vector<long> c(static_cast<size_t>(e_), 0);
    mpz_class x = a;
    for (int i = 0; i < e_ && sgn(x) != 0; ++i) {
        mpz_class q, r;
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p_));
        c[static_cast<size_t>(i)] = r.get_si();
        x = q;
    }
    return c;
}

Elem Ring::undigits(const std::vector<long>& c) const {
    mpz_class x = 0;
    for (int i = e_ - 1; i >= 0; --i) {
        long ci = c[static_cast<size_t>(i)] % p_;
        if (ci < 0) ci += p_;
        x = x * p_ + ci;
    }
    return x;
}

int Ring::valuation(const Elem& a) const {
    auto c = digits(a);
    for (int i = 0; i < e_; ++i)
        if (c[static_cast<size_t>(i)] != 0) return i;
    return e_;
}

Elem Ring::reduce(const Elem& a) const {
    switch (kind_) {
    case Kind::Integers: return a;
    case Kind::IntegersMod: {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t());
        return r;
    }
    case Kind::TruncPoly: {
        // Integers embed as constants.
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p_));
        return r;
    }
    }
    return a;
}

Elem Ring::add(const Elem& a, const Elem& b) const {
    switch (kind_) {
    case Kind::Integers: return a + b;
    case Kind::IntegersMod: {
        Elem r = a + b;
        if (r >= m_) r -= m_;
        return r;
    }
    case Kind::TruncPoly: {
        auto ca = digits(a), cb = digits(b);
        for (size_t i = 0; i < ca.size(); ++i) ca[i] = (ca[i] + cb[i]) % p_;
        return undigits(ca);
    }
    }
    return a;
}

Elem Ring::neg(const Elem& a) const {
    switch (kind_) {
    case Kind::Integers: return -a;
    case Kind::IntegersMod: return sgn(a) == 0 ? Elem(0) : Elem(m_ - a);
    case Kind::TruncPoly: {
        auto c = digits(a);
        for (auto& x : c) x = (p_ - x) % p_;
        return undigits(c);
    }
    }
    return a;
}

Elem Ring::sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }

Elem Ring::mul(const Elem& a, const Elem& b) const {
    switch (kind_) {
    case Kind::Integers: return a * b;
    case Kind::IntegersMod: {
        if (sgn(a) == 0 || sgn(b) == 0) return Elem(0);
        mpz_class r = a * b;
        mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m_.get_mpz_t());
        return r;
    }
    case Kind::TruncPoly: {
        if (sgn(a) == 0 || sgn(b) == 0) return Elem(0);
        auto ca = digits(a), cb = digits(b);
        std::vector<long> c(static_cast<size_t>(e_), 0);
        for (int i = 0; i < e_; ++i) {
            if (ca[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; i + j < e_; ++j) {
                auto k = static_cast<size_t>(i + j);
                c[k] = (c[k] + ca[static_cast<size_t>(i)] * cb[static_cast<size_t>(j)]) % p_;
            }
        }
        return undigits(c);
    }
    }
    return a;
}

Elem Ring::pow(const Elem& a, unsigned k) const {
    Elem r = one(), b = a;
    while (k) {
        if (k & 1U) r = mul(r, b);
        b = mul(b, b);
        k >>= 1U;
    }
    return r;
}

bool Ring::is_unit(const Elem& a) const {
    switch (kind_) {
    case Kind::Integers: return a == 1 || a == -1;
    case Kind::IntegersMod: {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t());
        return g == 1;
    }
    case Kind::TruncPoly: return digits(a)[0] != 0;
    }
    return false;
}

Elem Ring::inverse(const Elem& a) const {
    if (!is_unit(a)) throw RingError("inverse of non-unit " + format(a));
    switch (kind_) {
    case Kind::Integers: return a;
    case Kind::IntegersMod: {
        mpz_class r;
        mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t());
        return r;
    }
    case Kind::TruncPoly: {
        // Power-series inversion, one coefficient at a time.
        auto c = digits(a);
        std::vector<long> inv(static_cast<size_t>(e_), 0);
        long c0inv = mod_inverse_long(c[0], p_);
        inv[0] = c0inv;
        for (int k = 1; k < e_; ++k) {
            long s = 0;
            for (int j = 1; j <= k; ++j)
                s = (s + c[static_cast<size_t>(j)] * inv[static_cast<size_t>(k - j)]) % p_;
            inv[static_cast<size_t>(k)] = ((p_ - s) % p_) * c0inv % p_;
        }
        return undigits(inv);
    }
    }
    return a;
}

Elem Ring::ann(const Elem& a) const {
    switch (kind_) {
    case Kind::Integers: return sgn(a) == 0 ? Elem(1) : Elem(0);
    case Kind::IntegersMod: {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t());
        return reduce(Elem(m_ / g));
    }
    case Kind::TruncPoly: {
        int v = valuation(a);
        if (v == e_) return one();
        if (v == 0) return zero();
        std::vector<long> c(static_cast<size_t>(e_), 0);
        c[static_cast<size_t>(e_ - v)] = 1;
        return undigits(c);
    }
    }
    return a;
}

Elem Ring::associate(const Elem& a) const {
    switch (kind_) {
    case Kind::Integers: return abs(a);
    case Kind::IntegersMod: {
        if (sgn(a) == 0) return a;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t());
        return reduce(g);
    }
    case Kind::TruncPoly: {
        int v = valuation(a);
        if (v == e_) return zero();
        std::vector<long> c(static_cast<size_t>(e_), 0);
        c[static_cast<size_t>(v)] = 1;
        return undigits(c);
    }
    }
    return a;
}

Elem Ring::normalizing_unit(const Elem& a) const {
    switch (kind_) {
    case Kind::Integers: return sgn(a) < 0 ? Elem(-1) : Elem(1);
    case Kind::IntegersMod: {
        if (sgn(a) == 0) return Elem(1);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m_.get_mpz_t());
        mpz_class a1 = a / g, m1 = m_ / g;
        mpz_class u0 = 0;
        if (m1 > 1) mpz_invert(u0.get_mpz_t(), a1.get_mpz_t(), m1.get_mpz_t());
        // Lift u0 (a unit mod m1) to a unit mod m.
        for (mpz_class u = u0;; u += m1) {
            mpz_class h;
            mpz_gcd(h.get_mpz_t(), u.get_mpz_t(), m_.get_mpz_t());
            if (h == 1) return reduce(u);
        }
    }
    case Kind::TruncPoly: {
        int v = valuation(a);
        if (v == e_) return one();
        auto c = digits(a);
        std::vector<long> shifted(static_cast<size_t>(e_), 0);
        for (int i = v; i < e_; ++i) shifted[static_cast<size_t>(i - v)] = c[static_cast<size_t>(i)];
        return inverse(undigits(shifted));
    }
    }
    return Elem(1);
}

std::optional<Elem> Ring::divide(const Elem& a, const Elem& b) const {
    switch (kind_) {
    case Kind::Integers: {
        if (sgn(b) == 0) return sgn(a) == 0 ? std::optional<Elem>(Elem(0)) : std::nullopt;
        if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return std::nullopt;
        return Elem(a / b);
    }
    case Kind::IntegersMod: {
        if (sgn(a) == 0) return Elem(0);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), b.get_mpz_t(), m_.get_mpz_t());
        if (!mpz_divisible_p(a.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
        // b = g * b1 with b1 invertible mod m/g.
        mpz_class m1 = m_ / g, b1 = b / g, inv = 0;
        if (m1 > 1) mpz_invert(inv.get_mpz_t(), b1.get_mpz_t(), m1.get_mpz_t());
        return reduce(Elem((a / g) * inv));
    }
    case Kind::TruncPoly: {
        if (sgn(a) == 0) return Elem(0);
        int va = valuation(a), vb = valuation(b);
        if (vb > va) return std::nullopt;
        auto ca = digits(a), cb = digits(b);
        std::vector<long> as(static_cast<size_t>(e_), 0), bs(static_cast<size_t>(e_), 0);
        for (int i = vb; i < e_; ++i) {
            as[static_cast<size_t>(i - vb)] = ca[static_cast<size_t>(i)];
            bs[static_cast<size_t>(i - vb)] = cb[static_cast<size_t>(i)];
        }
        return mul(undigits(as), inverse(undigits(bs)));
    }
    }
    return std::nullopt;
}

Elem Ring::remainder(const Elem& a, const Elem& b) const {
    if (sgn(b) == 0) return a;
    switch (kind_) {
    case Kind::Integers: {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }
    case Kind::IntegersMod: {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    }
    case Kind::TruncPoly: {
        int k = valuation(b);
        auto c = digits(a);
        for (int i = k; i < e_; ++i) c[static_cast<size_t>(i)] = 0;
        return undigits(c);
    }
    }
    return a;
}

Gcdex Ring::gcdex(const Elem& a, const Elem& b) const {
    if (sgn(b) == 0) return {a, one(), zero(), zero(), one()};
    if (sgn(a) == 0) return {b, zero(), one(), one(), zero()};
    switch (kind_) {
    case Kind::Integers:
    case Kind::IntegersMod: {
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        // [s t; -b/g a/g] has determinant (sa + tb)/g = 1.
        mpz_class u = -(b / g), v = a / g;
        return {reduce(g), reduce(s), reduce(t), reduce(u), reduce(v)};
    }
    case Kind::TruncPoly: {
        int va = valuation(a), vb = valuation(b);
        if (va <= vb) {
            Elem q = *divide(b, a);
            return {a, one(), zero(), neg(q), one()};
        }
        Elem q = *divide(a, b);
        return {b, zero(), one(), one(), neg(q)};
    }
    }
    return {};
}

Elem Ring::ideal_sum(const Elem& a, const Elem& b) const {
    switch (kind_) {
    case Kind::Integers: {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return g;
    }
    case Kind::IntegersMod: {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m_.get_mpz_t());
        return reduce(g);
    }
    case Kind::TruncPoly: {
        int v = std::min(valuation(a), valuation(b));
        return v == e_ ? zero() : associate(undigits([&] {
            std::vector<long> c(static_cast<size_t>(e_), 0);
            c[static_cast<size_t>(v)] = 1;
            return c;
        }()));
    }
    }
    return a;
}

Elem Ring::ideal_intersection(const Elem& a, const Elem& b) const {
    switch (kind_) {
    case Kind::Integers: {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return l;
    }
    case Kind::IntegersMod: {
        mpz_class x = sgn(a) == 0 ? m_ : associate(a);
        mpz_class y = sgn(b) == 0 ? m_ : associate(b);
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        return reduce(l);
    }
    case Kind::TruncPoly: {
        int v = std::max(valuation(a), valuation(b));
        if (v >= e_) return zero();
        std::vector<long> c(static_cast<size_t>(e_), 0);
        c[static_cast<size_t>(v)] = 1;
        return undigits(c);
    }
    }
    return a;
}

std::optional<unsigned long> Ring::size() const {
    if (kind_ == Kind::Integers) return std::nullopt;
    if (!m_.fits_ulong_p()) return std::nullopt;
    return m_.get_ui();
}

std::optional<unsigned long> Ring::quotient_size(const Elem& d) const {
    switch (kind_) {
    case Kind::Integers:
        if (sgn(d) == 0) return std::nullopt;
        return Elem(abs(d)).get_ui();
    case Kind::IntegersMod: return sgn(d) == 0 ? m_.get_ui() : associate(d).get_ui();
    case Kind::TruncPoly: {
        unsigned long r = 1;
        int v = valuation(d);
        for (int i = 0; i < v; ++i) r *= static_cast<unsigned long>(p_);
        return r;
    }
    }
    return std::nullopt;
}

std::string Ring::format(const Elem& a) const {
    if (kind_ != Kind::TruncPoly) return a.get_str();
    auto c = digits(a);
    std::string out;
    for (int i = 0; i < e_; ++i) {
        long ci = c[static_cast<size_t>(i)];
        if (ci == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(ci);
        } else {
            if (ci != 1) out += std::to_string(ci);
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

Elem Ring::parse_elem(std::string_view text) const {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw RingError("empty element literal");
    if (kind_ != Kind::TruncPoly) {
        static const std::regex int_re(R"(^[+-]?\d+$)");
        if (!std::regex_match(s, int_re)) throw RingError("bad element literal '" + s + "'");
        return reduce(Elem(s[0] == '+' ? s.substr(1) : s));
    }
    // Sum of terms  [+-] [coef] [*] t [^k]  or  [+-] coef.
    static const std::regex term_re(R"(([+-]?)(\d*)\*?(t(\^(\d+))?)?)");
    std::vector<long> c(static_cast<size_t>(e_), 0);
    size_t pos = 0;
    while (pos < s.size()) {
        std::smatch mt;
        std::string rest = s.substr(pos);
        if (!std::regex_search(rest, mt, term_re, std::regex_constants::match_continuous) ||
            mt.length(0) == 0 || (mt[2].length() == 0 && mt[3].length() == 0))
            throw RingError("bad polynomial literal '" + s + "'");
        long sign = mt[1].str() == "-" ? -1 : 1;
        long coef = mt[2].length() ? std::stol(mt[2].str()) : 1;
        int deg = 0;
        if (mt[3].length()) deg = mt[5].length() ? std::stoi(mt[5].str()) : 1;
        if (deg < e_) {
            auto k = static_cast<size_t>(deg);
            c[k] = ((c[k] + sign * (coef % p_)) % p_ + p_) % p_;
        }
        pos += static_cast<size_t>(mt.length(0));
    }
    return undigits(c);
}

std::string Ring::cyclic_name(const Elem& d) const {
    Elem g = associate(d);
    if (is_one(g)) return "0";
    switch (kind_) {
    case Kind::Integers: return sgn(g) == 0 ? "Z" : "Z/" + g.get_str();
    case Kind::IntegersMod: return "Z/" + (sgn(g) == 0 ? m_ : g).get_str();
    case Kind::TruncPoly: {
        int v = valuation(g);
        return "GF(" + std::to_string(p_) + ")[t]/(t^" + std::to_string(v) + ")";
    }
    }
    return "?";
}

}  // namespace ghost
