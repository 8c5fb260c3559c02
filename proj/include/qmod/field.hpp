#pragma once
#include <gmpxx.h>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "error.hpp"

namespace qmod {

using Rng = std::mt19937_64;

// Exact rationals. mpq_class does not canonicalize on (num,den) construction,
// so every entry point that can produce a non-reduced value canonicalizes.
struct QQ {
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_long(long n) const { return Elem(n); }
    Elem make(long num, long den) const {
        if (den == 0) throw InputError("rational with zero denominator");
        Elem e(num, den);
        e.canonicalize();
        return e;
    }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw Error("division by zero");
        return Elem(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    Elem rand(Rng& rng, long bound) const {
        std::uniform_int_distribution<long> d(-bound, bound);
        return Elem(d(rng));
    }

    std::string str(const Elem& a) const { return a.get_str(); }
    Elem parse(std::string_view s) const;

    bool operator==(const QQ&) const = default;
};

inline QQ::Elem QQ::parse(std::string_view s) const {
    if (s.empty()) throw InputError("empty rational literal");
    try {
        Elem e(std::string(s), 10);
        e.canonicalize();
        return e;
    } catch (const std::invalid_argument&) {
        throw InputError("bad rational literal '" + std::string(s) + "'");
    }
}

// Prime field F_p, p < 2^31 so products fit in int64. Elements live in [0, p).
struct GF {
    using Elem = std::int64_t;
    Elem p{2};

    GF() = default;
    explicit GF(Elem prime) : p(prime) {
        if (p < 2 || p >= (Elem(1) << 31) || !is_prime(p))
            throw InputError("field characteristic must be a prime < 2^31");
    }

    static bool is_prime(Elem n) {
        if (n < 2) return false;
        for (Elem d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    Elem red(Elem a) const {
        a %= p;
        return a < 0 ? a + p : a;
    }
    Elem zero() const { return 0; }
    Elem one() const { return p == 1 ? 0 : 1; }
    Elem from_long(long n) const { return red(n); }
    Elem make(long num, long den) const { return div(red(num), red(den)); }
    Elem add(Elem a, Elem b) const { return (a + b) % p; }
    Elem sub(Elem a, Elem b) const { return red(a - b); }
    Elem mul(Elem a, Elem b) const { return (a * b) % p; }
    Elem neg(Elem a) const { return red(-a); }
    Elem inv(Elem a) const {
        if (a == 0) throw Error("division by zero");
        // extended euclid
        Elem r0 = p, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            Elem q = r0 / r1;
            r0 -= q * r1; std::swap(r0, r1);
            s0 -= q * s1; std::swap(s0, s1);
        }
        return red(s0);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }

    Elem rand(Rng& rng, long /*bound*/) const {
        std::uniform_int_distribution<Elem> d(0, p - 1);
        return d(rng);
    }

    std::string str(Elem a) const { return std::to_string(a); }
    Elem parse(std::string_view s) const {
        std::string t(s);
        auto slash = t.find('/');
        try {
            if (slash == std::string::npos) return red(std::stoll(t));
            return div(red(std::stoll(t.substr(0, slash))), red(std::stoll(t.substr(slash + 1))));
        } catch (const std::exception&) {
            throw InputError("bad field literal '" + t + "'");
        }
    }

    bool operator==(const GF&) const = default;
};

// runtime tag used by file formats and the CLI
struct FieldSpec {
    bool rational = true;
    std::int64_t p = 0;
    bool operator==(const FieldSpec&) const = default;
};

} // namespace qmod
