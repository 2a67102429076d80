#ifndef ZK_RATIONAL_HPP
#define ZK_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace zk {

using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// base^e with e possibly negative; base must be nonzero when e < 0.
inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    if (e < 0) {
        b = Rat(1) / b;
        e = -e;
    }
    Rat num, den;
    mpz_pow_ui(num.get_num().get_mpz_t(), b.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_num().get_mpz_t(), b.get_den().get_mpz_t(), static_cast<unsigned long>(e));
    Rat r = num / den;
    r.canonicalize();
    return r;
}

// p^e as an exact rational, e possibly negative.
inline Rat prime_power(std::uint64_t p, long e) {
    return rat_pow(Rat(Int(static_cast<unsigned long>(p))), e);
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

// Deterministic trial division for small n, Miller-Rabin beyond; desk scale.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    std::uint64_t d = 11;
    while (d <= 1'000'000 && d * d <= n) {
        if (n % d == 0) return false;
        d += 2;
    }
    if (d * d > n) return true;
    Int z(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace zk

#endif
