#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace heightlab {

using Int = mpz_class;
using Rat = mpq_class;

inline Int num(const Rat& x) { return Int(x.get_num()); }
inline Int den(const Rat& x) { return Int(x.get_den()); }

inline int sign(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sign(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline Int pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
    return r; // already canonical: num/den coprime
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return sign(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_prime(const Int& n);

/// v_p(n), n != 0.
long padic_val(const Int& n, const Int& p);
long padic_val(const Rat& x, const Int& p);

/// Effort knobs for factorization. Trial division runs over the prime table
/// up to trial_bound; Brent's rho gets rho_iters iterations per attempt and
/// rho_retries polynomial offsets per composite.
struct FactorBudget {
    unsigned long trial_bound = 100000;
    unsigned long rho_iters = 3000000; // reaches factors up to ~10^12
    int rho_retries = 3;
};

inline constexpr FactorBudget kFullBudget{};
/// cheap pass for bulk discriminants: small primes only
inline constexpr FactorBudget kLightBudget{30000, 0, 0};

/// Factorization with a certification flag per part: a cofactor that resists
/// the budget is returned as its own key with certified=false. Such a
/// cofactor is composite, free of primes below the trial bound, and not a
/// perfect power.
struct FactorPart {
    unsigned exponent;
    bool certified; // true: key is prime
};
std::map<Int, FactorPart> factor_partial(const Int& n,
                                         const FactorBudget& budget = kFullBudget);

/// Full prime factorization; throws FactorizationExhausted if a composite
/// cofactor resists the full budget.
std::map<Int, unsigned> factor(const Int& n);

/// n = t^2 * d with d squarefree up to the budget: a budget-resistant
/// cofactor is treated as squarefree. An undetected square prime factor
/// (necessarily > the trial bound) leaves every downstream computation
/// consistent; see QuadField.
struct SquarefreeSplit {
    Int d; // squarefree part, carries the sign of n
    Int t; // n = t^2 * d
};
SquarefreeSplit squarefree_kernel(const Int& n,
                                  const FactorBudget& budget = kFullBudget);

/// Square root of a mod odd prime p (Tonelli-Shanks); a must be a QR mod p.
Int sqrt_mod_prime(const Int& a, const Int& p);

/// Canonical square root of d modulo p^k. For odd p the root r satisfies
/// min(r mod p, p - r mod p) == r mod p; for p = 2 (d = 1 mod 8, k >= 3)
/// it satisfies r = 1 mod 4. The other root is p^k - r.
Int hensel_sqrt(const Int& d, const Int& p, unsigned long k);

} // namespace heightlab
