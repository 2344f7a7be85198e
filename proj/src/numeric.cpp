#include "heightlab/numeric.hpp"

#include "heightlab/errors.hpp"

#include <algorithm>
#include <vector>

namespace heightlab {

namespace {

const std::vector<unsigned long>& prime_table() {
    static const std::vector<unsigned long> primes = [] {
        constexpr unsigned long limit = 100000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<unsigned long> out;
        for (unsigned long p = 2; p <= limit; ++p) {
            if (!sieve[p]) continue;
            out.push_back(p);
            for (unsigned long q = p * p; q <= limit; q += p) sieve[q] = false;
        }
        return out;
    }();
    return primes;
}

Int brent_rho(const Int& n, unsigned long c0, unsigned long max_iters) {
    // Brent's cycle variant of Pollard rho. Returns a nontrivial factor
    // or 0 when the iteration budget runs out.
    Int y = 2, c = c0, m = 128;
    Int g = 1, r = 1, q = 1, x, ys;
    unsigned long spent = 0;
    while (g == 1) {
        x = y;
        for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
        Int k = 0;
        while (k < r && g == 1) {
            ys = y;
            Int lim = std::min(m, Int(r - k));
            for (Int i = 0; i < lim; ++i) {
                y = (y * y + c) % n;
                q = q * heightlab::abs(x - y) % n;
            }
            spent += lim.get_ui();
            g = gcd(q, n);
            k += m;
            if (spent > max_iters) return 0;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            ys = (ys * ys + c) % n;
            g = gcd(heightlab::abs(x - ys), n);
        } while (g == 1);
    }
    if (g == n) return 0;
    return g;
}

void factor_rec(const Int& n, unsigned mult, const FactorBudget& budget,
                std::map<Int, FactorPart>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        auto& part = out[n];
        part.exponent += mult;
        part.certified = true;
        return;
    }
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2); e >= 2; --e) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
                factor_rec(root, mult * static_cast<unsigned>(e), budget, out);
                return;
            }
        }
    }
    for (int c = 1; c <= budget.rho_retries; ++c) {
        Int f = brent_rho(n, static_cast<unsigned long>(c), budget.rho_iters);
        if (f > 1 && f < n) {
            factor_rec(f, mult, budget, out);
            factor_rec(n / f, mult, budget, out);
            return;
        }
    }
    auto& part = out[n];
    part.exponent += mult;
    part.certified = false;
}

} // namespace

bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 25) != 0;
}

long padic_val(const Int& n, const Int& p) {
    if (n == 0) throw ZeroElement();
    Int r;
    return static_cast<long>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long padic_val(const Rat& x, const Int& p) {
    if (x == 0) throw ZeroElement();
    return padic_val(num(x), p) - padic_val(den(x), p);
}

std::map<Int, FactorPart> factor_partial(const Int& n, const FactorBudget& budget) {
    std::map<Int, FactorPart> out;
    Int m = heightlab::abs(n);
    if (m <= 1) return out;
    for (unsigned long p : prime_table()) {
        if (p > budget.trial_bound || m == 1) break;
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            Int pp(p);
            unsigned e = static_cast<unsigned>(padic_val(m, pp));
            out[pp] = FactorPart{e, true};
            Int q;
            mpz_pow_ui(q.get_mpz_t(), pp.get_mpz_t(), e);
            m /= q;
        }
        if (Int(p) * Int(p) > m) {
            // remaining cofactor is prime
            if (m > 1) {
                out[m] = FactorPart{1, true};
                m = 1;
            }
            break;
        }
    }
    if (m > 1) factor_rec(m, 1, budget, out);
    return out;
}

std::map<Int, unsigned> factor(const Int& n) {
    std::map<Int, unsigned> out;
    for (auto& [p, part] : factor_partial(n)) {
        if (!part.certified)
            throw FactorizationExhausted("composite cofactor resisted factorization: " +
                                         p.get_str());
        out[p] = part.exponent;
    }
    return out;
}

SquarefreeSplit squarefree_kernel(const Int& n, const FactorBudget& budget) {
    if (n == 0) return {Int(0), Int(1)};
    SquarefreeSplit s{Int(sign(n)), Int(1)};
    for (auto& [p, part] : factor_partial(n, budget)) {
        if (part.exponent % 2) s.d *= p;
        s.t *= pow(p, part.exponent / 2);
    }
    return s;
}

Int sqrt_mod_prime(const Int& a0, const Int& p) {
    Int a = ((a0 % p) + p) % p;
    if (a == 0) return 0;
    if (p == 2) return 1;
    if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
        throw DomainError("not a quadratic residue");
    // Tonelli-Shanks
    Int q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    auto powmod = [&](Int b, Int e) {
        Int r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    if (s == 1) return powmod(a, (p + 1) / 4);
    Int z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
    Int m(static_cast<long>(s)), c = powmod(z, q), t = powmod(a, q), r = powmod(a, (q + 1) / 2);
    while (t != 1) {
        Int t2 = t;
        long i = 0;
        while (t2 != 1) {
            t2 = t2 * t2 % p;
            ++i;
        }
        Int b = c;
        for (long j = 0; j < m.get_si() - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

Int hensel_sqrt(const Int& d, const Int& p, unsigned long k) {
    Int pk = pow(p, k);
    if (p == 2) {
        if (k < 3) throw DomainError("need k >= 3 for p = 2");
        if (((d % 8) + 8) % 8 != 1) throw DomainError("d != 1 mod 8");
        Int r = 1;
        Int mod = 8;
        for (unsigned long j = 3; j < k; ++j) {
            Int next = mod * 2;
            if ((r * r - d) % next != 0) r += mod / 2;
            mod = next;
        }
        r %= pk;
        // both r and pk - r are roots; pin r = 1 mod 4
        if (r % 4 != 1) r = pk - r;
        return r;
    }
    Int r = sqrt_mod_prime(d, p);
    r = std::min(r, Int(p - r));
    Int canonical_mod_p = r;
    Int mod = p;
    while (mod < pk) {
        mod = std::min(Int(mod * mod), pk);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), Int(2 * r).get_mpz_t(), mod.get_mpz_t()) == 0)
            throw DomainError("Hensel derivative not invertible");
        r = (r - (r * r - d) * inv) % mod;
        r = ((r % mod) + mod) % mod;
    }
    if (r % p != canonical_mod_p) r = pk - r;
    return r;
}

} // namespace heightlab
