#include "spectra/intfactor.hpp"

#include "spectra/error.hpp"

namespace spectra {

bool is_prime(const mpz_class& n) {
    // GMP's test is BPSW + extra Miller-Rabin rounds; 40 reps is far beyond
    // any known pseudoprime.
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n, unsigned long c0) {
    // Brent's variant of Pollard rho with x -> x^2 + c.
    mpz_class y(2), c(c0), m(128), g(1), r(1), q(1), x, ys;
    while (g == 1) {
        x = y;
        for (mpz_class i(0); i < r; ++i) y = (y * y + c) % n;
        mpz_class k(0);
        while (k < r && g == 1) {
            x > y ? void() : void();
            ys = y;
            mpz_class lim = std::min(m, mpz_class(r - k));
            for (mpz_class i(0); i < lim; ++i) {
                y = (y * y + c) % n;
                mpz_class d = x - y;
                if (d < 0) d = -d;
                q = q * d % n;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        // backtrack
        g = 1;
        while (g == 1) {
            ys = (ys * ys + c) % n;
            mpz_class d = x - ys;
            if (d < 0) d = -d;
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        }
    }
    return g;
}

void factor_rec(mpz_class n, std::map<mpz_class, int>* out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++(*out)[n];
        return;
    }
    for (unsigned long c = 1;; ++c) {
        mpz_class d = pollard_brent(n, c);
        if (d != n && d != 1) {
            factor_rec(d, out);
            factor_rec(n / d, out);
            return;
        }
    }
}

}  // namespace

std::map<mpz_class, int> factor_integer(const mpz_class& n0) {
    if (n0 == 0) throw invalid_input_error("factor of zero");
    std::map<mpz_class, int> out;
    mpz_class n = abs(n0);
    if (n == 1) return out;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        mpz_class pz(static_cast<unsigned long>(p));
        while (mpz_divisible_p(n.get_mpz_t(), pz.get_mpz_t())) {
            ++out[pz];
            n /= pz;
        }
    }
    // trial division by small primes
    for (std::uint64_t p = 17; p < 100000 && n > 1; p += 2) {
        mpz_class pz(static_cast<unsigned long>(p));
        if (n % pz == 0) {
            while (mpz_divisible_p(n.get_mpz_t(), pz.get_mpz_t())) {
                ++out[pz];
                n /= pz;
            }
        }
        mpz_class sq = pz * pz;
        if (sq > n) break;
    }
    if (n > 1) factor_rec(n, &out);
    return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi < 2 || hi < lo) return out;
    mpz_class p(static_cast<unsigned long>(lo >= 2 ? lo - 1 : 1));
    while (true) {
        mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
        if (p > static_cast<unsigned long>(hi)) break;
        out.push_back(p.get_ui());
    }
    return out;
}

int valuation(const mpz_class& n, const mpz_class& p) {
    if (n == 0) throw invalid_input_error("valuation of zero");
    mpz_class m = abs(n);
    int v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
        m /= p;
        ++v;
    }
    return v;
}

}  // namespace spectra
