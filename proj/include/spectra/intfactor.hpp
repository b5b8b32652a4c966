#ifndef SPECTRA_INTFACTOR_HPP
#define SPECTRA_INTFACTOR_HPP

#include <gmpxx.h>

#include <map>
#include <vector>

namespace spectra {

bool is_prime(const mpz_class& n);

/// Prime factorization of |n|, n != 0: map prime -> exponent.
/// Trial division then Pollard-Brent rho (deterministic parameter sequence).
std::map<mpz_class, int> factor_integer(const mpz_class& n);

/// Primes in [lo, hi] ascending.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// p-adic valuation of a nonzero integer.
int valuation(const mpz_class& n, const mpz_class& p);

}  // namespace spectra

#endif
