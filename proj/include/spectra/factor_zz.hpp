#ifndef SPECTRA_FACTOR_ZZ_HPP
#define SPECTRA_FACTOR_ZZ_HPP

#include <utility>
#include <vector>

#include "spectra/intpoly.hpp"

namespace spectra {

/// Complete factorization over Q of a nonzero integer polynomial:
/// a = unit * content * prod factors[i]^mult[i], each factor a primitive
/// irreducible IntPoly with positive leading coefficient, sorted by
/// (degree, coefficients from the constant term).
struct Factorization {
    int unit = 1;              // +1 or -1
    mpq_class content;         // positive rational
    std::vector<std::pair<IntPoly, int>> factors;

    IntPoly expand() const;    // unit * content * prod must reproduce the input
};

struct FactorBudget {
    int max_degree = 512;      // inputs above this error out
    int subset_cap = 12;       // max modular factors combined per candidate
};

/// Zassenhaus: squarefree split, factor mod a good prime, Hensel lift,
/// subset recombination. Deterministic output.
Factorization factor_over_Z(const IntPoly& a, const FactorBudget& budget = {});

bool is_irreducible_over_Z(const IntPoly& a, const FactorBudget& budget = {});

}  // namespace spectra

#endif
