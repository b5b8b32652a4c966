#ifndef SPECTRA_SIEVE_HPP
#define SPECTRA_SIEVE_HPP

#include <map>
#include <vector>

#include "spectra/fp.hpp"
#include "spectra/pcf.hpp"
#include "spectra/rational_map.hpp"

namespace spectra {

/// Point of P^1 over F_{p^k}.
struct FpProjPoint {
    bool infinite = false;
    FpkElem value;  // meaningful when finite
    bool operator==(const FpProjPoint& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    std::string to_string() const { return infinite ? "inf" : value.to_string(); }
};

/// Reduction of f mod a good prime: a degree-d pair over F_p.
struct FpRatMap {
    std::uint64_t p = 0;
    int deg = 0;
    FpPoly num, den;          // affine pair
    std::vector<std::uint64_t> num_h, den_h;  // homogeneous coefficients
};
FpRatMap reduce_map(const RationalMap& f, std::uint64_t p);

/// Evaluate the reduced map at a point of P^1(F_{p^k}).
FpProjPoint apply_mod_p(const FpRatMap& fbar, const FpProjPoint& x, int k);

/// Brent cycle detection on the finite orbit: (tail, cycle length).
std::pair<int, int> orbit_mod_p(const FpProjPoint& start, const FpRatMap& fbar, int k);

/// Reductions of the characteristic-zero critical classes into F_{p^k},
/// k <= kmax; each point is tagged with the class it reduces from.
struct CritReduction {
    FpProjPoint point;
    int k = 1;        // residue extension degree of the point
    int crit_id = 0;  // index into critical_classes(f)
};
std::vector<CritReduction> critical_points_mod_p(const RationalMap& f, std::uint64_t p, int kmax);

/// A good-reduction prime where a marked non-preperiodic critical point
/// becomes genuinely periodic mod p (tail = 0), outside the reduction of
/// the characteristic-zero periodic critical orbits.
struct PrimeHit {
    std::uint64_t p = 0;
    int crit_id = 0;
    int k = 1;
    int tail = 0;
    int cycle_len = 1;
};

struct SieveReport {
    std::uint64_t pmin = 0, pmax = 0;
    int kmax = 2;
    std::vector<PrimeHit> hits;            // ascending by (p, crit_id, k)
    std::map<int, int> miss_counts;        // crit_id -> primes with tail > 0
    std::vector<int> marked_crit_ids;      // the non-preperiodic classes scanned
};

/// Scan good-reduction primes in [pmin, pmax]; requires at least one
/// critical class marked non-preperiodic by exact orbit exploration.
SieveReport sieve(const RationalMap& f, std::uint64_t pmin, std::uint64_t pmax, int kmax = 2,
                  int jobs = 1);

/// Among the exact-period classes at hit.cycle_len, return the first (in
/// canonical minpoly order) whose norm has positive p-valuation. Existence
/// is the Hensel equivalence; failure raises an internal error.
AlgebraicClass attach_class(const RationalMap& f, const PrimeHit& hit, int period_budget);

}  // namespace spectra

#endif
