#ifndef SPECTRA_PCF_HPP
#define SPECTRA_PCF_HPP

#include <optional>
#include <string>
#include <vector>

#include "spectra/dynatomic.hpp"

namespace spectra {

/// Critical point class: an irreducible factor of the critical form, or the
/// point at infinity. Ids index the list returned by critical_classes
/// (factors in canonical order, infinity last when critical).
struct CriticalClass {
    IntPoly minpoly;       // empty for the infinity class
    int multiplicity = 1;  // multiplicity in the critical form
    bool at_infinity = false;
    int degree() const { return at_infinity ? 1 : minpoly.degree(); }
};
std::vector<CriticalClass> critical_classes(const RationalMap& f);

enum class OrbitStatus { Periodic, Preperiodic, Open, UnsupportedExactness };

struct CriticalOrbitReport {
    int crit_id = 0;
    OrbitStatus status = OrbitStatus::Open;
    int tail = 0;       // exact, for periodic/preperiodic
    int cycle_len = 0;  // exact, for periodic/preperiodic
    std::vector<std::string> steps;    // exact orbit points as text
    std::vector<int> height_bits;      // max coefficient bit-size per step
    int steps_explored = 0;
};

struct PcfBudgets {
    int step_budget = 64;
    int height_budget_bits = 4096;
    int rank_nmax = 3;
};

/// Exact orbit exploration of every critical class: rational points iterate
/// in Q, quadratic classes in Q(sqrt(D)); higher-degree classes are reported
/// as unsupported (numeric evidence only).
std::vector<CriticalOrbitReport> critical_orbits(const RationalMap& f, const PcfBudgets& budgets = {});

/// dims[n-1] = Q-rank of the norm vectors of all non-superattracting classes
/// of exact period <= n. Nondecreasing by construction.
struct RankGrowth {
    std::vector<int> dims;
};
RankGrowth rank_growth(const RationalMap& f, int nmax);

enum class PcfVerdict { PCF, LikelyNonPCF, Unknown };

struct ClassifyResult {
    PcfVerdict verdict = PcfVerdict::Unknown;
    std::vector<CriticalOrbitReport> orbits;  // the evidence
    std::vector<int> rank_dims;               // evidence for LikelyNonPCF
    std::string detail;
};
ClassifyResult classify(const RationalMap& f, const PcfBudgets& budgets = {});

}  // namespace spectra

#endif
