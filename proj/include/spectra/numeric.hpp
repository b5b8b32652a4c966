#ifndef SPECTRA_NUMERIC_HPP
#define SPECTRA_NUMERIC_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spectra/dynatomic.hpp"
#include "spectra/rational_map.hpp"

namespace spectra {

using cplx = std::complex<double>;

/// Deterministic stream (splitmix64) used for every stochastic routine;
/// identical seeds give bit-identical runs on any platform.
struct DetRng {
    std::uint64_t state;
    explicit DetRng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    double uniform01();            // in [0, 1)
    std::uint32_t below(std::uint32_t n);
};

struct ComplexRootSet {
    std::vector<cplx> roots;       // one entry per root with multiplicity
    std::vector<int> multiplicity; // parallel: cluster size at that root
    double max_residual = 0.0;
};

/// Aberth-Ehrlich simultaneous iteration with Newton polishing; residuals
/// are scale-relative. Throws on non-convergence with the best residual in
/// the message.
ComplexRootSet complex_roots(const IntPoly& a, double tol = 1e-12);
/// Same solver on double coefficients (ascending), used when exact
/// composition would blow the coefficient budget.
ComplexRootSet complex_roots(const std::vector<double>& coeffs, double tol = 1e-12);

/// Point on the Riemann sphere in one of two charts: chart 0 holds z with
/// |z| <= 1, chart 1 holds w = 1/z. Infinity is chart 1, w = 0.
struct SpherePoint {
    cplx v;
    int chart = 0;
    static SpherePoint from_z(cplx z);
    static SpherePoint infinity() { return SpherePoint{cplx(0, 0), 1}; }
    bool is_infinity() const;
    cplx to_z() const;  // may overflow to inf for chart-1 points near 0
    double chordal_distance(const SpherePoint& o) const;
};

/// Chart-stable evaluator: precomputes the four chart combinations of f so
/// orbits and derivative cocycles stay finite through infinity.
class SphereMap {
public:
    explicit SphereMap(const RationalMap& f);
    const RationalMap& map() const { return f_; }
    int degree() const { return f_.degree(); }

    SpherePoint apply(const SpherePoint& p) const;
    /// One orbit step together with the derivative of the chart-to-chart
    /// local representative; the product around a cycle is the multiplier.
    std::pair<SpherePoint, cplx> step_with_derivative(const SpherePoint& p) const;

    /// Spherical derivative |f'(z)| (1+|z|^2)/(1+|f(z)|^2) at p.
    double spherical_derivative(const SpherePoint& p) const;

    /// All d preimages of p (with multiplicity), via the degree-d fiber form.
    std::vector<SpherePoint> preimages(const SpherePoint& p, double tol = 1e-12) const;

private:
    RationalMap f_;
    IntPoly num_, den_, num_rev_, den_rev_;  // z-chart and w-chart pairs
    IntPoly dnum_, dden_, dnum_rev_, dden_rev_;
    std::vector<double> wronskian_;          // |W_h| coefficients (homogeneous)
    std::vector<double> fh_, gh_;            // homogeneous pair as doubles
};

/// Numeric multiplier data at exact period n: rho = (f^n)'(z0) via the
/// chain rule along the orbit, chi = log|rho| / n.
struct MultiplierSample {
    cplx rho;
    double chi;
};
std::vector<MultiplierSample> multipliers_numeric(const RationalMap& f, int n);

struct LyapunovEstimate {
    double value = 0;
    double stderr_ = 0;
    std::uint64_t samples = 0;
    std::uint64_t burn_in = 0;
    std::uint64_t seed = 0;
};

/// Brolin-Lyubich backward-orbit sampling of the maximal entropy measure;
/// the estimate averages the log spherical derivative over retained points.
LyapunovEstimate lyapunov_estimate(const RationalMap& f, std::uint64_t samples,
                                   std::uint64_t burn_in, std::uint64_t seed);

/// Smooth test functions on the sphere, catalogued by id (see docs):
///   const1: g = 1
///   coord1: X1 = 2 Re z / (1+|z|^2)
///   coord2: X2 = 2 Im z / (1+|z|^2)
///   coord3: X3 = (|z|^2 - 1) / (1+|z|^2)
///   coord3sq: X3^2
double sphere_test_function(const std::string& id, const SpherePoint& p);
bool sphere_test_function_known(const std::string& id);

/// | avg of g over Fix(f^n) - Monte Carlo integral of g d(mu_f) |.
double equidist_gap(const RationalMap& f, int n, const std::string& test_fn_id,
                    std::uint64_t samples, std::uint64_t seed);

/// Fixed points of f^n as sphere points (d^n + 1 with multiplicity).
/// Uses the exact form when it fits the coefficient budget, otherwise a
/// double-precision composition.
std::vector<SpherePoint> periodic_points_numeric(const RationalMap& f, int n);

struct ChiRow {
    int period;
    double max_chi;
    double mean_chi;   // over repelling samples
    int repelling_count;
};
struct ChiSequence {
    std::vector<ChiRow> rows;
    LyapunovEstimate reference;  // fixed-parameter Lyapunov run for comparison
};
ChiSequence chi_sequence(const RationalMap& f, int nmax);

}  // namespace spectra

#endif
