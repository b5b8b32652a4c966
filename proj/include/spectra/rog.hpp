#ifndef SPECTRA_ROG_HPP
#define SPECTRA_ROG_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spectra/dynatomic.hpp"

namespace spectra {

/// Element of D(Q)_Q in prime-valuation coordinates: a sparse association
/// prime -> rational exponent. Signs and roots of unity are quotiented away,
/// so only |.| matters on construction. Zero-valued entries are never stored.
class RogVector {
public:
    RogVector() = default;
    explicit RogVector(std::map<mpz_class, mpq_class> entries);

    const std::map<mpz_class, mpq_class>& entries() const { return e_; }
    bool empty() const { return e_.empty(); }
    /// Valuation coordinate at p (0 when absent). The paper's phi_p value is
    /// this times log p; the positive factor never affects signs or ranks.
    mpq_class phi(const mpz_class& p) const;

    RogVector operator+(const RogVector& o) const;
    RogVector scale(const mpq_class& a) const;
    bool operator==(const RogVector& o) const { return e_ == o.e_; }

    std::string to_string() const;

private:
    std::map<mpz_class, mpq_class> e_;
};

/// rog of a nonzero rational: the prime exponents of |q|.
RogVector rog_of_rational(const mpq_class& q);

/// Norm vector of a multiplier class: (1/deg minpoly) * rog(|N|), where N is
/// the field norm of the class. Classes with N = 0 (minpoly divisible by
/// lambda) are outside Per* and rejected.
struct ClassVector {
    AlgebraicClass cls;
    RogVector vector;
    mpq_class norm;  // exact field norm N
};
ClassVector norm_vector(const AlgebraicClass& c);

/// Exact Q-rank of the span, by fraction-free elimination over the primes
/// that appear.
int rank(const std::vector<RogVector>& vs);

/// (v + w)/2 entrywise: the tau-involution fold. Identity-tau pairs fold to
/// themselves; kept general for the V = W bookkeeping.
RogVector fold_involution(const RogVector& v, const RogVector& w);

/// Upper-triangle O-system: rows (class vector, prime) with the matrix
/// phi_{v_j}(lambda_i); verified when the diagonal is positive, entries with
/// j > i vanish, and everything is nonnegative.
struct TriangleRow {
    ClassVector cv;
    mpz_class prime;
};
struct TriangleCertificate {
    std::vector<TriangleRow> rows;
    std::vector<std::vector<mpq_class>> phi_matrix;  // [i][j] = phi_{v_j}(lambda_i)
    bool verified = false;
    int achieved_dim = 0;
    bool budget_exhausted = false;
};

struct TriangleViolation {
    int i, j;
    std::string reason;
};

/// Re-check a certificate; returns the first violating entry on failure.
std::optional<TriangleViolation> verify_upper_triangle(TriangleCertificate* cert);

/// Greedy construction following the sieve hits in ascending prime order;
/// falls back to direct class enumeration for maps without a marked
/// non-preperiodic critical point. Partial certificates carry
/// budget_exhausted = true.
TriangleCertificate independence_certificate(const RationalMap& f, int target_dim,
                                             std::uint64_t prime_max, int period_max);

}  // namespace spectra

#endif
