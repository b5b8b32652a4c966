#ifndef SPECTRA_INTPOLY_HPP
#define SPECTRA_INTPOLY_HPP

#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace spectra {

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// stored in ascending degree order with no trailing zeros. The zero
/// polynomial is the empty coefficient sequence (degree -1).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(const mpz_class& a);
    /// a * x^k
    static IntPoly monomial(const mpz_class& a, std::size_t k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    /// Coefficient of x^i (zero beyond the degree).
    const mpz_class& coeff(std::size_t i) const;
    const mpz_class& lc() const;  // leading coefficient; poly must be nonzero
    const std::vector<mpz_class>& coeffs() const { return c_; }

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }

    IntPoly mul_scalar(const mpz_class& a) const;
    IntPoly shift(std::size_t k) const;  // * x^k
    IntPoly derivative() const;
    /// x^deg * p(1/x)
    IntPoly reverse() const;

    /// gcd of all coefficients, always >= 0 (0 only for the zero polynomial).
    mpz_class content() const;
    /// p / content with positive leading coefficient; zero stays zero.
    IntPoly primitive_part() const;
    bool is_primitive() const;

    mpz_class eval(const mpz_class& x) const;
    mpq_class eval(const mpq_class& x) const;

    /// Evaluate the degree-d homogenization at (x, y): sum c_i x^i y^(d-i).
    mpz_class eval_homog(const mpz_class& x, const mpz_class& y, int d) const;

    /// Exact division: returns true and sets q when divisor | *this over Q
    /// with integer quotient. Divisor must be nonzero.
    static bool divide_exact(const IntPoly& a, const IntPoly& b, IntPoly* q);

    /// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
    static IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b);

    /// Serialized byte size of the coefficients (budget accounting).
    std::size_t byte_size() const;

    /// Total ordering used wherever deterministic output is required:
    /// by degree, then coefficient-wise from the constant term.
    static int compare(const IntPoly& a, const IntPoly& b);

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

/// Primitive gcd via the subresultant polynomial remainder sequence.
/// Inputs must not both be zero; the result divides both exactly and has
/// positive leading coefficient.
IntPoly subresultant_gcd(const IntPoly& a, const IntPoly& b);

/// Resultant with the convention Res(a, b) = lc(b)^deg(a) * prod a(beta)
/// over the roots beta of b, so that Res(x - a, x - b) = b - a. Both inputs
/// must be nonzero. Zero iff a and b share a root over the closure.
mpz_class resultant(const IntPoly& a, const IntPoly& b);

/// Yun squarefree decomposition: a = content * prod parts[i]^exps[i] with
/// primitive squarefree pairwise-coprime parts, exponents ascending.
struct SquarefreeDecomposition {
    mpz_class content;  // signed cofactor
    std::vector<std::pair<IntPoly, int>> parts;
};
SquarefreeDecomposition squarefree_decomposition(const IntPoly& a);

/// Polynomial with exact rational coefficients, ascending order. Thin
/// plumbing used by parsing, Moebius conjugation and test oracles.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }
    static RatPoly from_int(const IntPoly& p);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const mpq_class& coeff(std::size_t i) const;
    const std::vector<mpq_class>& coeffs() const { return c_; }

    RatPoly operator+(const RatPoly& o) const;
    RatPoly operator-(const RatPoly& o) const;
    RatPoly operator*(const RatPoly& o) const;
    bool operator==(const RatPoly& o) const { return c_ == o.c_; }

    mpq_class eval(const mpq_class& x) const;

    /// Euclidean division a = q * b + r, deg r < deg b.
    static void divmod(const RatPoly& a, const RatPoly& b, RatPoly* q, RatPoly* r);

    /// Clear denominators: p = (num / den) with num a primitive IntPoly
    /// (positive leading coefficient) and den > 0... content returned so
    /// that *this = content * num.
    std::pair<IntPoly, mpq_class> to_primitive() const;

private:
    void trim();
    std::vector<mpq_class> c_;
};

}  // namespace spectra

#endif
