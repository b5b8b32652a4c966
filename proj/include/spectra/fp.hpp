#ifndef SPECTRA_FP_HPP
#define SPECTRA_FP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "spectra/intpoly.hpp"

namespace spectra {

/// Arithmetic in F_p for word-sized primes (p < 2^62).
struct FpCtx {
    std::uint64_t p;
    explicit FpCtx(std::uint64_t prime);
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    }
    std::uint64_t neg(std::uint64_t a) const { return a ? p - a : 0; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inv(std::uint64_t a) const;
};

/// Dense polynomial over F_p, ascending coefficients, trimmed.
class FpPoly {
public:
    FpPoly() : p_(0) {}
    FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);
    static FpPoly reduce(const IntPoly& a, std::uint64_t p);
    static FpPoly constant(std::uint64_t p, std::uint64_t v);
    static FpPoly x(std::uint64_t p);

    std::uint64_t p() const { return p_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    std::uint64_t lc() const { return c_.back(); }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

    FpPoly scale(std::uint64_t a) const;
    FpPoly monic() const;
    FpPoly derivative() const;
    std::uint64_t eval(std::uint64_t x) const;

    static void divmod(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r);
    static FpPoly gcd(FpPoly a, FpPoly b);  // monic gcd
    static FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m);
    static FpPoly powmod(const FpPoly& base, const mpz_class& e, const FpPoly& m);

    /// Deterministic total order: degree, then coefficients from constant term.
    static int compare(const FpPoly& a, const FpPoly& b);

private:
    void trim();
    std::uint64_t p_;
    std::vector<std::uint64_t> c_;
};

/// Full factorization over F_p: squarefree split, distinct-degree, then
/// equal-degree splitting driven by a counter-based deterministic stream.
/// Requires p not dividing lc(a); factors are monic, sorted by
/// (degree, coefficients), multiplicities aggregated.
std::vector<std::pair<FpPoly, int>> factor_mod_p(const IntPoly& a, std::uint64_t p);

/// Element of F_{p^k} as a coefficient vector modulo the canonical modulus
/// (the lexicographically smallest monic irreducible of degree k over F_p,
/// coefficient tuples compared from the constant term up).
struct FpkElem {
    std::uint64_t p = 0;
    int k = 1;
    std::vector<std::uint64_t> repr;  // size k, reduced to [0, p)

    bool operator==(const FpkElem& o) const { return p == o.p && k == o.k && repr == o.repr; }
    bool is_zero() const;
    bool in_prime_field() const;
    std::string to_string() const;
};

/// Canonical modulus for F_{p^k}; returned monic of degree k.
FpPoly fpk_modulus(std::uint64_t p, int k);

FpkElem fpk_from_base(std::uint64_t p, int k, std::uint64_t v);
FpkElem fpk_add(const FpkElem& a, const FpkElem& b);
FpkElem fpk_sub(const FpkElem& a, const FpkElem& b);
FpkElem fpk_mul(const FpkElem& a, const FpkElem& b);
FpkElem fpk_inv(const FpkElem& a);
/// Evaluate an integer polynomial at an element of F_{p^k}.
FpkElem fpk_eval(const IntPoly& poly, const FpkElem& x);
FpkElem fpk_eval(const FpPoly& poly, const FpkElem& x);

/// All roots of a in F_{p^k}, each repeated per multiplicity, sorted by
/// representation. Requires p not dividing lc(a).
std::vector<FpkElem> roots_in_fpk(const IntPoly& a, std::uint64_t p, int k);

}  // namespace spectra

#endif
