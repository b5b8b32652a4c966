#ifndef SPECTRA_RATIONAL_MAP_HPP
#define SPECTRA_RATIONAL_MAP_HPP

#include <string>
#include <vector>

#include "spectra/intpoly.hpp"

namespace spectra {

/// Homogeneous integer form in (X, Y) of declared degree D; coefficient of
/// X^i Y^(D-i) at index i. Primitive with positive leading (highest X-power)
/// nonzero coefficient. Roots live in P^1 and include infinity = (1 : 0)
/// with multiplicity D - deg(univariate part).
class BinaryForm {
public:
    BinaryForm() : deg_(0) {}
    /// Normalizes (primitivize, sign); coeffs indexed by X-power, length D+1.
    BinaryForm(std::vector<mpz_class> coeffs, int degree);
    /// Form with given affine part and multiplicity at infinity.
    static BinaryForm from_univariate(const IntPoly& p, int inf_mult);

    int degree() const { return deg_; }
    const mpz_class& coeff(std::size_t i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }

    /// Affine slice B(z, 1).
    IntPoly univariate_part() const;
    int inf_multiplicity() const { return deg_ - univariate_part().degree(); }
    bool has_root_at_infinity() const { return inf_multiplicity() > 0; }

    /// Pull the form through z -> 1/(z - c): roots move the same way.
    BinaryForm transform_inverse_shift(const mpz_class& c) const;

    bool operator==(const BinaryForm& o) const { return deg_ == o.deg_ && c_ == o.c_; }

private:
    int deg_;
    std::vector<mpz_class> c_;
};

/// Moebius transformation z -> (a z + b) / (c z + d), ad - bc != 0.
struct Mobius {
    mpq_class a, b, c, d;
    Mobius(mpq_class a_, mpq_class b_, mpq_class c_, mpq_class d_);
    static Mobius identity() { return Mobius(1, 0, 0, 1); }
    /// z -> 1/(z - c)
    static Mobius inverse_shift(const mpq_class& c) { return Mobius(0, 1, 1, -c); }
    Mobius inverse() const;
    Mobius compose(const Mobius& inner) const;  // this after inner
};

class RationalMap;
namespace detail {
RationalMap make_unchecked(IntPoly num, IntPoly den, int deg);
}

/// Endomorphism of P^1 over Q of degree d >= 2, as a coprime jointly
/// primitive integer pair f = num/den with nonzero homogeneous resultant.
class RationalMap {
public:
    int degree() const { return deg_; }
    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    /// Homogeneous coefficient vectors at the common degree d.
    std::vector<mpz_class> num_homog() const;
    std::vector<mpz_class> den_homog() const;

    /// Resultant of the degree-d homogenizations; nonzero by construction.
    /// Computed at parse time for user input, lazily for internal products
    /// (iterates and conjugates are nondegenerate by construction).
    const mpz_class& homog_resultant() const;

    bool operator==(const RationalMap& o) const { return num_ == o.num_ && den_ == o.den_; }

    std::string to_string() const;

    friend RationalMap detail::make_unchecked(IntPoly num, IntPoly den, int deg);

private:
    RationalMap(IntPoly num, IntPoly den, int deg)
        : num_(std::move(num)), den_(std::move(den)), deg_(deg) {}
    IntPoly num_, den_;
    int deg_;
    mutable mpz_class res_ = 0;
    mutable bool res_known_ = false;
};

/// Build a map from exact rational coefficient lists (ascending degree).
/// Clears denominators, removes the joint content and the polynomial gcd,
/// then enforces degree >= 2 and nondegeneracy.
RationalMap parse_normalize(const std::vector<mpq_class>& num, const std::vector<mpq_class>& den);

/// Convenience for fixtures/tests: integer coefficients.
RationalMap make_map(std::initializer_list<long> num, std::initializer_list<long> den);

/// f^n for n >= 1, exact. Errors with budget_error when the serialized
/// coefficients exceed the polynomial budget.
RationalMap iterate(const RationalMap& f, int n);

/// Numerator W = P'Q - PQ' and denominator Q^2 of f'.
std::pair<IntPoly, IntPoly> derivative_parts(const RationalMap& f);

/// m o f o m^(-1), normalized; same degree.
RationalMap conjugate(const RationalMap& f, const Mobius& m);

/// Homogeneous critical form of degree 2d-2 (Wronskian of the pair):
/// roots are the critical points with multiplicity, infinity included.
BinaryForm critical_form(const RationalMap& f);

/// True iff the reduced pair still defines a degree-d map over F_p,
/// i.e. p does not divide the homogeneous resultant.
bool good_reduction(const RationalMap& f, std::uint64_t p);

/// Resultant of two binary forms (coefficient vectors at declared common
/// degree d), via fraction-free elimination of the Sylvester matrix.
mpz_class binary_form_resultant(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g, int d);

/// Exact image f(x) for rational x (infinity handled by the caller via the
/// homogeneous pair). Returns false if x is a pole (image is infinity).
bool eval_map(const RationalMap& f, const mpq_class& x, mpq_class* out);

}  // namespace spectra

#endif
