#ifndef SPECTRA_DYNATOMIC_HPP
#define SPECTRA_DYNATOMIC_HPP

#include <complex>
#include <vector>

#include "spectra/factor_zz.hpp"
#include "spectra/rational_map.hpp"

namespace spectra {

/// Fixed point divisor of f^n: the degree d^n + 1 form Y*F_n - X*G_n whose
/// roots in P^1 are the fixed points of f^n with multiplicity.
BinaryForm fixed_point_form(const RationalMap& f, int n);

/// Exact-period-n divisor, obtained by exact division of the fixed point
/// form by the lower exact-period forms. When a multiplicity collision makes
/// the division inexact the form is recomputed from squarefree parts and
/// flagged.
struct ExactPeriodForm {
    BinaryForm form;
    bool division_fallback = false;
};
ExactPeriodForm exact_period_form(const RationalMap& f, int n);

/// Multiplier polynomial: primitive integer polynomial in lambda whose roots
/// (with multiplicity) are the multipliers (f^n)' at the roots of the chosen
/// form. Degree equals the form degree. Cycles through infinity are moved
/// first by conjugating with z -> 1/(z-c), c the smallest of 0,1,-1,2,-2,...
/// that is not a root of the form.
IntPoly multiplier_polynomial(const RationalMap& f, int n, bool exact_only);

/// Galois conjugacy class of multipliers of a given period.
struct AlgebraicClass {
    IntPoly minpoly;   // primitive irreducible, positive leading coefficient
    int period = 1;
    int multiplicity = 1;  // number of roots of sigma in this class
    bool exact_period = true;

    /// Field norm of the multiplier: (-1)^deg * c_0 / c_deg.
    mpq_class norm() const;
    bool is_zero_class() const;  // minpoly == lambda (superattracting)
};

std::vector<AlgebraicClass> galois_classes(const RationalMap& f, int n, bool exact_only = true);

/// Length spectrum at period n: |multiplier| over all fixed points of f^n,
/// cardinality d^n + 1. Entries within 2^(-precision/2) of 1 are flagged.
struct LengthSpectrum {
    std::vector<double> lengths;       // sorted ascending, with multiplicity
    std::vector<double> repelling;     // the sub-multiset of entries > 1
    std::vector<bool> boundary;        // parallel to lengths
};
LengthSpectrum length_spectrum(const RationalMap& f, int n, int precision_bits = 53);

/// RL*_m = RL_{m!}; m <= 3 by default (budget error beyond).
LengthSpectrum rl_star(const RationalMap& f, int m, int max_m = 3, int precision_bits = 53);

/// Per-period summary of classes and lengths, merged ascending.
struct SpectrumRow {
    int period = 1;
    std::vector<AlgebraicClass> classes;  // classes of the full Fix(f^n) multiplier polynomial
    LengthSpectrum spectrum;
    bool division_fallback = false;
};
std::vector<SpectrumRow> spectrum_table(const RationalMap& f, int nmax, int precision_bits = 53);

}  // namespace spectra

#endif
