#include "spectra/dynatomic.hpp"

#include <algorithm>
#include <map>

#include "spectra/error.hpp"
#include "spectra/fp.hpp"

namespace spectra {

BinaryForm fixed_point_form(const RationalMap& f, int n) {
    if (n < 1) throw invalid_input_error("period must be >= 1");
    RationalMap fn = iterate(f, n);
    int d = fn.degree();
    std::vector<mpz_class> F = fn.num_homog(), G = fn.den_homog();
    // Y*F - X*G, degree d+1
    std::vector<mpz_class> phi(static_cast<std::size_t>(d) + 2, mpz_class(0));
    for (int i = 0; i <= d; ++i) {
        phi[static_cast<std::size_t>(i)] += F[static_cast<std::size_t>(i)];
        phi[static_cast<std::size_t>(i + 1)] -= G[static_cast<std::size_t>(i)];
    }
    return BinaryForm(std::move(phi), d + 1);
}

namespace {

std::vector<int> proper_divisors(int n) {
    std::vector<int> out;
    for (int m = 1; m < n; ++m)
        if (n % m == 0) out.push_back(m);
    return out;
}

IntPoly radical(const IntPoly& p) {
    IntPoly r = IntPoly::constant(1);
    for (const auto& [part, e] : squarefree_decomposition(p).parts) r = r * part;
    return r;
}

ExactPeriodForm exact_period_form_memo(const RationalMap& f, int n, std::map<int, ExactPeriodForm>* memo) {
    auto it = memo->find(n);
    if (it != memo->end()) return it->second;
    BinaryForm phi = fixed_point_form(f, n);
    ExactPeriodForm out{phi, false};
    if (n > 1) {
        IntPoly univ = phi.univariate_part();
        int inf_mult = phi.inf_multiplicity();
        bool ok = true;
        for (int m : proper_divisors(n)) {
            ExactPeriodForm em = exact_period_form_memo(f, m, memo);
            IntPoly q;
            if (!IntPoly::divide_exact(univ, em.form.univariate_part(), &q)) {
                ok = false;
                break;
            }
            univ = q;
            inf_mult -= em.form.inf_multiplicity();
        }
        if (ok && inf_mult >= 0 && !univ.is_zero()) {
            out.form = BinaryForm::from_univariate(univ.primitive_part(), inf_mult);
        } else {
            // multiplicity collision: rebuild from squarefree parts, removing
            // every root of strictly lower period
            IntPoly s = radical(phi.univariate_part());
            int inf_s = phi.inf_multiplicity() > 0 ? 1 : 0;
            for (int m : proper_divisors(n)) {
                BinaryForm lower = fixed_point_form(f, m);
                IntPoly g = subresultant_gcd(s, radical(lower.univariate_part()));
                if (g.degree() > 0) {
                    IntPoly q;
                    if (!IntPoly::divide_exact(s, g, &q)) throw internal_error("radical division failed");
                    s = q;
                }
                if (lower.inf_multiplicity() > 0) inf_s = 0;
            }
            out.form = BinaryForm::from_univariate(s.primitive_part(), inf_s);
            out.division_fallback = true;
        }
    }
    memo->emplace(n, out);
    return out;
}

}  // namespace

ExactPeriodForm exact_period_form(const RationalMap& f, int n) {
    if (n < 1) throw invalid_input_error("period must be >= 1");
    std::map<int, ExactPeriodForm> memo;
    return exact_period_form_memo(f, n, &memo);
}

// ---------------------------------------------------------------------------
// multiplier polynomial via a CRT modular resultant

namespace {

// Euclidean resultant over F_p of a (exact degree da kept by caller) and b.
// Returns 0 when a common factor appears.
std::uint64_t resultant_fp(const FpCtx& F, std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto deg = [](const std::vector<std::uint64_t>& v) { return static_cast<int>(v.size()) - 1; };
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    std::uint64_t res = 1;
    bool negate = false;
    while (deg(b) > 0) {
        // rem = a mod b
        std::uint64_t binv = F.inv(b.back());
        std::vector<std::uint64_t> rem = a;
        int da = deg(a), db = deg(b);
        for (int k = da - db; k >= 0; --k) {
            std::uint64_t c = F.mul(rem[static_cast<std::size_t>(k + db)], binv);
            if (c) {
                for (int i = 0; i <= db; ++i)
                    rem[static_cast<std::size_t>(k + i)] = F.sub(rem[static_cast<std::size_t>(k + i)], F.mul(c, b[static_cast<std::size_t>(i)]));
            }
        }
        trim(rem);
        if (rem.empty()) return 0;
        int dr = deg(rem);
        // res *= lc(b)^(da - dr) * (-1)^(da*db)
        std::uint64_t lcb = b.back();
        res = F.mul(res, F.pow(lcb, static_cast<std::uint64_t>(da - dr)));
        if ((da & 1) && (db & 1)) negate = !negate;
        a = std::move(b);
        b = std::move(rem);
    }
    // deg b == 0
    res = F.mul(res, F.pow(b[0], static_cast<std::uint64_t>(deg(a))));
    return negate ? F.neg(res) : res;
}

// reduce c mod a over F_p (a monic not required; exact-degree leading coeff)
std::vector<std::uint64_t> poly_mod_fp(const FpCtx& F, std::vector<std::uint64_t> c, const std::vector<std::uint64_t>& a) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(c);
    int da = static_cast<int>(a.size()) - 1;
    std::uint64_t ainv = F.inv(a.back());
    while (static_cast<int>(c.size()) - 1 >= da) {
        int k = static_cast<int>(c.size()) - 1 - da;
        std::uint64_t q = F.mul(c.back(), ainv);
        if (q) {
            for (int i = 0; i <= da; ++i)
                c[static_cast<std::size_t>(k + i)] = F.sub(c[static_cast<std::size_t>(k + i)], F.mul(q, a[static_cast<std::size_t>(i)]));
        }
        c.pop_back();
        trim(c);
        if (c.empty()) break;
    }
    return c;
}

std::vector<std::uint64_t> to_fp_vec(const IntPoly& p, std::uint64_t q) {
    FpPoly r = FpPoly::reduce(p, q);
    return r.coeffs();
}

// sigma(lambda) = primitive part of Res_z(A, lambda*B - W), computed mod
// word primes and recombined by CRT. Early termination once the symmetric
// reconstruction is stable with a wide modulus margin; hard stop at the
// Landau/L1 coefficient bound.
IntPoly sigma_resultant(const IntPoly& A, const IntPoly& W, const IntPoly& B) {
    int D = A.degree();
    if (D < 1) throw internal_error("sigma: trivial form");
    int e = std::max(W.degree(), B.degree());
    if (e < 0) throw internal_error("sigma: zero derivative data");

    // bound: ||R||_1 <= ||A||_2^e * (||B||_1 + ||W||_1)^D
    mpz_class a2sq(0);
    for (const auto& c : A.coeffs()) a2sq += c * c;
    mpz_class bw1(0);
    for (const auto& c : B.coeffs()) bw1 += abs(c);
    for (const auto& c : W.coeffs()) bw1 += abs(c);
    double bound_bits = 0.5 * static_cast<double>(e) * (mpz_sizeinbase(a2sq.get_mpz_t(), 2)) +
                        static_cast<double>(D) * (mpz_sizeinbase(bw1.get_mpz_t(), 2)) + 64.0;

    std::vector<mpz_class> coeffs(static_cast<std::size_t>(D) + 1, mpz_class(0));
    std::vector<mpz_class> stable_view;
    mpz_class modulus(1);
    int stable_count = 0;
    double modulus_bits = 0;

    mpz_class prime(1);
    prime <<= 61;  // march upward from 2^61
    while (true) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        std::uint64_t q = prime.get_ui();
        if (mpz_divisible_p(A.lc().get_mpz_t(), prime.get_mpz_t())) continue;
        FpCtx F(q);
        std::vector<std::uint64_t> aq = to_fp_vec(A, q);
        if (static_cast<int>(aq.size()) - 1 != D) continue;  // degree dropped
        std::vector<std::uint64_t> wq = to_fp_vec(W, q);
        std::vector<std::uint64_t> bq = to_fp_vec(B, q);
        // reduce mod A once; lambda*B - W stays linear in lambda after mod
        std::vector<std::uint64_t> wr = poly_mod_fp(F, wq, aq);
        std::vector<std::uint64_t> br = poly_mod_fp(F, bq, aq);
        std::uint64_t lcA = aq.back();

        // evaluate R(t) for t = 0..D
        std::vector<std::uint64_t> vals(static_cast<std::size_t>(D) + 1);
        std::vector<std::uint64_t> ts(static_cast<std::size_t>(D) + 1);
        for (int t = 0; t <= D; ++t) {
            ts[static_cast<std::size_t>(t)] = static_cast<std::uint64_t>(t);
            // C'_t = t*br - wr
            std::size_t len = std::max(br.size(), wr.size());
            std::vector<std::uint64_t> ct(len, 0);
            for (std::size_t i = 0; i < len; ++i) {
                std::uint64_t bv = i < br.size() ? br[i] : 0;
                std::uint64_t wv = i < wr.size() ? wr[i] : 0;
                ct[i] = F.sub(F.mul(static_cast<std::uint64_t>(t), bv), wv);
            }
            while (!ct.empty() && ct.back() == 0) ct.pop_back();
            std::uint64_t val;
            if (ct.empty()) {
                val = 0;  // A divides C_t: resultant vanishes
            } else {
                int dct = static_cast<int>(ct.size()) - 1;
                std::uint64_t scale = F.pow(lcA, static_cast<std::uint64_t>(e - dct));
                val = F.mul(scale, resultant_fp(F, aq, ct));
            }
            vals[static_cast<std::size_t>(t)] = val;
        }

        // Lagrange interpolation over F_q: master polynomial + synthetic division
        std::vector<std::uint64_t> poly(static_cast<std::size_t>(D) + 1, 0);
        {
            std::vector<std::uint64_t> master{1};  // prod (x - t_j)
            for (int j = 0; j <= D; ++j) {
                master.push_back(0);
                for (std::size_t m = master.size() - 1; m > 0; --m)
                    master[m] = F.sub(master[m - 1], F.mul(master[m], ts[static_cast<std::size_t>(j)]));
                master[0] = F.mul(F.neg(ts[static_cast<std::size_t>(j)]), master[0]);
            }
            std::vector<std::uint64_t> basis(static_cast<std::size_t>(D) + 1);
            for (int i = 0; i <= D; ++i) {
                if (!vals[static_cast<std::size_t>(i)]) continue;
                std::uint64_t ti = ts[static_cast<std::size_t>(i)];
                // basis = master / (x - t_i), then denom = basis(t_i)
                std::uint64_t carry = master[static_cast<std::size_t>(D) + 1];
                for (int m = D; m >= 0; --m) {
                    basis[static_cast<std::size_t>(m)] = carry;
                    carry = F.add(master[static_cast<std::size_t>(m)], F.mul(ti, carry));
                }
                std::uint64_t denom = 0;
                for (int m = D; m >= 0; --m) denom = F.add(F.mul(denom, ti), basis[static_cast<std::size_t>(m)]);
                std::uint64_t c = F.mul(vals[static_cast<std::size_t>(i)], F.inv(denom));
                for (int m = 0; m <= D; ++m)
                    poly[static_cast<std::size_t>(m)] = F.add(poly[static_cast<std::size_t>(m)], F.mul(c, basis[static_cast<std::size_t>(m)]));
            }
        }

        // CRT combine
        mpz_class qz(static_cast<unsigned long>(q));
        if (modulus == 1) {
            for (int i = 0; i <= D; ++i) coeffs[static_cast<std::size_t>(i)] = mpz_class(static_cast<unsigned long>(poly[static_cast<std::size_t>(i)]));
            modulus = qz;
        } else {
            mpz_class minv;
            mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), qz.get_mpz_t());
            for (int i = 0; i <= D; ++i) {
                mpz_class cur = coeffs[static_cast<std::size_t>(i)] % qz;
                if (cur < 0) cur += qz;
                mpz_class delta = (mpz_class(static_cast<unsigned long>(poly[static_cast<std::size_t>(i)])) - cur) * minv % qz;
                if (delta < 0) delta += qz;
                coeffs[static_cast<std::size_t>(i)] += delta * modulus;
            }
            modulus *= qz;
        }
        modulus_bits += 61.0;

        // symmetric lift + stability bookkeeping
        std::vector<mpz_class> view(coeffs);
        mpz_class half = modulus / 2;
        std::size_t max_bits = 1;
        for (auto& v : view) {
            if (v > half) v -= modulus;
            max_bits = std::max(max_bits, mpz_sizeinbase(v.get_mpz_t(), 2));
        }
        if (view == stable_view) {
            ++stable_count;
        } else {
            stable_view = view;
            stable_count = 0;
        }
        bool margin_ok = modulus_bits > static_cast<double>(max_bits) + 192.0;
        if ((stable_count >= 5 && margin_ok) || modulus_bits > bound_bits) {
            IntPoly sigma(std::move(stable_view));
            if (sigma.degree() != D) throw internal_error("sigma degree mismatch");
            return sigma.primitive_part();
        }
    }
}

}  // namespace

IntPoly multiplier_polynomial(const RationalMap& f, int n, bool exact_only) {
    if (n < 1) throw invalid_input_error("period must be >= 1");
    BinaryForm form = exact_only ? exact_period_form(f, n).form : fixed_point_form(f, n);
    RationalMap fn = iterate(f, n);
    if (form.has_root_at_infinity()) {
        // move the infinity cycle with z -> 1/(z-c), c the smallest
        // non-root of the form among 0, 1, -1, 2, -2, ...
        IntPoly univ = form.univariate_part();
        mpz_class c(0);
        for (long step = 1;; ++step) {
            if (univ.eval(c) != 0) break;
            c = (step % 2 == 1) ? mpz_class((step + 1) / 2) : mpz_class(-(step + 1) / 2);
        }
        fn = conjugate(fn, Mobius::inverse_shift(mpq_class(c)));
        form = form.transform_inverse_shift(c);
        if (form.has_root_at_infinity()) throw internal_error("conjugation left a root at infinity");
    }
    auto [w, b] = derivative_parts(fn);
    return sigma_resultant(form.univariate_part(), w, b);
}

mpq_class AlgebraicClass::norm() const {
    int d = minpoly.degree();
    mpq_class n(minpoly.coeff(0), minpoly.lc());
    n.canonicalize();
    return (d % 2 == 0) ? n : -n;
}

bool AlgebraicClass::is_zero_class() const { return minpoly == IntPoly{0, 1}; }

std::vector<AlgebraicClass> galois_classes(const RationalMap& f, int n, bool exact_only) {
    IntPoly sigma = multiplier_polynomial(f, n, exact_only);
    Factorization fac = factor_over_Z(sigma);
    std::vector<AlgebraicClass> out;
    for (const auto& [minpoly, mult] : fac.factors)
        out.push_back(AlgebraicClass{minpoly, n, mult, exact_only});
    return out;
}

}  // namespace spectra
