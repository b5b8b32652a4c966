#include "spectra/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

std::uint64_t DetRng::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

double DetRng::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint32_t DetRng::below(std::uint32_t n) {
    // Lemire bounded rejection, deterministic
    std::uint64_t x = next() >> 32;
    std::uint64_t m = x * n;
    std::uint32_t l = static_cast<std::uint32_t>(m);
    if (l < n) {
        std::uint32_t t = (~n + 1) % n;
        while (l < t) {
            x = next() >> 32;
            m = x * n;
            l = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

// ---------------------------------------------------------------------------
// scaled complex Horner and the Aberth-Ehrlich solver

namespace {

// value = v * 2^exp2 with |v| kept in a window so frame alignment on
// addition never overflows a double
struct ScaledValue {
    cplx v;
    long exp2 = 0;
};

ScaledValue sv_renorm(ScaledValue s) {
    double m = std::abs(s.v.real()) + std::abs(s.v.imag());
    while (m > 0x1.0p+64) {
        s.v *= 0x1.0p-64;
        s.exp2 += 64;
        m *= 0x1.0p-64;
    }
    while (m > 0 && m < 0x1.0p-64) {
        s.v *= 0x1.0p+64;
        s.exp2 -= 64;
        m *= 0x1.0p+64;
    }
    return s;
}

ScaledValue sv_of(cplx c) {
    if (c == cplx(0, 0)) return {cplx(0, 0), 0};
    return sv_renorm({c, 0});
}

ScaledValue sv_mul(const ScaledValue& a, cplx z) { return sv_renorm({a.v * z, a.exp2}); }

ScaledValue sv_add(ScaledValue a, ScaledValue b) {
    if (a.v == cplx(0, 0)) return b;
    if (b.v == cplx(0, 0)) return a;
    if (a.exp2 < b.exp2) std::swap(a, b);
    long delta = a.exp2 - b.exp2;
    if (delta > 160) return a;  // b is negligible at double precision
    return sv_renorm({a.v + b.v * std::ldexp(1.0, static_cast<int>(-delta)), a.exp2});
}

// Evaluate p, p' and the absolute-value scale sum |a_k||z|^k together.
struct HornerOut {
    ScaledValue p, dp;
    ScaledValue scale;  // nonnegative real carried in scale.v.real()
};

HornerOut horner_scaled(const std::vector<cplx>& c, cplx z) {
    HornerOut o;
    double az = std::abs(z);
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
        o.dp = sv_add(sv_mul(o.dp, z), o.p);
        o.p = sv_add(sv_mul(o.p, z), sv_of(c[static_cast<std::size_t>(i)]));
        o.scale = sv_add(sv_mul(o.scale, az), sv_of(std::abs(c[static_cast<std::size_t>(i)])));
    }
    return o;
}

double scaled_ratio(const ScaledValue& num, const ScaledValue& den) {
    // |num/den| as double, saturating
    double n = std::abs(num.v), d = std::abs(den.v);
    if (d == 0) return n == 0 ? 0.0 : HUGE_VAL;
    long e = num.exp2 - den.exp2;
    if (e > 2000) return HUGE_VAL;
    if (e < -2000) return 0.0;
    return n / d * std::pow(2.0, static_cast<double>(e));
}

cplx scaled_div(const ScaledValue& num, const ScaledValue& den) {
    if (std::abs(den.v) == 0) return cplx(HUGE_VAL, 0);
    cplx r = num.v / den.v;
    long e = num.exp2 - den.exp2;
    if (e > 1000 || e < -1000) return r * std::pow(2.0, static_cast<double>(e));
    return r * std::ldexp(1.0, static_cast<int>(e));
}

// Initial guesses from the upper convex hull of (i, log|a_i|) (Bini).
std::vector<cplx> initial_guesses(const std::vector<cplx>& c) {
    int n = static_cast<int>(c.size()) - 1;
    std::vector<double> logs(static_cast<std::size_t>(n) + 1, -1e300);
    for (int i = 0; i <= n; ++i) {
        double a = std::abs(c[static_cast<std::size_t>(i)]);
        if (a > 0) logs[static_cast<std::size_t>(i)] = std::log(a);
    }
    // upper convex hull indices
    std::vector<int> hull;
    for (int i = 0; i <= n; ++i) {
        if (logs[static_cast<std::size_t>(i)] <= -1e299) continue;
        while (hull.size() >= 2) {
            int j = hull[hull.size() - 1], k = hull[hull.size() - 2];
            // drop j if it is below the chord k..i
            double lhs = (logs[static_cast<std::size_t>(j)] - logs[static_cast<std::size_t>(k)]) * (i - k);
            double rhs = (logs[static_cast<std::size_t>(i)] - logs[static_cast<std::size_t>(k)]) * (j - k);
            if (lhs <= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    std::vector<cplx> guesses;
    guesses.reserve(static_cast<std::size_t>(n));
    const double golden = 0.713724378;
    int seg = 0;
    for (std::size_t h = 0; h + 1 < hull.size(); ++h, ++seg) {
        int i1 = hull[h], i2 = hull[h + 1];
        double r = std::exp((logs[static_cast<std::size_t>(i1)] - logs[static_cast<std::size_t>(i2)]) / (i2 - i1));
        int count = i2 - i1;
        for (int j = 0; j < count; ++j) {
            double theta = 2.0 * M_PI * (static_cast<double>(j) / count + golden * (seg + 1));
            guesses.push_back(std::polar(r, theta));
        }
    }
    while (static_cast<int>(guesses.size()) < n) guesses.push_back(std::polar(1.0, 2.0 * M_PI * guesses.size() / n));
    return guesses;
}

ComplexRootSet aberth_core(std::vector<cplx> c, double tol) {
    ComplexRootSet out;
    // strip zero leading coefficients (exact zeros only)
    while (c.size() > 1 && c.back() == cplx(0, 0)) c.pop_back();
    if (c.size() <= 1) throw invalid_input_error("root finding needs degree >= 1");
    // roots at zero
    std::size_t zeros = 0;
    while (zeros + 1 < c.size() && c[zeros] == cplx(0, 0)) ++zeros;
    std::vector<cplx> work(c.begin() + static_cast<long>(zeros), c.end());
    int n = static_cast<int>(work.size()) - 1;

    std::vector<cplx> z;
    double worst = 0;
    if (n > 0) {
        z = initial_guesses(work);
        std::vector<bool> done(static_cast<std::size_t>(n), false);
        // freeze only at the rounding floor (resid) or when the correction
        // stalls; the user tolerance is applied as the final audit so points
        // cannot park far from a root while passing a loose backward test
        const double floor_resid = 8.0 * 2.220446049250313e-16;
        const int max_iters = 600;
        bool converged = false;
        for (int iter = 0; iter < max_iters && !converged; ++iter) {
            converged = true;
            for (int i = 0; i < n; ++i) {
                if (done[static_cast<std::size_t>(i)]) continue;
                HornerOut h = horner_scaled(work, z[static_cast<std::size_t>(i)]);
                double resid = scaled_ratio(h.p, h.scale);
                if (resid <= floor_resid) {
                    done[static_cast<std::size_t>(i)] = true;
                    continue;
                }
                converged = false;
                cplx newton = scaled_div(h.p, h.dp);
                cplx s(0, 0);
                for (int j = 0; j < n; ++j)
                    if (j != i) s += 1.0 / (z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]);
                cplx denom = 1.0 - newton * s;
                cplx w = std::abs(denom) > 1e-300 ? newton / denom : newton;
                if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
                    z[static_cast<std::size_t>(i)] -= w;
                    if (std::abs(w) <= 4e-16 * (1.0 + std::abs(z[static_cast<std::size_t>(i)])))
                        done[static_cast<std::size_t>(i)] = true;
                } else {
                    z[static_cast<std::size_t>(i)] *= cplx(0.99, 0.01);  // nudge off a degenerate configuration
                }
            }
        }
        // monotone Newton polish and residual audit
        worst = 0;
        for (int i = 0; i < n; ++i) {
            HornerOut h = horner_scaled(work, z[static_cast<std::size_t>(i)]);
            double resid = scaled_ratio(h.p, h.scale);
            for (int k = 0; k < 3; ++k) {
                cplx step = scaled_div(h.p, h.dp);
                if (!(std::isfinite(step.real()) && std::isfinite(step.imag()))) break;
                cplx cand = z[static_cast<std::size_t>(i)] - step;
                HornerOut h2 = horner_scaled(work, cand);
                double r2 = scaled_ratio(h2.p, h2.scale);
                if (r2 >= resid) break;
                z[static_cast<std::size_t>(i)] = cand;
                h = h2;
                resid = r2;
            }
            worst = std::max(worst, resid);
        }
        if (worst > tol) {
            std::ostringstream os;
            os << "root finder did not converge; best residual " << worst;
            throw internal_error(os.str());
        }
    }

    // cluster for multiplicity estimates
    std::vector<cplx> all;
    for (std::size_t i = 0; i < zeros; ++i) all.push_back(cplx(0, 0));
    for (int i = 0; i < n; ++i) all.push_back(z[static_cast<std::size_t>(i)]);
    std::sort(all.begin(), all.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<bool> used(all.size(), false);
    std::vector<std::pair<cplx, int>> clusters;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (used[i]) continue;
        cplx sum = all[i];
        int count = 1;
        used[i] = true;
        double radius = 5e-5 * (1.0 + std::abs(all[i]));
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (!used[j] && std::abs(all[j] - all[i]) < radius) {
                sum += all[j];
                ++count;
                used[j] = true;
            }
        }
        clusters.emplace_back(sum / static_cast<double>(count), count);
    }
    for (const auto& [center, count] : clusters) {
        for (int i = 0; i < count; ++i) {
            out.roots.push_back(center);
            out.multiplicity.push_back(count);
        }
    }
    out.max_residual = worst;
    return out;
}

std::vector<cplx> to_cplx(const IntPoly& a) {
    // common power-of-two scaling so huge integer coefficients stay finite
    long max_exp = -100000;
    std::vector<std::pair<double, long>> parts(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        long e;
        double m = mpz_get_d_2exp(&e, a.coeff(i).get_mpz_t());
        parts[i] = {m, e};
        if (m != 0) max_exp = std::max(max_exp, e);
    }
    std::vector<cplx> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [m, e] = parts[i];
        c[i] = (m == 0) ? cplx(0, 0) : cplx(std::ldexp(m, static_cast<int>(e - max_exp)), 0);
    }
    return c;
}

}  // namespace

ComplexRootSet complex_roots(const IntPoly& a, double tol) {
    if (a.degree() < 1) throw invalid_input_error("root finding needs degree >= 1");
    return aberth_core(to_cplx(a), tol);
}

ComplexRootSet complex_roots(const std::vector<double>& coeffs, double tol) {
    std::vector<cplx> c(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = cplx(coeffs[i], 0);
    return aberth_core(std::move(c), tol);
}

// ---------------------------------------------------------------------------
// sphere geometry

SpherePoint SpherePoint::from_z(cplx z) {
    if (std::abs(z) <= 1.0) return SpherePoint{z, 0};
    return SpherePoint{1.0 / z, 1};
}

bool SpherePoint::is_infinity() const { return chart == 1 && v == cplx(0, 0); }

cplx SpherePoint::to_z() const { return chart == 0 ? v : 1.0 / v; }

double SpherePoint::chordal_distance(const SpherePoint& o) const {
    // |x1 y2 - x2 y1| / (||p1|| ||p2||) with chart representatives
    cplx x1 = chart == 0 ? v : cplx(1, 0);
    cplx y1 = chart == 0 ? cplx(1, 0) : v;
    cplx x2 = o.chart == 0 ? o.v : cplx(1, 0);
    cplx y2 = o.chart == 0 ? cplx(1, 0) : o.v;
    double n1 = std::sqrt(std::norm(x1) + std::norm(y1));
    double n2 = std::sqrt(std::norm(x2) + std::norm(y2));
    return std::abs(x1 * y2 - x2 * y1) / (n1 * n2);
}

namespace {

cplx eval_poly(const IntPoly& p, cplx z) {
    cplx acc(0, 0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * z + cplx(p.coeff(static_cast<std::size_t>(i)).get_d(), 0);
    return acc;
}

std::vector<double> to_doubles(const std::vector<mpz_class>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
    return out;
}

}  // namespace

SphereMap::SphereMap(const RationalMap& f) : f_(f) {
    int d = f.degree();
    std::vector<mpz_class> F = f.num_homog(), G = f.den_homog();
    num_ = f.num();
    den_ = f.den();
    std::vector<mpz_class> nr(F.rbegin(), F.rend()), dr(G.rbegin(), G.rend());
    num_rev_ = IntPoly(std::move(nr));
    den_rev_ = IntPoly(std::move(dr));
    dnum_ = num_.derivative();
    dden_ = den_.derivative();
    dnum_rev_ = num_rev_.derivative();
    dden_rev_ = den_rev_.derivative();
    // homogeneous Wronskian F_X G_Y - F_Y G_X as doubles
    std::vector<double> w(static_cast<std::size_t>(2 * d - 2) + 1, 0.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            double fx = mpz_class(F[static_cast<std::size_t>(i + 1)] * (i + 1)).get_d();
            double gy = mpz_class(G[static_cast<std::size_t>(j)] * (d - j)).get_d();
            double fy = mpz_class(F[static_cast<std::size_t>(i)] * (d - i)).get_d();
            double gx = mpz_class(G[static_cast<std::size_t>(j + 1)] * (j + 1)).get_d();
            w[static_cast<std::size_t>(i + j)] += fx * gy - fy * gx;
        }
    }
    wronskian_ = std::move(w);
    fh_ = to_doubles(F);
    gh_ = to_doubles(G);
}

SpherePoint SphereMap::apply(const SpherePoint& p) const {
    return step_with_derivative(p).first;
}

std::pair<SpherePoint, cplx> SphereMap::step_with_derivative(const SpherePoint& p) const {
    const IntPoly& A = p.chart == 0 ? num_ : num_rev_;
    const IntPoly& B = p.chart == 0 ? den_ : den_rev_;
    const IntPoly& dA = p.chart == 0 ? dnum_ : dnum_rev_;
    const IntPoly& dB = p.chart == 0 ? dden_ : dden_rev_;
    cplx X = eval_poly(A, p.v), Y = eval_poly(B, p.v);
    double ax = std::abs(X), ay = std::abs(Y);
    if (!(std::isfinite(ax) && std::isfinite(ay)) || (ax == 0 && ay == 0))
        throw internal_error("sphere map evaluation degenerate");
    SpherePoint out;
    cplx w = eval_poly(dA, p.v) * Y - X * eval_poly(dB, p.v);
    cplx deriv;
    if (ax <= ay) {
        out = SpherePoint{X / Y, 0};
        deriv = w / (Y * Y);
    } else {
        out = SpherePoint{Y / X, 1};
        deriv = -w / (X * X);
    }
    return {out, deriv};
}

double SphereMap::spherical_derivative(const SpherePoint& p) const {
    cplx x = p.chart == 0 ? p.v : cplx(1, 0);
    cplx y = p.chart == 0 ? cplx(1, 0) : p.v;
    int d = f_.degree();
    auto eval_homog = [](const std::vector<double>& c, cplx X, cplx Y, int deg) {
        // sum c_i X^i Y^(deg-i); |X|,|Y| <= 1 keeps this stable
        cplx acc(0, 0);
        std::vector<cplx> xp(static_cast<std::size_t>(deg) + 1), yp(static_cast<std::size_t>(deg) + 1);
        xp[0] = yp[0] = cplx(1, 0);
        for (int i = 1; i <= deg; ++i) {
            xp[static_cast<std::size_t>(i)] = xp[static_cast<std::size_t>(i - 1)] * X;
            yp[static_cast<std::size_t>(i)] = yp[static_cast<std::size_t>(i - 1)] * Y;
        }
        for (int i = 0; i <= deg && i < static_cast<int>(c.size()); ++i)
            acc += c[static_cast<std::size_t>(i)] * xp[static_cast<std::size_t>(i)] * yp[static_cast<std::size_t>(deg - i)];
        return acc;
    };
    double nw = std::abs(eval_homog(wronskian_, x, y, 2 * d - 2));
    double nf = std::norm(eval_homog(fh_, x, y, d));
    double ng = std::norm(eval_homog(gh_, x, y, d));
    double n2 = std::norm(x) + std::norm(y);
    return n2 * nw / (static_cast<double>(d) * (nf + ng));
}

std::vector<SpherePoint> SphereMap::preimages(const SpherePoint& p, double tol) const {
    // fiber form: x * G(W,V) - y * F(W,V) = 0, degree d
    cplx x = p.chart == 0 ? p.v : cplx(1, 0);
    cplx y = p.chart == 0 ? cplx(1, 0) : p.v;
    int d = f_.degree();
    std::vector<cplx> q(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) q[static_cast<std::size_t>(i)] = x * gh_[static_cast<std::size_t>(i)] - y * fh_[static_cast<std::size_t>(i)];
    // strip exact-zero leading coefficients: each drop is a preimage at infinity
    int eff = d;
    while (eff > 0 && q[static_cast<std::size_t>(eff)] == cplx(0, 0)) --eff;
    std::vector<SpherePoint> out;
    for (int i = eff; i < d; ++i) out.push_back(SpherePoint::infinity());
    if (eff >= 1) {
        std::vector<cplx> qq(q.begin(), q.begin() + eff + 1);
        ComplexRootSet roots = aberth_core(std::move(qq), tol);
        for (const cplx& r : roots.roots) out.push_back(SpherePoint::from_z(r));
    }
    std::sort(out.begin(), out.end(), [](const SpherePoint& a, const SpherePoint& b) {
        if (a.chart != b.chart) return a.chart < b.chart;
        if (a.v.real() != b.v.real()) return a.v.real() < b.v.real();
        return a.v.imag() < b.v.imag();
    });
    return out;
}

// ---------------------------------------------------------------------------
// multipliers along orbits

namespace {

std::vector<SpherePoint> form_roots(const BinaryForm& form, double tol) {
    // root-find each squarefree part separately: repeated roots of the full
    // form are exactly resolved and the parts have simple roots
    std::vector<SpherePoint> pts;
    IntPoly univ = form.univariate_part();
    if (univ.degree() >= 1) {
        for (const auto& [part, mult] : squarefree_decomposition(univ).parts) {
            if (part.degree() < 1) continue;
            ComplexRootSet roots = complex_roots(part, tol);
            for (const cplx& r : roots.roots)
                for (int k = 0; k < mult; ++k) pts.push_back(SpherePoint::from_z(r));
        }
    }
    for (int i = 0; i < form.inf_multiplicity(); ++i) pts.push_back(SpherePoint::infinity());
    return pts;
}

cplx orbit_multiplier(const SphereMap& fm, const SpherePoint& start, int n) {
    SpherePoint p = start;
    cplx rho(1, 0);
    for (int i = 0; i < n; ++i) {
        auto [next, deriv] = fm.step_with_derivative(p);
        rho *= deriv;
        p = next;
    }
    return rho;
}

}  // namespace

std::vector<MultiplierSample> multipliers_numeric(const RationalMap& f, int n) {
    if (n < 1) throw invalid_input_error("period must be >= 1");
    ExactPeriodForm ef = exact_period_form(f, n);
    SphereMap fm(f);
    std::vector<MultiplierSample> out;
    for (const SpherePoint& p : form_roots(ef.form, 1e-13)) {
        cplx rho = orbit_multiplier(fm, p, n);
        double a = std::abs(rho);
        out.push_back(MultiplierSample{rho, a > 0 ? std::log(a) / n : -HUGE_VAL});
    }
    return out;
}

LengthSpectrum length_spectrum(const RationalMap& f, int n, int precision_bits) {
    if (n < 1) throw invalid_input_error("period must be >= 1");
    double tol = std::max(1e-13, std::ldexp(1.0, -precision_bits));
    // lengths are the |roots| of the exact multiplier polynomial of the full
    // fixed point divisor; its squarefree parts keep high-multiplicity
    // multipliers (Chebyshev-type fixtures) exactly resolved
    IntPoly sigma = multiplier_polynomial(f, n, /*exact_only=*/false);
    LengthSpectrum out;
    for (const auto& [part, mult] : squarefree_decomposition(sigma).parts) {
        if (part.degree() < 1) continue;
        ComplexRootSet roots = complex_roots(part, tol);
        for (const cplx& r : roots.roots)
            for (int k = 0; k < mult; ++k) out.lengths.push_back(std::abs(r));
    }
    std::sort(out.lengths.begin(), out.lengths.end());
    double band = std::ldexp(1.0, -precision_bits / 2);
    for (double v : out.lengths) {
        out.boundary.push_back(std::abs(v - 1.0) <= band);
        if (v > 1.0) out.repelling.push_back(v);
    }
    return out;
}

LengthSpectrum rl_star(const RationalMap& f, int m, int max_m, int precision_bits) {
    if (m < 1) throw invalid_input_error("index must be >= 1");
    if (m > max_m) throw budget_error("budget exceeded");
    int fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    LengthSpectrum full = length_spectrum(f, fact, precision_bits);
    LengthSpectrum out;
    out.lengths = full.repelling;
    out.repelling = full.repelling;
    out.boundary.assign(out.lengths.size(), false);
    return out;
}

std::vector<SpectrumRow> spectrum_table(const RationalMap& f, int nmax, int precision_bits) {
    std::vector<SpectrumRow> rows;
    for (int n = 1; n <= nmax; ++n) {
        SpectrumRow row;
        row.period = n;
        row.classes = galois_classes(f, n, /*exact_only=*/false);
        row.spectrum = length_spectrum(f, n, precision_bits);
        row.division_fallback = exact_period_form(f, n).division_fallback;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Lyapunov and equidistribution

LyapunovEstimate lyapunov_estimate(const RationalMap& f, std::uint64_t samples,
                                   std::uint64_t burn_in, std::uint64_t seed) {
    if (samples < 1 || burn_in < 1) throw invalid_input_error("samples and burn_in must be >= 1");
    SphereMap fm(f);
    DetRng rng(seed);
    SpherePoint p = SpherePoint::from_z(cplx(0.437, 0.291));
    double sum = 0, sumsq = 0;
    std::uint64_t kept = 0;
    for (std::uint64_t i = 0; i < burn_in + samples; ++i) {
        auto pre = fm.preimages(p);
        p = pre[rng.below(static_cast<std::uint32_t>(pre.size()))];
        if (i >= burn_in) {
            double g = fm.spherical_derivative(p);
            double v = std::log(std::max(g, 1e-300));
            sum += v;
            sumsq += v * v;
            ++kept;
        }
    }
    LyapunovEstimate est;
    est.samples = samples;
    est.burn_in = burn_in;
    est.seed = seed;
    est.value = sum / static_cast<double>(kept);
    double var = sumsq / static_cast<double>(kept) - est.value * est.value;
    est.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(kept));
    return est;
}

double sphere_test_function(const std::string& id, const SpherePoint& p) {
    cplx x = p.chart == 0 ? p.v : cplx(1, 0);
    cplx y = p.chart == 0 ? cplx(1, 0) : p.v;
    double n2 = std::norm(x) + std::norm(y);
    // with z = x/y: X1 = 2 Re(x conj(y)) / n2, X2 = 2 Im(x conj(y)) / n2,
    // X3 = (|x|^2 - |y|^2)/n2
    cplx xy = x * std::conj(y);
    if (id == "const1") return 1.0;
    if (id == "coord1") return 2.0 * xy.real() / n2;
    if (id == "coord2") return 2.0 * xy.imag() / n2;
    if (id == "coord3") return (std::norm(x) - std::norm(y)) / n2;
    if (id == "coord3sq") {
        double t = (std::norm(x) - std::norm(y)) / n2;
        return t * t;
    }
    throw invalid_input_error("unknown test function id: " + id);
}

bool sphere_test_function_known(const std::string& id) {
    return id == "const1" || id == "coord1" || id == "coord2" || id == "coord3" || id == "coord3sq";
}

std::vector<SpherePoint> periodic_points_numeric(const RationalMap& f, int n) {
    try {
        BinaryForm phi = fixed_point_form(f, n);
        return form_roots(phi, 1e-12);
    } catch (const budget_error&) {
        // double-precision composition; overflow maps to the budget error
    }
    int d = f.degree();
    std::vector<double> F = to_doubles(f.num_homog()), G = to_doubles(f.den_homog());
    std::vector<double> A = F, B = G;
    auto mul = [](const std::vector<double>& x, const std::vector<double>& y) {
        std::vector<double> r(x.size() + y.size() - 1, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
        }
        return r;
    };
    for (int step = 1; step < n; ++step) {
        int e = static_cast<int>(A.size()) - 1;
        std::vector<std::vector<double>> ap(static_cast<std::size_t>(d) + 1), bp(static_cast<std::size_t>(d) + 1);
        ap[0] = {1.0};
        bp[0] = {1.0};
        for (int i = 1; i <= d; ++i) {
            ap[static_cast<std::size_t>(i)] = mul(ap[static_cast<std::size_t>(i - 1)], A);
            bp[static_cast<std::size_t>(i)] = mul(bp[static_cast<std::size_t>(i - 1)], B);
        }
        int outdeg = d * e;
        std::vector<double> na(static_cast<std::size_t>(outdeg) + 1, 0.0), nb(static_cast<std::size_t>(outdeg) + 1, 0.0);
        for (int i = 0; i <= d; ++i) {
            auto term = mul(ap[static_cast<std::size_t>(i)], bp[static_cast<std::size_t>(d - i)]);
            for (std::size_t j = 0; j < term.size(); ++j) {
                na[j] += F[static_cast<std::size_t>(i)] * term[j];
                nb[j] += G[static_cast<std::size_t>(i)] * term[j];
            }
        }
        double mx = 0;
        for (double v : na) mx = std::max(mx, std::abs(v));
        for (double v : nb) mx = std::max(mx, std::abs(v));
        if (!(mx > 0) || !std::isfinite(mx)) throw budget_error("budget exceeded");
        for (auto& v : na) v /= mx;
        for (auto& v : nb) v /= mx;
        A = std::move(na);
        B = std::move(nb);
    }
    // fixed point polynomial Y*A - X*B
    int D = static_cast<int>(A.size());  // degree d^n, so form degree D = d^n+1
    std::vector<double> phi(static_cast<std::size_t>(D) + 1, 0.0);
    for (std::size_t i = 0; i < A.size(); ++i) {
        phi[i] += A[i];
        phi[i + 1] -= B[i];
    }
    int eff = D;
    while (eff > 0 && phi[static_cast<std::size_t>(eff)] == 0.0) --eff;
    std::vector<SpherePoint> out;
    for (int i = eff; i < D; ++i) out.push_back(SpherePoint::infinity());
    std::vector<double> univ(phi.begin(), phi.begin() + eff + 1);
    ComplexRootSet roots = complex_roots(univ, 1e-9);
    for (const cplx& r : roots.roots) out.push_back(SpherePoint::from_z(r));
    return out;
}

double equidist_gap(const RationalMap& f, int n, const std::string& test_fn_id,
                    std::uint64_t samples, std::uint64_t seed) {
    if (!sphere_test_function_known(test_fn_id)) throw invalid_input_error("unknown test function id: " + test_fn_id);
    std::vector<SpherePoint> fix = periodic_points_numeric(f, n);
    double fix_avg = 0;
    for (const auto& p : fix) fix_avg += sphere_test_function(test_fn_id, p);
    fix_avg /= static_cast<double>(fix.size());

    SphereMap fm(f);
    DetRng rng(seed);
    SpherePoint p = SpherePoint::from_z(cplx(0.437, 0.291));
    const std::uint64_t burn = 50;
    double mc = 0;
    for (std::uint64_t i = 0; i < burn + samples; ++i) {
        auto pre = fm.preimages(p);
        p = pre[rng.below(static_cast<std::uint32_t>(pre.size()))];
        if (i >= burn) mc += sphere_test_function(test_fn_id, p);
    }
    mc /= static_cast<double>(samples);
    return std::abs(fix_avg - mc);
}

ChiSequence chi_sequence(const RationalMap& f, int nmax) {
    if (nmax < 1) throw invalid_input_error("nmax must be >= 1");
    ChiSequence out;
    for (int n = 1; n <= nmax; ++n) {
        ChiRow row{n, -HUGE_VAL, 0.0, 0};
        double sum = 0;
        for (const auto& s : multipliers_numeric(f, n)) {
            if (std::abs(s.rho) > 1.0) {
                row.max_chi = std::max(row.max_chi, s.chi);
                sum += s.chi;
                ++row.repelling_count;
            }
        }
        row.mean_chi = row.repelling_count ? sum / row.repelling_count : 0.0;
        out.rows.push_back(row);
    }
    out.reference = lyapunov_estimate(f, 20000, 50, 1);
    return out;
}

}  // namespace spectra
