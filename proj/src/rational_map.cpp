#include "spectra/rational_map.hpp"

#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

// ---------------------------------------------------------------------------
// BinaryForm

BinaryForm::BinaryForm(std::vector<mpz_class> coeffs, int degree) : deg_(degree), c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(degree) + 1);
    // primitive, highest nonzero X-coefficient positive
    mpz_class g(0);
    for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) throw internal_error("zero binary form");
    for (int i = degree; i >= 0; --i) {
        if (c_[static_cast<std::size_t>(i)] != 0) {
            if (c_[static_cast<std::size_t>(i)] < 0) g = -g;
            break;
        }
    }
    for (auto& v : c_) v /= g;
}

BinaryForm BinaryForm::from_univariate(const IntPoly& p, int inf_mult) {
    if (p.is_zero()) throw internal_error("zero univariate part");
    int d = p.degree() + inf_mult;
    std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
    return BinaryForm(std::move(c), d);
}

const mpz_class& BinaryForm::coeff(std::size_t i) const {
    static const mpz_class kZero(0);
    return i < c_.size() ? c_[i] : kZero;
}

IntPoly BinaryForm::univariate_part() const { return IntPoly(std::vector<mpz_class>(c_)); }

BinaryForm BinaryForm::transform_inverse_shift(const mpz_class& c) const {
    // roots move by m(z) = 1/(z-c); points pull back through
    // m^(-1): (X : Y) -> (cX + Y : X), so B'(X, Y) = B(cX + Y, X).
    int d = deg_;
    std::vector<mpz_class> out(static_cast<std::size_t>(d) + 1, mpz_class(0));
    // expand sum_i c_i (cX + Y)^i X^(d-i)
    for (int i = 0; i <= d; ++i) {
        const mpz_class& ci = c_[static_cast<std::size_t>(i)];
        if (ci == 0) continue;
        // (cX + Y)^i = sum_j C(i,j) c^j X^j Y^(i-j)
        mpz_class binom(1);
        mpz_class cpow(1);
        for (int j = 0; j <= i; ++j) {
            // term: ci * C(i,j) c^j X^(j + d - i) Y^(i - j)
            out[static_cast<std::size_t>(j + d - i)] += ci * binom * cpow;
            binom = binom * (i - j) / (j + 1);
            cpow *= c;
        }
    }
    return BinaryForm(std::move(out), d);
}

// ---------------------------------------------------------------------------
// Mobius

Mobius::Mobius(mpq_class a_, mpq_class b_, mpq_class c_, mpq_class d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    if (a * d - b * c == 0) throw invalid_input_error("degenerate Moebius transformation");
}

Mobius Mobius::inverse() const { return Mobius(d, -b, -c, a); }

Mobius Mobius::compose(const Mobius& inner) const {
    return Mobius(a * inner.a + b * inner.c, a * inner.b + b * inner.d,
                  c * inner.a + d * inner.c, c * inner.b + d * inner.d);
}

// ---------------------------------------------------------------------------
// construction

namespace detail {
RationalMap make_unchecked(IntPoly num, IntPoly den, int deg) {
    return RationalMap(std::move(num), std::move(den), deg);
}
}  // namespace detail

namespace {

void check_budget(const IntPoly& p) {
    if (p.byte_size() > coefficient_budget_bytes()) throw budget_error("budget exceeded");
}

std::vector<mpz_class> homog_coeffs(const IntPoly& p, int d) {
    std::vector<mpz_class> c(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= p.degree(); ++i) c[static_cast<std::size_t>(i)] = p.coeff(static_cast<std::size_t>(i));
    return c;
}

RationalMap finalize_pair(IntPoly np, IntPoly dp, bool check_resultant = true) {
    // joint content
    mpz_class g(0);
    for (const auto& v : np.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    for (const auto& v : dp.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) throw invalid_input_error("both polynomials zero");
    // sign: the higher-degree polynomial gets a positive leading coefficient
    const IntPoly& lead = np.degree() >= dp.degree() ? np : dp;
    if (lead.lc() < 0) g = -g;
    std::vector<mpz_class> nc = np.coeffs(), dc = dp.coeffs();
    for (auto& v : nc) v /= g;
    for (auto& v : dc) v /= g;
    np = IntPoly(std::move(nc));
    dp = IntPoly(std::move(dc));

    // cancel the polynomial gcd before the degree check
    if (!np.is_zero() && !dp.is_zero()) {
        IntPoly common = subresultant_gcd(np, dp);
        if (common.degree() > 0) {
            IntPoly qn, qd;
            if (!IntPoly::divide_exact(np, common, &qn) || !IntPoly::divide_exact(dp, common, &qd))
                throw internal_error("gcd does not divide the pair");
            np = qn;
            dp = qd;
            // re-fix the sign after cancellation
            const IntPoly& lead2 = np.degree() >= dp.degree() ? np : dp;
            if (lead2.lc() < 0) {
                np = -np;
                dp = -dp;
            }
        }
    }

    int d = std::max(np.degree(), dp.degree());
    if (d < 2) throw invalid_input_error("degree too small");
    check_budget(np);
    check_budget(dp);
    RationalMap f = detail::make_unchecked(std::move(np), std::move(dp), d);
    if (check_resultant && f.homog_resultant() == 0) throw invalid_input_error("degenerate pair");
    return f;
}

}  // namespace

const mpz_class& RationalMap::homog_resultant() const {
    if (!res_known_) {
        res_ = binary_form_resultant(num_homog(), den_homog(), deg_);
        res_known_ = true;
    }
    return res_;
}

RationalMap parse_normalize(const std::vector<mpq_class>& num, const std::vector<mpq_class>& den) {
    RatPoly np{std::vector<mpq_class>(num)}, dp{std::vector<mpq_class>(den)};
    // clear denominators jointly
    mpz_class lcm(1);
    for (const auto& v : np.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    for (const auto& v : dp.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<mpz_class> ni, di;
    for (const auto& v : np.coeffs()) {
        mpq_class s = v * lcm;
        ni.push_back(s.get_num());
    }
    for (const auto& v : dp.coeffs()) {
        mpq_class s = v * lcm;
        di.push_back(s.get_num());
    }
    return finalize_pair(IntPoly(std::move(ni)), IntPoly(std::move(di)));
}

RationalMap make_map(std::initializer_list<long> num, std::initializer_list<long> den) {
    std::vector<mpq_class> n, d;
    for (long v : num) n.emplace_back(v);
    for (long v : den) d.emplace_back(v);
    return parse_normalize(n, d);
}

std::vector<mpz_class> RationalMap::num_homog() const { return homog_coeffs(num_, deg_); }
std::vector<mpz_class> RationalMap::den_homog() const { return homog_coeffs(den_, deg_); }

std::string RationalMap::to_string() const {
    std::ostringstream os;
    os << "(" << num_.to_string("z") << ") / (" << den_.to_string("z") << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// operations

mpz_class binary_form_resultant(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g, int d) {
    // Sylvester matrix of the declared-degree-d pair, 2d x 2d, Bareiss.
    int n = 2 * d;
    std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(n),
                                          std::vector<mpz_class>(static_cast<std::size_t>(n), mpz_class(0)));
    for (int r = 0; r < d; ++r)
        for (int j = 0; j <= d; ++j) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + j)] = f[static_cast<std::size_t>(d - j)];
    for (int r = 0; r < d; ++r)
        for (int j = 0; j <= d; ++j) m[static_cast<std::size_t>(d + r)][static_cast<std::size_t>(r + j)] = g[static_cast<std::size_t>(d - j)];

    // fraction-free Gaussian elimination (Bareiss) with row-swap sign tracking
    mpz_class denom(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int piv = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return mpz_class(0);
            std::swap(m[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class t = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                              m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = t / denom;
            }
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = 0;
        }
        denom = m[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    return sign * m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)];
}

RationalMap iterate(const RationalMap& f, int n) {
    if (n < 1) throw invalid_input_error("iterate count must be >= 1");
    RationalMap g = f;
    std::vector<mpz_class> fn = f.num_homog(), fd = f.den_homog();
    int d = f.degree();
    for (int step = 1; step < n; ++step) {
        // compose f after g: substitute (A, B) = (num_g, den_g) into the
        // degree-d homogenization of f
        std::vector<mpz_class> A = homog_coeffs(g.num(), g.degree());
        std::vector<mpz_class> B = homog_coeffs(g.den(), g.degree());
        int e = g.degree();
        // powers A^i, B^(d-i) as coefficient vectors of forms of degree e*i etc.
        std::vector<std::vector<mpz_class>> apow(static_cast<std::size_t>(d) + 1), bpow(static_cast<std::size_t>(d) + 1);
        apow[0] = {mpz_class(1)};
        bpow[0] = {mpz_class(1)};
        auto mul_forms = [](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
            std::vector<mpz_class> r(x.size() + y.size() - 1, mpz_class(0));
            for (std::size_t i = 0; i < x.size(); ++i) {
                if (x[i] == 0) continue;
                for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
            }
            return r;
        };
        for (int i = 1; i <= d; ++i) {
            apow[static_cast<std::size_t>(i)] = mul_forms(apow[static_cast<std::size_t>(i - 1)], A);
            bpow[static_cast<std::size_t>(i)] = mul_forms(bpow[static_cast<std::size_t>(i - 1)], B);
        }
        int outdeg = d * e;
        std::vector<mpz_class> nout(static_cast<std::size_t>(outdeg) + 1, mpz_class(0));
        std::vector<mpz_class> dout(static_cast<std::size_t>(outdeg) + 1, mpz_class(0));
        for (int i = 0; i <= d; ++i) {
            const auto& term = mul_forms(apow[static_cast<std::size_t>(i)], bpow[static_cast<std::size_t>(d - i)]);
            if (fn[static_cast<std::size_t>(i)] != 0)
                for (std::size_t j = 0; j < term.size(); ++j) nout[j] += fn[static_cast<std::size_t>(i)] * term[j];
            if (fd[static_cast<std::size_t>(i)] != 0)
                for (std::size_t j = 0; j < term.size(); ++j) dout[j] += fd[static_cast<std::size_t>(i)] * term[j];
        }
        // strip joint content and normalize the sign; the pair stays coprime
        // because the resultant of a composition is a product of resultants
        IntPoly np(std::move(nout)), dp(std::move(dout));
        mpz_class gg(0);
        for (const auto& v : np.coeffs()) mpz_gcd(gg.get_mpz_t(), gg.get_mpz_t(), v.get_mpz_t());
        for (const auto& v : dp.coeffs()) mpz_gcd(gg.get_mpz_t(), gg.get_mpz_t(), v.get_mpz_t());
        const IntPoly& lead = np.degree() >= dp.degree() ? np : dp;
        if (lead.lc() < 0) gg = -gg;
        if (gg != 1) {
            std::vector<mpz_class> nc = np.coeffs(), dc = dp.coeffs();
            for (auto& v : nc) v /= gg;
            for (auto& v : dc) v /= gg;
            np = IntPoly(std::move(nc));
            dp = IntPoly(std::move(dc));
        }
        check_budget(np);
        check_budget(dp);
        g = detail::make_unchecked(std::move(np), std::move(dp), outdeg);
    }
    return g;
}

std::pair<IntPoly, IntPoly> derivative_parts(const RationalMap& f) {
    IntPoly w = f.num().derivative() * f.den() - f.num() * f.den().derivative();
    return {w, f.den() * f.den()};
}

RationalMap conjugate(const RationalMap& f, const Mobius& m) {
    // m o f o m^{-1} on homogeneous pairs: with M = [[a,b],[c,d]] acting on
    // column (X, Y), substitute M^{-1} (up to scalar: adjugate) into (F, G)
    // then multiply by M on the left.
    Mobius inv = m.inverse();  // adjugate works projectively
    int d = f.degree();
    std::vector<mpz_class> F = f.num_homog(), G = f.den_homog();
    // substitution (X, Y) -> (aa X + bb Y, cc X + dd Y) with rational entries:
    // scale to integers first
    mpz_class lcm(1);
    for (const mpq_class* q : {&inv.a, &inv.b, &inv.c, &inv.d})
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q->get_den().get_mpz_t());
    mpz_class ia = mpz_class(inv.a.get_num() * (lcm / inv.a.get_den()));
    mpz_class ib = mpz_class(inv.b.get_num() * (lcm / inv.b.get_den()));
    mpz_class ic = mpz_class(inv.c.get_num() * (lcm / inv.c.get_den()));
    mpz_class id = mpz_class(inv.d.get_num() * (lcm / inv.d.get_den()));

    // u = ia X + ib Y, v = ic X + id Y; compute u^i v^(d-i)
    auto mul_forms = [](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
        std::vector<mpz_class> r(x.size() + y.size() - 1, mpz_class(0));
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
        }
        return r;
    };
    std::vector<mpz_class> u = {ib, ia}, v = {id, ic};
    std::vector<std::vector<mpz_class>> upow(static_cast<std::size_t>(d) + 1), vpow(static_cast<std::size_t>(d) + 1);
    upow[0] = {mpz_class(1)};
    vpow[0] = {mpz_class(1)};
    for (int i = 1; i <= d; ++i) {
        upow[static_cast<std::size_t>(i)] = mul_forms(upow[static_cast<std::size_t>(i - 1)], u);
        vpow[static_cast<std::size_t>(i)] = mul_forms(vpow[static_cast<std::size_t>(i - 1)], v);
    }
    std::vector<mpz_class> F1(static_cast<std::size_t>(d) + 1, mpz_class(0)), G1(static_cast<std::size_t>(d) + 1, mpz_class(0));
    for (int i = 0; i <= d; ++i) {
        auto term = mul_forms(upow[static_cast<std::size_t>(i)], vpow[static_cast<std::size_t>(d - i)]);
        for (std::size_t j = 0; j < term.size(); ++j) {
            if (F[static_cast<std::size_t>(i)] != 0) F1[j] += F[static_cast<std::size_t>(i)] * term[j];
            if (G[static_cast<std::size_t>(i)] != 0) G1[j] += G[static_cast<std::size_t>(i)] * term[j];
        }
    }
    // left action by m: numerator a F1 + b G1, denominator c F1 + d G1
    mpz_class lcm2(1);
    for (const mpq_class* q : {&m.a, &m.b, &m.c, &m.d})
        mpz_lcm(lcm2.get_mpz_t(), lcm2.get_mpz_t(), q->get_den().get_mpz_t());
    mpz_class ma = mpz_class(m.a.get_num() * (lcm2 / m.a.get_den()));
    mpz_class mb = mpz_class(m.b.get_num() * (lcm2 / m.b.get_den()));
    mpz_class mc = mpz_class(m.c.get_num() * (lcm2 / m.c.get_den()));
    mpz_class md = mpz_class(m.d.get_num() * (lcm2 / m.d.get_den()));
    std::vector<mpz_class> NF(static_cast<std::size_t>(d) + 1), NG(static_cast<std::size_t>(d) + 1);
    for (std::size_t j = 0; j <= static_cast<std::size_t>(d); ++j) {
        NF[j] = ma * F1[j] + mb * G1[j];
        NG[j] = mc * F1[j] + md * G1[j];
    }
    return finalize_pair(IntPoly(std::move(NF)), IntPoly(std::move(NG)), /*check_resultant=*/false);
}

BinaryForm critical_form(const RationalMap& f) {
    // Wronskian of the homogenized pair: F_X G_Y - F_Y G_X, degree 2d-2.
    int d = f.degree();
    std::vector<mpz_class> F = f.num_homog(), G = f.den_homog();
    // partials as forms of degree d-1: (dF/dX)_i = (i+1) F_{i+1} etc.
    std::vector<mpz_class> FX(static_cast<std::size_t>(d)), FY(static_cast<std::size_t>(d)), GX(static_cast<std::size_t>(d)), GY(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        FX[static_cast<std::size_t>(i)] = F[static_cast<std::size_t>(i + 1)] * (i + 1);
        GX[static_cast<std::size_t>(i)] = G[static_cast<std::size_t>(i + 1)] * (i + 1);
        FY[static_cast<std::size_t>(i)] = F[static_cast<std::size_t>(i)] * (d - i);
        GY[static_cast<std::size_t>(i)] = G[static_cast<std::size_t>(i)] * (d - i);
    }
    std::vector<mpz_class> w(static_cast<std::size_t>(2 * d - 2) + 1, mpz_class(0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            w[static_cast<std::size_t>(i + j)] += FX[static_cast<std::size_t>(i)] * GY[static_cast<std::size_t>(j)] -
                                                  FY[static_cast<std::size_t>(i)] * GX[static_cast<std::size_t>(j)];
    return BinaryForm(std::move(w), 2 * d - 2);
}

bool good_reduction(const RationalMap& f, std::uint64_t p) {
    mpz_class pz(static_cast<unsigned long>(p));
    return !mpz_divisible_p(f.homog_resultant().get_mpz_t(), pz.get_mpz_t());
}

bool eval_map(const RationalMap& f, const mpq_class& x, mpq_class* out) {
    mpq_class den = f.den().eval(x);
    if (den == 0) return false;
    *out = f.num().eval(x) / den;
    out->canonicalize();
    return true;
}

}  // namespace spectra
