#pragma once

// Finite-difference audit of a CoefficientSet: central differences of f, g, l,
// h against the analytic first derivatives, cross-stencil second differences
// against the bilinear second-derivative actions, symmetry defects, and the
// M0 derivative-bound check.

#include "coefficients.hpp"

#include <cmath>
#include <sstream>

namespace smpforge {

struct DerivativeReport {
    double max_rel_error_f_x = 0.0;
    double max_rel_error_g_x = 0.0;
    double max_rel_error_l_x = 0.0;
    double max_rel_error_h_x = 0.0;
    double max_rel_error_f_xx = 0.0;
    double max_rel_error_g_xx = 0.0;
    double max_rel_error_l_xx = 0.0;
    double max_rel_error_h_xx = 0.0;
    double max_symmetry_defect = 0.0;
    double observed_derivative_bound = 0.0; // largest sampled derivative norm
    bool bound_ok = true;                   // observed bound <= M0
    std::vector<std::string> failures;      // non-finite evaluations etc.

    double worst_first_order() const {
        return std::max({max_rel_error_f_x, max_rel_error_g_x, max_rel_error_l_x,
                         max_rel_error_h_x});
    }
    double worst_second_order() const {
        return std::max({max_rel_error_f_xx, max_rel_error_g_xx, max_rel_error_l_xx,
                         max_rel_error_h_xx});
    }
    bool ok(double tol) const {
        return failures.empty() && bound_ok &&
               std::max(worst_first_order(), worst_second_order()) <= tol;
    }
};

struct SamplePoint {
    double t;
    Vec x;
    Vec u;
};

namespace detail {

inline double rel_err(double analytic, double fd) {
    return std::abs(fd - analytic) / std::max(1.0, std::abs(analytic));
}

inline void note_nonfinite(DerivativeReport& rep, const char* what, std::size_t point) {
    std::ostringstream os;
    os << "non-finite " << what << " at sample point " << point;
    rep.failures.push_back(os.str());
}

} // namespace detail

inline DerivativeReport check_coefficient_derivatives(
    const CoefficientSet& coeffs, const std::vector<SamplePoint>& sample_points,
    double fd_step) {
    require(fd_step > 0.0, "check_coefficient_derivatives: fd_step must be > 0");
    const int n = coeffs.state_dim();
    const int m = coeffs.noise_dim();
    const double h = fd_step;

    DerivativeReport rep;
    Vec fp(n), fm(n), fv(n), lx(n), hx(n), tmp(n), app(n), app_t(n);
    Mat J(n, n), H(n, n);
    DiffusionMat gp(n, m), gm(n, m);

    for (std::size_t sp = 0; sp < sample_points.size(); ++sp) {
        const auto& pt = sample_points[sp];
        require(pt.x.size() == n, "sample point dimension mismatch");

        coeffs.f(pt.t, pt.x, pt.u, fv);
        if (!fv.allFinite()) { detail::note_nonfinite(rep, "f", sp); continue; }

        // first derivatives, column by column
        coeffs.f_x(pt.t, pt.x, pt.u, J);
        rep.observed_derivative_bound = std::max(rep.observed_derivative_bound, J.norm());
        for (int a = 0; a < n; ++a) {
            Vec xp = pt.x, xm = pt.x;
            xp[a] += h; xm[a] -= h;
            coeffs.f(pt.t, xp, pt.u, fp);
            coeffs.f(pt.t, xm, pt.u, fm);
            if (!fp.allFinite() || !fm.allFinite()) {
                detail::note_nonfinite(rep, "f (fd probe)", sp);
                continue;
            }
            for (int k = 0; k < n; ++k)
                rep.max_rel_error_f_x = std::max(
                    rep.max_rel_error_f_x,
                    detail::rel_err(J(k, a), (fp[k] - fm[k]) / (2.0 * h)));

            coeffs.g(pt.t, xp, pt.u, gp);
            coeffs.g(pt.t, xm, pt.u, gm);
            for (int i = 0; i < m; ++i) {
                coeffs.g_x(pt.t, pt.x, pt.u, i, H);
                if (a == 0)
                    rep.observed_derivative_bound =
                        std::max(rep.observed_derivative_bound, H.norm());
                for (int k = 0; k < n; ++k)
                    rep.max_rel_error_g_x = std::max(
                        rep.max_rel_error_g_x,
                        detail::rel_err(H(k, a), (gp(k, i) - gm(k, i)) / (2.0 * h)));
            }

            const double lp = coeffs.l(pt.t, xp, pt.u);
            const double lm = coeffs.l(pt.t, xm, pt.u);
            coeffs.l_x(pt.t, pt.x, pt.u, lx);
            rep.max_rel_error_l_x = std::max(
                rep.max_rel_error_l_x, detail::rel_err(lx[a], (lp - lm) / (2.0 * h)));

            coeffs.h_x(pt.x, hx);
            rep.max_rel_error_h_x = std::max(
                rep.max_rel_error_h_x,
                detail::rel_err(hx[a], (coeffs.h(xp) - coeffs.h(xm)) / (2.0 * h)));
        }

        // second derivatives via the cross stencil on (a,b) pairs
        coeffs.l_xx(pt.t, pt.x, pt.u, H);
        rep.observed_derivative_bound = std::max(rep.observed_derivative_bound, H.norm());
        rep.max_symmetry_defect =
            std::max(rep.max_symmetry_defect, (H - H.transpose()).cwiseAbs().maxCoeff());
        Mat Hh(n, n);
        coeffs.h_xx(pt.x, Hh);
        rep.observed_derivative_bound = std::max(rep.observed_derivative_bound, Hh.norm());
        rep.max_symmetry_defect = std::max(
            rep.max_symmetry_defect, (Hh - Hh.transpose()).cwiseAbs().maxCoeff());

        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                Vec xpp = pt.x, xpm = pt.x, xmp = pt.x, xmm = pt.x;
                xpp[a] += h; xpp[b] += h;
                xpm[a] += h; xpm[b] -= h;
                xmp[a] -= h; xmp[b] += h;
                xmm[a] -= h; xmm[b] -= h;
                const double denom = 4.0 * h * h;

                Vec ea = Vec::Zero(n), eb = Vec::Zero(n);
                ea[a] = 1.0; eb[b] = 1.0;

                coeffs.f_xx_apply(pt.t, pt.x, pt.u, ea, eb, app);
                coeffs.f_xx_apply(pt.t, pt.x, pt.u, eb, ea, app_t);
                rep.max_symmetry_defect = std::max(rep.max_symmetry_defect,
                                                   (app - app_t).cwiseAbs().maxCoeff());
                Vec f_pp(n), f_pm(n), f_mp(n), f_mm(n);
                coeffs.f(pt.t, xpp, pt.u, f_pp);
                coeffs.f(pt.t, xpm, pt.u, f_pm);
                coeffs.f(pt.t, xmp, pt.u, f_mp);
                coeffs.f(pt.t, xmm, pt.u, f_mm);
                for (int k = 0; k < n; ++k)
                    rep.max_rel_error_f_xx = std::max(
                        rep.max_rel_error_f_xx,
                        detail::rel_err(app[k], (f_pp[k] - f_pm[k] - f_mp[k] + f_mm[k]) / denom));

                DiffusionMat g_pp(n, m), g_pm(n, m), g_mp(n, m), g_mm(n, m);
                coeffs.g(pt.t, xpp, pt.u, g_pp);
                coeffs.g(pt.t, xpm, pt.u, g_pm);
                coeffs.g(pt.t, xmp, pt.u, g_mp);
                coeffs.g(pt.t, xmm, pt.u, g_mm);
                for (int i = 0; i < m; ++i) {
                    coeffs.g_xx_apply(pt.t, pt.x, pt.u, i, ea, eb, app);
                    coeffs.g_xx_apply(pt.t, pt.x, pt.u, i, eb, ea, app_t);
                    rep.max_symmetry_defect = std::max(
                        rep.max_symmetry_defect, (app - app_t).cwiseAbs().maxCoeff());
                    for (int k = 0; k < n; ++k)
                        rep.max_rel_error_g_xx = std::max(
                            rep.max_rel_error_g_xx,
                            detail::rel_err(app[k], (g_pp(k, i) - g_pm(k, i) - g_mp(k, i) +
                                                     g_mm(k, i)) / denom));
                }

                const double l_cross = (coeffs.l(pt.t, xpp, pt.u) - coeffs.l(pt.t, xpm, pt.u) -
                                        coeffs.l(pt.t, xmp, pt.u) + coeffs.l(pt.t, xmm, pt.u)) /
                                       denom;
                rep.max_rel_error_l_xx =
                    std::max(rep.max_rel_error_l_xx, detail::rel_err(H(a, b), l_cross));

                const double h_cross =
                    (coeffs.h(xpp) - coeffs.h(xpm) - coeffs.h(xmp) + coeffs.h(xmm)) / denom;
                rep.max_rel_error_h_xx =
                    std::max(rep.max_rel_error_h_xx, detail::rel_err(Hh(a, b), h_cross));
            }
        }
    }

    rep.bound_ok = rep.observed_derivative_bound <= coeffs.growth_bound() * (1.0 + 1e-12);
    return rep;
}

} // namespace smpforge
