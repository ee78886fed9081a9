#include "fa/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string_view>

#include "fa/analysis.hpp"
#include "fa/cubic.hpp"
#include "fa/deep_continuous.hpp"
#include "fa/implicit_reg.hpp"
#include "fa/matrix_fa.hpp"
#include "fa/scalar_continuous.hpp"
#include "fa/scalar_discrete.hpp"
#include "fa/sweep.hpp"

namespace fa::acceptance {

namespace {

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

struct Criterion {
    int id;
    const char* name;
    const char* tags;
    std::function<void(const Options&, std::vector<Line>&)> body;
};

Line make(int id, const char* name, bool pass, std::string detail) {
    return {id, name, pass, false, std::move(detail), 0.0};
}

Line info(const char* name, std::string detail) { return {0, name, true, true, std::move(detail), 0.0}; }

// ---- midpoint ---------------------------------------------------------------

constexpr double kMidD = 2.0, kMidLambda = 3.0;

Trajectory midpoint_reference_run() {
    const auto b = discrete::midpoint2_budget(kMidD, kMidLambda);
    return discrete::midpoint2_run(kMidD, kMidLambda, 0.9 * b.eta_max, 1000);
}

void c01_midpoint_conservation(const Options&, std::vector<Line>& out) {
    const auto traj = midpoint_reference_run();
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double x = traj.at(k, 0), y = traj.at(k, 1);
        worst = std::max(worst, std::abs(y - x * x / (2.0 * kMidD)) / std::max(1.0, x * x));
    }
    out.push_back(make(1, "midpoint-conservation", worst <= 1e-12,
                       fmt("max |y - x^2/2d|/max(1,x^2) = %.3g over 1000 steps (tol 1e-12)", worst)));
}

void c02_midpoint_bound(const Options&, std::vector<Line>& out) {
    const auto traj = midpoint_reference_run();
    const double eta = traj.meta().step;
    const double r2 = std::pow(2.0 * kMidD * kMidLambda, 2.0 / 3.0);
    const double q_half = 1.0 - 0.5 * eta * r2;
    long first_bad = -1;
    double worst_ratio = 0.0;
    bool half_ok = true;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double err = traj.at(k, 3);
        const double bound = traj.at(k, 4);
        if (err > bound + 1e-9 && first_bad < 0) first_bad = static_cast<long>(k);
        if (bound > 0.0) worst_ratio = std::max(worst_ratio, err / (bound + 1e-9));
        if (err > 3.0 * kMidLambda * std::pow(q_half, static_cast<double>(k)) + 1e-9) half_ok = false;
    }
    if (first_bad < 0) {
        out.push_back(make(2, "midpoint-rate-bound", true, "all 1001 samples within 3λq^t + 1e-9"));
    } else {
        const auto k = static_cast<std::size_t>(first_bad);
        out.push_back(make(2, "midpoint-rate-bound", false,
                           fmt("step %zu: |xy-λ| = %.4g > bound %.4g (q = %.5f); worst err/bound = %.3g", k,
                               traj.at(k, 3), traj.at(k, 4), 1.0 - 1.5 * eta * r2, worst_ratio)));
    }
    out.push_back(info("midpoint-rate-bound-half-factor",
                       fmt("3λ(1-(η/2)(2dλ)^{2/3})^t + 1e-9 %s on the same run (q = %.5f)",
                           half_ok ? "holds" : "fails", q_half)));
}

void c03_one_step(const Options&, std::vector<Line>& out) {
    const double r = std::cbrt(2.0 * kMidD * kMidLambda);
    const double eta = 2.0 / (r * r);
    // r is linearly unstable at this η (multiplier 1 - 3 = -2), so a one-ulp
    // offset doubles every step; constancy is checked while 2^t·eps < 1e-12
    constexpr std::size_t kHorizon = 12;
    const auto traj = discrete::midpoint2_run(kMidD, kMidLambda, eta, 60);
    const double x1 = traj.at(1, 0);
    const double rel = std::abs(x1 - r) / r;
    double drift = 0.0;
    std::size_t leaves = 0;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double dev = std::abs(traj.at(k, 0) - x1) / r;
        if (k <= kHorizon) drift = std::max(drift, dev);
        if (!leaves && dev > 1e-12) leaves = k;
    }
    out.push_back(make(3, "midpoint-one-step", rel <= 1e-12 && drift <= 1e-12,
                       fmt("x1 = %.15g vs r = %.15g (rel %.2g); max rel drift over steps 1..%zu = %.2g", x1, r, rel,
                           kHorizon, drift)));
    out.push_back(info("midpoint-one-step-rounding",
                       fmt("rounding offset grows by 2x per step; x_t leaves r by 1e-12 at step %zu", leaves)));
}

// ---- euler -----------------------------------------------------------------

struct EulerCase {
    double d, lambda;
    discrete::StepSizeBudget budget;
    double eta;
    discrete::EulerRun run;
};

const std::vector<EulerCase>& euler_cases(double* seconds = nullptr) {
    static std::vector<EulerCase> cases;
    static double elapsed = 0.0;
    if (cases.empty()) {
        const auto t0 = std::chrono::steady_clock::now();
        for (double d : {0.5, 1.0, 2.0})
            for (double lambda : {0.5, 1.0, 3.0}) {
                auto b = discrete::euler_budget(d, lambda);
                const double eta = 0.9 * b.eta_max;
                cases.push_back({d, lambda, b, eta, discrete::euler_run(d, lambda, eta, 100000)});
            }
        elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    if (seconds) *seconds = elapsed;
    return cases;
}

void c04_euler_region(const Options&, std::vector<Line>& out) {
    double seconds = 0.0;
    const auto& cases = euler_cases(&seconds);
    bool ok = seconds < 10.0;
    std::string fails;
    double worst_id = 0.0;
    for (const auto& c : cases) {
        const auto& tr = c.run.traj;
        bool case_ok = !c.run.first_region_violation;
        double prev_x = -1.0;
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const auto s = tr.state(k);
            const double x = s[0], y = s[1], sum = s[2], p = s[3];
            const double id = std::abs(y - (x * x - sum) / (2.0 * c.d)) / std::max(1.0, x * x);
            worst_id = std::max(worst_id, id);
            case_ok = case_ok && id <= 1e-12 && sum <= x && p >= -1e-12 && x >= prev_x &&
                      x <= c.budget.s_star + 1e-9;
            prev_x = x;
        }
        if (!case_ok) fails += fmt(" (d=%g,λ=%g)", c.d, c.lambda);
        ok = ok && case_ok;
    }
    out.push_back(make(4, "euler-region-invariants", ok,
                       fmt("9 configs x 1e5 steps in %.2fs (limit 10s); max identity dev %.2g%s%s", seconds,
                           worst_id, fails.empty() ? "" : "; failing:", fails.c_str())));
}

void c05_euler_rate(const Options&, std::vector<Line>& out) {
    const auto& cases = euler_cases();
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto& tr = c.run.traj;
        const auto err = tr.column("abs_error");
        const double final_err = err.back();
        const auto fit = analysis::fit_geometric(tr.times(), err);
        const double q = c.budget.q_theory(c.eta);
        const bool case_ok = final_err <= 1e-6 && fit.rate <= q + 0.02;
        ok = ok && case_ok;
        detail += fmt(" %s(d=%g,λ=%g q_fit=%.4f q_th=%.4f)", case_ok ? "" : "X", c.d, c.lambda, fit.rate, q);
    }
    out.push_back(make(5, "euler-convergence-rate", ok, "fitted ratio <= 1-ηM+η²M̃+0.02:" + detail));
}

// ---- continuous ------------------------------------------------------------

void c06_k0_rate(const Options& opt, std::vector<Line>& out) {
    const double d = 2.0, lambda = 3.0;
    const double c = 2.0 * d * lambda;
    // the injected fault swaps in the main-text constant (3/2)(dλ)^{2/3}
    const double theory = opt.inject_fault ? 1.5 * std::pow(d * lambda, 2.0 / 3.0) : 1.5 * std::pow(c, 2.0 / 3.0);
    bool ok = true;
    std::string detail = fmt("theory %.4f:", theory);
    for (double th0 : {-1.0, 0.0, 1.0}) {
        const auto p = scalar::ComponentParams::aligned(lambda, d, th0);
        const auto tr = scalar::integrate_scalar(p, 10.0, 1e-3);
        const auto fit = analysis::fit_exponential(tr.times(), tr.column("abs_error"));
        const double rel = std::abs(fit.rate - theory) / theory;
        ok = ok && rel <= 0.05;
        detail += fmt(" θ0=%g fit %.4f (%.2f%%)", th0, fit.rate, 100.0 * rel);
    }
    out.push_back(make(6, "continuous-k0-rate", ok, detail));
}

double max_residual(const Trajectory& tr, double attractor, const std::function<double(double, double)>& res,
                    double t_max, std::size_t* used) {
    double worst = 0.0;
    *used = 0;
    const double guard = 1e-10 * std::max(1.0, std::abs(attractor));
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double t = tr.time(k), th = tr.at(k, 0);
        if (t > t_max) break;
        // past this distance double rounding of θ dominates the log term
        if (std::abs(th - attractor) < guard) continue;
        worst = std::max(worst, std::abs(res(th, t)));
        ++*used;
    }
    return worst;
}

void c07_implicit_residuals(const Options&, std::vector<Line>& out) {
    const auto pk = scalar::ComponentParams::aligned(3.0, 2.0, -1.0);
    const auto tk = scalar::integrate_scalar(pk, 5.0, 1e-4);
    std::size_t nk = 0;
    const double rk = max_residual(tk, std::cbrt(12.0),
                                   [&](double th, double t) { return scalar::implicit_residual_k0(th, t, pk); },
                                   5.0, &nk);

    const double d = 0.5, K = -4.0, lambda = 1.0, th0 = 0.5;
    const scalar::ComponentParams pd(lambda, d, th0, th0 * th0 / (2.0 * d) + K);
    const auto roots = std::get<cubic::ThreeDistinct>(cubic::solve_fa_cubic(d, K, lambda));
    const auto td = scalar::integrate_scalar(pd, 5.0, 1e-4);
    std::size_t nd = 0;
    const double rd = max_residual(
        td, roots.r3, [&](double th, double t) { return scalar::implicit_residual_three_roots(th, t, roots, th0); },
        5.0, &nd);
    out.push_back(make(7, "implicit-solution-residuals", rk <= 1e-4 && rd <= 1e-4 && nk > 1000 && nd > 1000,
                       fmt("K=0 branch max %.2g (%zu samples); three-log branch max %.2g (%zu samples); tol 1e-4",
                           rk, nk, rd, nd)));
}

void c08_power_law(const Options&, std::vector<Line>& out) {
    const auto p = scalar::ComponentParams::aligned(0.0, 1.0, 1.0);
    const auto tr = scalar::integrate_scalar(p, 1000.0, 1e-2, {10});
    std::vector<double> prod;
    for (double v : tr.column("product")) prod.push_back(std::abs(v));
    auto policy = analysis::WindowPolicy::everything();
    policy.x_min = 10.0;
    policy.x_max = 1000.0;
    const auto fit = analysis::fit_powerlaw(tr.times(), prod, policy);
    out.push_back(make(8, "lambda-zero-power-law", std::abs(fit.rate + 1.5) <= 0.05,
                       fmt("exponent %.4f on t in [10, 1000] (target -1.5 ± 0.05), r² %.6f", fit.rate,
                           fit.r_squared)));
}

void c09_conservation(const Options& opt, std::vector<Line>& out) {
    sweep::ScalarSweepConfig cfg;
    const auto runs = sweep::scalar_random_sweep(cfg, opt.parallel);
    double drift = 0.0, err = 0.0;
    std::size_t diverged = 0;
    for (const auto& r : runs) {
        drift = std::max(drift, r.k_drift);
        err = std::max(err, r.final_error);
        diverged += r.diverged ? 1 : 0;
    }
    out.push_back(make(9, "conservation-of-k", drift <= 1e-6 && err <= 1e-4 && diverged == 0,
                       fmt("100 inits in [-5,5]^2: max K drift %.2g (tol 1e-6), max |θ2θ1-3| at t=50 %.2g "
                           "(tol 1e-4), diverged %zu",
                           drift, err, diverged)));
}

// ---- implicit regularization ------------------------------------------------

void c10_step_function(const Options&, std::vector<Line>& out) {
    const implicit::Roots3 roots{-2.0, 1.0, 2.0};
    const double T = implicit::threshold_time(roots.r1, roots.r2, roots.r3);
    const auto tr = implicit::delta_scaling_run(roots, 30.0, implicit::Side::Above);
    double before = 0.0, after = 0.0;
    for (std::size_t k = 0; k < tr.size(); ++k) {
        const double s = tr.time(k), th = tr.at(k, 0);
        if (s <= 0.9 * T) before = std::max(before, std::abs(th - roots.r2));
        if (s >= 1.1 * T) after = std::max(after, std::abs(th - roots.r3));
    }
    const auto sum = implicit::summarize_transition(tr, roots, implicit::Side::Above);
    const double plateau_rel = std::abs(sum.theta1_at_T - sum.alpha_formula) / std::abs(sum.alpha_formula);
    const bool ok = before <= 1e-3 && after <= 1e-3 && plateau_rel <= 0.01;
    out.push_back(make(10, "step-function-limit", ok,
                       fmt("δ=30: max|θ-r2| for t<=0.9T %.3g, max|θ-r3| for t>=1.1T %.3g (tol 1e-3); θ(δT) = %.4f "
                           "vs α = %.4f (%.1f%%, tol 1%%)",
                           before, after, sum.theta1_at_T, sum.alpha_formula, 100.0 * plateau_rel)));
    out.push_back(info("step-function-exact-limit",
                       fmt("exact δ→∞ value of θ(δT) = %.4f (|θ(δT) - limit| = %.2g); detected T %.5f vs %.5f "
                           "(%.2f%%)",
                           sum.alpha_limit, std::abs(sum.theta1_at_T - sum.alpha_limit), sum.T_detected, T,
                           100.0 * std::abs(sum.T_detected - T) / T)));
}

void c11_orderings(const Options&, std::vector<Line>& out) {
    const std::vector<double> lam_anti{0.5, 1.0, 1.5};
    const auto T = implicit::anti_regularization_ordering(lam_anti, -4.0, 0.5);
    const bool anti = implicit::ordered_by_lambda(lam_anti, T, true);

    const std::vector<double> lam_k0{1.0, 3.0, 10.0};
    const auto T0 = implicit::k0_ordering(lam_k0, 2.0, -5.0);
    const bool k0 = implicit::ordered_by_lambda(lam_k0, T0, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < lam_k0.size(); ++i) {
        const double sim = scalar::simulate_vanishing_time(-5.0, 2.0, lam_k0[i]);
        worst = std::max(worst, std::abs(sim - T0[i]) / T0[i]);
    }
    out.push_back(make(11, "orderings", anti && k0 && worst <= 1e-3,
                       fmt("T(λ=.5,1,1.5) = %.4f %.4f %.4f; T0(λ=1,3,10) = %.4f %.4f %.4f; max rel gap to "
                           "simulated crossing %.2g (tol 1e-3)",
                           T[0], T[1], T[2], T0[0], T0[1], T0[2], worst)));
}

// ---- deep --------------------------------------------------------------------

void c12_deep(const Options&, std::vector<Line>& out) {
    deep::DeepParams p{3, 1.0, {2.0, 2.5}, 0.0};
    const auto c = deep::layer_constants(p);
    double agree = 0.0, power = 0.0, final_err = 0.0;
    for (double th0 : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
        p.theta1_0 = th0;
        const auto full = deep::integrate_deep_full(p, 50.0, 1e-3);
        const auto red = deep::integrate_deep_reduced(p, 50.0, 1e-3);
        for (std::size_t k = 0; k < full.size(); ++k)
            for (std::size_t j = 0; j < full.width(); ++j)
                agree = std::max(agree, std::abs(full.at(k, j) - red.at(k, j)));
        power = std::max(power, deep::check_power_relation(full, c));
        final_err = std::max(final_err, full.at(full.size() - 1, full.column_index("abs_error")));
    }

    const auto b = discrete::deep_budget(p);
    const double eta = 0.9 * b.eta_max;
    const double q = b.q_theory(eta);
    const auto mid = discrete::midpoint_deep_run(p, eta, 5000);
    const auto err = mid.column("abs_error");
    double c_lambda = 0.0;
    std::size_t k = 0;
    for (; k < err.size() && err[k] >= 1e-8; ++k) c_lambda = std::max(c_lambda, err[k] / std::pow(q, double(k)));
    bool geo = true;
    std::size_t checked = 0;
    for (std::size_t t = 0; t < err.size() && err[t] >= 1e-13; ++t, ++checked)
        geo = geo && err[t] <= c_lambda * std::pow(q, double(t)) * (1.0 + 1e-3);

    const bool ok = agree <= 1e-6 && power <= 1e-6 && final_err <= 1e-6 && geo;
    out.push_back(make(12, "deep-consistency", ok,
                       fmt("reduced vs full max dev %.2g; power relation dev %.2g; max |∏θ-1| at t=50 %.2g; "
                           "midpoint η=%.4f q=%.4f C_λ=%.4g bound holds on %zu steps: %s",
                           agree, power, final_err, eta, q, c_lambda, checked, geo ? "yes" : "no")));
}

// ---- matrix ------------------------------------------------------------------

void c13_decoupling(const Options&, std::vector<Line>& out) {
    using matrix::Mat;
    const Eigen::Vector3d lam(3.0, 1.0, 0.5), dvec(1.0, 2.0, 3.0);
    const Mat u0 = matrix::random_orthogonal(3, 11), v0 = matrix::random_orthogonal(3, 12);
    const Mat r = matrix::random_orthogonal(3, 13);
    matrix::DataModel data{Mat::Identity(3, 3), u0 * lam.asDiagonal() * v0.transpose(), std::nullopt};
    const auto tf = matrix::svd_change_of_variables(data, r);
    const auto fa = matrix::structured_fa_matrix(r, dvec, tf.u);

    double eta_max = 1e300;
    std::vector<discrete::EulerRun> scalar_runs;
    for (int i = 0; i < 3; ++i) eta_max = std::min(eta_max, discrete::euler_budget_provisional(dvec(i), lam(i)).eta_max);
    const double eta = 0.9 * eta_max;
    for (int i = 0; i < 3; ++i) scalar_runs.push_back(discrete::euler_run(dvec(i), lam(i), eta, 500));

    matrix::LinearModel m{{Mat::Zero(3, 3), Mat::Zero(3, 3)}};
    double diag_dev = 0.0, off = 0.0;
    for (int t = 1; t <= 500; ++t) {
        m = matrix::fa_matrix_step(m, data, fa, eta);
        const auto tilde = tf.to_tilde(m);
        for (int i = 0; i < 3; ++i) {
            const auto s = scalar_runs[i].traj.state(static_cast<std::size_t>(t));
            diag_dev = std::max({diag_dev, std::abs(tilde.w[0](i, i) - s[0]), std::abs(tilde.w[1](i, i) - s[1])});
            for (int j = 0; j < 3; ++j)
                if (i != j) off = std::max({off, std::abs(tilde.w[0](i, j)), std::abs(tilde.w[1](i, j))});
        }
    }
    out.push_back(make(13, "matrix-decoupling", diag_dev <= 1e-10 && off <= 1e-10,
                       fmt("random U,V,R; D=diag(1,2,3), λ=(3,1,0.5); 500 steps: max diagonal vs scalar Euler "
                           "%.2g, max off-diagonal %.2g (tol 1e-10)",
                           diag_dev, off)));
}

void c14_autoencoder(const Options& opt, std::vector<Line>& out) {
    matrix::AutoencoderConfig cfg;
    const auto seeds = matrix::default_seeds(cfg.seed, cfg.repeats);
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = matrix::autoencoder_experiment(cfg, seeds, opt.parallel);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto b = matrix::autoencoder_experiment(cfg, seeds, !opt.parallel);
    const bool same = a.to_csv() == b.to_csv();
    const double fa_rel = a.fa_recon.mean.back() / a.initial_recon;
    const double gd_rel = a.gd_recon.mean.back() / a.initial_recon;
    const bool ok = secs < 120.0 && fa_rel < 0.01 && gd_rel < 0.01 && same;
    out.push_back(make(14, "autoencoder-experiment", ok,
                       fmt("%d repeats x %d steps in %.1fs (limit 120s); final/initial recon FA %.3g, GD %.3g "
                           "(need < 0.01); serial and parallel outputs identical: %s",
                           cfg.repeats, cfg.steps, secs, fa_rel, gd_rel, same ? "yes" : "no")));
}

void c15_negative_control(const Options&, std::vector<Line>& out) {
    const auto b = discrete::euler_budget_provisional(1.0, 1.0);
    const double eta = 1.5 * b.eta_max;
    std::string detail;
    try {
        const auto run = discrete::euler_run(1.0, 1.0, eta, 100000, 1000);
        if (run.first_region_violation)
            detail = fmt("η = 1.5·η_max = %.4f: region invariant first violated at step %zu", eta,
                         *run.first_region_violation);
        else
            detail = fmt("η = 1.5·η_max = %.4f: no violation or divergence in 1e5 steps; bound conservative here", eta);
    } catch (const DivergenceError& e) {
        detail = fmt("η = 1.5·η_max = %.4f: diverged at step %.0f", eta, e.time());
    }
    out.push_back(make(15, "euler-negative-control", true, detail));
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "midpoint-conservation", "midpoint discrete", c01_midpoint_conservation},
        {2, "midpoint-rate-bound", "midpoint discrete rate", c02_midpoint_bound},
        {3, "midpoint-one-step", "midpoint discrete", c03_one_step},
        {4, "euler-region-invariants", "euler discrete", c04_euler_region},
        {5, "euler-convergence-rate", "euler discrete rate", c05_euler_rate},
        {6, "continuous-k0-rate", "continuous scalar rate", c06_k0_rate},
        {7, "implicit-solution-residuals", "continuous scalar", c07_implicit_residuals},
        {8, "lambda-zero-power-law", "continuous scalar rate", c08_power_law},
        {9, "conservation-of-k", "continuous scalar", c09_conservation},
        {10, "step-function-limit", "implicit-reg", c10_step_function},
        {11, "orderings", "implicit-reg continuous", c11_orderings},
        {12, "deep-consistency", "deep continuous midpoint", c12_deep},
        {13, "matrix-decoupling", "matrix euler", c13_decoupling},
        {14, "autoencoder-experiment", "matrix autoencoder", c14_autoencoder},
        {15, "euler-negative-control", "euler discrete", c15_negative_control},
    };
    return all;
}

bool selected(const Criterion& c, const std::string& filter) {
    if (filter.empty()) return true;
    if (filter == std::to_string(c.id)) return true;
    return std::string_view(c.name).find(filter) != std::string_view::npos ||
           std::string_view(c.tags).find(filter) != std::string_view::npos;
}

}  // namespace

std::vector<Line> run(const Options& options) {
    std::vector<Line> lines;
    for (const auto& c : criteria()) {
        if (!selected(c, options.filter)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t before = lines.size();
        try {
            c.body(options, lines);
        } catch (const std::exception& e) {
            lines.push_back(make(c.id, c.name, false, std::string("threw: ") + e.what()));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (std::size_t i = before; i < lines.size(); ++i)
            if (!lines[i].informational) lines[i].seconds = secs;
    }
    return lines;
}

std::string format(const Line& l) {
    if (l.informational) return "[INFO]    " + l.name + ": " + l.detail;
    return fmt("[%s] %02d %s (%.2fs): ", l.pass ? "PASS" : "FAIL", l.id, l.name.c_str(), l.seconds) + l.detail;
}

bool all_passed(const std::vector<Line>& lines) {
    return std::all_of(lines.begin(), lines.end(), [](const Line& l) { return l.informational || l.pass; });
}

std::vector<std::string> criterion_names() {
    std::vector<std::string> names;
    for (const auto& c : criteria()) names.emplace_back(c.name);
    return names;
}

}  // namespace fa::acceptance
