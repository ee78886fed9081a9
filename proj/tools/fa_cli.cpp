// fa: command-line driver for the FA toolkit.
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <unistd.h>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fa/acceptance.hpp"
#include "fa/analysis.hpp"
#include "fa/cubic.hpp"
#include "fa/deep_continuous.hpp"
#include "fa/implicit_reg.hpp"
#include "fa/matrix_fa.hpp"
#include "fa/scalar_continuous.hpp"
#include "fa/scalar_discrete.hpp"
#include "fa/trajectory.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSpecVersion = "1.0";

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalid = 2, kDiverged = 3 };

struct Global {
    std::string output = ".";
    std::uint64_t seed = 0;
};

void write_atomic(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string());
        f << content;
        if (!f.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

json budget_json(const fa::discrete::StepSizeBudget& b) {
    json j{{"scheme", std::string(fa::discrete::to_string(b.scheme))},
           {"eta_max", b.eta_max},
           {"s_star", b.s_star},
           {"max_p", b.max_p},
           {"M", b.m},
           {"C_inf", b.c_inf},
           {"M_tilde", b.m_tilde},
           {"ell_inf", b.ell_inf},
           {"rate_linear", b.lin},
           {"rate_quadratic", b.quad},
           {"provisional", b.provisional}};
    if (std::isfinite(b.eta_max)) j["q_theory_at_0.9"] = b.q_theory(0.9 * b.eta_max);
    return j;
}

json fit_json(const fa::analysis::RateFit& f) {
    return {{"kind", std::string(fa::analysis::to_string(f.kind))},
            {"rate", f.rate},
            {"r_squared", f.r_squared},
            {"window", {f.first, f.last}},
            {"points", f.points}};
}

// Fast schemes leave too few samples in the default window; widen it once.
template <class F>
json try_fit(F&& f) {
    try {
        return fit_json(f(fa::analysis::WindowPolicy{}));
    } catch (const std::invalid_argument&) {
    }
    fa::analysis::WindowPolicy wide{1e-13, 1e-2, 1.0, std::nullopt, std::nullopt, 10};
    try {
        json j = fit_json(f(wide));
        j["window_policy"] = "wide";
        return j;
    } catch (const std::invalid_argument& e) {
        return {{"error", e.what()}};
    }
}

void emit(const Global& g, const std::string& stem, const std::string& csv, const json& manifest) {
    const fs::path dir(g.output);
    write_atomic(dir / (stem + ".csv"), csv);
    write_atomic(dir / (stem + ".json"), manifest.dump(2) + "\n");
    std::cout << (dir / (stem + ".csv")).string() << "\n" << (dir / (stem + ".json")).string() << "\n";
}

json base_manifest(const Global& g, const std::string& command) {
    return {{"spec_version", kSpecVersion}, {"command", command}, {"seed", g.seed}};
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
    std::string kind;
    std::vector<double> d;
    double lambda = 1.0;
    double theta0 = 0.0;
    std::optional<double> theta2_0;
    bool k0 = false;
    double t_end = 10.0;
    double dt = 1e-3;
    std::string eta = "auto";
    std::size_t steps = 1000;
    int L = 2;
    std::size_t record_every = 1;
};

double scalar_d(const std::vector<double>& d) {
    if (d.size() != 1) throw std::invalid_argument("--d takes a single value for this command");
    return d.front();
}

double resolve_eta(const std::string& eta, const fa::discrete::StepSizeBudget& b) {
    if (eta == "auto") return 0.9 * b.eta_max;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(eta, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != eta.size() || !(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("--eta must be a positive number or 'auto'");
    return v;
}

int cmd_simulate(const Global& g, const SimulateArgs& a) {
    json m = base_manifest(g, "simulate " + a.kind);
    std::string csv;

    if (a.kind == "scalar-ode") {
        const double d = scalar_d(a.d);
        if (a.k0 && a.theta2_0) throw std::invalid_argument("--scheme-k0 and --theta2-0 are exclusive");
        const auto p = a.k0 || !a.theta2_0 ? fa::scalar::ComponentParams::aligned(a.lambda, d, a.theta0)
                                           : fa::scalar::ComponentParams(a.lambda, d, a.theta0, *a.theta2_0);
        const auto tr = fa::scalar::integrate_scalar(p, a.t_end, a.dt, {a.record_every});
        const auto rate = fa::scalar::theoretical_rate(p);
        m["params"] = {{"d", d},         {"lambda", a.lambda}, {"theta1_0", p.theta1_0}, {"theta2_0", p.theta2_0},
                       {"K", p.K},       {"t_end", a.t_end},   {"dt", a.dt},             {"integrator", "rk4"},
                       {"record_every", a.record_every}};
        m["case"] = std::string(fa::scalar::to_string(fa::scalar::classify_case(p)));
        m["attracting_root"] = fa::scalar::attracting_root(p);
        const bool power = rate.kind == fa::scalar::RateInfo::Kind::PowerLaw;
        m["theoretical_rate"] = {{"kind", power ? "power_law" : "exponential"}, {"value", rate.value}};
        if (power) {
            std::vector<double> prod;
            for (double v : tr.column("product")) prod.push_back(std::abs(v));
            m["fitted_rate"] = try_fit([&](const auto& w) { return fa::analysis::fit_powerlaw(tr.times(), prod, w); });
        } else {
            m["fitted_rate"] =
                try_fit([&](const auto& w) { return fa::analysis::fit_exponential(tr.times(), tr.column("abs_error"), w); });
        }
        m["final_product"] = tr.at(tr.size() - 1, tr.column_index("product"));
        csv = tr.to_csv("t");
    } else if (a.kind == "deep-ode") {
        fa::deep::DeepParams p{a.L, a.lambda, a.d, a.theta0};
        p.validate();
        const auto c = fa::deep::layer_constants(p);
        const auto tr = fa::deep::integrate_deep_full(p, a.t_end, a.dt, a.record_every);
        const double r = c.fixed_point(a.lambda);
        m["params"] = {{"L", a.L},         {"d", a.d},   {"lambda", a.lambda},   {"theta1_0", a.theta0},
                       {"t_end", a.t_end}, {"dt", a.dt}, {"integrator", "rk4"}, {"record_every", a.record_every}};
        m["constants"] = {{"C", c.C}, {"frak_k", c.frak_k}, {"gamma", c.gamma}, {"fixed_point", r}};
        m["theoretical_rate"] = {{"kind", "exponential"},
                                 {"value", p.d_at(1) * c.gamma * c.frak_k * std::pow(r, c.gamma - 1)}};
        m["fitted_rate"] = try_fit([&](const auto& w) { return fa::analysis::fit_exponential(tr.times(), tr.column("abs_error"), w); });
        m["power_relation_deviation"] = fa::deep::check_power_relation(tr, c);
        csv = tr.to_csv("t");
    } else {
        fa::discrete::StepSizeBudget b;
        std::optional<fa::Trajectory> tr;
        double eta = 0.0;
        if (a.kind == "euler") {
            const double d = scalar_d(a.d);
            b = fa::discrete::euler_budget(d, a.lambda);
            eta = resolve_eta(a.eta, b);
            auto run = fa::discrete::euler_run(d, a.lambda, eta, a.steps, a.record_every);
            m["first_region_violation"] =
                run.first_region_violation ? json(*run.first_region_violation) : json(nullptr);
            tr = std::move(run.traj);
            m["params"] = {{"d", d}, {"lambda", a.lambda}};
        } else if (a.kind == "midpoint") {
            const double d = scalar_d(a.d);
            b = fa::discrete::midpoint2_budget(d, a.lambda);
            eta = resolve_eta(a.eta, b);
            tr = fa::discrete::midpoint2_run(d, a.lambda, eta, a.steps, a.record_every);
            m["params"] = {{"d", d}, {"lambda", a.lambda}};
        } else {
            fa::deep::DeepParams p{a.L, a.lambda, a.d, 0.0};
            p.validate();
            b = fa::discrete::deep_budget(p);
            eta = resolve_eta(a.eta, b);
            tr = fa::discrete::midpoint_deep_run(p, eta, a.steps, a.record_every);
            m["params"] = {{"L", a.L}, {"d", a.d}, {"lambda", a.lambda}};
        }
        m["params"]["steps"] = a.steps;
        m["params"]["record_every"] = a.record_every;
        m["eta"] = {{"requested", a.eta}, {"resolved", eta}};
        m["budget"] = budget_json(b);
        m["theoretical_rate"] = {{"kind", "geometric"},
                                 {"value", eta < b.eta_max ? json(b.q_theory(eta)) : json(nullptr)}};
        m["fitted_rate"] = try_fit([&](const auto& w) { return fa::analysis::fit_geometric(tr->times(), tr->column("abs_error"), w); });
        csv = tr->to_csv("step");
    }
    emit(g, a.kind, csv, m);
    return kOk;
}

// ---- bounds -----------------------------------------------------------------

struct BoundsArgs {
    std::string scheme;
    std::vector<double> d;
    double lambda = 1.0;
    int L = 2;
};

int cmd_bounds(const BoundsArgs& a) {
    fa::discrete::StepSizeBudget b;
    if (a.scheme == "euler")
        b = fa::discrete::euler_budget(scalar_d(a.d), a.lambda);
    else if (a.scheme == "midpoint")
        b = fa::discrete::midpoint2_budget(scalar_d(a.d), a.lambda);
    else {
        fa::deep::DeepParams p{a.L, a.lambda, a.d, 0.0};
        p.validate();
        b = fa::discrete::deep_budget(p);
    }
    json j = budget_json(b);
    j["spec_version"] = kSpecVersion;
    j["params"] = {{"d", a.d}, {"lambda", a.lambda}};
    if (a.scheme == "midpoint-deep") j["params"]["L"] = a.L;
    std::cout << j.dump(2) << "\n";
    return kOk;
}

// ---- implicit-reg -----------------------------------------------------------

struct ImplicitArgs {
    std::vector<double> roots;
    double delta = 30.0;
    std::string side = "above";
    double dt = 0.0;
    std::optional<double> d;
    bool k0 = false;
    std::optional<double> K;
    std::optional<double> theta0;
    std::vector<double> lambdas;
};

int cmd_implicit_reg(const Global& g, const ImplicitArgs& a) {
    json m = base_manifest(g, "implicit-reg");
    if (!a.lambdas.empty()) {
        if (!a.d) throw std::invalid_argument("--lambdas needs --d");
        std::vector<double> values;
        if (a.k0) {
            if (!a.theta0) throw std::invalid_argument("--k0 needs --theta0");
            values = fa::implicit::k0_ordering(a.lambdas, *a.d, *a.theta0);
            m["quantity"] = "T0";
            m["params"] = {{"d", *a.d}, {"K", 0.0}, {"theta0", *a.theta0}, {"lambdas", a.lambdas}};
        } else {
            if (!a.K) throw std::invalid_argument("--lambdas needs --K or --k0");
            values = fa::implicit::anti_regularization_ordering(a.lambdas, *a.K, *a.d);
            m["quantity"] = "T";
            m["params"] = {{"d", *a.d}, {"K", *a.K}, {"lambdas", a.lambdas}};
        }
        m["values"] = values;
        m["increasing_in_lambda"] = fa::implicit::ordered_by_lambda(a.lambdas, values, true);
        m["decreasing_in_lambda"] = fa::implicit::ordered_by_lambda(a.lambdas, values, false);
        std::string csv = "lambda,value\n";
        char buf[80];
        for (std::size_t i = 0; i < values.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a.lambdas[i], values[i]);
            csv += buf;
        }
        emit(g, "implicit_reg_ordering", csv, m);
        return kOk;
    }

    if (a.roots.size() != 3)
        throw std::invalid_argument("give --roots r1,r2,r3 or --d with --lambdas");
    const fa::implicit::Roots3 roots{a.roots[0], a.roots[1], a.roots[2]};
    if (!(roots.r1 < roots.r2 && roots.r2 < roots.r3))
        throw std::invalid_argument("roots must be three distinct values in increasing order (Δ > 0)");
    const auto side = fa::implicit::parse_side(a.side);
    const auto tr = fa::implicit::delta_scaling_run(roots, a.delta, side, a.dt);
    m["params"] = {{"roots", a.roots}, {"delta", a.delta}, {"side", a.side}, {"dt", tr.meta().step}};
    m["summary"] = fa::implicit::to_json(fa::implicit::summarize_transition(tr, roots, side));
    emit(g, "implicit_reg", tr.to_csv("t_rescaled"), m);
    return kOk;
}

// ---- autoencoder ------------------------------------------------------------

int cmd_autoencoder(const Global& g, fa::matrix::AutoencoderConfig cfg, bool serial) {
    cfg.seed = g.seed;
    cfg.validate();
    const auto seeds = fa::matrix::default_seeds(cfg.seed, cfg.repeats);
    const auto metrics = fa::matrix::autoencoder_experiment(cfg, seeds, !serial);
    json m = base_manifest(g, "autoencoder");
    m["config"] = cfg.to_json();
    m["repeat_seeds"] = seeds;
    m["initial_recon_error"] = metrics.initial_recon;
    m["final"] = {{"fa_recon_error", metrics.fa_recon.mean.back()},
                  {"gd_recon_error", metrics.gd_recon.mean.back()},
                  {"fa_trace_norm", metrics.fa_trace.mean.back()},
                  {"gd_trace_norm", metrics.gd_trace.mean.back()}};
    m["gd_diverged"] = metrics.gd_diverged;
    m["fa_diverged_repeats"] = metrics.fa_diverged;
    emit(g, "autoencoder", metrics.to_csv(), m);
    return kOk;
}

// ---- verify -----------------------------------------------------------------

int cmd_verify(const fa::acceptance::Options& opt) {
    const auto lines = fa::acceptance::run(opt);
    if (lines.empty()) {
        std::cerr << "no criterion matches filter '" << opt.filter << "'\n";
        return kInvalid;
    }
    for (const auto& l : lines) std::cout << fa::acceptance::format(l) << "\n";
    const bool ok = fa::acceptance::all_passed(lines);
    std::size_t failed = 0;
    for (const auto& l : lines) failed += (!l.informational && !l.pass) ? 1 : 0;
    std::cout << (ok ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feedback-alignment dynamics toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML config; command-line flags override it");
    Global g;
    app.add_option("--output", g.output, "Output directory")->capture_default_str();
    app.add_option("--seed", g.seed, "Base seed")->capture_default_str();

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Integrate a flow or iterate a discrete scheme");
    s->add_option("kind", sim.kind, "scalar-ode | deep-ode | euler | midpoint | midpoint-deep")
        ->required()
        ->check(CLI::IsMember({"scalar-ode", "deep-ode", "euler", "midpoint", "midpoint-deep"}));
    s->add_option("--d", sim.d, "FA constant(s); comma-separated d1..d_{L-1} for deep kinds")
        ->required()
        ->delimiter(',');
    s->add_option("--lambda", sim.lambda)->required();
    s->add_option("--theta0", sim.theta0, "Initial θ₁");
    s->add_option("--theta2-0", sim.theta2_0, "Initial θ₂ (scalar-ode); default gives K = 0");
    s->add_flag("--scheme-k0", sim.k0, "Aligned start θ₂(0) = θ₀²/(2d)");
    s->add_option("--t-end", sim.t_end)->capture_default_str();
    s->add_option("--dt", sim.dt)->capture_default_str();
    s->add_option("--eta", sim.eta, "Step size or 'auto' (0.9 × budget)")->capture_default_str();
    s->add_option("--steps", sim.steps)->capture_default_str();
    s->add_option("--L", sim.L, "Depth for deep kinds")->capture_default_str();
    s->add_option("--record-every", sim.record_every)->capture_default_str()->check(CLI::PositiveNumber);

    BoundsArgs bnd;
    auto* b = app.add_subcommand("bounds", "Print the step-size budget as JSON");
    b->add_option("scheme", bnd.scheme)
        ->required()
        ->check(CLI::IsMember({"euler", "midpoint", "midpoint-deep"}));
    b->add_option("--d", bnd.d)->required()->delimiter(',');
    b->add_option("--lambda", bnd.lambda)->capture_default_str();
    b->add_option("--L", bnd.L)->capture_default_str();

    ImplicitArgs imp;
    auto* ir = app.add_subcommand("implicit-reg", "δ-rescaled transitions and threshold-time orderings");
    ir->add_option("--roots", imp.roots, "r1,r2,r3")->delimiter(',');
    ir->add_option("--delta", imp.delta)->capture_default_str();
    ir->add_option("--side", imp.side)->capture_default_str()->check(CLI::IsMember({"above", "below"}));
    ir->add_option("--dt", imp.dt, "Rescaled step; 0 selects T/2000")->capture_default_str();
    ir->add_option("--d", imp.d);
    ir->add_flag("--k0", imp.k0, "Vanishing times of K = 0 components");
    ir->add_option("--K", imp.K);
    ir->add_option("--theta0", imp.theta0);
    ir->add_option("--lambdas", imp.lambdas)->delimiter(',');

    fa::matrix::AutoencoderConfig ae;
    bool ae_serial = false;
    auto* a = app.add_subcommand("autoencoder", "Linear autoencoder, FA against GD");
    a->add_option("--depth", ae.depth)->capture_default_str();
    a->add_option("--repeats", ae.repeats)->capture_default_str();
    a->add_option("--steps", ae.steps)->capture_default_str();
    a->add_option("--eta", ae.eta)->capture_default_str();
    a->add_option("--samples", ae.samples)->capture_default_str();
    a->add_option("--input-dim", ae.input_dim)->capture_default_str();
    a->add_option("--latent-dim", ae.latent_dim)->capture_default_str();
    a->add_option("--hidden-dim", ae.hidden_dim)->capture_default_str();
    a->add_option("--init-scale", ae.init_scale)->capture_default_str();
    a->add_option("--noise-std", ae.noise_std)->capture_default_str();
    a->add_option("--record-every", ae.record_every)->capture_default_str();
    a->add_option("--loss", ae.loss)->capture_default_str()->check(CLI::IsMember({"mean", "sum"}));
    a->add_flag("!--fresh-noise", ae.fix_noise, "Redraw the output noise for every repeat");
    a->add_flag("--serial", ae_serial, "Run repeats on one thread");

    fa::acceptance::Options vopt;
    bool v_serial = false;
    auto* v = app.add_subcommand("verify", "Run the acceptance criteria");
    v->add_option("--filter", vopt.filter, "Criterion number, or a substring of its name or tags");
    v->add_flag("--serial", v_serial);
    v->add_flag("--inject-fault", vopt.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << "\n" << app.help();
        return kInvalid;
    }

    try {
        if (*s) return cmd_simulate(g, sim);
        if (*b) return cmd_bounds(bnd);
        if (*ir) return cmd_implicit_reg(g, imp);
        if (*a) return cmd_autoencoder(g, ae, ae_serial);
        vopt.parallel = !v_serial;
        return cmd_verify(vopt);
    } catch (const fa::DivergenceError& e) {
        std::cerr << "diverged: " << e.what() << "\n";
        return kDiverged;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
}
