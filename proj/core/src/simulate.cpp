#include "tmoctl/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "tmoctl/discretize.hpp"
#include "tmoctl/errors.hpp"
#include "tmoctl/feedforward.hpp"

namespace tmoctl {

const char* to_string(ControllerKind k) { return k == ControllerKind::fo ? "fo" : "hinf"; }
const char* to_string(ExperimentKind k) {
    return k == ExperimentKind::tracking ? "tracking" : "disturbance";
}
const char* to_string(FfShift s) {
    switch (s) {
        case FfShift::minus_tau_n: return "minus_tau_n";
        case FfShift::zero: return "zero";
        case FfShift::plus_tau_n: return "plus_tau_n";
    }
    return "?";
}

void Scenario::apply_defaults(const PlantParams& p) {
    (void)p;
    if (experiment == ExperimentKind::tracking) {
        if (!reference) {
            ReferenceSpec ref;
            ref.start_times = {1.0, 8.0, 15.0};  // three set-point changes in 20 s
            reference = ref;
        }
        if (x0 == std::array<double, 4>{0.0, 0.0, 0.0, 0.0})
            x0 = {reference->r0, 0.0, reference->r0, 0.0};
    } else {
        if (!disturbance) disturbance = DisturbanceSpec{};
        if (x0 == std::array<double, 4>{0.0, 0.0, 0.0, 0.0}) x0 = {0.01, 0.0, 0.01, 0.0};
    }
    if (label.empty()) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s_%s_tau%.2f", to_string(controller),
                      to_string(experiment), tau_factor);
        label = buf;
    }
}

void SimResult::write_csv(std::ostream& os) const {
    os << "t,r,y,e,u,u_plant,x1,x2,x3,x4\n";
    char buf[320];
    for (size_t i = 0; i < t.size(); ++i) {
        std::snprintf(buf, sizeof(buf),
                      "%.6f,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e,%.9e\n", t[i], r[i], y[i],
                      e[i], u[i], u_plant[i], x[0][i], x[1][i], x[2][i], x[3][i]);
        os << buf;
    }
}

namespace {

// Stationary controller state for the initial (r, y) pair, with the free
// integrator direction used to zero the initial output. Mirrors a rig that
// reaches the operating point under control before the experiment starts;
// when no stationary state exists (e(0) != 0) this is the least-drift
// bumpless start.
Eigen::VectorXd stationary_controller_state(const DiscreteStateSpace& d,
                                            const Eigen::VectorXd& w0) {
    const int n = d.order();
    const Eigen::MatrixXd M = d.Ad - Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd x = svd.solve(-d.Bd * w0);  // least-squares drift
    // Slide along the integrator's null direction to start at zero output.
    const Eigen::VectorXd null_dir = svd.matrixV().col(n - 1);
    const double sigma_min = svd.singularValues()(n - 1);
    const double gain = (d.Cd * null_dir)(0);
    if (sigma_min <= 1e-9 * svd.singularValues()(0) && std::abs(gain) > 1e-12) {
        const double y0 = (d.Cd * x + d.Dd * w0)(0);
        x -= (y0 / gain) * null_dir;
    }
    return x;
}

}  // namespace

Eigen::Vector4d plant_rk4_step(const PlantRealization& plant, const PlantParams& p,
                               const Eigen::Vector4d& x, double v_volts, double t_s,
                               bool ku_nonlinearity_on) {
    const Eigen::Matrix4d A = plant.sys.A;
    const Eigen::Vector4d B = plant.sys.B.col(0);
    const double u_d = gravity_feedforward(p);
    auto deriv = [&](const Eigen::Vector4d& xs) -> Eigen::Vector4d {
        double gain = 1.0;
        if (ku_nonlinearity_on) {
            const double x1c = std::clamp(xs(0), p.x1_range[0], p.x1_range[1]);
            gain = p.k_m * input_gain(p, x1c);
        }
        return A * xs + B * (gain * v_volts - u_d);
    };
    const Eigen::Vector4d k1 = deriv(x);
    const Eigen::Vector4d k2 = deriv(x + 0.5 * t_s * k1);
    const Eigen::Vector4d k3 = deriv(x + 0.5 * t_s * k2);
    const Eigen::Vector4d k4 = deriv(x + t_s * k3);
    return x + (t_s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

SimResult simulate(const Scenario& sc_in, const PlantParams& p, const ControllerSet& set) {
    Scenario sc = sc_in;
    sc.apply_defaults(p);
    p.validate();
    if (sc.experiment == ExperimentKind::tracking && !sc.reference)
        throw Error("tracking scenario requires a reference");
    if (sc.experiment == ExperimentKind::disturbance && !sc.disturbance)
        throw Error("disturbance scenario requires a disturbance");

    const double t_s = sc.t_s;
    const auto n = static_cast<size_t>(std::lround(sc.horizon / t_s));
    const double tau = sc.tau_factor * p.tau_n;
    const auto n_delay = static_cast<size_t>(std::ceil(tau / t_s));

    const PlantRealization plant = build_plant(p);
    const double u_d = gravity_feedforward(p);

    // Static pre-compensation applied to the whole command (gravity share
    // included, which keeps the k_u-scaled equilibrium consistent); neutral
    // when the nonlinearity is disabled (linear mode).
    const double precomp = sc.ku_nonlinearity_on ? mean_inverse_gain(p) / p.k_m : 1.0;
    const double plant_km = sc.ku_nonlinearity_on ? p.k_m : 1.0;

    // Controller discretization (single-rate loop at Ts).
    DiscreteStateSpace ctrl;
    if (sc.controller == ControllerKind::fo) {
        ctrl = discretize_controller(set.c_fo, t_s);
    } else {
        ctrl = discretize_ss(realize_two_dof(set, p), t_s);
    }

    // Reference / disturbance / feedforward sample streams.
    std::vector<double> r_samp(n, 0.0), d_samp(n, 0.0), ustar(n, 0.0);
    if (sc.experiment == ExperimentKind::tracking) {
        for (size_t k = 0; k < n; ++k)
            r_samp[k] = transition_reference(*sc.reference, static_cast<double>(k) * t_s, 0);
        if (sc.controller == ControllerKind::fo) {
            double shift = 0.0;
            const double quantized_tau_n = std::ceil(p.tau_n / t_s) * t_s;
            if (sc.ff_shift == FfShift::minus_tau_n) shift = -quantized_tau_n;
            if (sc.ff_shift == FfShift::plus_tau_n) shift = +quantized_tau_n;
            const FeedforwardPlan plan =
                build_feedforward_plan(*sc.reference, p, static_cast<int>(n), t_s, shift);
            ustar = feedforward_ustar(plan, p);
        }
    } else {
        std::vector<double> tg(n);
        for (size_t k = 0; k < n; ++k) tg[k] = static_cast<double>(k) * t_s;
        d_samp = disturbance_signal(*sc.disturbance, tg);
        r_samp.assign(n, sc.x0[2]);  // hold the initial load position
    }

    // Controller initial state: stationary for (r(0), y(0)).
    Eigen::VectorXd xc;
    if (sc.controller == ControllerKind::fo) {
        Eigen::VectorXd e0(1);
        e0 << r_samp[0] - sc.x0[2];
        xc = stationary_controller_state(ctrl, e0);
    } else {
        Eigen::VectorXd w0(2);
        w0 << r_samp[0], sc.x0[2];
        xc = stationary_controller_state(ctrl, w0);
    }

    SimResult out;
    out.t.resize(n);
    out.y.resize(n);
    out.r.resize(n);
    out.e.resize(n);
    out.u.resize(n);
    out.u_plant.resize(n);
    for (auto& xi : out.x) xi.resize(n);

    DelayLine ring(n_delay);
    Eigen::Vector4d x(sc.x0[0], sc.x0[1], sc.x0[2], sc.x0[3]);
    Eigen::VectorXd w_in(sc.controller == ControllerKind::hinf ? 2 : 1);

    for (size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * t_s;
        const double y = x(2);
        const double r = r_samp[k];
        const double e = r - y;

        double uc;
        if (sc.controller == ControllerKind::fo) {
            w_in(0) = e;
            uc = ctrl.step(xc, w_in) + ustar[k];
        } else {
            w_in(0) = r;
            w_in(1) = y;
            uc = ctrl.step(xc, w_in);
        }
        double u_cmd = precomp * (u_d + uc);
        if (sc.jitter_on) u_cmd += jitter(t);
        u_cmd = std::clamp(u_cmd, p.u_range[0], p.u_range[1]);

        const double u_delayed = ring.push_pop(u_cmd);
        const double v = u_delayed + d_samp[k];  // disturbance enters after the delay

        x = plant_rk4_step(plant, p, x, v, t_s, sc.ku_nonlinearity_on);

        // Hard stops: position clamp with velocity zeroing on contact.
        if (x(0) < p.x1_range[0]) {
            x(0) = p.x1_range[0];
            x(1) = std::max(x(1), 0.0);
        } else if (x(0) > p.x1_range[1]) {
            x(0) = p.x1_range[1];
            x(1) = std::min(x(1), 0.0);
        }

        if (!x.allFinite() || x.cwiseAbs().maxCoeff() > 1e3)
            throw Error("simulate: state blow-up at t = " + std::to_string(t) + " s (scenario " +
                        sc.label + ")");

        out.t[k] = t;
        out.y[k] = y;
        out.r[k] = r;
        out.e[k] = e;
        out.u[k] = u_cmd;
        out.u_plant[k] = plant_km * v;
        for (int i = 0; i < 4; ++i) out.x[static_cast<size_t>(i)][k] = x(i);
    }
    return out;
}

std::vector<RunOutcome> run_matrix(const std::vector<Scenario>& scenarios, const PlantParams& p,
                                   const ControllerSet& set) {
    std::vector<RunOutcome> out;
    out.reserve(scenarios.size());
    for (const Scenario& sc : scenarios) {
        RunOutcome ro;
        ro.scenario = sc;
        ro.scenario.apply_defaults(p);
        try {
            ro.result = simulate(sc, p, set);
            MetricsReport m = compute_metrics(ro.result->e, ro.result->u);
            m.controller = to_string(sc.controller);
            m.experiment = to_string(sc.experiment);
            m.tau_factor = sc.tau_factor;
            ro.metrics = m;
        } catch (const std::exception& ex) {
            ro.error = ex.what();
        }
        out.push_back(std::move(ro));
    }
    return out;
}

std::vector<Scenario> default_scenario_matrix(const PlantParams& p, std::uint32_t base_seed,
                                              FfShift tracking_shift) {
    (void)p;
    std::vector<Scenario> m;
    for (ControllerKind c : {ControllerKind::hinf, ControllerKind::fo}) {
        for (ExperimentKind e : {ExperimentKind::disturbance, ExperimentKind::tracking}) {
            std::uint32_t tau_idx = 0;
            for (double tf : {0.9, 1.0, 1.1}) {
                Scenario sc;
                sc.controller = c;
                sc.experiment = e;
                sc.tau_factor = tf;
                sc.ff_shift = tracking_shift;
                if (e == ExperimentKind::disturbance) {
                    // Same seed for both controllers at a given tau, so they
                    // face the identical disturbance realization.
                    DisturbanceSpec d;
                    d.seed = base_seed + tau_idx;
                    sc.disturbance = d;
                }
                ++tau_idx;
                m.push_back(sc);
            }
        }
    }
    return m;
}

}  // namespace tmoctl
