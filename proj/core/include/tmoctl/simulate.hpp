#pragma once

#include <algorithm>
#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tmoctl/controllers.hpp"
#include "tmoctl/metrics.hpp"
#include "tmoctl/signals.hpp"

namespace tmoctl {

enum class ControllerKind { fo, hinf };
enum class ExperimentKind { disturbance, tracking };

/// Time shift of the model-inverse feedforward (FO tracking only):
/// minus_tau_n is the published formula, plus_tau_n pre-shifts the a-priori
/// known reference so the output meets it after the transport delay.
enum class FfShift { minus_tau_n, zero, plus_tau_n };

struct Scenario {
    ControllerKind controller = ControllerKind::fo;
    ExperimentKind experiment = ExperimentKind::tracking;
    double tau_factor = 1.0;
    std::array<double, 4> x0{0.0, 0.0, 0.0, 0.0};
    double horizon = 20.0;  // s
    double t_s = 2e-4;      // s
    std::optional<ReferenceSpec> reference;
    std::optional<DisturbanceSpec> disturbance;
    bool jitter_on = false;
    bool ku_nonlinearity_on = false;
    FfShift ff_shift = FfShift::minus_tau_n;
    std::string label;

    /// Fills in the experiment's documented defaults (reference profile,
    /// disturbance window, initial state) where not already set.
    void apply_defaults(const PlantParams& p);
};

struct SimResult {
    std::vector<double> t, y, r, e, u, u_plant;
    std::array<std::vector<double>, 4> x;

    /// Columns: t, r, y, e, u, u_plant, x1, x2, x3, x4.
    void write_csv(std::ostream& os) const;
};

/// Transport delay as a ring buffer of past inputs: push u(k), pop u(k - n).
/// Pre-filled with the first pushed sample, so there is no underrun.
class DelayLine {
  public:
    explicit DelayLine(size_t n_samples) : buf_(std::max<size_t>(n_samples, 1), 0.0) {}
    double push_pop(double u) {
        if (!primed_) {
            std::fill(buf_.begin(), buf_.end(), u);
            primed_ = true;
        }
        const double out = buf_[pos_];
        buf_[pos_] = u;
        pos_ = (pos_ + 1) % buf_.size();
        return out;
    }
    size_t depth() const { return buf_.size(); }

  private:
    std::vector<double> buf_;
    size_t pos_ = 0;
    bool primed_ = false;
};

/// One RK4 step of the plant ODE with the input voltage held over the step.
/// v_volts is the post-delay actuator command; the force term is
/// B (gain * v - u_d) with gain = k_m * k_u(x1) when the nonlinearity is on.
Eigen::Vector4d plant_rk4_step(const PlantRealization& plant, const PlantParams& p,
                               const Eigen::Vector4d& x, double v_volts, double t_s,
                               bool ku_nonlinearity_on);

/// Fixed-step RK4 closed-loop simulation: exact transport delay as a ring
/// buffer of ceil(tau/Ts) past inputs, bilinear controller discretization,
/// input saturation, hard stops on x1, optional state-dependent input gain
/// and jitter. Controllers start from their stationary state for the initial
/// (r, y) pair. Aborts with a diagnostic when |x| exceeds 1e3.
SimResult simulate(const Scenario& sc, const PlantParams& p, const ControllerSet& set);

struct RunOutcome {
    Scenario scenario;
    std::optional<SimResult> result;
    std::optional<MetricsReport> metrics;
    std::string error;  // nonempty when the scenario failed
};

/// Runs every scenario, collecting per-scenario failures without aborting.
std::vector<RunOutcome> run_matrix(const std::vector<Scenario>& scenarios, const PlantParams& p,
                                   const ControllerSet& set);

/// The study's default matrix: 2 controllers x {0.9, 1.0, 1.1} tau_n x
/// 2 experiments, seeded deterministically from base_seed.
std::vector<Scenario> default_scenario_matrix(const PlantParams& p, std::uint32_t base_seed,
                                              FfShift tracking_shift = FfShift::plus_tau_n);

const char* to_string(ControllerKind k);
const char* to_string(ExperimentKind k);
const char* to_string(FfShift s);

}  // namespace tmoctl
