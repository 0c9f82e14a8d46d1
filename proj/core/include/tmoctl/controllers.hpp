#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tmoctl/frequency.hpp"
#include "tmoctl/oustaloup.hpp"
#include "tmoctl/plant.hpp"
#include "tmoctl/rational_tf.hpp"

namespace tmoctl {

/// Mixed-sensitivity weights: W1 low-pass with high DC gain (near-integrator),
/// W2 high-pass limiting the control bandwidth.
struct WeightSet {
    RationalTF w1;
    RationalTF w2;
};

/// W1 = 0.01 (s+15)/(s+1.5e-3), W2 = 0.95 (s+3)/(s+2850).
WeightSet build_weights();

using TfMatrix = std::vector<std::vector<RationalTF>>;

/// Generalized plant over inputs (r, d_u, u) and outputs (z1, z2, r, y),
/// partitioned for the lower LFT with the 1x2 controller. Contains the
/// Pade-2 surrogate G~, never the exact delay.
struct GeneralizedPlant {
    TfMatrix p11;  // 2x2
    TfMatrix p12;  // 2x1
    TfMatrix p21;  // 2x2
    TfMatrix p22;  // 2x1
};

GeneralizedPlant build_generalized_plant(const RationalTF& g_tilde, const WeightSet& w);

/// The two controllers of the study. c_inf_1/c_inf_2 share a common
/// denominator (one pole at the origin); c_fo carries integral action.
struct ControllerSet {
    RationalTF c_inf_1;  // reference channel of the 2DOF H-inf controller
    RationalTF c_inf_2;  // output channel
    RationalTF c_fo;     // FO loop-shaping controller
};

/// Both H-inf channels from the published zero/pole/gain factorizations.
/// Validates the shared denominator, order 7, and the integrator pole.
ControllerSet canonical_hinf_controller();

/// The published FO controller (order 7, gain 120.2, pole at the origin).
RationalTF canonical_cfo();

/// Full controller set: canonical H-inf channels plus the canonical C_FO.
ControllerSet make_controller_set();

/// PI-lead element K_PIL = 213 (s+2)(s+2/3) / (s (s+6)).
RationalTF build_kpil();
/// Non-proper notch filter F_pp = 0.034 (s^2 + 1.027 s + 267.4) / (s+9);
/// the numerator reproduces the plant's resonant pole pair.
RationalTF build_fpp();

/// K_PIL * F_pp * Q^{-1} with the rationalized compensator. Throws
/// ToleranceViolationError when the result deviates from the published
/// controller by more than 5% magnitude or 3 deg phase on [0.05, 50] rad/s.
RationalTF assemble_cfo(const CompensatorSpec& spec);

/// Multiplies by 1/(s+eps), eps in (0, 2e-3].
RationalTF integrator_augment(const RationalTF& c_hat, double epsilon);
/// The eps -> 0 replacement: multiplies by the exact integrator 1/s.
RationalTF integrator_augment_ideal(const RationalTF& c_hat);

struct ChannelPeak {
    double omega = 0.0;
    double peak = 0.0;
};

struct NormCheckReport {
    double gamma = 0.0;       // sup over omega of sigma_max of the closed LFT
    double peak_omega = 0.0;  // frequency of the supremum
    std::vector<std::vector<ChannelPeak>> channel_peaks;  // per (z_i, w_j) entry
    bool stable_closure = true;
};

/// H-inf norm of the lower LFT P11 + P12 C (I - P22 C)^{-1} P21 evaluated
/// pointwise on an adaptive grid. Reported, not asserted: the published
/// guarantee gamma < 1 covers only the pre-reduction controller.
NormCheckReport closed_loop_norm_check(const GeneralizedPlant& p, const ControllerSet& c);

/// Generic pointwise lower-LFT norm for small transfer matrices.
NormCheckReport lft_norm(const TfMatrix& p11, const TfMatrix& p12, const TfMatrix& p21,
                         const TfMatrix& p22, const TfMatrix& controller);

/// How the loop delay G_d enters an evaluation: exactly, or through an
/// explicit Pade rationalization (the published sensitivity peaks were
/// produced with the first-order surrogate).
enum class LoopDelayModel { exact, pade1, pade2 };

/// Disturbance sensitivity S_yd = G_yd / (1 + C G_d G_yd) with G_yd := G_yu,
/// evaluated with the exact delay in the loop unless a Pade model is asked
/// for explicitly.
class SensitivityYd {
  public:
    SensitivityYd(RationalTF controller, const PlantParams& p, double tau);

    Complex eval(double omega, LoopDelayModel model = LoopDelayModel::exact) const;
    /// Peak magnitude over an adaptive grid (>= 200 points/decade near the
    /// peak, refined until the estimate moves by < 1e-6 relative).
    double peak(double* peak_omega = nullptr,
                LoopDelayModel model = LoopDelayModel::exact) const;
    /// Nyquist winding count of the loop around -1 (0 means stable closure
    /// for the open loops occurring here, which have no open RHP poles).
    int nyquist_winding() const;

    const RationalTF& loop_controller() const { return c_; }
    double tau() const { return tau_; }

  private:
    RationalTF g_yu_;
    RationalTF c_;
    double tau_;
};

/// Feedback compensator of the disturbance loop: pass c = C_FO or c = -C_inf2.
SensitivityYd sensitivity_yd(const RationalTF& c, const PlantParams& p, double tau);

/// Magnitude data of the FO feedforward path F_FO = C_FO + G_yu^{-1} e^{-tau_n s}.
/// F_FO is non-proper, so it exists only as pointwise samples: the integrator
/// dominates at low frequency, the inverse plant (with its notch at omega0)
/// at high frequency.
FrequencyResponse ff_transfer(const RationalTF& c_fo, const PlantParams& p,
                              const std::vector<double>& grid);

/// Shared-state two-input realization of u = C1 r + C2 y. The reference
/// channel is DC-matched (C1(0) -> -C2(0), a print-rounding-scale nudge) so
/// the integrator sees zero net input at r == y; nominal closed-loop
/// stability against the Pade-2 model is verified at build time.
StateSpaceModel realize_two_dof(const ControllerSet& set, const PlantParams& p);

/// ZPK JSON: {"gain": g, "zeros": [[re, im], ...], "poles": [...], "delay": t}.
std::string to_zpk_json(const RationalTF& g);
std::string controller_set_to_zpk_json(const ControllerSet& set);

}  // namespace tmoctl
