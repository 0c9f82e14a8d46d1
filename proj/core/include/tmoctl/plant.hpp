#pragma once

#include <array>

#include "tmoctl/state_space.hpp"

namespace tmoctl {

/// Physical constants of the two-mass oscillator plus the identification
/// corrections used in simulation. Units follow the member comments.
struct PlantParams {
    double k = 200.0;     // N/m, spring constant
    double m = 0.6;       // kg, active mass
    double M = 0.75;      // kg, passive mass (load)
    double eta = 200.0;   // kg/s, viscous damping of the active mass
    double zeta = 0.02;   // kg/s, viscous damping of the connecting spring
    double psi = 17.16;   // V s/m, actuator back-EMF constant
    double R = 5.23;      // V/A, actuator resistance
    double g = 9.81;      // m/s^2

    double tau_n = 0.0;   // s, nominal input delay (2 pi / omega0 when nominal)

    /// Quadratic fit u_ss(x1) in volts (coefficients for 1, x1, x1^2). The
    /// default is the constant gravity-balance voltage, i.e. k_u == 1; the
    /// measured fit behind it is not published and stays a config input.
    std::array<double, 3> uss_fit{0.0, 0.0, 0.0};
    double k_m = 1.3;     // input-gain correction identified in closed loop

    std::array<double, 2> x1_range{0.0, 0.020};  // m, hard stops
    std::array<double, 2> u_range{0.0, 10.0};    // V, actuator saturation

    /// Table-of-nominal-values constructor: computes omega0 from the state
    /// matrix eigenvalues, sets tau_n = 2 pi / omega0 and the constant
    /// gravity-balance uss_fit.
    static PlantParams nominal();

    void validate() const;
};

/// State-space realization of the oscillator plus the disturbance input
/// matrix for the gravity loads [d; D].
struct PlantRealization {
    StateSpaceModel sys;  // A, B (voltage input), C = [0 0 1 0], D = 0
    Eigen::MatrixXd E;    // 4x2, columns scale 1/m and 1/M
};

PlantRealization build_plant(const PlantParams& p);

/// Damped eigenfrequency: imaginary part of the resonant pole pair of A.
double plant_omega0(const PlantParams& p);

/// G_yu (tau = 0) or G = G_yu e^{-tau s} with tau = tau_factor * tau_n.
RationalTF plant_tf(const PlantParams& p, double tau_factor = 1.0);

/// State-dependent input gain k_u(x1) = (m+M) g R / (psi u_ss(x1)).
double input_gain(const PlantParams& p, double x1);

/// Trapezoidal mean of 1/k_u over x1_range (1001 points), used as the
/// static pre-compensation.
double mean_inverse_gain(const PlantParams& p);

/// Gravity feedforward u_d = (m+M) g R / psi in volts.
double gravity_feedforward(const PlantParams& p);

}  // namespace tmoctl
