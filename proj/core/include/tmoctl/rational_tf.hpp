#pragma once

#include <span>
#include <vector>

#include "tmoctl/polynomial.hpp"

namespace tmoctl {

/// Rational transfer function num(s)/den(s) with an optional pure input delay
/// e^{-tau s}. The delay is carried symbolically: frequency-domain code
/// evaluates it exactly, and it is only ever rationalized explicitly via the
/// Pade module. num/den are not reduced implicitly; see reduced().
class RationalTF {
  public:
    RationalTF() : num_{0.0}, den_{1.0} {}
    RationalTF(Polynomial num, Polynomial den, double delay = 0.0);

    static RationalTF constant(double k) { return {Polynomial::constant(k), Polynomial::constant(1.0)}; }
    static RationalTF zero() { return constant(0.0); }
    /// gain * prod(s - z_i) / prod(s - p_i), complex roots in conjugate pairs.
    static RationalTF from_zpk(double gain, std::span<const Complex> zeros,
                               std::span<const Complex> poles, double delay = 0.0);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    double delay() const { return delay_; }
    RationalTF with_delay(double tau) const { return {num_, den_, tau}; }

    int order() const { return den_.degree(); }
    int relative_degree() const { return den_.degree() - num_.degree(); }
    bool proper() const { return num_.degree() <= den_.degree(); }
    bool strictly_proper() const { return num_.degree() < den_.degree(); }
    bool is_zero() const { return num_.is_zero(); }

    /// Value at s = j omega including the exact delay factor. Evaluation at a
    /// pole yields an infinite-magnitude marker instead of throwing.
    Complex eval(double omega) const;
    /// Rational part at an arbitrary complex point (no delay factor).
    Complex eval_rational(Complex s) const;

    /// Explicit coprime reduction: cancels numerator/denominator root pairs
    /// that agree within tol (relative to the root magnitude).
    RationalTF reduced(double tol = 1e-6) const;

    RationalTF inverse() const;
    friend RationalTF operator*(const RationalTF& a, const RationalTF& b);
    friend RationalTF operator*(double k, const RationalTF& g);
    friend RationalTF operator+(const RationalTF& a, const RationalTF& b);
    friend RationalTF operator-(const RationalTF& a, const RationalTF& b);

  private:
    Polynomial num_, den_;
    double delay_;
};

enum class InterconnectKind { series, parallel, feedback };

/// Composes two systems. series(g1,g2) adds delays; parallel requires equal
/// delays; feedback(g1,g2) = g1/(1 + g1 g2) requires a delay-free loop
/// (an AlgebraicLoopError is raised otherwise -- rationalize delays first).
RationalTF tf_interconnect(InterconnectKind kind, const RationalTF& g1, const RationalTF& g2);

inline RationalTF series(const RationalTF& g1, const RationalTF& g2) {
    return tf_interconnect(InterconnectKind::series, g1, g2);
}
inline RationalTF parallel(const RationalTF& g1, const RationalTF& g2) {
    return tf_interconnect(InterconnectKind::parallel, g1, g2);
}
inline RationalTF feedback(const RationalTF& g1, const RationalTF& g2) {
    return tf_interconnect(InterconnectKind::feedback, g1, g2);
}

struct PolesZeros {
    std::vector<Complex> poles;
    std::vector<Complex> zeros;
};

/// All denominator and numerator roots with multiplicity.
PolesZeros poles_zeros(const RationalTF& g);

}  // namespace tmoctl
