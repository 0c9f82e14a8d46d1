#include "tmoctl/rational_tf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tmoctl/errors.hpp"

namespace tmoctl {

RationalTF::RationalTF(Polynomial num, Polynomial den, double delay)
    : num_(std::move(num)), den_(std::move(den)), delay_(delay) {
    if (den_.is_zero()) throw DegenerateDenominatorError("denominator is the zero polynomial");
    if (delay_ < 0.0) throw Error("pure delay must be nonnegative");
}

RationalTF RationalTF::from_zpk(double gain, std::span<const Complex> zeros,
                                std::span<const Complex> poles, double delay) {
    return {Polynomial::from_roots(zeros, gain), Polynomial::from_roots(poles, 1.0), delay};
}

Complex RationalTF::eval(double omega) const {
    const Complex s{0.0, omega};
    const Complex d = den_.eval(s);
    if (std::abs(d) == 0.0)
        return {std::numeric_limits<double>::infinity(), 0.0};
    Complex v = num_.eval(s) / d;
    if (delay_ > 0.0) v *= std::polar(1.0, -omega * delay_);
    return v;
}

Complex RationalTF::eval_rational(Complex s) const {
    const Complex d = den_.eval(s);
    if (std::abs(d) == 0.0)
        return {std::numeric_limits<double>::infinity(), 0.0};
    return num_.eval(s) / d;
}

RationalTF RationalTF::inverse() const {
    if (num_.is_zero()) throw DegenerateDenominatorError("inverse of the zero transfer function");
    if (delay_ > 0.0) throw NonzeroDelayError("cannot invert a pure delay rationally");
    return {den_, num_, 0.0};
}

RationalTF operator*(const RationalTF& a, const RationalTF& b) {
    return {a.num_ * b.num_, a.den_ * b.den_, a.delay_ + b.delay_};
}

RationalTF operator*(double k, const RationalTF& g) {
    return {k * g.num_, g.den_, g.delay_};
}

namespace {

void require_equal_delays(const RationalTF& a, const RationalTF& b, const char* what) {
    if (a.delay() != b.delay())
        throw Error(std::string(what) +
                    ": unequal pure delays must be rationalized (Pade) before combining");
}

}  // namespace

RationalTF operator+(const RationalTF& a, const RationalTF& b) {
    require_equal_delays(a, b, "parallel");
    return {a.num() * b.den() + b.num() * a.den(), a.den() * b.den(), a.delay()};
}

RationalTF operator-(const RationalTF& a, const RationalTF& b) {
    require_equal_delays(a, b, "parallel");
    return {a.num() * b.den() - b.num() * a.den(), a.den() * b.den(), a.delay()};
}

RationalTF tf_interconnect(InterconnectKind kind, const RationalTF& g1, const RationalTF& g2) {
    switch (kind) {
        case InterconnectKind::series:
            return g1 * g2;
        case InterconnectKind::parallel:
            return g1 + g2;
        case InterconnectKind::feedback: {
            if (g1.delay() + g2.delay() > 0.0)
                throw AlgebraicLoopError(
                    "feedback loop contains a pure delay; approximate it rationally first");
            Polynomial den = g1.den() * g2.den() + g1.num() * g2.num();
            if (den.is_zero())
                throw DegenerateDenominatorError("feedback interconnection is degenerate (1 + g1 g2 == 0)");
            return {g1.num() * g2.den(), std::move(den), 0.0};
        }
    }
    throw Error("unknown interconnect kind");
}

RationalTF RationalTF::reduced(double tol) const {
    if (num_.is_zero()) return {Polynomial{}, Polynomial::constant(1.0), delay_};
    std::vector<Complex> zs = num_.roots();
    std::vector<Complex> ps = den_.roots();
    std::vector<bool> removed_p(ps.size(), false);
    std::vector<Complex> keep_z;
    for (const Complex& z : zs) {
        int best = -1;
        double best_d = tol * std::max(1.0, std::abs(z));
        for (size_t i = 0; i < ps.size(); ++i) {
            if (removed_p[i]) continue;
            const double d = std::abs(z - ps[i]);
            if (d <= best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        if (best >= 0)
            removed_p[static_cast<size_t>(best)] = true;
        else
            keep_z.push_back(z);
    }
    std::vector<Complex> keep_p;
    for (size_t i = 0; i < ps.size(); ++i)
        if (!removed_p[i]) keep_p.push_back(ps[i]);
    const double gain = num_.leading() / den_.leading();
    Polynomial n = Polynomial::from_roots(keep_z, gain);
    Polynomial d = Polynomial::from_roots(keep_p, 1.0);
    return {std::move(n), std::move(d), delay_};
}

PolesZeros poles_zeros(const RationalTF& g) {
    PolesZeros pz;
    pz.poles = g.den().roots();
    pz.zeros = g.num().is_zero() ? std::vector<Complex>{} : g.num().roots();
    return pz;
}

}  // namespace tmoctl
