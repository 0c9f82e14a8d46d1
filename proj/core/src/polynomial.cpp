#include "tmoctl/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "tmoctl/errors.hpp"

namespace tmoctl {

namespace {

double max_abs(const std::vector<double>& c) {
    double m = 0.0;
    for (double x : c) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
    if (coeffs_.empty()) coeffs_ = {0.0};
    trim();
}

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_ = {0.0};
    trim();
}

// Only exact zeros are trimmed here: coefficients can legitimately span many
// orders of magnitude (the published controllers go from 1e-2 to 1e13), so a
// relative threshold is applied solely where cancellation happens (+=, -=),
// gauged against the operand magnitudes at each index.
void Polynomial::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.size() == 1 && coeffs_[0] == 0.0) coeffs_[0] = 0.0;
}

void Polynomial::trim_cancellation(const std::vector<double>& operand_mag) {
    while (coeffs_.size() > 1) {
        const size_t i = coeffs_.size() - 1;
        const double ref = (i < operand_mag.size()) ? operand_mag[i] : 0.0;
        if (coeffs_.back() == 0.0 || std::abs(coeffs_.back()) <= 1e-12 * ref)
            coeffs_.pop_back();
        else
            break;
    }
    if (coeffs_.size() == 1 && coeffs_[0] == 0.0) coeffs_[0] = 0.0;
}

double Polynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
    return coeffs_[static_cast<size_t>(k)];
}

Complex Polynomial::eval(Complex s) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

double Polynomial::eval(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial{};
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots, double gain) {
    std::vector<Complex> acc{Complex{1.0, 0.0}};
    for (const Complex& r : roots) {
        std::vector<Complex> next(acc.size() + 1, Complex{0.0, 0.0});
        for (size_t i = 0; i < acc.size(); ++i) {
            next[i] -= acc[i] * r;
            next[i + 1] += acc[i];
        }
        acc = std::move(next);
    }
    std::vector<double> real(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) real[i] = gain * acc[i].real();
    return Polynomial(std::move(real));
}

Polynomial Polynomial::operator-() const {
    std::vector<double> c = coeffs_;
    for (double& x : c) x = -x;
    return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    std::vector<double> mag(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (size_t i = 0; i < mag.size(); ++i)
        mag[i] = std::abs(i < coeffs_.size() ? coeffs_[i] : 0.0) +
                 std::abs(i < o.coeffs_.size() ? o.coeffs_[i] : 0.0);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim_cancellation(mag);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    std::vector<double> mag(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (size_t i = 0; i < mag.size(); ++i)
        mag[i] = std::abs(i < coeffs_.size() ? coeffs_[i] : 0.0) +
                 std::abs(i < o.coeffs_.size() ? o.coeffs_[i] : 0.0);
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0.0);
    for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim_cancellation(mag);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial{};
    std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(double k, const Polynomial& p) {
    std::vector<double> c = p.coeffs_;
    for (double& x : c) x *= k;
    return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw ZeroPolynomialError("polynomial division by zero polynomial");
    if (degree() < d.degree()) return {Polynomial{}, *this};
    std::vector<double> rem = coeffs_;
    std::vector<double> quot(static_cast<size_t>(degree() - d.degree()) + 1, 0.0);
    const double lead = d.leading();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        const double q = rem[static_cast<size_t>(k + d.degree())] / lead;
        quot[static_cast<size_t>(k)] = q;
        for (int j = 0; j <= d.degree(); ++j)
            rem[static_cast<size_t>(k + j)] -= q * d.coeffs_[static_cast<size_t>(j)];
    }
    rem.resize(static_cast<size_t>(std::max(d.degree(), 1)));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<Complex> Polynomial::roots() const {
    if (is_zero()) throw ZeroPolynomialError("zero polynomial has no well-defined roots");
    if (degree() == 0) return {};

    // Strip roots at the origin exactly.
    std::vector<Complex> out;
    std::vector<double> c = coeffs_;
    const double scale0 = max_abs(c);
    size_t nz = 0;
    while (nz < c.size() - 1 && std::abs(c[nz]) <= scale0 * 1e-300) ++nz;
    for (size_t i = 0; i < nz; ++i) out.emplace_back(0.0, 0.0);
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(nz));

    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return out;

    // Variable scaling s = sigma * t balances the companion matrix for
    // coefficient spans like the plant's (1e-1 .. 1e5).
    double sigma = std::pow(std::abs(c.front() / c.back()), 1.0 / n);
    if (!std::isfinite(sigma) || sigma < 1e-8) sigma = 1.0;
    sigma = std::min(sigma, 1e8);

    std::vector<double> cs(c.size());
    double p = 1.0;
    for (size_t k = 0; k < c.size(); ++k) {
        cs[k] = c[k] * p;
        p *= sigma;
    }
    const double lead = cs.back();

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -cs[static_cast<size_t>(i)] / lead;

    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw Error("companion eigenvalue iteration failed");

    const Polynomial deriv = derivative();
    for (int i = 0; i < n; ++i) {
        Complex r = es.eigenvalues()(i) * sigma;
        // Newton polishing, kept only while it reduces the residual.
        for (int it = 0; it < 3; ++it) {
            const Complex f = eval(r);
            const Complex df = deriv.eval(r);
            if (std::abs(df) == 0.0) break;
            const Complex r2 = r - f / df;
            if (std::abs(eval(r2)) < std::abs(f)) r = r2; else break;
        }
        if (std::abs(r.imag()) <= 1e-10 * std::max(1.0, std::abs(r.real()))) r = Complex(r.real(), 0.0);
        out.push_back(r);
    }

    // Residual guard: |p(r)| <= 1e-8 * sum |a_k| |r|^k.
    for (const Complex& r : out) {
        double norm = 0.0, rp = 1.0;
        const double ra = std::abs(r);
        for (double a : coeffs_) {
            norm += std::abs(a) * rp;
            rp *= ra;
        }
        if (std::abs(eval(r)) > 1e-8 * std::max(norm, 1e-300))
            throw Error("polynomial root residual exceeds tolerance");
    }
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

}  // namespace tmoctl
