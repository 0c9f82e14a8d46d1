#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace tmoctl {

using Complex = std::complex<double>;

/// Real polynomial in s, stored as coefficients in ascending powers.
/// Trailing (highest-power) zero coefficients are trimmed on construction;
/// the zero polynomial is canonically {0}.
class Polynomial {
  public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(std::initializer_list<double> coeffs);
    explicit Polynomial(std::vector<double> coeffs);

    static Polynomial constant(double c) { return Polynomial{c}; }
    /// The monomial s.
    static Polynomial variable() { return Polynomial{0.0, 1.0}; }
    /// Real polynomial gain * prod (s - r_i); complex roots must come in
    /// conjugate pairs (imaginary residue is dropped after pairing check).
    static Polynomial from_roots(std::span<const Complex> roots, double gain = 1.0);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    /// Coefficient of s^k, zero beyond the stored degree.
    double coeff(int k) const;
    double leading() const { return coeffs_.back(); }

    Complex eval(Complex s) const;
    double eval(double s) const;
    Polynomial derivative() const;

    /// All roots with multiplicity, via a scaled companion matrix with
    /// Newton polishing. Throws ZeroPolynomialError on the zero polynomial.
    std::vector<Complex> roots() const;

    /// Euclidean division: returns (quotient, remainder).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double k, const Polynomial& p);
    friend Polynomial operator*(const Polynomial& p, double k) { return k * p; }
    bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }

  private:
    void trim();
    void trim_cancellation(const std::vector<double>& operand_mag);
    std::vector<double> coeffs_;
};

}  // namespace tmoctl
