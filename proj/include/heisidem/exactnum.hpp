#pragma once

// Exact arithmetic: checked 64-bit rationals, the additive value group Q/Z,
// and elements of cyclotomic fields Q(zeta_n).
//
// Cyclotomic elements are stored in the redundant basis 1, z, ..., z^{n-1}
// and only reduced modulo the n-th cyclotomic polynomial when a decision is
// needed (equality, zero test, rationality, rendering).

#include <compare>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace heisidem::exactnum {

class Rational {
  public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Parses "a", "-a" or "a/b".
    static Rational parse(std::string_view text);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    Rational inverse() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

    std::string to_string() const;
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

/// An element of Q/Z, kept reduced in [0, 1).
class QmodZ {
  public:
    QmodZ() = default;
    QmodZ(std::int64_t num, std::int64_t den);
    explicit QmodZ(const Rational& r);

    static QmodZ parse(std::string_view text) { return QmodZ(Rational::parse(text)); }

    const Rational& value() const { return value_; }
    /// Order of the element in Q/Z, i.e. the reduced denominator.
    std::int64_t order() const { return value_.den(); }
    bool is_zero() const { return value_.is_zero(); }

    QmodZ operator-() const;
    QmodZ& operator+=(const QmodZ& o);
    QmodZ& operator-=(const QmodZ& o);
    friend QmodZ operator+(QmodZ a, const QmodZ& b) { return a += b; }
    friend QmodZ operator-(QmodZ a, const QmodZ& b) { return a -= b; }
    friend QmodZ operator*(std::int64_t k, const QmodZ& q);

    friend bool operator==(const QmodZ&, const QmodZ&) = default;
    friend auto operator<=>(const QmodZ& a, const QmodZ& b) { return a.value_ <=> b.value_; }

    std::string to_string() const { return value_.to_string(); }

  private:
    Rational value_;
};

std::ostream& operator<<(std::ostream& os, const QmodZ& q);

class Cyclotomic {
  public:
    /// Zero, in Q = Q(zeta_1).
    Cyclotomic() : coeffs_(1) {}
    Cyclotomic(const Rational& r) : coeffs_{r} {}
    Cyclotomic(std::int64_t k) : coeffs_{Rational(k)} {}

    /// zeta_n^k.
    static Cyclotomic zeta(int n, std::int64_t k = 1);
    /// From explicit redundant coefficients; coeffs.size() is the order.
    static Cyclotomic from_coeffs(std::vector<Rational> coeffs);

    int order() const { return static_cast<int>(coeffs_.size()); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    /// Same element written in Q(zeta_{new_order}); new_order must be a multiple of order().
    Cyclotomic embed(int new_order) const;
    /// Representative reduced modulo the cyclotomic polynomial (coefficients
    /// beyond phi(n)-1 are zero). Two elements of the same order are equal iff
    /// their reduced representatives coincide.
    Cyclotomic reduced() const;

    bool is_zero() const;
    std::optional<Rational> as_rational() const;

    Cyclotomic conjugate() const;
    /// Galois automorphism zeta -> zeta^a, gcd(a, order) = 1.
    Cyclotomic galois(std::int64_t a) const;
    /// Multiplicative inverse; throws std::domain_error on zero.
    Cyclotomic inverse() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
    friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    /// this += a * b without a temporary. The hot path of convolution.
    void add_product(const Cyclotomic& a, const Cyclotomic& b);

    /// Display only.
    std::complex<double> approx() const;
    std::string to_string() const;

  private:
    explicit Cyclotomic(std::vector<Rational> c) : coeffs_(std::move(c)) {}
    std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

Cyclotomic root_of_unity(const QmodZ& q);

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(int n);

int euler_phi(int n);

}  // namespace heisidem::exactnum
