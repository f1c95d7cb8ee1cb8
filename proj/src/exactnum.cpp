#include "heisidem/exactnum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace heisidem::exactnum {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("rational arithmetic overflowed 64 bits");
    return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return narrow(static_cast<i128>(a / std::gcd(a, b)) * b);
}

// ---------------------------------------------------------------- Rational

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    i128 n = num, d = den;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n);
    den_ = narrow(d);
}

Rational Rational::parse(std::string_view text) {
    auto to_int = [&](std::string_view s) {
        std::int64_t v = 0;
        if (!s.empty() && s.front() == '+') s.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
            throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
        return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(to_int(text));
    return Rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
}

Rational Rational::inverse() const {
    if (num_ == 0) throw std::domain_error("inverse of zero rational");
    return Rational(den_, num_);
}

Rational Rational::operator-() const {
    Rational r;
    r.num_ = narrow(-static_cast<i128>(num_));
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) return *this = o;
    if (den_ == o.den_) {
        i128 n = static_cast<i128>(num_) + o.num_;
        i128 g = gcd128(n, den_);
        if (g == 0) g = 1;
        num_ = narrow(n / g);
        den_ = narrow(static_cast<i128>(den_) / g);
        if (num_ == 0) den_ = 1;
        return *this;
    }
    i128 g = gcd128(den_, o.den_);
    i128 n = static_cast<i128>(num_) * (o.den_ / g) + static_cast<i128>(o.num_) * (den_ / g);
    i128 d = static_cast<i128>(den_ / g) * o.den_;
    i128 h = gcd128(n, d);
    if (h == 0) h = 1;
    num_ = narrow(n / h);
    den_ = narrow(d / h);
    if (num_ == 0) den_ = 1;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    return *this += -o;
}

Rational& Rational::operator*=(const Rational& o) {
    if (num_ == 0 || o.num_ == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
    }
    i128 g1 = gcd128(num_, o.den_);
    i128 g2 = gcd128(o.num_, den_);
    i128 n = (static_cast<i128>(num_) / g1) * (o.num_ / g2);
    i128 d = (static_cast<i128>(den_) / g2) * (o.den_ / g1);
    num_ = narrow(n);
    den_ = narrow(d);
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    return *this *= o.inverse();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
}

// ---------------------------------------------------------------- QmodZ

namespace {

Rational frac(const Rational& r) {
    std::int64_t n = r.num() % r.den();
    if (n < 0) n += r.den();
    return Rational(n, r.den());
}

}  // namespace

QmodZ::QmodZ(std::int64_t num, std::int64_t den) : value_(frac(Rational(num, den))) {}

QmodZ::QmodZ(const Rational& r) : value_(frac(r)) {}

QmodZ QmodZ::operator-() const {
    return QmodZ(-value_);
}

QmodZ& QmodZ::operator+=(const QmodZ& o) {
    value_ = frac(value_ + o.value_);
    return *this;
}

QmodZ& QmodZ::operator-=(const QmodZ& o) {
    value_ = frac(value_ - o.value_);
    return *this;
}

QmodZ operator*(std::int64_t k, const QmodZ& q) {
    const std::int64_t d = q.value_.den();
    const std::int64_t n = static_cast<std::int64_t>((static_cast<i128>(k % d) * q.value_.num()) % d);
    return QmodZ(n, d);
}

std::ostream& operator<<(std::ostream& os, const QmodZ& q) {
    return os << q.to_string();
}

// ---------------------------------------------------------------- cyclotomic polynomials

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

std::vector<std::int64_t> compute_cyclotomic(int n) {
    // x^n - 1 divided by Phi_d for every proper divisor d of n.
    std::vector<std::int64_t> num(static_cast<std::size_t>(n) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const auto& div = cyclotomic_polynomial(d);
        // exact division by a monic polynomial
        const std::size_t dd = div.size() - 1;
        std::vector<std::int64_t> quot(num.size() - dd, 0);
        for (std::size_t i = num.size(); i-- > dd;) {
            std::int64_t c = num[i];
            quot[i - dd] = c;
            if (c == 0) continue;
            for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * div[k];
        }
        num = std::move(quot);
    }
    return num;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic polynomial of non-positive order");
    static std::mutex mutex;
    static std::map<int, std::vector<std::int64_t>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::int64_t> poly;
    if (n == 1)
        poly = {-1, 1};
    else
        poly = compute_cyclotomic(n);
    std::lock_guard lock(mutex);
    // std::map never invalidates references on insert
    return cache.emplace(n, std::move(poly)).first->second;
}

// ---------------------------------------------------------------- Cyclotomic

Cyclotomic Cyclotomic::zeta(int n, std::int64_t k) {
    if (n < 1) throw std::invalid_argument("root of unity of non-positive order");
    std::vector<Rational> c(static_cast<std::size_t>(n));
    std::int64_t e = k % n;
    if (e < 0) e += n;
    c[static_cast<std::size_t>(e)] = Rational(1);
    return Cyclotomic(std::move(c));
}

Cyclotomic Cyclotomic::from_coeffs(std::vector<Rational> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("cyclotomic with empty coefficient vector");
    return Cyclotomic(std::move(coeffs));
}

Cyclotomic Cyclotomic::embed(int new_order) const {
    const int n = order();
    if (new_order == n) return *this;
    if (new_order < n || new_order % n != 0)
        throw std::invalid_argument("embed: target order must be a multiple of the source order");
    const int k = new_order / n;
    std::vector<Rational> c(static_cast<std::size_t>(new_order));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i * k)] = coeffs_[static_cast<std::size_t>(i)];
    return Cyclotomic(std::move(c));
}

Cyclotomic Cyclotomic::reduced() const {
    const int n = order();
    if (n == 1) return *this;
    const auto& phi = cyclotomic_polynomial(n);
    const std::size_t deg = phi.size() - 1;
    std::vector<Rational> c = coeffs_;
    for (std::size_t i = c.size(); i-- > deg;) {
        if (c[i].is_zero()) continue;
        const Rational lead = c[i];
        for (std::size_t k = 0; k < deg; ++k) {
            if (phi[k] != 0) c[i - deg + k] -= lead * Rational(phi[k]);
        }
        c[i] = Rational();
    }
    return Cyclotomic(std::move(c));
}

bool Cyclotomic::is_zero() const {
    if (std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return r.is_zero(); }))
        return true;
    const auto r = reduced();
    return std::all_of(r.coeffs_.begin(), r.coeffs_.end(), [](const Rational& x) { return x.is_zero(); });
}

std::optional<Rational> Cyclotomic::as_rational() const {
    const auto r = reduced();
    for (std::size_t i = 1; i < r.coeffs_.size(); ++i)
        if (!r.coeffs_[i].is_zero()) return std::nullopt;
    return r.coeffs_[0];
}

Cyclotomic Cyclotomic::conjugate() const {
    return galois(-1);
}

Cyclotomic Cyclotomic::galois(std::int64_t a) const {
    const std::int64_t n = order();
    std::int64_t am = a % n;
    if (am < 0) am += n;
    if (std::gcd(am, n) != 1 && n > 1) throw std::invalid_argument("galois: exponent not a unit modulo the order");
    std::vector<Rational> c(coeffs_.size());
    for (std::int64_t i = 0; i < n; ++i)
        c[static_cast<std::size_t>((i * am) % n)] += coeffs_[static_cast<std::size_t>(i)];
    return Cyclotomic(std::move(c));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic");
    const int n = order();
    if (n == 1) return Cyclotomic(coeffs_[0].inverse());
    // x^{-1} = (prod_{a != 1} sigma_a(x)) / N(x)
    Cyclotomic rest(Rational(1));
    for (int a = 2; a < n; ++a)
        if (std::gcd(a, n) == 1) rest *= galois(a);
    const auto norm = (*this * rest).as_rational();
    if (!norm || norm->is_zero()) throw std::logic_error("cyclotomic norm is not a nonzero rational");
    return rest * norm->inverse();
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    const int n = order(), m = o.order();
    if (n == m) {
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (!o.coeffs_[i].is_zero()) coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    const int l = static_cast<int>(lcm64(n, m));
    if (l != n) *this = embed(l);
    const int k = l / m;
    for (int i = 0; i < m; ++i)
        if (!o.coeffs_[static_cast<std::size_t>(i)].is_zero())
            coeffs_[static_cast<std::size_t>(i * k)] += o.coeffs_[static_cast<std::size_t>(i)];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    return *this += -o;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    for (auto& c : coeffs_) c *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    *this = *this * o;
    return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    Cyclotomic r(std::vector<Rational>(static_cast<std::size_t>(lcm64(a.order(), b.order()))));
    r.add_product(a, b);
    return r;
}

void Cyclotomic::add_product(const Cyclotomic& a, const Cyclotomic& b) {
    const std::int64_t na = a.order(), nb = b.order();
    std::int64_t l = lcm64(lcm64(na, nb), order());
    if (l != order()) *this = embed(static_cast<int>(l));
    const std::int64_t ka = l / na, kb = l / nb;
    for (std::int64_t i = 0; i < na; ++i) {
        const Rational& ai = a.coeffs_[static_cast<std::size_t>(i)];
        if (ai.is_zero()) continue;
        for (std::int64_t j = 0; j < nb; ++j) {
            const Rational& bj = b.coeffs_[static_cast<std::size_t>(j)];
            if (bj.is_zero()) continue;
            coeffs_[static_cast<std::size_t>((i * ka + j * kb) % l)] += ai * bj;
        }
    }
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return (a - b).is_zero();
}

std::complex<double> Cyclotomic::approx() const {
    std::complex<double> z{0.0, 0.0};
    const int n = order();
    for (int i = 0; i < n; ++i) {
        const auto& c = coeffs_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        const double angle = 2.0 * std::numbers::pi * i / n;
        z += c.to_double() * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return z;
}

std::string Cyclotomic::to_string() const {
    const auto r = reduced();
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
        const auto& c = r.coeffs_[i];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0)
            os << c;
        else
            os << c << "*z" << order() << "^" << i;
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) {
    return os << c.to_string();
}

Cyclotomic root_of_unity(const QmodZ& q) {
    const auto& v = q.value();
    if (v.den() > std::numeric_limits<int>::max()) throw std::overflow_error("root of unity order too large");
    return Cyclotomic::zeta(static_cast<int>(v.den()), v.num());
}

}  // namespace heisidem::exactnum
