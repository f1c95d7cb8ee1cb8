#include "heisidem/metric.hpp"

#include <stdexcept>
#include <string>

namespace heisidem::metric {

using exactnum::Rational;
using exactnum::root_of_unity;

FiniteAbelian::FiniteAbelian(std::vector<std::int64_t> factors) {
    for (auto d : factors) {
        if (d < 1) throw std::invalid_argument("invariant factors must be positive");
        if (d > 1) factors_.push_back(d);
    }
    for (auto d : factors_) size_ *= static_cast<std::size_t>(d);
}

FiniteAbelian FiniteAbelian::from_quotient(const grp::AbelianQuotient& A) { return FiniteAbelian(A.invariant_factors()); }

std::int64_t FiniteAbelian::exponent() const {
    std::int64_t e = 1;
    for (auto d : factors_) e = exactnum::lcm64(e, d);
    return e;
}

std::vector<std::int64_t> FiniteAbelian::coords(std::size_t x) const {
    std::vector<std::int64_t> c(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
        c[i] = static_cast<std::int64_t>(x % static_cast<std::size_t>(factors_[i]));
        x /= static_cast<std::size_t>(factors_[i]);
    }
    return c;
}

std::size_t FiniteAbelian::index(const std::vector<std::int64_t>& c) const {
    if (c.size() != factors_.size()) throw std::invalid_argument("coordinate vector has wrong length");
    std::size_t x = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::int64_t v = c[i] % factors_[i];
        if (v < 0) v += factors_[i];
        x = x * static_cast<std::size_t>(factors_[i]) + static_cast<std::size_t>(v);
    }
    return x;
}

std::size_t FiniteAbelian::add(std::size_t x, std::size_t y) const {
    auto a = coords(x), b = coords(y);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return index(a);
}

std::size_t FiniteAbelian::neg(std::size_t x) const {
    auto a = coords(x);
    for (auto& v : a) v = -v;
    return index(a);
}

// ---------------------------------------------------------------- MetricGroup

MetricGroup::MetricGroup(FiniteAbelian K, std::vector<std::vector<QmodZ>> gram, std::vector<QmodZ> theta)
    : K_(std::move(K)), gram_(std::move(gram)) {
    const auto& d = K_.factors();
    if (gram_.size() != d.size()) throw std::invalid_argument("pairing matrix size does not match the number of factors");
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (gram_[i].size() != d.size()) throw std::invalid_argument("pairing matrix is not square");
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (gram_[i][j] != gram_[j][i])
                throw std::invalid_argument("pairing is not symmetric at (" + std::to_string(i) + ", " +
                                            std::to_string(j) + ")");
            if (!(d[i] * gram_[i][j]).is_zero())
                throw std::invalid_argument("pairing entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                            ") is not killed by the factor " + std::to_string(d[i]));
        }
    }
    if (!theta.empty()) set_theta(std::move(theta));
}

void MetricGroup::set_theta(std::vector<QmodZ> theta) {
    if (theta.size() != K_.size()) throw std::invalid_argument("quadratic form must have one value per element");
    theta_ = std::move(theta);
}

QmodZ MetricGroup::B(std::size_t x, std::size_t y) const {
    const auto a = K_.coords(x), b = K_.coords(y);
    QmodZ s;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (a[i] && b[j]) s += (a[i] * b[j]) * gram_[i][j];
    return s;
}

std::vector<std::size_t> MetricGroup::radical() const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < K_.size(); ++x) {
        bool zero = true;
        for (std::size_t y = 0; y < K_.size() && zero; ++y) zero = B(x, y).is_zero();
        if (zero) out.push_back(x);
    }
    return out;
}

// ---------------------------------------------------------------- checks

namespace {

void require_theta(const MetricGroup& m) {
    if (m.theta().size() != m.K().size()) throw std::invalid_argument("metric group has no quadratic form");
}

using Matrix = std::vector<std::vector<Cyclotomic>>;

Matrix matmul(const Matrix& a, const Matrix& b) {
    const std::size_t n = a.size();
    Matrix c(n, std::vector<Cyclotomic>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j].add_product(a[i][k], b[k][j]);
        }
    return c;
}

/// First (i, j) where a != s * b, if any.
std::optional<std::pair<std::size_t, std::size_t>> compare(const Matrix& a, const Matrix& b, const Cyclotomic& s) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!(a[i][j] == s * b[i][j])) return std::pair{i, j};
    return std::nullopt;
}

}  // namespace

Verdict validate_polarization(const MetricGroup& m) {
    require_theta(m);
    const auto& K = m.K();
    const auto& th = m.theta();
    for (std::size_t x = 0; x < K.size(); ++x)
        for (std::size_t y = 0; y < K.size(); ++y)
            if (th[K.add(x, y)] - th[x] - th[y] != m.B(x, y))
                return Verdict::fail("theta(x+y) - theta(x) - theta(y) = " +
                                         (th[K.add(x, y)] - th[x] - th[y]).to_string() + " but B(x,y) = " +
                                         m.B(x, y).to_string(),
                                     {x, y});
    return Verdict::pass();
}

std::vector<QmodZ> canonical_theta_odd(const MetricGroup& m) {
    const auto e = m.K().exponent();
    if (e % 2 == 0)
        throw std::domain_error("exponent " + std::to_string(e) + " is even; no canonical quadratic form, supply theta");
    std::vector<QmodZ> theta(m.K().size());
    for (std::size_t x = 0; x < theta.size(); ++x) theta[x] = ((e + 1) / 2) * m.B(x, x);
    return theta;
}

Cyclotomic gauss_sum(const MetricGroup& m) {
    require_theta(m);
    Cyclotomic s;
    for (const auto& t : m.theta()) s += root_of_unity(t);
    return s.reduced();
}

std::vector<std::vector<Cyclotomic>> ModularData::S_tilde() const {
    Matrix s(scale, std::vector<Cyclotomic>(scale));
    for (std::size_t i = 0; i < scale; ++i)
        for (std::size_t j = 0; j < scale; ++j) s[i][j] = root_of_unity(S_exponent[i][j]);
    return s;
}

std::vector<std::vector<Cyclotomic>> ModularData::T_matrix() const {
    Matrix t(scale, std::vector<Cyclotomic>(scale));
    for (std::size_t i = 0; i < scale; ++i) t[i][i] = root_of_unity(T[i]);
    return t;
}

ModularData modular_data(const MetricGroup& m) {
    require_theta(m);
    ModularData d;
    d.scale = m.K().size();
    d.T = m.theta();
    d.S_exponent.assign(d.scale, std::vector<QmodZ>(d.scale));
    for (std::size_t x = 0; x < d.scale; ++x)
        for (std::size_t y = 0; y < d.scale; ++y) d.S_exponent[x][y] = -m.B(x, y);
    d.gauss = gauss_sum(m);
    return d;
}

Verdict check_modularity(const ModularData& d) {
    const auto S = d.S_tilde();
    const auto T = d.T_matrix();
    Matrix Sdag(d.scale, std::vector<Cyclotomic>(d.scale));
    Matrix I(d.scale, std::vector<Cyclotomic>(d.scale));
    for (std::size_t i = 0; i < d.scale; ++i) {
        I[i][i] = Cyclotomic(1);
        for (std::size_t j = 0; j < d.scale; ++j) Sdag[i][j] = S[j][i].conjugate();
    }
    if (auto w = compare(matmul(S, Sdag), I, Cyclotomic(static_cast<std::int64_t>(d.scale))))
        return Verdict::fail("S~ S~^dagger differs from |K| I (the pairing is degenerate)", {w->first, w->second});
    const auto ST = matmul(S, T);
    if (auto w = compare(matmul(matmul(ST, ST), ST), matmul(S, S), d.gauss))
        return Verdict::fail("(S~ T)^3 differs from gauss_sum * S~^2", {w->first, w->second});
    return Verdict::pass();
}

Verdict verlinde_check(const ModularData& d, const FiniteAbelian& K) {
    if (K.size() != d.scale) throw std::invalid_argument("verlinde: group size does not match the modular data");
    std::int64_t L = 1;
    for (const auto& row : d.S_exponent)
        for (const auto& q : row) L = exactnum::lcm64(L, q.order());
    // integer exponent of S~_{xw} in zeta_L
    std::vector<std::vector<std::int64_t>> ex(d.scale, std::vector<std::int64_t>(d.scale));
    for (std::size_t x = 0; x < d.scale; ++x)
        for (std::size_t w = 0; w < d.scale; ++w) {
            const auto& v = d.S_exponent[x][w].value();
            ex[x][w] = v.num() * (L / v.den());
        }
    const auto n = static_cast<std::int64_t>(d.scale);
    std::vector<Rational> counts(static_cast<std::size_t>(L));
    for (std::size_t x = 0; x < d.scale; ++x)
        for (std::size_t y = 0; y < d.scale; ++y)
            for (std::size_t z = 0; z < d.scale; ++z) {
                std::fill(counts.begin(), counts.end(), Rational());
                for (std::size_t w = 0; w < d.scale; ++w) {
                    // S~_{xw} S~_{yw} conj(S~_{zw}) / S~_{0w}
                    std::int64_t k = ex[x][w] + ex[y][w] - ex[z][w] - ex[0][w];
                    k %= L;
                    if (k < 0) k += L;
                    counts[static_cast<std::size_t>(k)] += Rational(1, n);
                }
                const auto value = Cyclotomic::from_coeffs(counts);
                const Cyclotomic expect(K.add(x, y) == z ? 1 : 0);
                if (!(value == expect))
                    return Verdict::fail("Verlinde coefficient N_xy^z = " + value.to_string() + " but the group law gives " +
                                             expect.to_string(),
                                         {x, y, z});
            }
    return Verdict::pass();
}

Verdict ribbon_check(const MetricGroup& m) {
    require_theta(m);
    const auto& K = m.K();
    for (std::size_t x = 0; x < K.size(); ++x)
        if (m.theta()[K.neg(x)] != m.theta()[x])
            return Verdict::fail("theta(-x) = " + m.theta()[K.neg(x)].to_string() + " differs from theta(x) = " +
                                     m.theta()[x].to_string(),
                                 {x});
    return validate_polarization(m);
}

MetricGroup hyperbolic(std::int64_t p) {
    FiniteAbelian K({p, p});
    MetricGroup m(K, {{QmodZ(), QmodZ(1, p)}, {QmodZ(1, p), QmodZ()}});
    std::vector<QmodZ> theta(K.size());
    for (std::size_t x = 0; x < K.size(); ++x) {
        auto c = K.coords(x);
        theta[x] = QmodZ(c[0] * c[1], p);
    }
    m.set_theta(std::move(theta));
    return m;
}

}  // namespace heisidem::metric
