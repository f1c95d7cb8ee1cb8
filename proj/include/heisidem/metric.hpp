#pragma once

// Metric groups (K, B, theta) and the pointed modular data they define.

#include <cstdint>
#include <vector>

#include "heisidem/exactnum.hpp"
#include "heisidem/grp.hpp"
#include "heisidem/verdict.hpp"

namespace heisidem::metric {

using exactnum::Cyclotomic;
using exactnum::QmodZ;

/// Z/d_1 x ... x Z/d_r with elements in mixed radix, first coordinate slowest.
class FiniteAbelian {
  public:
    FiniteAbelian() = default;
    /// Factors equal to 1 are dropped; order is kept as given.
    explicit FiniteAbelian(std::vector<std::int64_t> factors);
    static FiniteAbelian from_quotient(const grp::AbelianQuotient& A);

    const std::vector<std::int64_t>& factors() const { return factors_; }
    std::size_t size() const { return size_; }
    std::int64_t exponent() const;

    std::vector<std::int64_t> coords(std::size_t x) const;
    std::size_t index(const std::vector<std::int64_t>& c) const;
    std::size_t add(std::size_t x, std::size_t y) const;
    std::size_t neg(std::size_t x) const;

  private:
    std::vector<std::int64_t> factors_;
    std::size_t size_ = 1;
};

class MetricGroup {
  public:
    /// `gram[i][j]` = B(e_i, e_j) on the standard generators. Throws
    /// std::invalid_argument unless the matrix is symmetric and
    /// d_i * gram[i][j] = 0, i.e. defines a bilinear form on K.
    /// theta is indexed by element and may be empty (then it must be set later).
    MetricGroup(FiniteAbelian K, std::vector<std::vector<QmodZ>> gram, std::vector<QmodZ> theta = {});

    const FiniteAbelian& K() const { return K_; }
    const std::vector<std::vector<QmodZ>>& gram() const { return gram_; }
    const std::vector<QmodZ>& theta() const { return theta_; }
    void set_theta(std::vector<QmodZ> theta);

    QmodZ B(std::size_t x, std::size_t y) const;
    /// Elements x with B(x, y) = 0 for all y.
    std::vector<std::size_t> radical() const;

  private:
    FiniteAbelian K_;
    std::vector<std::vector<QmodZ>> gram_;
    std::vector<QmodZ> theta_;
};

/// theta(x + y) - theta(x) - theta(y) = B(x, y) for all x, y; witness (x, y).
Verdict validate_polarization(const MetricGroup& m);

/// theta(x) = ((e + 1) / 2) B(x, x), e the exponent of K. Throws
/// std::domain_error when e is even.
std::vector<QmodZ> canonical_theta_odd(const MetricGroup& m);

Cyclotomic gauss_sum(const MetricGroup& m);

/// S~_{xy} = zeta^{-B(x, y)}, T = diag(zeta^{theta(x)}), with S = S~ / sqrt(|K|)
/// left symbolic.
struct ModularData {
    std::size_t scale = 1;                          // |K|
    std::vector<QmodZ> T;                           // theta(x)
    std::vector<std::vector<QmodZ>> S_exponent;     // -B(x, y)
    Cyclotomic gauss;

    std::vector<std::vector<Cyclotomic>> S_tilde() const;
    std::vector<std::vector<Cyclotomic>> T_matrix() const;
};

ModularData modular_data(const MetricGroup& m);

/// S~ S~^dagger = |K| I and (S~ T)^3 = gauss_sum S~^2.
Verdict check_modularity(const ModularData& d);

/// Verlinde formula against the group law: witness (x, y, z).
Verdict verlinde_check(const ModularData& d, const FiniteAbelian& K);

/// theta(-x) = theta(x) and polarization.
Verdict ribbon_check(const MetricGroup& m);

/// (Z/p)^2 with B((x1, x2), (y1, y2)) = (x1 y2 + x2 y1) / p and theta = x1 x2 / p.
MetricGroup hyperbolic(std::int64_t p);

}  // namespace heisidem::metric
