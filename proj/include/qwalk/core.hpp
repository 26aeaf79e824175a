#pragma once

// Shared numeric domain types for the split-step walk library. All momentum
// conventions are fixed here once: the forward transform is
// psi(k,mu) = sum_x exp(-i k x) psi(x,mu), so a right shift of the spin-up
// component multiplies psi(k,up) by exp(-ik). Coin rotations are about the
// y axis, R(theta) = exp(-i theta sigma_y / 2).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qwalk/errors.hpp"

namespace qwalk {

using complexd = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Map an angle to the canonical branch (-pi, pi].
double canonical_angle(double raw);

/// An angle in radians, canonicalized to (-pi, pi] on construction.
class Angle {
public:
    Angle() = default;
    explicit Angle(double raw) : value_(canonical_angle(raw)) {}
    double radians() const { return value_; }
    double half() const { return value_ / 2.0; }
    friend bool operator==(Angle a, Angle b) { return a.value_ == b.value_; }

private:
    double value_ = 0.0;
};

/// Two-component coin amplitude (up, down).
struct Spinor {
    complexd up{};
    complexd down{};

    double norm2() const { return std::norm(up) + std::norm(down); }
    Spinor normalized() const;
};

/// <a|b> with the physicist convention (conjugate a).
complexd inner(const Spinor& a, const Spinor& b);

/// Unit vector on the Bloch sphere; also used for chiral axes.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
    BlochVector cross(const BlochVector& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    BlochVector normalized() const;
    BlochVector operator-() const { return {-x, -y, -z}; }
};

/// Bloch vector of a normalized spinor: (<sx>, <sy>, <sz>).
BlochVector bloch_of(const Spinor& s);

/// Dense 2x2 complex matrix, row-major {a b; c d}.
struct Unitary2 {
    complexd a{}, b{}, c{}, d{};

    static Unitary2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    /// cos(angle) I - i sin(angle) (n . sigma); the SU(2) exponential exp(-i angle n.sigma).
    static Unitary2 exp_pauli(double angle, const BlochVector& n);

    complexd trace() const { return a + d; }
    complexd det() const { return a * d - b * c; }
    Unitary2 adjoint() const {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }
    Spinor apply(const Spinor& s) const {
        return {a * s.up + b * s.down, c * s.up + d * s.down};
    }
    /// Largest entrywise deviation of U^dagger U from the identity.
    double unitarity_defect() const;
};

Unitary2 operator*(const Unitary2& l, const Unitary2& r);
double max_entry_distance(const Unitary2& l, const Unitary2& r);

/// Uniform grid k_j = -pi + 2 pi j / count over [-pi, pi). count must be even
/// so the grid contains k = 0 exactly; k = +pi is the wrapped j = 0 point.
class MomentumGrid {
public:
    explicit MomentumGrid(int count);
    int count() const { return count_; }
    double k(int j) const { return -kPi + 2.0 * kPi * j / count_; }
    std::vector<double> points() const;
    /// Indices walking k = 0 up to k = pi inclusive (the last entry wraps to j = 0).
    std::vector<int> half_zone_indices() const;
    int index_of_zero() const { return count_ / 2; }

private:
    int count_;
};

/// R(theta) = exp(-i theta sigma_y / 2) = {cos(t/2), -sin(t/2); sin(t/2), cos(t/2)}.
Unitary2 make_rotation(Angle theta);

/// diag(exp(-ik), 1): conditional right shift of the spin-up component.
Unitary2 make_shift_up(double k);

/// diag(1, exp(+ik)): conditional left shift of the spin-down component.
Unitary2 make_shift_down(double k);

/// Result of resolving U = cos(eps) I - i sin(eps) n.sigma with eps in [0, pi].
/// At eps = 0 or pi the direction is undefined; the fallback axis is +y and
/// the degenerate flag is set.
struct Su2Decomposition {
    double epsilon = 0.0;
    BlochVector axis{0.0, 1.0, 0.0};
    bool degenerate = false;
};

Su2Decomposition su2_decompose(const Unitary2& u);

}  // namespace qwalk
