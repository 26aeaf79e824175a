#include "qwalk/core.hpp"

#include <stdexcept>

namespace qwalk {

namespace {
constexpr complexd kI{0.0, 1.0};
}

double canonical_angle(double raw) {
    double r = std::fmod(raw + kPi, 2.0 * kPi);
    if (r <= 0.0) r += 2.0 * kPi;
    return r - kPi;
}

Spinor Spinor::normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero spinor");
    return {up / n, down / n};
}

complexd inner(const Spinor& a, const Spinor& b) {
    return std::conj(a.up) * b.up + std::conj(a.down) * b.down;
}

BlochVector BlochVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    return {x / n, y / n, z / n};
}

BlochVector bloch_of(const Spinor& s) {
    const complexd ud = std::conj(s.up) * s.down;
    return {2.0 * ud.real(), 2.0 * ud.imag(), std::norm(s.up) - std::norm(s.down)};
}

Unitary2 Unitary2::exp_pauli(double angle, const BlochVector& n) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c - kI * s * n.z, -kI * s * (n.x - kI * n.y),
            -kI * s * (n.x + kI * n.y), c + kI * s * n.z};
}

double Unitary2::unitarity_defect() const {
    const Unitary2 g = adjoint() * (*this);
    const Unitary2 id = identity();
    return max_entry_distance(g, id);
}

Unitary2 operator*(const Unitary2& l, const Unitary2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
            l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
}

double max_entry_distance(const Unitary2& l, const Unitary2& r) {
    double m = std::abs(l.a - r.a);
    m = std::max(m, std::abs(l.b - r.b));
    m = std::max(m, std::abs(l.c - r.c));
    m = std::max(m, std::abs(l.d - r.d));
    return m;
}

MomentumGrid::MomentumGrid(int count) : count_(count) {
    if (count < 2 || count % 2 != 0)
        throw std::invalid_argument("momentum grid size must be even and >= 2");
}

std::vector<double> MomentumGrid::points() const {
    std::vector<double> p(count_);
    for (int j = 0; j < count_; ++j) p[j] = k(j);
    return p;
}

std::vector<int> MomentumGrid::half_zone_indices() const {
    std::vector<int> idx;
    idx.reserve(count_ / 2 + 1);
    for (int j = count_ / 2; j < count_; ++j) idx.push_back(j);
    idx.push_back(0);  // k = +pi, identified with the j = 0 point at -pi
    return idx;
}

Unitary2 make_rotation(Angle theta) {
    const double c = std::cos(theta.half());
    const double s = std::sin(theta.half());
    return {c, -s, s, c};
}

Unitary2 make_shift_up(double k) {
    return {std::exp(-kI * k), 0.0, 0.0, 1.0};
}

Unitary2 make_shift_down(double k) {
    return {1.0, 0.0, 0.0, std::exp(kI * k)};
}

Su2Decomposition su2_decompose(const Unitary2& u) {
    // Quaternion components of U = a0 I - i (a1 sx + a2 sy + a3 sz).
    double a0 = 0.5 * (u.a + u.d).real();
    double a1 = -0.5 * (u.b + u.c).imag();
    double a2 = 0.5 * (u.c - u.b).real();
    double a3 = 0.5 * (u.d - u.a).imag();
    const double qn = std::sqrt(a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3);
    if (qn < 0.5)
        throw std::invalid_argument("su2_decompose: input is not close to SU(2)");
    a0 /= qn;
    a1 /= qn;
    a2 /= qn;
    a3 /= qn;

    Su2Decomposition out;
    const double sin_eps = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);
    out.epsilon = std::atan2(sin_eps, a0);
    if (sin_eps < 1e-9) {
        out.degenerate = true;
        out.axis = {0.0, 1.0, 0.0};
    } else {
        out.axis = BlochVector{a1, a2, a3}.normalized();
    }
    return out;
}

}  // namespace qwalk
