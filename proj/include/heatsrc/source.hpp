#ifndef HEATSRC_SOURCE_HPP
#define HEATSRC_SOURCE_HPP

#include <Eigen/Core>
#include <utility>
#include <vector>

namespace heatsrc {

/// Time amplitude g(t) of a point source, extended by zero outside its
/// definition interval.
///
/// Variants:
///  - Constant(q) on [0, inf)
///  - PiecewiseConstant: g = q_k on (t_{k-1}, t_k], t_0 = 0 < ... < t_K = T,
///    with g(0) = q_1
///  - HatBasis: sum_k c_k phi_k with K hat functions on the uniform nodes
///    t_j = (j-1) T/(K-1), j = 1..K
///  - Sampled: linear interpolation of (time, value) samples
class AmplitudeModel {
public:
    enum class Kind { Constant, PiecewiseConstant, HatBasis, Sampled };

    static AmplitudeModel constant(double q);
    static AmplitudeModel piecewise_constant(std::vector<double> breakpoints,
                                             std::vector<double> values);
    static AmplitudeModel hat_basis(double T, int K, std::vector<double> coeffs);
    static AmplitudeModel sampled(std::vector<double> times, std::vector<double> values);

    Kind kind() const { return kind_; }
    double value(double t) const;
    double end_time() const;   // largest time the model is defined on
    double integral() const;   // int_0^inf g dt (g is compactly supported)

    /// Membership in A_pwc: piecewise constant, consecutive values distinct,
    /// g(0) = q_1 != 0.
    bool member_pwc() const;
    /// Membership in A_c relative to horizon T: support in [0, T1] with
    /// T1 < T and nonzero integral.
    bool member_compact(double T) const;

    // variant accessors (throw on mismatch)
    double constant_value() const;
    const std::vector<double>& breakpoints() const;
    const std::vector<double>& values() const;
    /// Nodes/values of the piecewise-linear variants (HatBasis, Sampled).
    std::vector<std::pair<double, double>> linear_nodes() const;

private:
    AmplitudeModel() = default;
    Kind kind_ = Kind::Constant;
    double q_ = 0.0;                   // Constant
    std::vector<double> breakpoints_;  // PiecewiseConstant: t_0..t_K
    std::vector<double> values_;       // PiecewiseConstant q_k / HatBasis c_k / Sampled values
    std::vector<double> times_;        // HatBasis nodes / Sampled times
};

/// The unknown pair of the inverse problem: location p + amplitude g.
struct PointSource {
    Eigen::Vector2d location;
    AmplitudeModel amplitude;

    double radius() const { return location.norm(); }
    double angle() const { return std::atan2(location.y(), location.x()); }
    static Eigen::Vector2d from_polar(double r, double theta) {
        return {r * std::cos(theta), r * std::sin(theta)};
    }
};

}  // namespace heatsrc

#endif
