#ifndef HEATSRC_SPECTRAL_HPP
#define HEATSRC_SPECTRAL_HPP

#include <Eigen/Core>
#include <vector>

#include "heatsrc/observe.hpp"
#include "heatsrc/source.hpp"
#include "heatsrc/specfun.hpp"

namespace heatsrc {

/// One Dirichlet eigenmode of the unit disc/ball:
/// phi = omega * j_k(alpha r) * Y_k^m,  j_k(x) = r^{1-d/2} J_{k+d/2-1}(alpha r),
/// lambda = alpha^2, omega^{-2} = (1/2) J_{k+d/2}(alpha)^2.
struct EigenMode {
    int d;
    int k;
    int l;
    int m;
    double alpha;
    double lambda;
    double omega;
    double flux_radial;  // omega * alpha * J'_{k+d/2-1}(alpha), the radial flux factor
};

/// Truncated eigen-system, all (k,l,m) with k <= K_max, l <= L_max,
/// sorted by eigenvalue.
class ModeSet {
public:
    ModeSet(int d, int K_max, int L_max);
    int dimension() const { return d_; }
    int k_max() const { return K_max_; }
    int l_max() const { return L_max_; }
    const std::vector<EigenMode>& modes() const { return modes_; }
    double lambda_max() const { return lambda_max_; }
    /// Smallest eigenvalue just beyond the truncation (for tail bounds).
    double lambda_next() const { return lambda_next_; }

private:
    int d_, K_max_, L_max_;
    std::vector<EigenMode> modes_;
    double lambda_max_, lambda_next_;
};

inline ModeSet build_modeset(int d, int K_max, int L_max) { return ModeSet(d, K_max, L_max); }

/// Series kernels refuse evaluation below this time (tail not controllable
/// at a fixed truncation).
constexpr double kSpectralTimeMin = 1e-3;

double eigenfunction_eval(const EigenMode& mode, const Eigen::Vector2d& x);
double eigenfunction_eval(const EigenMode& mode, const Eigen::Vector3d& x);

/// Outward normal derivative of the eigenfunction at a boundary point.
double eigen_flux_eval(const EigenMode& mode, const Eigen::Vector2d& z);
double eigen_flux_eval(const EigenMode& mode, const Eigen::Vector3d& z);

struct KernelValue {
    double value;
    double tail_bound;
};

/// Dirichlet heat kernel K(x,y,t) by the truncated eigen-series, with an
/// analytic bound on the omitted tail.
KernelValue heat_kernel(const ModeSet& ms, const Eigen::Vector2d& x, const Eigen::Vector2d& y,
                        double t);
KernelValue heat_kernel(const ModeSet& ms, const Eigen::Vector3d& x, const Eigen::Vector3d& y,
                        double t);

/// Boundary flux kernel dnu K(z, p, t), truncated series.
double flux_kernel(const ModeSet& ms, const Eigen::Vector2d& z, const Eigen::Vector2d& p,
                   double t);

/// Per-mode time convolution W(t) = int_0^t g(t-s) e^{-lambda s} ds in
/// closed form (exact for Constant / PiecewiseConstant / HatBasis;
/// Sampled convolves the linear interpolant exactly).
double convolution_weight(const AmplitudeModel& g, double lambda, double t);

/// Flux trace on the unit disc: dnu u(z_l, t_k) for the given source.
/// The lambda^{-1} (quasi-steady) part of the per-mode weights is summed
/// in closed form through the Poisson kernel, so the truncation error is
/// exponentially small for grid times >= kSpectralTimeMin.
FluxTrace flux_trace_spectral(const ModeSet& ms, const PointSource& source,
                              const SensorSet& sensors, const TimeGrid& grid);

/// Closed-form Poisson kernel on the unit disc/ball.
double poisson_kernel(const Eigen::Vector2d& x, const Eigen::Vector2d& z);
double poisson_kernel(const Eigen::Vector3d& x, const Eigen::Vector3d& z);

/// Residual of the time-integrated flux-kernel identity
/// |int_0^inf dnu K(p,z,t) dt| = P(p,z): the per-degree root series are
/// summed with Wynn-epsilon acceleration and compared to the closed form.
double verify_poisson_identity(const ModeSet& ms, const Eigen::Vector2d& p,
                               const Eigen::Vector2d& z);

/// Resolvent kernel G_lam(x,y) = sum phi(x) phi(y) / (lam + lambda_n), truncated.
double greens_function_lambda(const ModeSet& ms, const Eigen::Vector2d& x,
                              const Eigen::Vector2d& y, double lam);

/// Sup-norm discrepancy of the flux traces of two sources.
double uniqueness_probe(const ModeSet& ms, const PointSource& a, const PointSource& b,
                        const SensorSet& sensors, const TimeGrid& grid);

/// Wynn epsilon extrapolation of a sequence of partial sums.
double wynn_epsilon_limit(const std::vector<double>& partial_sums);

}  // namespace heatsrc

#endif
