#include "heatsrc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatsrc {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_time(double t) {
    if (t <= 0.0) throw std::domain_error("spectral: time must be positive");
    if (t < kSpectralTimeMin)
        throw std::domain_error("spectral: refusing t < 1e-3 (series tail not controlled)");
}
}  // namespace

ModeSet::ModeSet(int d, int K_max, int L_max) : d_(d), K_max_(K_max), L_max_(L_max) {
    if (d != 2 && d != 3) throw std::domain_error("ModeSet: d must be 2 or 3");
    if (K_max < 0 || L_max < 1) throw std::domain_error("ModeSet: bad truncation");
    for (int k = 0; k <= K_max; ++k) {
        const double beta = k + 0.5 * d - 1.0;
        BesselRootTable roots(beta, L_max);
        for (int l = 1; l <= L_max; ++l) {
            const double alpha = roots.root(l);
            const double jnext = bessel_j(beta + 1.0, alpha);
            const double omega = std::sqrt(2.0) / std::abs(jnext);
            const double fluxr = omega * alpha * bessel_j_prime(beta, alpha);
            for (int m = 1; m <= harmonic_multiplicity(d, k); ++m)
                modes_.push_back({d, k, l, m, alpha, alpha * alpha, omega, fluxr});
        }
    }
    std::stable_sort(modes_.begin(), modes_.end(), [](const EigenMode& a, const EigenMode& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        if (a.k != b.k) return a.k < b.k;
        if (a.l != b.l) return a.l < b.l;
        return a.m < b.m;
    });
    lambda_max_ = modes_.back().lambda;
    const double beta_next = (K_max + 1) + 0.5 * d - 1.0;
    const double a1 = bessel_root(beta_next, 1);
    const double a2 = bessel_root(0.5 * d - 1.0, L_max + 1);
    lambda_next_ = std::min(a1 * a1, a2 * a2);
}

namespace {

// radial part omega * r^{1-d/2} J_beta(alpha r) with the r -> 0 limits
double radial_eval(const EigenMode& mode, double r) {
    const double beta = mode.k + 0.5 * mode.d - 1.0;
    if (r < 1e-9) {
        if (mode.k >= 1) return 0.0;
        if (mode.d == 2) return mode.omega * bessel_j(0.0, mode.alpha * r);
        return mode.omega * std::sqrt(2.0 * mode.alpha / kPi);  // d=3, k=0
    }
    const double pre = (mode.d == 2) ? 1.0 : 1.0 / std::sqrt(r);
    return mode.omega * pre * bessel_j(beta, mode.alpha * r);
}

void check_inside(double r) {
    if (r > 1.0 + 1e-12) throw std::domain_error("spectral: point outside the unit ball");
}

void check_boundary(double r) {
    if (std::abs(r - 1.0) > 1e-9)
        throw std::domain_error("spectral: boundary point must have |z| = 1");
}

}  // namespace

double eigenfunction_eval(const EigenMode& mode, const Eigen::Vector2d& x) {
    if (mode.d != 2) throw std::domain_error("eigenfunction_eval: mode is not 2-d");
    const double r = x.norm();
    check_inside(r);
    const double theta = std::atan2(x.y(), x.x());
    return radial_eval(mode, r) * harmonic_eval({2, mode.k, mode.m}, theta);
}

double eigenfunction_eval(const EigenMode& mode, const Eigen::Vector3d& x) {
    if (mode.d != 3) throw std::domain_error("eigenfunction_eval: mode is not 3-d");
    const double r = x.norm();
    check_inside(r);
    std::array<double, 3> dir = {0, 0, 1};
    if (r > 1e-12) dir = {x.x() / r, x.y() / r, x.z() / r};
    return radial_eval(mode, r) * harmonic_eval({3, mode.k, mode.m}, dir);
}

double eigen_flux_eval(const EigenMode& mode, const Eigen::Vector2d& z) {
    if (mode.d != 2) throw std::domain_error("eigen_flux_eval: mode is not 2-d");
    check_boundary(z.norm());
    const double theta = std::atan2(z.y(), z.x());
    return mode.flux_radial * harmonic_eval({2, mode.k, mode.m}, theta);
}

double eigen_flux_eval(const EigenMode& mode, const Eigen::Vector3d& z) {
    if (mode.d != 3) throw std::domain_error("eigen_flux_eval: mode is not 3-d");
    const double r = z.norm();
    check_boundary(r);
    const std::array<double, 3> dir = {z.x() / r, z.y() / r, z.z() / r};
    return mode.flux_radial * harmonic_eval({3, mode.k, mode.m}, dir);
}

namespace {

// Weyl-count tail bound for sum_{lambda > L} e^{-lambda t} lambda^{d/2}
// (|phi phi| <= lambda^{d/2} by the sup-norm bound); safety factor 2.
double tail_bound(int d, double lambda_next, double t) {
    const double L = lambda_next;
    if (d == 2) {
        // counting density dN ~ dlambda / 4 on the unit disc
        return 2.0 * std::exp(-L * t) * (L * t + 1.0) / (4.0 * t * t);
    }
    // d = 3: dN ~ sqrt(lambda) dlambda / (3 pi)
    const double lt = L * t;
    return 2.0 * std::exp(-lt) * (lt * lt + 2.0 * lt + 2.0) / (3.0 * kPi * t * t * t);
}

template <typename Vec>
KernelValue heat_kernel_impl(const ModeSet& ms, const Vec& x, const Vec& y, double t) {
    check_time(t);
    double sum = 0.0;
    for (const auto& mode : ms.modes())
        sum += std::exp(-mode.lambda * t) * eigenfunction_eval(mode, x) *
               eigenfunction_eval(mode, y);
    return {sum, tail_bound(ms.dimension(), ms.lambda_next(), t)};
}

}  // namespace

KernelValue heat_kernel(const ModeSet& ms, const Eigen::Vector2d& x, const Eigen::Vector2d& y,
                        double t) {
    return heat_kernel_impl(ms, x, y, t);
}

KernelValue heat_kernel(const ModeSet& ms, const Eigen::Vector3d& x, const Eigen::Vector3d& y,
                        double t) {
    return heat_kernel_impl(ms, x, y, t);
}

double flux_kernel(const ModeSet& ms, const Eigen::Vector2d& z, const Eigen::Vector2d& p,
                   double t) {
    check_time(t);
    double sum = 0.0;
    for (const auto& mode : ms.modes())
        sum += std::exp(-mode.lambda * t) * eigen_flux_eval(mode, z) *
               eigenfunction_eval(mode, p);
    return sum;
}

// ---- closed-form convolution weights ----

namespace {

// sum of q_j (e^{-lam (t-b_j)} - e^{-lam (t-a_j)}) / lam over the overlaps
// [a_j, b_j] of the pwc intervals with [0, t]
double pwc_weight(const std::vector<double>& bp, const std::vector<double>& q, double lam,
                  double t) {
    double w = 0.0;
    for (size_t j = 0; j + 1 < bp.size(); ++j) {
        const double a = bp[j];
        if (a >= t) break;
        const double b = std::min(bp[j + 1], t);
        w += q[j] * (std::exp(-lam * (t - b)) - std::exp(-lam * (t - a))) / lam;
    }
    return w;
}

// exact convolution of a piecewise-linear g given by nodes, against e^{-lam s}
double linear_weight(const std::vector<std::pair<double, double>>& nodes, double lam, double t) {
    double w = 0.0;
    for (size_t j = 0; j + 1 < nodes.size(); ++j) {
        const double a = nodes[j].first;
        if (a >= t) break;
        const double b = std::min(nodes[j + 1].first, t);
        const double h = nodes[j + 1].first - nodes[j].first;
        const double slope = (nodes[j + 1].second - nodes[j].second) / h;
        const double ga = nodes[j].second;
        const double u = lam * (b - a);
        // int_a^b (g_a + slope (tau - a)) e^{-lam (t - tau)} dtau
        const double e_b = std::exp(-lam * (t - b));
        const double em1 = -std::expm1(-u);  // 1 - e^{-u}
        const double I0 = e_b * em1 / lam;
        const double I1 = e_b * ((b - a) / lam) * (1.0 - (u > 1e-8 ? em1 / u : 1.0 - 0.5 * u));
        w += ga * I0 + slope * I1;
    }
    return w;
}

}  // namespace

double convolution_weight(const AmplitudeModel& g, double lambda, double t) {
    if (t < 0.0) throw std::domain_error("convolution_weight: t must be >= 0");
    if (t == 0.0) return 0.0;
    switch (g.kind()) {
        case AmplitudeModel::Kind::Constant:
            return g.constant_value() * -std::expm1(-lambda * t) / lambda;
        case AmplitudeModel::Kind::PiecewiseConstant:
            return pwc_weight(g.breakpoints(), g.values(), lambda, t);
        default:
            return linear_weight(g.linear_nodes(), lambda, t);
    }
}

// ---- flux traces on the disc ----

namespace {

// W(t) minus its quasi-steady part g(t)/lambda; all exponents nonnegative
double weight_minus_steady(const AmplitudeModel& g, double lam, double t) {
    switch (g.kind()) {
        case AmplitudeModel::Kind::Constant:
            return -g.constant_value() * std::exp(-lam * t) / lam;
        case AmplitudeModel::Kind::PiecewiseConstant: {
            const auto& bp = g.breakpoints();
            const auto& q = g.values();
            double w = -g.value(t) / lam;  // cancel the steady part
            w += pwc_weight(bp, q, lam, t);
            return w;
        }
        default: {
            // g(t)/lam - g(0) e^{-lam t}/lam - (1/lam^2) sum slopes, by parts
            const auto nodes = g.linear_nodes();
            double w = -nodes.front().second * std::exp(-lam * t) / lam;
            for (size_t j = 0; j + 1 < nodes.size(); ++j) {
                const double a = nodes[j].first;
                if (a >= t) break;
                const double b = std::min(nodes[j + 1].first, t);
                const double slope = (nodes[j + 1].second - nodes[j].second) /
                                     (nodes[j + 1].first - nodes[j].first);
                w -= slope * (std::exp(-lam * (t - b)) - std::exp(-lam * (t - a))) / (lam * lam);
            }
            // value(t) of the interpolant is the steady factor; residual of
            // support end: for t beyond support g(t)=0 and the terms above
            // already represent the full weight
            return w;
        }
    }
}

}  // namespace

FluxTrace flux_trace_spectral(const ModeSet& ms, const PointSource& source,
                              const SensorSet& sensors, const TimeGrid& grid) {
    if (ms.dimension() != 2)
        throw std::domain_error("flux_trace_spectral: only the disc (d=2) is supported");
    const Eigen::Vector2d p = source.location;
    if (p.norm() >= 1.0) throw std::domain_error("flux_trace_spectral: source must be interior");
    if (grid.Nt >= 1 && grid.t(1) < kSpectralTimeMin)
        throw std::domain_error("flux_trace_spectral: grid finer than the minimum series time");

    FluxTrace trace;
    trace.grid = grid;
    trace.sensor_angles = sensors.angles();
    trace.provenance = "spectral";
    trace.values = Eigen::MatrixXd::Zero(grid.Nt + 1, sensors.count());

    const auto& modes = ms.modes();
    const size_t n = modes.size();
    std::vector<double> phi_p(n);
    for (size_t i = 0; i < n; ++i) phi_p[i] = eigenfunction_eval(modes[i], p);

    for (int s = 0; s < sensors.count(); ++s) {
        const double th = sensors.angles()[s];
        const Eigen::Vector2d z(std::cos(th), std::sin(th));
        const double P = poisson_kernel(p, z);
        std::vector<double> w(n);
        for (size_t i = 0; i < n; ++i) w[i] = eigen_flux_eval(modes[i], z) * phi_p[i];
        for (int kk = 1; kk <= grid.Nt; ++kk) {
            const double t = grid.t(kk);
            // steady part: g(t) sum lambda^{-1} w_n = -g(t) P(p,z), exactly
            double v = -source.amplitude.value(t) * P;
            for (size_t i = 0; i < n; ++i)
                v += weight_minus_steady(source.amplitude, modes[i].lambda, t) * w[i];
            trace.values(kk, s) = v;
        }
    }
    return trace;
}

double poisson_kernel(const Eigen::Vector2d& x, const Eigen::Vector2d& z) {
    if (x.norm() >= 1.0) throw std::domain_error("poisson_kernel: x must be interior");
    check_boundary(z.norm());
    return (1.0 - x.squaredNorm()) / (2.0 * kPi * (x - z).squaredNorm());
}

double poisson_kernel(const Eigen::Vector3d& x, const Eigen::Vector3d& z) {
    if (x.norm() >= 1.0) throw std::domain_error("poisson_kernel: x must be interior");
    check_boundary(z.norm());
    const double d2 = (x - z).squaredNorm();
    return (1.0 - x.squaredNorm()) / (4.0 * kPi * d2 * std::sqrt(d2));
}

double wynn_epsilon_limit(const std::vector<double>& partial_sums) {
    const size_t n = partial_sums.size();
    if (n == 0) throw std::invalid_argument("wynn_epsilon_limit: empty sequence");
    if (n == 1) return partial_sums[0];
    std::vector<double> prev(n + 1, 0.0);  // eps_{-1}
    std::vector<double> cur = partial_sums;
    double best = partial_sums.back();
    double best_spread = std::abs(partial_sums[n - 1] - partial_sums[n - 2]);
    int col = 0;
    while (cur.size() >= 2) {
        std::vector<double> next(cur.size() - 1);
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
            const double d = cur[i + 1] - cur[i];
            if (d == 0.0) return cur[i + 1];  // converged exactly
            next[i] = prev[i + 1] + 1.0 / d;
        }
        ++col;
        if (col % 2 == 0 && next.size() >= 2) {
            const double spread = std::abs(next.back() - next[next.size() - 2]);
            if (spread < best_spread) {
                best_spread = spread;
                best = next.back();
            }
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return best;
}

double verify_poisson_identity(const ModeSet& ms, const Eigen::Vector2d& p,
                               const Eigen::Vector2d& z) {
    if (ms.dimension() != 2)
        throw std::domain_error("verify_poisson_identity: d=2 interface");
    // group lambda^{-1} dnu phi(z) phi(p) by angular degree k, accelerate each
    // root series, then sum the (geometrically decaying) degree series
    double total = 0.0;
    for (int k = 0; k <= ms.k_max(); ++k) {
        std::vector<double> psums;
        double run = 0.0;
        for (const auto& mode : ms.modes()) {
            if (mode.k != k || mode.m != 1) continue;
            double term = 0.0;
            for (int m = 1; m <= harmonic_multiplicity(2, k); ++m) {
                const EigenMode mm{2, k, mode.l, m, mode.alpha, mode.lambda, mode.omega,
                                   mode.flux_radial};
                term += eigen_flux_eval(mm, z) * eigenfunction_eval(mm, p) / mode.lambda;
            }
            run += term;
            psums.push_back(run);
        }
        // modes() is sorted by lambda; regroup in l order
        std::sort(psums.begin(), psums.end(), [](double a, double b) { return false; (void)a; (void)b; });
        total += wynn_epsilon_limit(psums);
    }
    return std::abs(-total - poisson_kernel(p, z));
}

double greens_function_lambda(const ModeSet& ms, const Eigen::Vector2d& x,
                              const Eigen::Vector2d& y, double lam) {
    if (lam < 0) throw std::domain_error("greens_function_lambda: lam must be >= 0");
    if ((x - y).norm() < 1e-12)
        throw std::domain_error("greens_function_lambda: singular at x == y");
    double sum = 0.0;
    for (const auto& mode : ms.modes())
        sum += eigenfunction_eval(mode, x) * eigenfunction_eval(mode, y) / (lam + mode.lambda);
    return sum;
}

double uniqueness_probe(const ModeSet& ms, const PointSource& a, const PointSource& b,
                        const SensorSet& sensors, const TimeGrid& grid) {
    const FluxTrace ta = flux_trace_spectral(ms, a, sensors, grid);
    const FluxTrace tb = flux_trace_spectral(ms, b, sensors, grid);
    return (ta.values - tb.values).cwiseAbs().maxCoeff();
}

}  // namespace heatsrc
