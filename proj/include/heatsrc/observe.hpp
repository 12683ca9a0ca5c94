#ifndef HEATSRC_OBSERVE_HPP
#define HEATSRC_OBSERVE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace heatsrc {

/// Uniform time grid t_k = k T / Nt, k = 0..Nt.
struct TimeGrid {
    double T = 1.0;
    int Nt = 1;
    double t(int k) const { return T * k / Nt; }
    double dt() const { return T / Nt; }
    int size() const { return Nt + 1; }
};

/// Boundary sensor angles (parameter angles on the active domain's
/// boundary curve), distinct, in [0, 2pi).
class SensorSet {
public:
    explicit SensorSet(std::vector<double> angles);
    const std::vector<double>& angles() const { return angles_; }
    int count() const { return static_cast<int>(angles_.size()); }
    /// True when no pairwise difference is an integer multiple of pi
    /// (the hypothesis of the two-sensor uniqueness result on the disc).
    bool differences_avoid_pi_multiples(double tol = 1e-12) const;

private:
    std::vector<double> angles_;
};

/// Matrix of flux values dnu u(z_l, t_k), rows = time, cols = sensors.
struct FluxTrace {
    TimeGrid grid;
    std::vector<double> sensor_angles;
    Eigen::MatrixXd values;  // (Nt+1) x L
    std::string provenance = "spectral";
    std::optional<std::uint64_t> seed;
    double delta = 0.0;
    bool interpolation_warning = false;

    int sensors() const { return static_cast<int>(sensor_angles.size()); }
};

/// Multiplicative Gaussian noise y (1 + delta xi), xi iid N(0,1) drawn
/// in row-major order (time outer, sensor inner) from a seeded mt19937_64.
FluxTrace add_noise(const FluxTrace& trace, double delta, std::uint64_t seed);

/// Exact subsampling onto a nested coarser grid (same T, Nt divides).
FluxTrace restrict_trace(const FluxTrace& trace, int coarse_Nt);

void save_trace(const FluxTrace& trace, const std::string& path);
FluxTrace load_trace(const std::string& path);

/// Relative L2(t0, T) distance between two traces on the same grid,
/// per sensor, via composite trapezoid.
std::vector<double> relative_l2(const FluxTrace& a, const FluxTrace& b, double t0);

}  // namespace heatsrc

#endif
