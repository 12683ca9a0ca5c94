#ifndef HEATSRC_SPECFUN_HPP
#define HEATSRC_SPECFUN_HPP

#include <array>
#include <functional>
#include <vector>

namespace heatsrc {

/// Bessel function of the first kind J_beta(x), beta >= 0, x >= 0.
///
/// Integer and half-integer orders (the only orders the eigen-systems on
/// the disc and ball produce) are evaluated by normalized backward
/// recurrences and are accurate to ~1e-14 relative over the range used
/// (x up to a few hundred, beta <= 60). Other real orders fall back to
/// the power series, adequate for moderate x.
double bessel_j(double beta, double x);

/// Derivative J_beta'(x) via the standard recurrences, x > 0.
double bessel_j_prime(double beta, double x);

/// l-th positive root s_{beta,l} of J_beta, l >= 1, to ~1e-13 absolute.
/// Brackets come from interlacing with the order beta-1 roots (built
/// recursively down to the base order in [0,1)); the base order uses the
/// McMahon guess (l + beta/2 - 1/4)*pi. Newton with bisection fallback.
double bessel_root(double beta, int l);

/// Immutable ascending table of the first L positive roots of J_beta.
class BesselRootTable {
public:
    BesselRootTable(double beta, int count);
    double beta() const { return beta_; }
    int size() const { return static_cast<int>(roots_.size()); }
    double root(int l) const;  // 1-based
    const std::vector<double>& roots() const { return roots_; }

private:
    double beta_;
    std::vector<double> roots_;
};

/// Fourier-Bessel coefficients c_l of f against {sqrt(x) J_beta(s_l x)},
/// l = 1..L: c_l = int f sqrt(x) J dx / int x J^2 dx, composite
/// Gauss-Legendre with panels resolving the fastest oscillation.
std::vector<double> fourier_bessel_coeffs(const std::function<double(double)>& f,
                                          double beta, int L);

/// Pointwise partial sum  sum_l c_l sqrt(x) J_beta(s_l x).
double fourier_bessel_eval(const std::vector<double>& coeffs, double beta, double x);

/// Index of a real harmonic on S^{d-1}, d in {2,3}; m ranges over 1..d_k.
struct HarmonicIndex {
    int d;
    int k;
    int m;
};

/// Multiplicity d_k of spherical-harmonic degree k in dimension d.
int harmonic_multiplicity(int d, int k);

/// d=2 evaluation at angle theta: Y_0 = 1/sqrt(2pi), Y_k^1 = cos(k th)/sqrt(pi),
/// Y_k^2 = sin(k th)/sqrt(pi).
double harmonic_eval(const HarmonicIndex& idx, double theta);

/// d=3 evaluation at a unit vector (real orthonormal basis on S^2).
double harmonic_eval(const HarmonicIndex& idx, const std::array<double, 3>& dir);

/// 3x3 change of basis from {Y_1^m} to the coordinate functions (x,y,z)
/// on S^2 (row m holds the coefficients of Y_1^m); invertible.
std::array<std::array<double, 3>, 3> harmonic_k1_to_coords();

/// Gauss-Legendre nodes/weights on [-1,1], computed at first use.
const std::vector<double>& gauss_legendre_nodes(int n);
const std::vector<double>& gauss_legendre_weights(int n);

}  // namespace heatsrc

#endif
