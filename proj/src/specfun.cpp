#include "heatsrc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace heatsrc {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_integer(double b) { return b == std::floor(b); }
bool is_half_integer(double b) { return (b - std::floor(b)) == 0.5; }

// Power series sum_k (-1)^k (x/2)^{2k+beta} / (k! Gamma(beta+k+1)).
// No cancellation trouble for x <= ~2 where the ratio test bites at once.
double series_j(double beta, double x) {
    if (x == 0.0) return beta == 0.0 ? 1.0 : 0.0;
    const double h = 0.5 * x;
    double term = std::exp(beta * std::log(h) - std::lgamma(beta + 1.0));
    double sum = term;
    const double h2 = h * h;
    for (int k = 0; k < 200; ++k) {
        term *= -h2 / ((k + 1.0) * (beta + k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
    }
    return sum;
}

// All of J_0..J_n by Miller's normalized backward recurrence
// (lambda = J_0 + 2 J_2 + 2 J_4 + ... = 1), with overflow rescaling.
double miller_integer(int n, double x) {
    const int safety = 18 + static_cast<int>(8.0 * std::cbrt(std::max(x, 1.0)));
    int M = std::max(n, static_cast<int>(std::ceil(x))) + safety;
    if (M % 2 == 1) ++M;  // even start simplifies the norm accumulation
    double pPlus = 0.0;
    double pCur = 1e-280;
    double norm = 0.0;    // becomes p0 + 2 sum p_{2k}
    double result = (n == M) ? pCur : 0.0;
    if (M % 2 == 0) norm += 2.0 * pCur;
    for (int m = M; m >= 1; --m) {
        double pMinus = (2.0 * m / x) * pCur - pPlus;
        pPlus = pCur;
        pCur = pMinus;
        const int order = m - 1;
        if (order == n) result = pCur;
        if (order == 0)
            norm += pCur;
        else if (order % 2 == 0)
            norm += 2.0 * pCur;
        if (std::abs(pCur) > 1e280) {
            pCur *= 1e-280;
            pPlus *= 1e-280;
            norm *= 1e-280;
            result *= 1e-280;
        }
    }
    return result / norm;
}

// Spherical Bessel j_0..j_n; downward recurrence normalized against
// whichever of j_0, j_1 is away from a zero.
double spherical_jn(int n, double x) {
    const double j0 = std::sin(x) / x;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    if (n == 0) return j0;
    if (n == 1) return j1;
    if (static_cast<double>(n) < 0.8 * x) {
        // upward recurrence is stable below the turning point
        double jm = j0, jc = j1;
        for (int m = 1; m < n; ++m) {
            double jp = (2.0 * m + 1.0) / x * jc - jm;
            jm = jc;
            jc = jp;
        }
        return jc;
    }
    const int safety = 16 + static_cast<int>(6.0 * std::cbrt(std::max(x, 1.0)));
    const int M = std::max(n, static_cast<int>(std::ceil(x))) + safety;
    double fPlus = 0.0, fCur = 1e-280;
    double fn = (n == M) ? fCur : 0.0;
    double f0 = 0.0, f1 = 0.0;
    for (int m = M; m >= 1; --m) {
        double fMinus = (2.0 * m + 1.0) / x * fCur - fPlus;
        fPlus = fCur;
        fCur = fMinus;
        const int order = m - 1;
        if (order == n) fn = fCur;
        if (order == 1) f1 = fCur;
        if (order == 0) f0 = fCur;
        if (std::abs(fCur) > 1e280) {
            fCur *= 1e-280;
            fPlus *= 1e-280;
            fn *= 1e-280;
            f1 *= 1e-280;
        }
    }
    // normalize by the better-conditioned reference value
    if (std::abs(j0) >= std::abs(j1))
        return fn * (j0 / f0);
    return fn * (j1 / f1);
}

}  // namespace

double bessel_j(double beta, double x) {
    if (x < 0.0) throw std::domain_error("bessel_j: x must be >= 0");
    if (beta < 0.0) throw std::domain_error("bessel_j: order must be >= 0");
    if (x == 0.0) return beta == 0.0 ? 1.0 : 0.0;
    if (x <= 2.0) return series_j(beta, x);
    if (is_integer(beta)) return miller_integer(static_cast<int>(beta), x);
    if (is_half_integer(beta)) {
        const int n = static_cast<int>(beta - 0.5);
        return std::sqrt(2.0 * x / kPi) * spherical_jn(n, x);
    }
    // generic real order: series only; fine for the moderate-x uses
    return series_j(beta, x);
}

double bessel_j_prime(double beta, double x) {
    if (x <= 0.0) throw std::domain_error("bessel_j_prime: x must be > 0");
    if (beta >= 1.0)
        return 0.5 * (bessel_j(beta - 1.0, x) - bessel_j(beta + 1.0, x));
    return (beta / x) * bessel_j(beta, x) - bessel_j(beta + 1.0, x);
}

namespace {

// Safeguarded Newton for a root of J_beta inside [lo, hi].
double refine_root(double beta, double lo, double hi) {
    double flo = bessel_j(beta, lo);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 120; ++it) {
        const double f = bessel_j(beta, x);
        const double fp = bessel_j_prime(beta, x);
        double step = (fp != 0.0) ? -f / fp : 0.0;
        double xn = x + step;
        if (!(xn > lo && xn < hi) || fp == 0.0) {
            // bisection fallback, shrink the bracket by sign
            if ((f > 0) == (flo > 0)) {
                lo = x;
                flo = f;
            } else {
                hi = x;
            }
            xn = 0.5 * (lo + hi);
            step = xn - x;
        } else {
            if ((f > 0) == (flo > 0)) {
                lo = x;
                flo = f;
            } else {
                hi = x;
            }
        }
        x = xn;
        if (std::abs(step) < 1e-15 * x + 1e-15) {
            return x;
        }
    }
    throw std::runtime_error("bessel_root: Newton/bisection failed to converge for order " +
                             std::to_string(beta));
}

std::vector<double> base_order_roots(double beta, int count) {
    // beta in [0,1): McMahon guess with +-pi/4 bracket, widened if needed
    std::vector<double> roots;
    roots.reserve(count);
    for (int l = 1; l <= count; ++l) {
        const double guess = (l + 0.5 * beta - 0.25) * kPi;
        double lo = guess - 0.25 * kPi;
        double hi = guess + 0.25 * kPi;
        if (l == 1) lo = std::max(lo, 1e-8);
        int widen = 0;
        while (bessel_j(beta, lo) * bessel_j(beta, hi) > 0.0) {
            lo = std::max(0.5 * (lo + (l > 1 ? roots[l - 2] : 0.0)), 1e-8);
            hi += 0.1 * kPi;
            if (++widen > 50)
                throw std::runtime_error("bessel_root: failed to bracket base-order root");
        }
        roots.push_back(refine_root(beta, lo, hi));
    }
    return roots;
}

std::vector<double> build_roots(double beta, int count) {
    if (beta < 1.0) return base_order_roots(beta, count);
    // interlacing: s_{beta-1,l} < s_{beta,l} < s_{beta-1,l+1}
    const std::vector<double> lower = build_roots(beta - 1.0, count + 1);
    std::vector<double> roots;
    roots.reserve(count);
    for (int l = 1; l <= count; ++l) {
        roots.push_back(refine_root(beta, lower[l - 1], lower[l]));
    }
    return roots;
}

struct RootCache {
    std::mutex mu;
    std::map<double, std::vector<double>> tables;

    // returns a copy of the first `count` roots, extending the table as needed
    std::vector<double> get(double beta, int count) {
        std::lock_guard<std::mutex> lock(mu);
        auto& tab = tables[beta];
        if (static_cast<int>(tab.size()) < count) {
            tab = build_roots(beta, std::max(count, static_cast<int>(tab.size()) * 2));
        }
        return std::vector<double>(tab.begin(), tab.begin() + count);
    }
};

RootCache& root_cache() {
    static RootCache cache;
    return cache;
}

}  // namespace

double bessel_root(double beta, int l) {
    if (beta < 0.0) throw std::domain_error("bessel_root: order must be >= 0");
    if (l < 1) throw std::domain_error("bessel_root: root index must be >= 1");
    return root_cache().get(beta, l)[l - 1];
}

BesselRootTable::BesselRootTable(double beta, int count) : beta_(beta) {
    if (beta < 0.0) throw std::domain_error("BesselRootTable: order must be >= 0");
    if (count < 1) throw std::domain_error("BesselRootTable: count must be >= 1");
    roots_ = root_cache().get(beta, count);
}

double BesselRootTable::root(int l) const {
    if (l < 1 || l > size()) throw std::out_of_range("BesselRootTable::root index");
    return roots_[l - 1];
}

// -------- Gauss-Legendre --------

namespace {

struct GlRule {
    std::vector<double> nodes, weights;
};

GlRule make_gl(int n) {
    GlRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-like initial guess
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = -p1 / dp;
            x += dx;
            if (std::abs(dx) < 1e-16) {
                double q0 = 1.0, q1 = x;
                for (int k = 2; k <= n; ++k) {
                    double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
                    q0 = q1;
                    q1 = q2;
                }
                const double d = n * (x * q1 - q0) / (x * x - 1.0);
                r.nodes[i] = x;
                r.weights[i] = 2.0 / ((1.0 - x * x) * d * d);
                break;
            }
        }
    }
    return r;
}

std::map<int, GlRule>& gl_cache() {
    static std::map<int, GlRule> cache;
    return cache;
}
std::mutex gl_mutex;

const GlRule& gl_rule(int n) {
    std::lock_guard<std::mutex> lock(gl_mutex);
    auto it = gl_cache().find(n);
    if (it == gl_cache().end()) it = gl_cache().emplace(n, make_gl(n)).first;
    return it->second;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int n) { return gl_rule(n).nodes; }
const std::vector<double>& gauss_legendre_weights(int n) { return gl_rule(n).weights; }

std::vector<double> fourier_bessel_coeffs(const std::function<double(double)>& f,
                                          double beta, int L) {
    if (L < 1) throw std::domain_error("fourier_bessel_coeffs: L must be >= 1");
    BesselRootTable table(beta, L);
    const double sMax = table.root(L);
    const double panel = std::min(0.1, kPi / (4.0 * sMax));
    const int nPanels = static_cast<int>(std::ceil(1.0 / panel));
    const auto& gx = gauss_legendre_nodes(32);
    const auto& gw = gauss_legendre_weights(32);

    // cache f and sqrt(x) on the composite grid, stream over l
    std::vector<double> xs, fw;
    xs.reserve(nPanels * 32);
    fw.reserve(nPanels * 32);
    for (int pnl = 0; pnl < nPanels; ++pnl) {
        const double a = static_cast<double>(pnl) / nPanels;
        const double b = static_cast<double>(pnl + 1) / nPanels;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < 32; ++q) {
            xs.push_back(mid + half * gx[q]);
            fw.push_back(half * gw[q]);
        }
    }
    std::vector<double> fv(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) fv[i] = f(xs[i]);

    std::vector<double> coeffs(L);
    for (int l = 1; l <= L; ++l) {
        const double s = table.root(l);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) {
            const double J = bessel_j(beta, s * xs[i]);
            num += fw[i] * fv[i] * std::sqrt(xs[i]) * J;
            den += fw[i] * xs[i] * J * J;
        }
        coeffs[l - 1] = num / den;
    }
    return coeffs;
}

double fourier_bessel_eval(const std::vector<double>& coeffs, double beta, double x) {
    const int L = static_cast<int>(coeffs.size());
    BesselRootTable table(beta, L);
    double sum = 0.0;
    for (int l = 1; l <= L; ++l)
        sum += coeffs[l - 1] * std::sqrt(x) * bessel_j(beta, table.root(l) * x);
    return sum;
}

// -------- harmonics --------

int harmonic_multiplicity(int d, int k) {
    if (d != 2 && d != 3) throw std::domain_error("harmonic_multiplicity: d must be 2 or 3");
    if (k < 0) throw std::domain_error("harmonic_multiplicity: k must be >= 0");
    if (k == 0) return 1;
    if (d == 2) return 2;
    return 2 * k + 1;
}

namespace {

void check_index(const HarmonicIndex& idx) {
    if (idx.m < 1 || idx.m > harmonic_multiplicity(idx.d, idx.k))
        throw std::domain_error("harmonic_eval: index m out of range");
}

// fully normalized associated Legendre P-bar_l^m(cos theta), so that
// Y = P-bar * {1, sqrt2 cos(m phi), sqrt2 sin(m phi)} is orthonormal on S^2
double legendre_norm(int l, int m, double ct) {
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    double pmm = 1.0 / std::sqrt(4.0 * kPi);
    for (int i = 1; i <= m; ++i)
        pmm *= -st * std::sqrt((2.0 * i + 1.0) / (2.0 * i));
    if (l == m) return pmm;
    double pm1 = ct * std::sqrt(2.0 * m + 3.0) * pmm;
    if (l == m + 1) return pm1;
    double p = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        const double a = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - m * m));
        const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - m * m) /
                                   (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
        p = a * (ct * pm1 - b * pmm);
        pmm = pm1;
        pm1 = p;
    }
    return p;
}

}  // namespace

double harmonic_eval(const HarmonicIndex& idx, double theta) {
    if (idx.d != 2) throw std::domain_error("harmonic_eval(angle): requires d == 2");
    check_index(idx);
    if (idx.k == 0) return 1.0 / std::sqrt(2.0 * kPi);
    if (idx.m == 1) return std::cos(idx.k * theta) / std::sqrt(kPi);
    return std::sin(idx.k * theta) / std::sqrt(kPi);
}

double harmonic_eval(const HarmonicIndex& idx, const std::array<double, 3>& dir) {
    if (idx.d != 3) throw std::domain_error("harmonic_eval(vector): requires d == 3");
    check_index(idx);
    const double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    if (std::abs(norm - 1.0) > 1e-8)
        throw std::domain_error("harmonic_eval: direction must be a unit vector");
    const double ct = dir[2] / norm;
    const double phi = std::atan2(dir[1], dir[0]);
    if (idx.m == 1) return legendre_norm(idx.k, 0, ct);
    const int mu = idx.m / 2;
    const double base = legendre_norm(idx.k, mu, ct) * std::sqrt(2.0);
    if (idx.m % 2 == 0) return base * std::cos(mu * phi);
    return base * std::sin(mu * phi);
}

std::array<std::array<double, 3>, 3> harmonic_k1_to_coords() {
    // coefficients of Y_1^m in (x, y, z), read off by evaluating at the axes
    std::array<std::array<double, 3>, 3> M{};
    const std::array<std::array<double, 3>, 3> axes = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int m = 1; m <= 3; ++m)
        for (int c = 0; c < 3; ++c)
            M[m - 1][c] = harmonic_eval({3, 1, m}, axes[c]);
    return M;
}

}  // namespace heatsrc
