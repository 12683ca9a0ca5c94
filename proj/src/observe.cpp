#include "heatsrc/observe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace heatsrc {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

SensorSet::SensorSet(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.empty()) throw std::invalid_argument("SensorSet: needs at least one angle");
    for (auto& a : angles_) {
        a = std::fmod(a, kTwoPi);
        if (a < 0) a += kTwoPi;
    }
    for (size_t i = 0; i < angles_.size(); ++i)
        for (size_t j = i + 1; j < angles_.size(); ++j)
            if (angles_[i] == angles_[j])
                throw std::invalid_argument("SensorSet: angles must be distinct");
}

bool SensorSet::differences_avoid_pi_multiples(double tol) const {
    constexpr double kPi = 3.14159265358979323846;
    for (size_t i = 0; i < angles_.size(); ++i)
        for (size_t j = i + 1; j < angles_.size(); ++j) {
            const double d = (angles_[i] - angles_[j]) / kPi;
            if (std::abs(d - std::round(d)) < tol) return false;
        }
    return true;
}

FluxTrace add_noise(const FluxTrace& trace, double delta, std::uint64_t seed) {
    if (delta < 0) throw std::invalid_argument("add_noise: delta must be >= 0");
    FluxTrace out = trace;
    out.seed = seed;
    out.delta = delta;
    if (delta == 0.0) return out;
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < out.values.rows(); ++k)
        for (int l = 0; l < out.values.cols(); ++l)
            out.values(k, l) *= 1.0 + delta * normal(gen);
    return out;
}

FluxTrace restrict_trace(const FluxTrace& trace, int coarse_Nt) {
    if (coarse_Nt < 1 || trace.grid.Nt % coarse_Nt != 0)
        throw std::domain_error("restrict_trace: grids are not nested");
    const int step = trace.grid.Nt / coarse_Nt;
    FluxTrace out = trace;
    out.grid.Nt = coarse_Nt;
    out.values.resize(coarse_Nt + 1, trace.values.cols());
    for (int k = 0; k <= coarse_Nt; ++k) out.values.row(k) = trace.values.row(k * step);
    return out;
}

void save_trace(const FluxTrace& trace, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_trace: cannot open " + path);
    os.precision(17);
    os << "# flux-trace-v1 T=" << trace.grid.T << " Nt=" << trace.grid.Nt << " sensors=";
    for (size_t i = 0; i < trace.sensor_angles.size(); ++i) {
        if (i) os << ';';
        os << trace.sensor_angles[i];
    }
    os << " provenance=" << trace.provenance;
    os << " seed=";
    if (trace.seed)
        os << *trace.seed;
    else
        os << "none";
    os << " delta=" << trace.delta << "\n";
    for (int k = 0; k <= trace.grid.Nt; ++k) {
        os << trace.grid.t(k);
        for (int l = 0; l < trace.values.cols(); ++l) os << ',' << trace.values(k, l);
        os << "\n";
    }
    if (!os) throw std::runtime_error("save_trace: write failed for " + path);
}

namespace {

std::string header_field(const std::string& header, const std::string& key) {
    const auto pos = header.find(key + "=");
    if (pos == std::string::npos)
        throw std::runtime_error("load_trace: header missing field " + key);
    const auto start = pos + key.size() + 1;
    auto end = header.find(' ', start);
    if (end == std::string::npos) end = header.size();
    return header.substr(start, end - start);
}

}  // namespace

FluxTrace load_trace(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_trace: cannot open " + path);
    std::string header;
    std::getline(is, header);
    if (header.rfind("# flux-trace-v1", 0) != 0)
        throw std::runtime_error("load_trace: bad header in " + path);
    FluxTrace trace;
    trace.grid.T = std::stod(header_field(header, "T"));
    trace.grid.Nt = std::stoi(header_field(header, "Nt"));
    trace.provenance = header_field(header, "provenance");
    trace.delta = std::stod(header_field(header, "delta"));
    const std::string seed = header_field(header, "seed");
    if (seed != "none") trace.seed = std::stoull(seed);
    {
        std::stringstream ss(header_field(header, "sensors"));
        std::string tok;
        while (std::getline(ss, tok, ';'))
            if (!tok.empty()) trace.sensor_angles.push_back(std::stod(tok));
    }
    const int L = static_cast<int>(trace.sensor_angles.size());
    trace.values.resize(trace.grid.Nt + 1, L);
    std::string line;
    for (int k = 0; k <= trace.grid.Nt; ++k) {
        if (!std::getline(is, line))
            throw std::runtime_error("load_trace: unexpected end of file at row " +
                                     std::to_string(k));
        std::stringstream ss(line);
        std::string tok;
        if (!std::getline(ss, tok, ','))
            throw std::runtime_error("load_trace: parse error at row " + std::to_string(k));
        for (int l = 0; l < L; ++l) {
            if (!std::getline(ss, tok, ','))
                throw std::runtime_error("load_trace: parse error at row " + std::to_string(k));
            const double v = std::stod(tok);
            if (std::isnan(v))
                throw std::runtime_error("load_trace: NaN entry at row " + std::to_string(k));
            trace.values(k, l) = v;
        }
    }
    return trace;
}

std::vector<double> relative_l2(const FluxTrace& a, const FluxTrace& b, double t0) {
    if (a.grid.Nt != b.grid.Nt || a.grid.T != b.grid.T || a.values.cols() != b.values.cols())
        throw std::invalid_argument("relative_l2: traces are not on the same grid");
    std::vector<double> out(a.values.cols());
    for (int l = 0; l < a.values.cols(); ++l) {
        double num = 0, den = 0;
        for (int k = 0; k < a.grid.Nt; ++k) {
            const double tl = a.grid.t(k), tr = a.grid.t(k + 1);
            if (tr < t0) continue;
            auto sq = [&](double x) { return x * x; };
            const double w = 0.5 * (tr - std::max(tl, t0));
            num += w * (sq(a.values(k, l) - b.values(k, l)) +
                        sq(a.values(k + 1, l) - b.values(k + 1, l)));
            den += w * (sq(b.values(k, l)) + sq(b.values(k + 1, l)));
        }
        out[l] = std::sqrt(num / den);
    }
    return out;
}

}  // namespace heatsrc
