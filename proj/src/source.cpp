#include "heatsrc/source.hpp"

#include <cmath>
#include <stdexcept>

namespace heatsrc {

AmplitudeModel AmplitudeModel::constant(double q) {
    AmplitudeModel m;
    m.kind_ = Kind::Constant;
    m.q_ = q;
    return m;
}

AmplitudeModel AmplitudeModel::piecewise_constant(std::vector<double> breakpoints,
                                                  std::vector<double> values) {
    if (breakpoints.size() < 2 || breakpoints.front() != 0.0)
        throw std::invalid_argument("piecewise_constant: breakpoints must start at 0");
    if (values.size() + 1 != breakpoints.size())
        throw std::invalid_argument("piecewise_constant: need one value per interval");
    for (size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw std::invalid_argument("piecewise_constant: breakpoints must increase");
    AmplitudeModel m;
    m.kind_ = Kind::PiecewiseConstant;
    m.breakpoints_ = std::move(breakpoints);
    m.values_ = std::move(values);
    return m;
}

AmplitudeModel AmplitudeModel::hat_basis(double T, int K, std::vector<double> coeffs) {
    if (K < 2) throw std::invalid_argument("hat_basis: K must be >= 2");
    if (static_cast<int>(coeffs.size()) != K)
        throw std::invalid_argument("hat_basis: need K coefficients");
    if (!(T > 0)) throw std::invalid_argument("hat_basis: T must be positive");
    AmplitudeModel m;
    m.kind_ = Kind::HatBasis;
    m.values_ = std::move(coeffs);
    m.times_.resize(K);
    for (int j = 0; j < K; ++j) m.times_[j] = T * j / (K - 1.0);
    return m;
}

AmplitudeModel AmplitudeModel::sampled(std::vector<double> times, std::vector<double> values) {
    if (times.size() < 2 || times.size() != values.size())
        throw std::invalid_argument("sampled: need matching times/values, at least 2");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("sampled: times must increase");
    AmplitudeModel m;
    m.kind_ = Kind::Sampled;
    m.times_ = std::move(times);
    m.values_ = std::move(values);
    return m;
}

double AmplitudeModel::value(double t) const {
    switch (kind_) {
        case Kind::Constant:
            return t >= 0.0 ? q_ : 0.0;
        case Kind::PiecewiseConstant: {
            if (t < 0.0 || t > breakpoints_.back()) return 0.0;
            if (t == 0.0) return values_.front();
            for (size_t k = 1; k < breakpoints_.size(); ++k)
                if (t <= breakpoints_[k]) return values_[k - 1];
            return 0.0;
        }
        case Kind::HatBasis:
        case Kind::Sampled: {
            if (t < times_.front() || t > times_.back()) return 0.0;
            auto it = std::upper_bound(times_.begin(), times_.end(), t);
            if (it == times_.begin()) return values_.front();
            if (it == times_.end()) return values_.back();
            const size_t j = static_cast<size_t>(it - times_.begin());
            const double w = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
            return (1.0 - w) * values_[j - 1] + w * values_[j];
        }
    }
    return 0.0;
}

double AmplitudeModel::end_time() const {
    switch (kind_) {
        case Kind::Constant:
            return std::numeric_limits<double>::infinity();
        case Kind::PiecewiseConstant:
            return breakpoints_.back();
        default:
            return times_.back();
    }
}

double AmplitudeModel::integral() const {
    switch (kind_) {
        case Kind::Constant:
            throw std::logic_error("integral: constant amplitude has unbounded support");
        case Kind::PiecewiseConstant: {
            double s = 0.0;
            for (size_t k = 0; k < values_.size(); ++k)
                s += values_[k] * (breakpoints_[k + 1] - breakpoints_[k]);
            return s;
        }
        default: {
            double s = 0.0;
            for (size_t j = 1; j < times_.size(); ++j)
                s += 0.5 * (values_[j] + values_[j - 1]) * (times_[j] - times_[j - 1]);
            return s;
        }
    }
}

bool AmplitudeModel::member_pwc() const {
    if (kind_ != Kind::PiecewiseConstant) return false;
    if (values_.front() == 0.0) return false;
    for (size_t k = 1; k < values_.size(); ++k)
        if (values_[k] == values_[k - 1]) return false;
    return true;
}

bool AmplitudeModel::member_compact(double T) const {
    if (kind_ == Kind::Constant) return false;
    // support must end strictly before T
    double support_end = 0.0;
    if (kind_ == Kind::PiecewiseConstant) {
        for (size_t k = values_.size(); k-- > 0;)
            if (values_[k] != 0.0) {
                support_end = breakpoints_[k + 1];
                break;
            }
    } else {
        for (size_t j = values_.size(); j-- > 0;)
            if (values_[j] != 0.0) {
                support_end = times_[std::min(j + 1, times_.size() - 1)];
                break;
            }
    }
    return support_end < T && integral() != 0.0;
}

double AmplitudeModel::constant_value() const {
    if (kind_ != Kind::Constant) throw std::logic_error("constant_value: wrong variant");
    return q_;
}

const std::vector<double>& AmplitudeModel::breakpoints() const {
    if (kind_ != Kind::PiecewiseConstant) throw std::logic_error("breakpoints: wrong variant");
    return breakpoints_;
}

const std::vector<double>& AmplitudeModel::values() const {
    if (kind_ == Kind::Constant) throw std::logic_error("values: wrong variant");
    return values_;
}

std::vector<std::pair<double, double>> AmplitudeModel::linear_nodes() const {
    if (kind_ != Kind::HatBasis && kind_ != Kind::Sampled)
        throw std::logic_error("linear_nodes: wrong variant");
    std::vector<std::pair<double, double>> nodes(times_.size());
    for (size_t j = 0; j < times_.size(); ++j) nodes[j] = {times_[j], values_[j]};
    return nodes;
}

}  // namespace heatsrc
