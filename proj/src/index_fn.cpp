#include "ipt/index_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ipt {

namespace {
constexpr double kRelTol = 1e-12;
constexpr double kAbsTol = 1e-300;
constexpr int kMaxIter = 200;
}  // namespace

IndexFunction IndexFunction::power(double p, double domain_max) {
    if (p <= 0.0) throw std::invalid_argument("power exponent must be positive");
    if (domain_max <= 0.0) throw std::invalid_argument("domain_max must be positive");
    IndexFunction f;
    f.kind_ = Kind::Power;
    f.p_ = p;
    f.domain_max_ = domain_max;
    return f;
}

IndexFunction IndexFunction::log_power(double nu, double domain_max) {
    if (nu <= 0.0) throw std::invalid_argument("log_power exponent must be positive");
    if (domain_max <= 0.0) throw std::invalid_argument("domain_max must be positive");
    IndexFunction f;
    f.kind_ = Kind::LogPower;
    f.nu_ = nu;
    f.domain_max_ = domain_max;
    return f;
}

IndexFunction IndexFunction::sublinear_benchmark(double q, double domain_max) {
    if (q <= 0.0 || q >= 1.0)
        throw std::invalid_argument("sublinear benchmark needs q in (0,1)");
    if (domain_max <= 0.0) throw std::invalid_argument("domain_max must be positive");
    IndexFunction f;
    f.kind_ = Kind::SublinearBenchmark;
    f.q_ = q;
    f.p_ = (1.0 - q) / (2.0 * q);
    f.domain_max_ = domain_max;
    return f;
}

IndexFunction IndexFunction::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("tabulated index function needs >= 2 samples");
    IndexFunction f;
    f.kind_ = Kind::Tabulated;
    f.log_t_.reserve(samples.size());
    f.log_phi_.reserve(samples.size());
    double prev_t = 0.0, prev_phi = 0.0;
    for (const auto& [t, phi] : samples) {
        if (t <= 0.0 || phi <= 0.0)
            throw std::invalid_argument("tabulated samples must be positive");
        if (t <= prev_t)
            throw std::invalid_argument(
                "tabulated abscissae must be strictly increasing (equal t values "
                "would make Theta ambiguous)");
        if (phi < prev_phi)
            throw std::invalid_argument("tabulated values must be non-decreasing");
        f.log_t_.push_back(std::log(t));
        f.log_phi_.push_back(std::log(phi));
        prev_t = t;
        prev_phi = phi;
    }
    f.domain_max_ = samples.back().first;
    return f;
}

void IndexFunction::check_domain(double t) const {
    if (t < 0.0) throw std::domain_error("index function argument must be >= 0");
    if (t > domain_max_ * (1.0 + 1e-12))
        throw std::domain_error("index function argument exceeds domain_max");
}

double IndexFunction::phi_unchecked(double t) const {
    if (t == 0.0) return 0.0;
    switch (kind_) {
        case Kind::Power:
        case Kind::SublinearBenchmark:
            return std::pow(t, p_);
        case Kind::LogPower:
            return std::pow(std::log1p(1.0 / t), -nu_);
        case Kind::Tabulated: {
            const double lt = std::log(t);
            // piecewise linear in (log t, log phi); first-segment slope
            // extrapolated below the grid
            std::size_t hi = 1;
            if (lt > log_t_.front()) {
                auto it = std::lower_bound(log_t_.begin(), log_t_.end(), lt);
                hi = std::min<std::size_t>(
                    std::max<std::size_t>(1, it - log_t_.begin()), log_t_.size() - 1);
            }
            const std::size_t lo = hi - 1;
            const double dt = log_t_[hi] - log_t_[lo];
            const double slope = (log_phi_[hi] - log_phi_[lo]) / dt;
            return std::exp(log_phi_[lo] + slope * (lt - log_t_[lo]));
        }
    }
    return 0.0;
}

double IndexFunction::phi(double t) const {
    check_domain(t);
    return phi_unchecked(t);
}

double IndexFunction::theta(double t) const {
    check_domain(t);
    if (t == 0.0) return 0.0;
    return std::sqrt(t) * phi_unchecked(t);
}

double IndexFunction::power_exponent() const {
    if (kind_ != Kind::Power && kind_ != Kind::SublinearBenchmark)
        throw std::logic_error("power_exponent only defined for power-law kinds");
    return p_;
}

double IndexFunction::invert_theta(double delta) const {
    if (delta <= 0.0) throw std::domain_error("invert_theta needs delta > 0");
    const double theta_max = theta(domain_max_);
    if (delta > theta_max * (1.0 + kRelTol))
        throw std::range_error("delta exceeds Theta(domain_max)");

    if (kind_ == Kind::Power || kind_ == Kind::SublinearBenchmark) {
        // Theta(t) = t^{p + 1/2}
        return std::pow(delta, 2.0 / (2.0 * p_ + 1.0));
    }

    // Bisection on log t; Theta is strictly increasing on the bracket.
    const double t_floor = std::max(1e-300 * domain_max_,
                                    std::numeric_limits<double>::min());
    double lo = std::log(t_floor);
    double hi = std::log(domain_max_);
    if (kind_ == Kind::Tabulated) {
        // extrapolation below the grid keeps Theta monotone, so the full
        // bracket stays valid
    }
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < kMaxIter; ++it) {
        mid = 0.5 * (lo + hi);
        const double val = theta(std::exp(mid));
        if (std::abs(val - delta) <= std::max(kRelTol * delta, kAbsTol)) break;
        if (val < delta)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(mid);
}

std::string IndexFunction::describe() const {
    switch (kind_) {
        case Kind::Power:
            return "power(p=" + std::to_string(p_) + ")";
        case Kind::LogPower:
            return "log_power(nu=" + std::to_string(nu_) + ")";
        case Kind::SublinearBenchmark:
            return "sublinear_benchmark(q=" + std::to_string(q_) + ")";
        case Kind::Tabulated:
            return "tabulated(" + std::to_string(log_t_.size()) + " samples)";
    }
    return "?";
}

}  // namespace ipt
