#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ipt {

/// Smoothness profile phi together with its companion Theta(t) = sqrt(t)*phi(t).
///
/// phi is continuous, non-decreasing, positive on (0, domain_max] and vanishes
/// at zero. Theta is strictly increasing there, which makes the numeric
/// inversion well posed. Instances are immutable and safe to share across
/// threads.
class IndexFunction {
public:
    enum class Kind { Power, LogPower, SublinearBenchmark, Tabulated };

    /// phi(t) = t^p, p > 0.
    static IndexFunction power(double p, double domain_max = 1e6);

    /// phi(t) = log(1 + 1/t)^{-nu}, nu > 0. Slowly vanishing profile.
    static IndexFunction log_power(double nu, double domain_max = 1e6);

    /// phi(t) = t^{(1-q)/(2q)} for q in (0,1); the benchmark smoothness
    /// matched to a sublinear leading constant c(t) = t^q.
    static IndexFunction sublinear_benchmark(double q, double domain_max = 1e6);

    /// Piecewise power-law interpolation through (t, phi(t)) samples with
    /// strictly increasing t > 0 and non-decreasing phi > 0. The domain is
    /// [0, t_last]; below t_first the first segment's slope is extrapolated.
    static IndexFunction tabulated(std::vector<std::pair<double, double>> samples);

    double phi(double t) const;
    double theta(double t) const;

    /// Solve Theta(t) = delta for t in (0, domain_max].
    /// Closed form for the power-law kinds, monotone bisection in log t
    /// otherwise. Throws std::domain_error for delta <= 0 and
    /// std::range_error for delta > Theta(domain_max).
    double invert_theta(double delta) const;

    double domain_max() const { return domain_max_; }
    Kind kind() const { return kind_; }

    /// Effective exponent for the power-law kinds (Power, SublinearBenchmark).
    double power_exponent() const;

    std::string describe() const;

private:
    IndexFunction() = default;

    double phi_unchecked(double t) const;
    void check_domain(double t) const;

    Kind kind_ = Kind::Power;
    double p_ = 1.0;   // exponent for Power / SublinearBenchmark
    double nu_ = 1.0;  // exponent for LogPower
    double q_ = 0.5;   // the q of SublinearBenchmark, kept for reporting
    double domain_max_ = 1e6;
    std::vector<double> log_t_;    // Tabulated: log of sample abscissae
    std::vector<double> log_phi_;  // Tabulated: log of sample values
};

}  // namespace ipt
