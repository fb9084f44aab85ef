#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipt {

/// Thrown when a request would require materializing or enumerating more
/// values than the configured limit allows.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Result of counting singular values above a threshold. Exact when the count
/// fits under the enumeration cap, otherwise only its natural logarithm is
/// carried (analytic kinds can certify counts like e^100 without enumerating).
struct CountResult {
    bool exact = true;
    long long count = 0;     // valid when exact
    double log_count = 0.0;  // valid when !exact, natural log
    bool cap_hit = false;

    static CountResult make_exact(long long n, bool cap = false) {
        return CountResult{true, n, 0.0, cap};
    }
    static CountResult log_scale(double log_n) {
        return CountResult{false, 0, log_n, true};
    }
    /// log of the count; -inf for Exact(0).
    double log_value() const;
};

/// Leading constant c(t) of a power-decay family, evaluated at t = 1/d.
class LeadingConstant {
public:
    enum class Kind { Constant, Linear, SublinearPower };

    static LeadingConstant constant(double cbar);
    /// c(t) = cbar * t
    static LeadingConstant linear(double cbar);
    /// c(t) = cbar * t^q, 0 < q < 1
    static LeadingConstant sublinear_power(double q, double cbar = 1.0);

    double operator()(double t) const;
    Kind kind() const { return kind_; }
    std::string describe() const;

private:
    Kind kind_ = Kind::Constant;
    double cbar_ = 1.0;
    double q_ = 0.5;
};

/// A non-increasing positive sequence sigma_1 >= sigma_2 >= ... used as the
/// univariate factor of tensor-product spectra. length < 0 means infinite.
class UnivariateSeq {
public:
    UnivariateSeq(std::function<double(long long)> f, long long length = -1)
        : f_(std::move(f)), length_(length) {}

    static UnivariateSeq from_values(std::vector<double> vals);

    double operator()(long long j) const { return f_(j); }
    long long length() const { return length_; }

private:
    std::function<double(long long)> f_;
    long long length_;
};

/// Singular-value sequence s_1 >= s_2 >= ... -> 0 of one operator A_d.
/// Immutable value type (cheap to copy, shared implementation).
class Spectrum {
public:
    /// s_j = c(1/d) * j^{-a/d}
    static Spectrum power_decay(double a, int d, LeadingConstant c);

    /// s_j = 1/log(j+1)
    static Spectrum log_decay();

    /// Non-increasing rearrangement of the d-th tensor power of `uni`.
    static Spectrum tensor_product(UnivariateSeq uni, int d,
                                   long long materialize_limit = 1000000);

    /// Tensor power of the univariate integration spectrum
    /// sigma_j = 2/((2j-1)pi).
    static Spectrum mixed_integration(int d, long long materialize_limit = 1000000);

    /// s_j = cbar * (e/(d-1))^{d-1} * log^{d-1}(j)/j for j >= 2, replaced by
    /// its least non-increasing majorant (constant cbar up to j ~ e^{d-1}).
    static Spectrum lower_bound_speed(double cbar, int d);

    /// Finite explicit list; zero_tail marks a genuinely finite-rank operator,
    /// otherwise values past the list are unavailable (capacity error).
    static Spectrum explicit_values(std::vector<double> values, bool zero_tail);

    /// s_j, 1-based. Tensor kinds materialize lazily up to their limit.
    double value(long long j) const;

    /// N(tau) = #{ j : s_j > tau }. Exact when the count is <= cap; analytic
    /// kinds return LogScale past the cap, tensor kinds throw capacity_error.
    CountResult count_above(double tau, long long cap = 1000000000LL) const;

    bool finite_rank() const;
    int dimension() const;
    std::string describe() const;

private:
    struct Impl;
    explicit Spectrum(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// First K values of the sorted tensor-power multiset of `uni`, largest first.
/// Best-first search over the index lattice; every lattice point is generated
/// exactly once via its canonical predecessor.
std::vector<double> tensor_rearrange(const UnivariateSeq& uni, int d, long long K,
                                     long long materialize_limit = 1000000);

/// Median of s_j * j / log^{d-1}(j) over j in [j_min, j_max] for the
/// mixed-integration spectrum: an empirical estimate of the leading constant
/// C(d) of its s_j ~ C(d) log^{d-1}(j)/j asymptotics. Requires >= 10 samples.
double estimate_leading_constant(int d, long long j_min, long long j_max);

}  // namespace ipt
