#include "ipt/spectrum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <queue>

namespace ipt {

double CountResult::log_value() const {
    if (!exact) return log_count;
    if (count <= 0) return -std::numeric_limits<double>::infinity();
    return std::log(static_cast<double>(count));
}

// ---------------------------------------------------------------- LeadingConstant

LeadingConstant LeadingConstant::constant(double cbar) {
    if (cbar <= 0.0) throw std::invalid_argument("leading constant must be positive");
    LeadingConstant c;
    c.kind_ = Kind::Constant;
    c.cbar_ = cbar;
    return c;
}

LeadingConstant LeadingConstant::linear(double cbar) {
    if (cbar <= 0.0) throw std::invalid_argument("leading constant must be positive");
    LeadingConstant c;
    c.kind_ = Kind::Linear;
    c.cbar_ = cbar;
    return c;
}

LeadingConstant LeadingConstant::sublinear_power(double q, double cbar) {
    if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("sublinear power needs q in (0,1)");
    if (cbar <= 0.0) throw std::invalid_argument("leading constant must be positive");
    LeadingConstant c;
    c.kind_ = Kind::SublinearPower;
    c.q_ = q;
    c.cbar_ = cbar;
    return c;
}

double LeadingConstant::operator()(double t) const {
    if (t <= 0.0) throw std::domain_error("leading constant evaluated at t <= 0");
    switch (kind_) {
        case Kind::Constant: return cbar_;
        case Kind::Linear: return cbar_ * t;
        case Kind::SublinearPower: return cbar_ * std::pow(t, q_);
    }
    return cbar_;
}

std::string LeadingConstant::describe() const {
    switch (kind_) {
        case Kind::Constant: return "constant(" + std::to_string(cbar_) + ")";
        case Kind::Linear: return "linear(" + std::to_string(cbar_) + ")";
        case Kind::SublinearPower:
            return "sublinear(q=" + std::to_string(q_) + ", cbar=" + std::to_string(cbar_) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- UnivariateSeq

UnivariateSeq UnivariateSeq::from_values(std::vector<double> vals) {
    if (vals.empty()) throw std::invalid_argument("empty univariate sequence");
    double prev = std::numeric_limits<double>::infinity();
    for (double v : vals) {
        if (v <= 0.0 || v > prev)
            throw std::invalid_argument("univariate sequence must be positive non-increasing");
        prev = v;
    }
    auto n = static_cast<long long>(vals.size());
    auto data = std::make_shared<std::vector<double>>(std::move(vals));
    return UnivariateSeq(
        [data](long long j) { return j <= static_cast<long long>(data->size()) ? (*data)[j - 1] : 0.0; },
        n);
}

namespace {

constexpr double kPi = std::numbers::pi;

// sigma_j of the univariate integration operator on (0,1)
double mixed_sigma(long long j) { return 2.0 / ((2.0 * j - 1.0) * kPi); }

// largest k with u(k) > tau, by doubling + bisection; 0 if none.
long long uni_count_above(const UnivariateSeq& u, double tau, long long hard_limit) {
    if (!(u(1) > tau)) return 0;
    long long lo = 1, hi = 2;
    while (u(hi) > tau) {
        lo = hi;
        if (hi > hard_limit) throw capacity_error("univariate count exceeds cap");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const long long mid = lo + (hi - lo) / 2;
        if (u(mid) > tau)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Adjust an analytically predicted count against the exact sequence.
template <class Value>
long long polish_count(Value&& value, long long n, double tau) {
    if (n < 0) n = 0;
    while (value(n + 1) > tau) ++n;
    while (n > 0 && !(value(n) > tau)) --n;
    return n;
}

}  // namespace

// ---------------------------------------------------------------- Spectrum impl

struct Spectrum::Impl {
    enum class Kind { PowerDecay, LogDecay, Tensor, LowerBoundSpeed, Explicit };

    Kind kind = Kind::LogDecay;

    // PowerDecay
    double a = 1.0;
    int d = 1;
    LeadingConstant c = LeadingConstant::constant(1.0);
    double c_val = 1.0;  // c(1/d)

    // Tensor (d >= 1); mixed integration is a tensor of the closed-form factor
    UnivariateSeq uni{[](long long) { return 0.0; }, 0};
    bool mixed = false;
    long long limit = 1000000;
    mutable std::vector<double> cache;
    mutable std::mutex cache_mu;

    // LowerBoundSpeed
    double cbar = 1.0;
    long long j_peak = 2;
    double peak_coeff = 1.0;  // cbar * (e/(d-1))^{d-1}

    // Explicit
    std::vector<double> values;
    bool zero_tail = false;

    double value(long long j) const;
    CountResult count_above(double tau, long long cap) const;
    double lbs_raw(double j) const;
    void materialize(long long upto) const;
    long long tensor_count(double tau, long long cap) const;
};

double Spectrum::Impl::lbs_raw(double j) const {
    if (j <= static_cast<double>(j_peak)) return cbar;
    return peak_coeff * std::pow(std::log(j), d - 1) / j;
}

void Spectrum::Impl::materialize(long long upto) const {
    std::lock_guard<std::mutex> lock(cache_mu);
    if (static_cast<long long>(cache.size()) >= upto) return;
    long long target = std::min<long long>(limit, std::max<long long>(2 * upto, 1024));
    cache = tensor_rearrange(uni, d, target, limit);
}

double Spectrum::Impl::value(long long j) const {
    if (j < 1) throw std::domain_error("singular value index must be >= 1");
    switch (kind) {
        case Kind::PowerDecay:
            return c_val * std::pow(static_cast<double>(j), -a / d);
        case Kind::LogDecay:
            return 1.0 / std::log(static_cast<double>(j) + 1.0);
        case Kind::Tensor:
            if (d == 1) {
                const double v = uni(j);
                if (v <= 0.0)
                    throw capacity_error("index beyond univariate sequence length");
                return v;
            }
            if (j > limit)
                throw capacity_error(
                    "index beyond tensor materialization limit; use count_above");
            materialize(j);
            if (j > static_cast<long long>(cache.size()))
                throw capacity_error("tensor multiset exhausted before requested index");
            return cache[j - 1];
        case Kind::LowerBoundSpeed:
            return lbs_raw(static_cast<double>(j));
        case Kind::Explicit:
            if (j <= static_cast<long long>(values.size())) return values[j - 1];
            if (zero_tail) return 0.0;
            throw capacity_error("explicit spectrum has no value at this index");
    }
    return 0.0;
}

long long Spectrum::Impl::tensor_count(double tau, long long cap) const {
    const double sigma1 = uni(1);
    // head[m] = sigma1^m, the largest product the last m factors can contribute
    std::vector<double> head(d, 1.0);
    for (int m = 1; m < d; ++m) head[m] = head[m - 1] * sigma1;

    long long total = 0;
    // Depth-first over index prefixes; prod is the left-to-right product of the
    // chosen factors, so the final comparison matches materialized values bit
    // for bit.
    auto rec = [&](auto&& self, int dims_left, double prod) -> void {
        if (dims_left == 1) {
            // largest k with prod * u(k) > tau
            if (!(prod * uni(1) > tau)) return;
            long long lo = 1, hi = 2;
            while (prod * uni(hi) > tau) {
                lo = hi;
                if (hi > cap) throw capacity_error("tensor count exceeds cap");
                hi *= 2;
            }
            while (hi - lo > 1) {
                const long long mid = lo + (hi - lo) / 2;
                if (prod * uni(mid) > tau)
                    lo = mid;
                else
                    hi = mid;
            }
            total += lo;
            if (total > cap) throw capacity_error("tensor count exceeds cap");
            return;
        }
        for (long long k = 1;; ++k) {
            const double s = uni(k);
            if (!(prod * s * head[dims_left - 1] > tau)) break;
            self(self, dims_left - 1, prod * s);
        }
    };
    if (d == 1) return uni_count_above(uni, tau, cap);
    rec(rec, d, 1.0);
    return total;
}

CountResult Spectrum::Impl::count_above(double tau, long long cap) const {
    if (tau <= 0.0) throw std::domain_error("count_above needs tau > 0");
    switch (kind) {
        case Kind::PowerDecay: {
            if (!(c_val > tau)) return CountResult::make_exact(0);
            const double log_x = (d / a) * std::log(c_val / tau);
            if (log_x > std::log(static_cast<double>(cap) + 2.0))
                return CountResult::log_scale(log_x);
            const auto guess = static_cast<long long>(std::floor(std::exp(log_x)));
            return CountResult::make_exact(
                polish_count([this](long long j) { return value(j); }, guess, tau));
        }
        case Kind::LogDecay: {
            // 1/log(j+1) > tau  <=>  j + 1 < e^{1/tau}
            const double log_x = 1.0 / tau;
            if (log_x > std::log(static_cast<double>(cap) + 2.0)) {
                // log(e^{1/tau} - 1)
                return CountResult::log_scale(log_x + std::log1p(-std::exp(-log_x)));
            }
            const auto guess = static_cast<long long>(std::floor(std::exp(log_x))) - 1;
            return CountResult::make_exact(
                polish_count([this](long long j) { return value(j); }, guess, tau));
        }
        case Kind::Tensor: {
            if (mixed && d == 1) {
                // sigma_j > tau  <=>  j < 1/(pi tau) + 1/2
                const double x = 1.0 / (kPi * tau) + 0.5;
                if (x > static_cast<double>(cap) + 2.0)
                    return CountResult::log_scale(std::log(x));
                const auto guess = static_cast<long long>(std::floor(x));
                return CountResult::make_exact(
                    polish_count([this](long long j) { return uni(j); }, guess, tau));
            }
            return CountResult::make_exact(tensor_count(tau, cap));
        }
        case Kind::LowerBoundSpeed: {
            if (!(cbar > tau)) return CountResult::make_exact(0);
            // doubling on the continuous majorant, then integer polish
            double hi = static_cast<double>(j_peak) + 1.0;
            while (lbs_raw(hi) > tau) {
                hi *= 2.0;
                if (hi > 1e300) throw std::domain_error("lower-bound-speed count diverged");
            }
            // the doubling overshoots by up to 2x, so bisect before deciding
            // whether the crossing is enumerable
            double lo = std::max(1.0, hi / 2.0);
            for (int it = 0; it < 200; ++it) {
                const double mid = std::sqrt(lo * hi);
                if (lbs_raw(mid) > tau)
                    lo = mid;
                else
                    hi = mid;
            }
            if (lo > static_cast<double>(cap))
                return CountResult::log_scale(std::log(lo));
            return CountResult::make_exact(
                polish_count([this](long long j) { return value(j); },
                             static_cast<long long>(lo), tau));
        }
        case Kind::Explicit: {
            long long n = 0;
            for (double v : values) {
                if (v > tau)
                    ++n;
                else
                    break;
            }
            if (n == static_cast<long long>(values.size()) && !zero_tail)
                throw capacity_error("explicit spectrum exhausted while counting");
            return CountResult::make_exact(n);
        }
    }
    return CountResult::make_exact(0);
}

// ---------------------------------------------------------------- constructors

Spectrum Spectrum::power_decay(double a, int d, LeadingConstant c) {
    if (a <= 0.0) throw std::invalid_argument("power decay needs a > 0");
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::PowerDecay;
    impl->a = a;
    impl->d = d;
    impl->c = c;
    impl->c_val = c(1.0 / d);
    return Spectrum(std::move(impl));
}

Spectrum Spectrum::log_decay() {
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::LogDecay;
    impl->d = 1;
    return Spectrum(std::move(impl));
}

Spectrum Spectrum::tensor_product(UnivariateSeq uni, int d, long long materialize_limit) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d > 8) throw std::invalid_argument("tensor spectra support d <= 8");
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Tensor;
    impl->uni = std::move(uni);
    impl->d = d;
    impl->limit = materialize_limit;
    return Spectrum(std::move(impl));
}

Spectrum Spectrum::mixed_integration(int d, long long materialize_limit) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    if (d > 8) throw std::invalid_argument("tensor spectra support d <= 8");
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Tensor;
    impl->uni = UnivariateSeq(&mixed_sigma);
    impl->d = d;
    impl->limit = materialize_limit;
    impl->mixed = true;
    return Spectrum(std::move(impl));
}

Spectrum Spectrum::lower_bound_speed(double cbar, int d) {
    if (cbar <= 0.0) throw std::invalid_argument("cbar must be positive");
    if (d < 2) throw std::invalid_argument("lower-bound-speed spectra need d >= 2");
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::LowerBoundSpeed;
    impl->d = d;
    impl->cbar = cbar;
    impl->peak_coeff = cbar * std::pow(std::numbers::e / (d - 1), d - 1);
    impl->j_peak = std::max<long long>(
        2, static_cast<long long>(std::floor(std::exp(static_cast<double>(d - 1)))));
    return Spectrum(std::move(impl));
}

Spectrum Spectrum::explicit_values(std::vector<double> values, bool zero_tail) {
    double prev = std::numeric_limits<double>::infinity();
    for (double v : values) {
        if (v <= 0.0 || v > prev)
            throw std::invalid_argument("explicit spectrum must be positive non-increasing");
        prev = v;
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = Impl::Kind::Explicit;
    impl->d = 1;
    impl->values = std::move(values);
    impl->zero_tail = zero_tail;
    return Spectrum(std::move(impl));
}

double Spectrum::value(long long j) const { return impl_->value(j); }

CountResult Spectrum::count_above(double tau, long long cap) const {
    return impl_->count_above(tau, cap);
}

bool Spectrum::finite_rank() const {
    return impl_->kind == Impl::Kind::Explicit && impl_->zero_tail;
}

int Spectrum::dimension() const { return impl_->d; }

std::string Spectrum::describe() const {
    switch (impl_->kind) {
        case Impl::Kind::PowerDecay:
            return "power_decay(a=" + std::to_string(impl_->a) +
                   ", d=" + std::to_string(impl_->d) + ", c=" + impl_->c.describe() + ")";
        case Impl::Kind::LogDecay:
            return "log_decay";
        case Impl::Kind::Tensor:
            return (impl_->mixed ? std::string("mixed_integration(d=")
                                 : std::string("tensor_product(d=")) +
                   std::to_string(impl_->d) + ")";
        case Impl::Kind::LowerBoundSpeed:
            return "lower_bound_speed(cbar=" + std::to_string(impl_->cbar) +
                   ", d=" + std::to_string(impl_->d) + ")";
        case Impl::Kind::Explicit:
            return "explicit(" + std::to_string(impl_->values.size()) + " values)";
    }
    return "?";
}

// ---------------------------------------------------------------- rearrangement

std::vector<double> tensor_rearrange(const UnivariateSeq& uni, int d, long long K,
                                     long long materialize_limit) {
    if (d < 1 || d > 8) throw std::invalid_argument("tensor_rearrange needs 1 <= d <= 8");
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (K > materialize_limit)
        throw capacity_error("requested prefix exceeds materialization limit");

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(K));

    if (d == 1) {
        for (long long j = 1; j <= K; ++j) {
            const double v = uni(j);
            if (v <= 0.0) break;
            out.push_back(v);
        }
        return out;
    }

    struct Node {
        double val;
        std::array<int32_t, 8> idx;
        bool operator<(const Node& o) const { return val < o.val; }
    };

    auto product_of = [&](const std::array<int32_t, 8>& idx) {
        double p = uni(idx[0]);
        for (int i = 1; i < d; ++i) p *= uni(idx[i]);
        return p;
    };

    const long long uni_len = uni.length();
    std::priority_queue<Node> heap;
    Node root{};
    root.idx.fill(1);
    root.val = product_of(root.idx);
    if (root.val <= 0.0) return out;
    heap.push(root);

    while (!heap.empty() && static_cast<long long>(out.size()) < K) {
        Node node = heap.top();
        heap.pop();
        out.push_back(node.val);
        // children via the canonical-predecessor rule: bump dimension i only
        // when every later index is still 1, so each tuple is generated once
        for (int i = d - 1; i >= 0; --i) {
            const long long next = node.idx[i] + 1;
            if (uni_len < 0 || next <= uni_len) {
                if (uni(next) > 0.0) {
                    Node child = node;
                    child.idx[i] = static_cast<int32_t>(next);
                    child.val = product_of(child.idx);
                    heap.push(child);
                }
            }
            if (node.idx[i] != 1) break;
        }
    }
    return out;
}

double estimate_leading_constant(int d, long long j_min, long long j_max) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    const long long lo = std::max<long long>(j_min, d >= 2 ? 2 : 1);
    if (j_max - lo + 1 < 10)
        throw std::invalid_argument("leading-constant estimate needs >= 10 sample points");

    std::vector<double> ratios;
    if (d == 1) {
        ratios.reserve(static_cast<std::size_t>(j_max - lo + 1));
        for (long long j = lo; j <= j_max; ++j) ratios.push_back(mixed_sigma(j) * j);
    } else {
        const std::vector<double> vals =
            tensor_rearrange(UnivariateSeq(&mixed_sigma), d, j_max, j_max);
        if (static_cast<long long>(vals.size()) < j_max)
            throw capacity_error("mixed-integration multiset exhausted");
        ratios.reserve(static_cast<std::size_t>(j_max - lo + 1));
        for (long long j = lo; j <= j_max; ++j) {
            const double lj = std::log(static_cast<double>(j));
            ratios.push_back(vals[j - 1] * j / std::pow(lj, d - 1));
        }
    }
    auto mid = ratios.begin() + ratios.size() / 2;
    std::nth_element(ratios.begin(), mid, ratios.end());
    return *mid;
}

}  // namespace ipt
