#include "betamedian/analysis.hpp"

#include "betamedian/errors.hpp"
#include "betamedian/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <string>
#include <thread>
#include <utility>

namespace betamedian {

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string where(double a, double b, double p, double d) {
    return " [grid point a=" + num(a) + ", b=" + num(b) + ", p=" + num(p) + ", d=" + num(d) + "]";
}

unsigned worker_count(const AnalysisOptions& options, std::size_t rows) {
    unsigned n = options.threads;
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(rows, 1)));
}

// Fills out[i] = eval(i) for every i. Each worker owns a contiguous block, so
// results are placed by index. If several rows fail, the lowest index wins.
template <class Eval>
void evaluate_rows(std::vector<ErrorRecord>& out, const AnalysisOptions& options, Eval eval) {
    const std::size_t n = out.size();
    const unsigned workers = worker_count(options, n);
    std::vector<std::exception_ptr> failures(n);

    const auto run_block = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                out[i] = eval(i);
            } catch (...) {
                failures[i] = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        run_block(0, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(n, w * chunk);
            const std::size_t end = std::min(n, begin + chunk);
            pool.emplace_back(run_block, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
}

// Re-throws a solver or domain failure with the grid point appended.
template <class F>
ErrorRecord annotated(double a, double b, double p, double d, F compute) {
    try {
        return compute();
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what() + where(a, b, p, d), e.bracket_lo(), e.bracket_hi(),
                               e.iterations());
    } catch (const DomainError& e) {
        throw DomainError(e.what() + where(a, b, p, d));
    }
}

void check_probability(double p, const char* op) {
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
        throw DomainError(std::string(op) + ": p must lie in (0, 1), got " + num(p));
    }
}

void check_shapes(std::span<const Real> shapes, const char* op) {
    if (shapes.empty()) throw DomainError(std::string(op) + ": shape list is empty");
    for (std::size_t i = 0; i < shapes.size(); ++i) {
        if (!std::isfinite(shapes[i]) || shapes[i] <= 0.0) {
            throw DomainError(std::string(op) + ": shapes must be finite and > 0, got " + num(shapes[i]));
        }
        if (i > 0 && shapes[i] <= shapes[i - 1]) {
            throw DomainError(std::string(op) + ": shapes must be strictly increasing, got " +
                              num(shapes[i - 1]) + " then " + num(shapes[i]));
        }
    }
}

// The larger shape from the smaller one and the mean, as in the fixed-mean
// constructions: b = a (1 - p) / p for p <= 1/2, mirrored otherwise.
std::pair<double, double> shapes_from_mean(double small, double p) {
    if (p <= 0.5) return {small, small * (1.0 - p) / p};
    return {small * p / (1.0 - p), small};
}

ErrorRecord error_row(const BetaParams& params, double p, Offset d, const SolverConfig& cfg) {
    ErrorRecord r;
    r.a = params.a();
    r.b = params.b();
    r.p = p;
    r.d = d.value();
    const double approx = approx_median(params, d);
    const double exact = beta_median_exact(params, cfg);
    r.approx = approx;
    r.exact = exact;
    r.rel_err = (approx - exact) / exact;
    return r;
}

}  // namespace

void GridSpec::validate() const {
    if (p_values.empty()) throw DomainError("GridSpec: p_values is empty");
    if (d_values.empty()) throw DomainError("GridSpec: d_values is empty");
    for (double p : p_values) check_probability(p, "GridSpec");
    check_shapes(shape_values, "GridSpec");
}

std::vector<Real> log_spaced(Real lo, Real hi, int n) {
    if (!(lo > 0.0) || !std::isfinite(hi) || !(hi > lo)) {
        throw DomainError("log_spaced: requires 0 < lo < hi, got lo=" + num(lo) + ", hi=" + num(hi));
    }
    if (n < 2) throw DomainError("log_spaced: requires at least 2 points, got " + std::to_string(n));
    std::vector<Real> out(static_cast<std::size_t>(n));
    const double l0 = std::log(lo);
    const double step = (std::log(hi) - l0) / (n - 1);
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(l0 + i * step);
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<Real> log_spaced_per_decade(Real lo, Real hi, int per_decade) {
    if (per_decade < 1) {
        throw DomainError("log_spaced_per_decade: per_decade must be >= 1, got " +
                          std::to_string(per_decade));
    }
    if (!(lo > 0.0) || !std::isfinite(hi) || !(hi > lo)) {
        throw DomainError("log_spaced_per_decade: requires 0 < lo < hi, got lo=" + num(lo) +
                          ", hi=" + num(hi));
    }
    const double decades = std::log10(hi / lo);
    const int intervals = std::max(1, static_cast<int>(std::ceil(decades * per_decade - 1e-9)));
    return log_spaced(lo, hi, intervals + 1);
}

std::vector<Probability> interior_means(int n) {
    if (n < 1) throw DomainError("interior_means: n must be >= 1, got " + std::to_string(n));
    std::vector<Probability> out(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) out[static_cast<std::size_t>(i - 1)] = double(i) / double(n + 1);
    return out;
}

std::vector<Probability> figure_mean_values() { return {0.499, 0.49, 0.45, 0.35, 0.25, 0.001}; }

GridSpec default_relative_error_grid() {
    return GridSpec{figure_mean_values(), log_spaced_per_decade(1.0, 1024.0, 25), {Offset::one_third()}};
}

std::vector<Offset> figure_offsets() {
    return {Offset::zero(), Offset(0.25), Offset(0.3), Offset::one_third(), Offset(0.4), Offset(0.5)};
}

std::vector<ErrorRecord> relative_error_curves(const GridSpec& grid, const AnalysisOptions& options) {
    grid.validate();
    options.solver.validate();
    const std::size_t np = grid.p_values.size();
    const std::size_t na = grid.shape_values.size();
    std::vector<ErrorRecord> out(grid.d_values.size() * np * na);
    evaluate_rows(out, options, [&](std::size_t i) {
        const Offset d = grid.d_values[i / (np * na)];
        const double p = grid.p_values[(i / na) % np];
        const double a = grid.shape_values[i % na];
        const double b = a * (1.0 - p) / p;
        return annotated(a, b, p, d.value(),
                         [&] { return error_row(BetaParams(a, b), p, d, options.solver); });
    });
    return out;
}

std::vector<ErrorRecord> relative_error_over_means(Real min_shape, std::span<const Probability> p_grid,
                                                   Offset d, const AnalysisOptions& options) {
    constexpr const char* op = "relative_error_over_means";
    options.solver.validate();
    if (!std::isfinite(min_shape) || !(min_shape > d.value())) {
        throw DomainError(std::string(op) + ": requires min_shape > d, got min_shape=" + num(min_shape) +
                          ", d=" + num(d.value()));
    }
    if (p_grid.empty()) throw DomainError(std::string(op) + ": p grid is empty");
    for (double p : p_grid) check_probability(p, op);

    std::vector<ErrorRecord> out(p_grid.size());
    evaluate_rows(out, options, [&](std::size_t i) {
        const double p = p_grid[i];
        const auto [a, b] = shapes_from_mean(min_shape, p);
        return annotated(a, b, p, d.value(),
                         [&] { return error_row(BetaParams(a, b), p, d, options.solver); });
    });
    return out;
}

std::vector<ErrorRecord> scaled_abs_error_curves(Probability p, std::span<const Real> shape_values,
                                                 std::span<const Offset> d_values,
                                                 const AnalysisOptions& options) {
    constexpr const char* op = "scaled_abs_error_curves";
    options.solver.validate();
    check_probability(p, op);
    if (p >= 0.5) throw DomainError(std::string(op) + ": requires p < 0.5, got " + num(p));
    check_shapes(shape_values, op);
    if (d_values.empty()) throw DomainError(std::string(op) + ": d list is empty");
    double max_d = 0.0;
    for (const Offset& d : d_values) max_d = std::max(max_d, d.value());
    if (!(shape_values.front() > max_d)) {
        throw DomainError(std::string(op) + ": requires min(shape) > max(d), got min(shape)=" +
                          num(shape_values.front()) + ", max(d)=" + num(max_d));
    }

    const std::size_t na = shape_values.size();
    std::vector<ErrorRecord> out(d_values.size() * na);
    evaluate_rows(out, options, [&](std::size_t i) {
        const Offset d = d_values[i / na];
        const double a = shape_values[i % na];
        const double b = a * (1.0 - p) / p;
        return annotated(a, b, p, d.value(), [&] {
            ErrorRecord r = error_row(BetaParams(a, b), p, d, options.solver);
            const double abs_err = std::fabs(*r.approx - *r.exact);
            r.underflow = abs_err == 0.0;
            if (abs_err > 0.0) r.log_scaled_abs_err = std::log(abs_err / p);
            return r;
        });
    });
    return out;
}

std::vector<ErrorRecord> tail_probability_grid(std::span<const Real> shape_values,
                                               std::span<const Probability> p_values,
                                               const AnalysisOptions& options) {
    constexpr const char* op = "tail_probability_grid";
    check_shapes(shape_values, op);
    if (!(shape_values.front() > kOneThird)) {
        throw DomainError(std::string(op) + ": requires min shape > 1/3, got " + num(shape_values.front()));
    }
    if (p_values.empty()) throw DomainError(std::string(op) + ": p list is empty");
    for (double p : p_values) check_probability(p, op);

    const std::size_t np = p_values.size();
    std::vector<ErrorRecord> out(shape_values.size() * np);
    evaluate_rows(out, options, [&](std::size_t i) {
        const double s = shape_values[i / np];
        const double p = p_values[i % np];
        const auto [a, b] = shapes_from_mean(s, p);
        return annotated(a, b, p, kOneThird, [&] {
            const BetaParams params(a, b);
            ErrorRecord r;
            r.a = params.a();
            r.b = params.b();
            r.p = p;
            r.d = kOneThird;
            const double m = approx_median_default(params);
            r.approx = m;
            r.tail_prob = reg_inc_beta(m, params.a(), params.b());
            return r;
        });
    });
    return out;
}

const char* to_string(RateMetric metric) noexcept {
    switch (metric) {
        case RateMetric::standardized:
            return "standardized";
        case RateMetric::absolute:
            return "absolute";
    }
    return "unknown";
}

RateFitResult rate_fit(Probability p, Real a_min, Real a_max, int n_points, Offset d, RateMetric metric,
                       const AnalysisOptions& options) {
    constexpr const char* op = "rate_fit";
    options.solver.validate();
    check_probability(p, op);
    if (p >= 0.5) throw DomainError(std::string(op) + ": requires p < 0.5, got " + num(p));
    if (!(a_min >= 1.0) || !std::isfinite(a_max) || !(a_max > a_min)) {
        throw DomainError(std::string(op) + ": requires 1 <= a_min < a_max, got a_min=" + num(a_min) +
                          ", a_max=" + num(a_max));
    }
    if (n_points < 5) {
        throw DomainError(std::string(op) + ": requires n_points >= 5, got " + std::to_string(n_points));
    }

    const std::vector<Real> shapes = log_spaced(a_min, a_max, n_points);
    std::vector<ErrorRecord> rows(shapes.size());
    evaluate_rows(rows, options, [&](std::size_t i) {
        const double a = shapes[i];
        const double b = a * (1.0 - p) / p;
        return annotated(a, b, p, d.value(), [&] {
            const BetaParams params(a, b);
            ErrorRecord r;
            r.a = a;
            r.b = b;
            r.p = p;
            r.d = d.value();
            const double approx = approx_median(params, d);
            r.approx = approx;
            if (metric == RateMetric::absolute) {
                r.exact = beta_median_exact(params, options.solver);
            } else {
                const double offset = detail::reg_inc_beta_minus(approx, a, b, 0.5);
                r.tail_prob = 0.5 + offset;
                r.log_scaled_abs_err = detail::normal_quantile_from_half(offset);
            }
            return r;
        });
    });

    std::vector<double> xs;
    std::vector<double> ys;
    std::optional<Real> last;
    for (const ErrorRecord& r : rows) {
        const double err = metric == RateMetric::absolute ? std::fabs(*r.approx - *r.exact)
                                                          : std::fabs(*r.log_scaled_abs_err);
        last = err > 0.0 ? std::optional<Real>(err) : std::nullopt;
        if (!(err > 0.0)) continue;
        xs.push_back(std::log(r.a));
        ys.push_back(std::log(err));
    }
    if (xs.size() < 5) {
        throw FitError(std::string(op) + ": only " + std::to_string(xs.size()) +
                       " points have a nonzero error; at least 5 are required (p=" + num(p) +
                       ", d=" + num(d.value()) + ")");
    }

    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    RateFitResult fit;
    fit.d = d;
    fit.p = p;
    fit.metric = metric;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fit.max_abs_residual =
            std::max(fit.max_abs_residual, std::fabs(ys[i] - (fit.intercept + fit.slope * xs[i])));
    }
    fit.points_used = static_cast<int>(xs.size());
    fit.error_at_a_max = last;
    return fit;
}

}  // namespace betamedian
