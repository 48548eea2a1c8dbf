#include "cli.hpp"

#include "betamedian/analysis.hpp"
#include "betamedian/approximation.hpp"
#include "betamedian/csv.hpp"
#include "betamedian/errors.hpp"
#include "betamedian/median_solver.hpp"
#include "betamedian/special_functions.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace betamedian::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text, const std::string& flag) {
    double v = 0.0;
    try {
        v = parse_real(text);
    } catch (const CsvError&) {
        throw UsageError(flag + ": not a number: '" + text + "'");
    }
    if (!std::isfinite(v)) throw UsageError(flag + ": value must be finite, got '" + text + "'");
    return v;
}

int parse_count(const std::string& text, const std::string& flag) {
    const double v = parse_number(text, flag);
    if (v != std::floor(v) || v < 1 || v > 1e7) {
        throw UsageError(flag + ": expected a positive integer, got '" + text + "'");
    }
    return static_cast<int>(v);
}

std::vector<double> parse_list(const std::vector<std::string>& items, const std::string& flag,
                               double (*one)(const std::string&, const std::string&)) {
    std::vector<double> out;
    out.reserve(items.size());
    for (const auto& s : items) out.push_back(one(s, flag));
    return out;
}

double parse_offset_flag(const std::string& text, const std::string& flag) {
    if (text == "1/3") return kOneThird;
    return parse_number(text, flag);
}

std::vector<Offset> to_offsets(const std::vector<double>& ds) {
    std::vector<Offset> out;
    out.reserve(ds.size());
    for (double d : ds) out.emplace_back(d);
    return out;
}

// Shape grid: --points total points if given, otherwise 25 per decade.
std::vector<Real> shape_grid(double lo, double hi, const std::string& points) {
    if (points.empty()) return log_spaced_per_decade(lo, hi, 25);
    return log_spaced(lo, hi, parse_count(points, "--points"));
}

}  // namespace

double parse_offset(const std::string& text) { return parse_offset_flag(text, "--d"); }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Beta distribution median: exact oracle, closed-form approximation and error grids",
                 "betamedian"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "betamedian 0.1.0");

    std::string out_path;
    std::string threads_text = "0";
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "Write output to PATH instead of standard output");
        sub->add_option("--threads", threads_text, "Worker threads for grids (0 = all cores)");
    };

    std::string a_text, b_text, x_text, d_text, p_text, method = "exact";
    std::string a_min_text, a_max_text, points_text, min_shape_text, p_points_text, metric = "standardized";
    std::vector<std::string> p_list, d_list;

    auto* median = app.add_subcommand("median", "Median of Beta(a, b)");
    median->add_option("--a", a_text, "Shape a")->required();
    median->add_option("--b", b_text, "Shape b")->required();
    median->add_option("--method", method, "exact | approx | special")
        ->check(CLI::IsMember({"exact", "approx", "special"}));
    median->add_option("--d", d_text, "Offset for --method approx (decimal or 1/3)");

    auto* cdf = app.add_subcommand("cdf", "Regularized incomplete beta I_x(a, b)");
    cdf->add_option("--a", a_text, "Shape a")->required();
    cdf->add_option("--b", b_text, "Shape b")->required();
    cdf->add_option("--x", x_text, "Point in [0, 1]")->required();

    auto* gmed = app.add_subcommand("gamma-median", "Median of the unit-scale Gamma(a)");
    gmed->add_option("--a", a_text, "Shape a")->required();
    gmed->add_option("--method", method, "exact | approx")->check(CLI::IsMember({"exact", "approx"}));

    auto* relerr = app.add_subcommand("grid-relerr", "Relative error at fixed means");
    relerr->add_option("--p", p_list, "Comma-separated means")->delimiter(',');
    relerr->add_option("--a-min", a_min_text, "Smallest a (default 1)");
    relerr->add_option("--a-max", a_max_text, "Largest a (default 1024)");
    relerr->add_option("--points", points_text, "Number of a values (default 25 per decade)");
    relerr->add_option("--d", d_list, "Comma-separated offsets (default 1/3)")->delimiter(',');

    auto* means = app.add_subcommand("grid-means", "Relative error over all means");
    means->add_option("--min-shape", min_shape_text, "Smaller shape")->required();
    means->add_option("--p-points", p_points_text, "Number of means i/(N+1) (default 99)");
    means->add_option("--d", d_text, "Offset (default 1/3)");

    auto* abserr = app.add_subcommand("curve-abserr", "Log scaled absolute error for several offsets");
    abserr->add_option("--p", p_text, "Mean (default 0.01)");
    abserr->add_option("--d", d_list, "Comma-separated offsets (default 0,0.25,0.3,1/3,0.4,0.5)")
        ->delimiter(',');
    abserr->add_option("--a-min", a_min_text, "Smallest a (default 1)");
    abserr->add_option("--a-max", a_max_text, "Largest a (default 4096)");
    abserr->add_option("--points", points_text, "Number of a values (default 25 per decade)");

    auto* tail = app.add_subcommand("grid-tail", "Tail probability at the approximate median");
    tail->add_option("--shape-min", a_min_text, "Smallest shape (default 1)");
    tail->add_option("--shape-max", a_max_text, "Largest shape (default 64)");
    tail->add_option("--points", points_text, "Number of shapes (default 25 per decade)");
    tail->add_option("--p-points", p_points_text, "Number of means i/(N+1) (default 19)");

    auto* rate = app.add_subcommand("rate-fit", "Fit the error decay rate in a");
    rate->add_option("--p", p_text, "Mean")->required();
    rate->add_option("--d", d_text, "Offset")->required();
    rate->add_option("--a-min", a_min_text, "Smallest a (default 8)");
    rate->add_option("--a-max", a_max_text, "Largest a (default 4096)");
    rate->add_option("--points", points_text, "Number of a values (default 10)");
    rate->add_option("--metric", metric, "standardized | absolute")
        ->check(CLI::IsMember({"standardized", "absolute"}));

    for (auto* sub : {median, cdf, gmed, relerr, means, abserr, tail, rate}) add_common(sub);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "betamedian: " << e.what() << '\n';
        return kUsage;
    }

    std::ostringstream buffer;
    try {
        const auto num = [](const std::string& t, const std::string& flag, double fallback) {
            return t.empty() ? fallback : parse_number(t, flag);
        };
        AnalysisOptions options;
        const double threads = parse_number(threads_text, "--threads");
        if (threads < 0 || threads != std::floor(threads) || threads > 4096) {
            throw UsageError("--threads: expected a non-negative integer, got '" + threads_text + "'");
        }
        options.threads = static_cast<unsigned>(threads);

        if (median->parsed()) {
            const BetaParams params(parse_number(a_text, "--a"), parse_number(b_text, "--b"));
            if (!d_text.empty() && method != "approx") throw UsageError("--d applies only to --method approx");
            double m = 0.0;
            if (method == "exact") {
                m = beta_median_exact(params);
            } else if (method == "approx") {
                const Offset d = d_text.empty() ? Offset::one_third() : Offset(parse_offset(d_text));
                m = approx_median(params, d);
            } else {
                const auto special = exact_median_special(params);
                if (!special) {
                    throw DomainError("median --method special: no closed form unless a = b, a = 1 or b = 1");
                }
                m = *special;
            }
            buffer << format_real(m) << '\n';
        } else if (cdf->parsed()) {
            buffer << format_real(reg_inc_beta(parse_number(x_text, "--x"), parse_number(a_text, "--a"),
                                               parse_number(b_text, "--b")))
                   << '\n';
        } else if (gmed->parsed()) {
            const double a = parse_number(a_text, "--a");
            buffer << format_real(method == "approx" ? gamma_median_approx(a) : gamma_median_exact(a)) << '\n';
        } else if (relerr->parsed()) {
            GridSpec grid;
            grid.p_values = p_list.empty() ? figure_mean_values() : parse_list(p_list, "--p", parse_number);
            grid.shape_values = shape_grid(num(a_min_text, "--a-min", 1.0), num(a_max_text, "--a-max", 1024.0),
                                           points_text);
            grid.d_values = d_list.empty() ? std::vector<Offset>{Offset::one_third()}
                                           : to_offsets(parse_list(d_list, "--d", parse_offset_flag));
            write_csv(buffer, relative_error_curves(grid, options));
        } else if (means->parsed()) {
            const int n = p_points_text.empty() ? 99 : parse_count(p_points_text, "--p-points");
            const Offset d = d_text.empty() ? Offset::one_third() : Offset(parse_offset(d_text));
            const auto ps = interior_means(n);
            write_csv(buffer, relative_error_over_means(parse_number(min_shape_text, "--min-shape"), ps, d,
                                                        options));
        } else if (abserr->parsed()) {
            const double p = num(p_text, "--p", 0.01);
            const auto ds = d_list.empty() ? figure_offsets()
                                           : to_offsets(parse_list(d_list, "--d", parse_offset_flag));
            const auto shapes = shape_grid(num(a_min_text, "--a-min", 1.0), num(a_max_text, "--a-max", 4096.0),
                                           points_text);
            write_csv(buffer, scaled_abs_error_curves(p, shapes, ds, options));
        } else if (tail->parsed()) {
            const auto shapes = shape_grid(num(a_min_text, "--shape-min", 1.0),
                                           num(a_max_text, "--shape-max", 64.0), points_text);
            const int n = p_points_text.empty() ? 19 : parse_count(p_points_text, "--p-points");
            const auto ps = interior_means(n);
            write_csv(buffer, tail_probability_grid(shapes, ps, options));
        } else if (rate->parsed()) {
            const int n = points_text.empty() ? 10 : parse_count(points_text, "--points");
            const RateMetric m = metric == "absolute" ? RateMetric::absolute : RateMetric::standardized;
            const RateFitResult fit =
                rate_fit(parse_number(p_text, "--p"), num(a_min_text, "--a-min", 8.0),
                         num(a_max_text, "--a-max", 4096.0), n, Offset(parse_offset(d_text)), m, options);
            write_rate_fit_csv(buffer, std::span<const RateFitResult>(&fit, 1));
        }
    } catch (const UsageError& e) {
        err << "betamedian: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "betamedian: domain error: " << e.what() << '\n';
        return kDomain;
    } catch (const ConvergenceError& e) {
        err << "betamedian: convergence failure: " << e.what() << '\n';
        return kConvergence;
    } catch (const FitError& e) {
        err << "betamedian: fit failure: " << e.what() << '\n';
        return kConvergence;
    }

    if (out_path.empty()) {
        out << buffer.str();
        out.flush();
        return out ? kOk : kIoError;
    }
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "betamedian: cannot open '" << out_path << "' for writing\n";
        return kIoError;
    }
    file << buffer.str();
    file.close();
    if (!file) {
        err << "betamedian: failed writing '" << out_path << "'\n";
        return kIoError;
    }
    return kOk;
}

}  // namespace betamedian::cli
