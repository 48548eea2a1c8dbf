#include "betamedian/csv.hpp"

#include "betamedian/errors.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace betamedian {

namespace {

constexpr std::size_t kColumns = 10;

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::optional<double> optional_real(std::string_view field) {
    if (field.empty()) return std::nullopt;
    return parse_real(field);
}

void put(std::ostream& out, const std::optional<double>& v) {
    if (v) out << format_real(*v);
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_real(std::string_view text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        throw CsvError("not a number: '" + std::string(text) + "'");
    }
    return v;
}

void write_csv(std::ostream& out, std::span<const ErrorRecord> records) {
    out << kCsvHeader << '\n';
    for (const ErrorRecord& r : records) {
        out << format_real(r.a) << ',' << format_real(r.b) << ',' << format_real(r.p) << ','
            << format_real(r.d) << ',';
        put(out, r.approx);
        out << ',';
        put(out, r.exact);
        out << ',';
        put(out, r.rel_err);
        out << ',';
        put(out, r.log_scaled_abs_err);
        out << ',';
        put(out, r.tail_prob);
        out << ',';
        if (r.underflow) out << (*r.underflow ? "true" : "false");
        out << '\n';
    }
}

std::string to_csv(std::span<const ErrorRecord> records) {
    std::ostringstream os;
    write_csv(os, records);
    return os.str();
}

std::vector<ErrorRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw CsvError("empty CSV input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw CsvError("unexpected CSV header: '" + line + "'");

    std::vector<ErrorRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != kColumns) {
            throw CsvError("line " + std::to_string(line_no) + ": expected " + std::to_string(kColumns) +
                           " fields, got " + std::to_string(f.size()));
        }
        try {
            ErrorRecord r;
            r.a = parse_real(f[0]);
            r.b = parse_real(f[1]);
            r.p = parse_real(f[2]);
            r.d = parse_real(f[3]);
            r.approx = optional_real(f[4]);
            r.exact = optional_real(f[5]);
            r.rel_err = optional_real(f[6]);
            r.log_scaled_abs_err = optional_real(f[7]);
            r.tail_prob = optional_real(f[8]);
            if (f[9] == "true") {
                r.underflow = true;
            } else if (f[9] == "false") {
                r.underflow = false;
            } else if (!f[9].empty()) {
                throw CsvError("bad underflow flag '" + std::string(f[9]) + "'");
            }
            out.push_back(r);
        } catch (const CsvError& e) {
            throw CsvError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

void write_rate_fit_csv(std::ostream& out, std::span<const RateFitResult> fits) {
    out << kRateFitCsvHeader << '\n';
    for (const RateFitResult& f : fits) {
        out << to_string(f.metric) << ',' << format_real(f.p) << ',' << format_real(f.d.value()) << ','
            << format_real(f.slope) << ',' << format_real(f.intercept) << ','
            << format_real(f.max_abs_residual) << ',' << f.points_used << ',';
        put(out, f.error_at_a_max);
        out << '\n';
    }
}

}  // namespace betamedian
