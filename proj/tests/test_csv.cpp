#include <doctest.h>

#include "betamedian/csv.hpp"
#include "betamedian/errors.hpp"

#include <cmath>
#include <sstream>

using namespace betamedian;

TEST_CASE("format_real is shortest round-trip") {
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(5.0 / 13.0) == "0.38461538461538464");
    CHECK(format_real(1.0 / 3.0) == "0.3333333333333333");
    CHECK(format_real(-2.5e-300) == "-2.5e-300");
    for (double v : {0.1, 1.0 / 7.0, 6.02214076e23, 5e-324, -0.0}) {
        CHECK(parse_real(format_real(v)) == v);
    }
}

TEST_CASE("parse_real rejects junk") {
    CHECK(parse_real("+1.5") == 1.5);
    CHECK_THROWS_AS(parse_real(""), CsvError);
    CHECK_THROWS_AS(parse_real("1.5x"), CsvError);
    CHECK_THROWS_AS(parse_real("abc"), CsvError);
}

TEST_CASE("header and empty fields") {
    ErrorRecord r;
    r.a = 2.0;
    r.b = 3.0;
    r.p = 0.4;
    r.d = 1.0 / 3.0;
    r.approx = 5.0 / 13.0;
    r.tail_prob = 0.49;
    const std::string text = to_csv(std::vector<ErrorRecord>{r});
    CHECK(text ==
          "a,b,p,d,approx,exact,rel_err,log_scaled_abs_err,tail_prob,underflow\n"
          "2,3,0.4,0.3333333333333333,0.38461538461538464,,,,0.49,\n");
}

TEST_CASE("write then read reproduces every field") {
    std::vector<ErrorRecord> rows(3);
    rows[0] = ErrorRecord{1.0, 99.0, 0.01, 0.0, 0.01, 0.0069770333676225605, 0.43327, -1.19, std::nullopt, false};
    rows[1] = ErrorRecord{4.0, 4.0, 0.5, 0.25, 0.5, 0.5, 0.0, std::nullopt, std::nullopt, true};
    rows[2] = ErrorRecord{1e-3, 7.5, 0.2, 0.0, std::nullopt, std::nullopt, std::nullopt, std::nullopt, 0.51, std::nullopt};
    std::istringstream in(to_csv(rows));
    const auto back = read_csv(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].a == rows[i].a);
        CHECK(back[i].b == rows[i].b);
        CHECK(back[i].p == rows[i].p);
        CHECK(back[i].d == rows[i].d);
        CHECK(back[i].approx == rows[i].approx);
        CHECK(back[i].exact == rows[i].exact);
        CHECK(back[i].rel_err == rows[i].rel_err);
        CHECK(back[i].log_scaled_abs_err == rows[i].log_scaled_abs_err);
        CHECK(back[i].tail_prob == rows[i].tail_prob);
        CHECK(back[i].underflow == rows[i].underflow);
    }
}

TEST_CASE("read_csv errors") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), CsvError);
    std::istringstream bad_header("a,b\n1,2\n");
    CHECK_THROWS_AS(read_csv(bad_header), CsvError);
    std::istringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
    CHECK_THROWS_AS(read_csv(short_row), CsvError);
    std::istringstream bad_flag(std::string(kCsvHeader) + "\n1,2,0.3,0,,,,,,maybe\n");
    CHECK_THROWS_AS(read_csv(bad_flag), CsvError);
}

TEST_CASE("rate fit table") {
    RateFitResult f;
    f.d = Offset::one_third();
    f.p = 0.01;
    f.slope = -1.5;
    f.intercept = -3.0;
    f.max_abs_residual = 0.25;
    f.points_used = 10;
    std::ostringstream os;
    write_rate_fit_csv(os, std::span<const RateFitResult>(&f, 1));
    CHECK(os.str() == std::string(kRateFitCsvHeader) + "\nstandardized,0.01,0.3333333333333333,-1.5,-3,0.25,10,\n");
}
