#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "discmodes/errors.hpp"
#include "discmodes/io.hpp"
#include "discmodes/normalization.hpp"
#include "discmodes/scan.hpp"

using namespace discmodes;

namespace {

GridSpec single_point(double f56, double ft56, double ft3 = 0.0, double ftp = 0.0,
                      double ftm = 0.0) {
    GridSpec g;
    g.f56 = {f56, f56, 1};
    g.ft56 = {ft56, ft56, 1};
    g.ft3 = {ft3, ft3, 1};
    g.ftp = {ftp, ftp, 1};
    g.ftm = {ftm, ftm, 1};
    return g;
}

std::string to_csv(const std::vector<ScanRecord>& records) {
    std::ostringstream out;
    write_records_csv(records, out);
    return out.str();
}

}  // namespace

TEST_CASE("axis_values: constant and linear grids") {
    CHECK(axis_values({2.5, 2.5, 1}) == std::vector<double>{2.5});
    CHECK(axis_values({0.0, 1.0, 3}) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(axis_values({-1.0, 1.0, 2}) == std::vector<double>{-1.0, 1.0});
    CHECK_THROWS_AS(axis_values({1.0, 0.0, 2}), DomainError);
    CHECK_THROWS_AS(axis_values({0.0, 1.0, 0}), DomainError);
}

TEST_CASE("single point: the window_A example modes") {
    GridSpec g = single_point(0.75, 0.25);
    g.n_min = -3;
    g.n_max = 3;
    g.sign_set = {Sign::plus};
    const auto records = scan(g);
    REQUIRE(records.size() == 2);  // one sign, branches A and B
    const ScanRecord& a = records[0];
    CHECK(a.branch == Branch::A);
    CHECK(a.modes == std::vector<long>{0, 1});
    CHECK(a.window_lower == -1.0);
    CHECK(a.window_upper == doctest::Approx(2.0));
    CHECK_FALSE(a.degenerate);
    CHECK(a.ftp_zero);
}

TEST_CASE("plus window contains minus window for branch A at D = 25") {
    GridSpec g = single_point(0.0, 0.0, 3.0, 2.0, 8.0);
    const auto records = scan(g);
    REQUIRE(records.size() == 4);
    const auto a_plus = std::find_if(records.begin(), records.end(), [](const ScanRecord& r) {
        return r.branch == Branch::A && r.sign == Sign::plus;
    });
    const auto a_minus = std::find_if(records.begin(), records.end(), [](const ScanRecord& r) {
        return r.branch == Branch::A && r.sign == Sign::minus;
    });
    REQUIRE(a_plus != records.end());
    REQUIRE(a_minus != records.end());
    CHECK(a_plus->window_upper > a_minus->window_upper);
    CHECK(a_plus->window_lower == a_minus->window_lower);
    for (long n : a_minus->modes)
        CHECK(std::count(a_plus->modes.begin(), a_plus->modes.end(), n) == 1);
}

TEST_CASE("grid cardinality: points x signs x branches") {
    GridSpec g = single_point(0.0, 0.0);
    g.f56 = {-1.0, 1.0, 3};
    g.ft56 = {-1.0, 1.0, 3};
    CHECK(scan(g).size() == 9 * 2 * 2);
    g.sign_set = {Sign::minus};
    CHECK(scan(g).size() == 9 * 1 * 2);
}

TEST_CASE("record modes agree with the window predicate") {
    GridSpec g = single_point(0.0, 0.0);
    g.f56 = {-0.8, 0.9, 4};
    g.ft56 = {-0.7, 0.6, 3};
    g.ft3 = {0.4, 0.4, 1};
    for (const ScanRecord& r : scan(g)) {
        CouplingParams c;
        c.f56 = r.f56;
        c.ft56 = r.ft56;
        c.ft3 = r.ft3;
        c.ftp = r.ftp;
        c.ftm = r.ftm;
        const WindowInterval w = r.branch == Branch::A
                                     ? window_A(c, r.sign)
                                     : window_B(c, r.sign, r.convention);
        for (long n = g.n_min; n <= g.n_max; ++n) {
            const bool listed =
                std::count(r.modes.begin(), r.modes.end(), n) == 1;
            CHECK(listed == w.contains(static_cast<double>(n)));
        }
    }
}

TEST_CASE("deterministic and policy-independent records") {
    GridSpec g = single_point(0.2, -0.1, 0.5, 0.3, 0.4);
    g.f56 = {-0.5, 0.5, 3};
    g.ftp = {0.0, 0.6, 2};
    g.verify = true;
    const auto serial_1 = scan(g, ExecutionPolicy::serial);
    const auto serial_2 = scan(g, ExecutionPolicy::serial);
    const auto parallel = scan(g, ExecutionPolicy::parallel);
    CHECK(serial_1 == serial_2);
    CHECK(serial_1 == parallel);
    CHECK(to_csv(serial_1) == to_csv(parallel));
}

TEST_CASE("verify flag fills max_residual") {
    GridSpec g = single_point(0.3, 0.1, 0.2, 0.1, 0.3);
    g.verify = true;
    for (const ScanRecord& r : scan(g)) {
        CHECK(r.max_residual >= 0.0);
        CHECK(r.max_residual <= 1e-10);
    }
}

TEST_CASE("quad_check reconciles windows with quadrature") {
    GridSpec g = single_point(0.29, 0.13, 0.0, 0.0, 0.0);
    g.n_min = -3;
    g.n_max = 3;
    g.quad_check = true;
    for (const ScanRecord& r : scan(g)) {
        CHECK(r.checked);
        CHECK(r.agree);
        CHECK(r.note.empty());
    }
}

TEST_CASE("grid validation") {
    GridSpec g = single_point(0.0, 0.0);
    g.rho0 = 0.0;
    CHECK_THROWS_AS(validate_grid(g), NonPositiveScaleError);
    g.rho0 = 1.0;
    g.n_min = 3;
    g.n_max = -3;
    CHECK_THROWS_AS(validate_grid(g), DomainError);
    g.n_min = -3;
    g.n_max = 3;
    g.sign_set = {};
    CHECK_THROWS_AS(validate_grid(g), DomainError);
}

TEST_CASE("csv float formatting keeps 17 significant digits") {
    CHECK(format_float(1.0) == "1.0000000000000000");
    CHECK(format_float(0.5) == "0.50000000000000000");
    CHECK(format_float(-2.0) == "-2.0000000000000000");
    CHECK(format_float(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("empty record list gives a header-only csv") {
    const std::string text = to_csv({});
    CHECK(text ==
          "f56,ft56,ft3,ftp,ftm,sign,branch,convention,window_lower,window_upper,modes,"
          "degenerate,ftp_zero,checked,agree,max_residual,note\n");
}

TEST_CASE("csv rows carry semicolon-joined mode lists") {
    GridSpec g = single_point(0.75, 0.25);
    g.sign_set = {Sign::plus};
    const std::string text = to_csv(scan(g));
    CHECK(text.find("0;1") != std::string::npos);
    CHECK(text.find("plus,A,shifted_index") != std::string::npos);
}

TEST_CASE("json round trip preserves every field") {
    GridSpec g = single_point(0.2, -0.1, 0.5, 0.25, -1.0);  // degenerate point included
    g.f56 = {-0.5, 0.5, 2};
    g.verify = true;
    const auto records = scan(g);
    std::ostringstream out;
    write_records_json(records, out);
    std::istringstream in(out.str());
    const auto parsed = read_records_json(in);
    CHECK(parsed == records);
}

TEST_CASE("read_records_json rejects malformed input") {
    std::istringstream bad("{ not json ]");
    CHECK_THROWS_AS(read_records_json(bad), IoError);
    std::istringstream wrong_shape("{\"a\": 1}");
    CHECK_THROWS_AS(read_records_json(wrong_shape), IoError);
}

TEST_CASE("write_records dispatch honors the format argument") {
    GridSpec g = single_point(0.1, 0.1);
    g.sign_set = {Sign::plus};
    const auto records = scan(g);
    std::ostringstream csv_out, json_out;
    write_records(records, OutputFormat::csv, csv_out);
    CHECK(csv_out.str() == to_csv(records));
    write_records(records, OutputFormat::json, json_out);
    std::istringstream back(json_out.str());
    CHECK(read_records_json(back) == records);
    std::ostringstream sink;
    CHECK_THROWS_AS(write_records(records, OutputFormat::plot_columns, sink), IoError);
}

TEST_CASE("radial series serialization in all three formats") {
    const RadialSeries series{{0.5, 1.25}, {1.0, 2.0}};
    std::ostringstream cols, csv, json;
    write_series(series, OutputFormat::plot_columns, cols);
    CHECK(cols.str().find("0.5") != std::string::npos);
    CHECK(cols.str().find(' ') != std::string::npos);
    write_series(series, OutputFormat::csv, csv);
    CHECK(csv.str().rfind("rho,value\n", 0) == 0);
    write_series(series, OutputFormat::json, json);
    CHECK(json.str().find("\"rho\"") != std::string::npos);
}

TEST_CASE("format names round trip") {
    for (OutputFormat f : {OutputFormat::csv, OutputFormat::json, OutputFormat::plot_columns}) {
        CHECK(parse_format(to_string(f)) == f);
    }
    CHECK_THROWS_AS(parse_format("yaml"), DomainError);
}

TEST_CASE("degenerate grid points are flagged, not skipped") {
    GridSpec g = single_point(0.1, 0.1, 0.5, 0.25, -1.0);  // D = 0, couplings nonzero
    const auto records = scan(g);
    REQUIRE(records.size() == 4);
    for (const ScanRecord& r : records) CHECK(r.degenerate);
}
