#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>

#include "frf/commands.hpp"
#include "frf/export.hpp"

using frf::CsvDocument;
using frf::RunConfig;

namespace {

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() / ("frf_test_" + stem);
}

std::string write_temp(const std::string& stem, const std::string& content) {
    const auto path = temp_file(stem);
    frf::write_text_file(path.string(), content);
    return path.string();
}

double cell_value(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string meta_of(const CsvDocument& doc, const std::string& key) {
    for (const auto& [k, v] : doc.metadata)
        if (k == key) return v;
    FAIL("missing metadata key " + key);
    return {};
}

}  // namespace

TEST_CASE("format_double survives a parse round trip") {
    for (const double v : {0.0, 1.0, -2.0, 1.0 / 3.0, 0.1, 1e17, 6.1035156e-05,
                           std::numbers::pi, -1.2345678901234567e-300}) {
        const std::string s = frf::format_double(v);
        REQUIRE(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(frf::format_double(2.0) == "2");
    CHECK(frf::format_double(0.5) == "0.5");
}

TEST_CASE("csv documents round trip byte for byte") {
    CsvDocument doc;
    doc.add_meta("command", "test");
    doc.add_meta("value", 0.1);
    doc.add_meta("count", std::int64_t{42});
    doc.header = {"a", "b"};
    doc.rows = {{"1", "x"}, {"0.25", "y"}};
    const std::string text = doc.to_string();
    const CsvDocument back = CsvDocument::parse(text);
    CHECK(back == doc);
    CHECK(back.to_string() == text);
    CHECK(meta_of(back, "count") == "42");
}

TEST_CASE("csv rejects malformed cells and rows") {
    CsvDocument doc;
    doc.header = {"a", "b"};
    doc.rows = {{"1,5", "x"}};
    CHECK_THROWS_AS(doc.to_string(), frf::contract_error);
    doc.rows = {{"1"}};
    CHECK_THROWS_AS(doc.to_string(), frf::contract_error);
    doc.rows = {{"1", "line\nbreak"}};
    CHECK_THROWS_AS(doc.to_string(), frf::contract_error);
}

TEST_CASE("svg polyline structure") {
    Eigen::ArrayXcd values(64);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < 64; ++i)
        values[i] = std::polar(1.0, two_pi * i / 64.0);
    const std::string svg = frf::svg_polyline(values);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=\"0 0 1000 1000\"") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    // one "x,y" pair per sample
    std::size_t pairs = 0;
    for (std::size_t pos = svg.find("points=\"") + 8; pos < svg.size(); ++pos) {
        if (svg[pos] == '"') break;
        if (svg[pos] == ',') ++pairs;
    }
    CHECK(pairs == 64);
}

TEST_CASE("text file round trip and missing-file error") {
    const std::string path = write_temp("roundtrip.txt", "line1\nline2\n");
    CHECK(frf::read_text_file(path) == "line1\nline2\n");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(frf::read_text_file("/no/such/frf_file.txt"), frf::io_error);
}

TEST_CASE("validate_config rejects malformed runs") {
    RunConfig ok;
    ok.command = "eval";
    CHECK_NOTHROW(frf::validate_config(ok));

    RunConfig c = ok;
    c.samples = 300;
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.samples = 128;
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.k = 0;
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.p = 0.0;
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.accuracy = -1.0;
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.format = "png";
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.a = 0.5;  // a without b
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.threads = 0;
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
    c = ok;
    c.slack = -0.1;
    CHECK_THROWS_AS(frf::validate_config(c), frf::argument_error);
}

TEST_CASE("make_source parses the source grammar") {
    RunConfig c;
    c.source = "const";
    CHECK(frf::make_source(c).kind() == frf::CoefficientKind::Constant);
    c.source = "random";
    c.seed = 9;
    const auto rnd = frf::make_source(c);
    CHECK(rnd.kind() == frf::CoefficientKind::RandomSigns);
    CHECK(rnd.seed() == 9);
    c.source = "liouville";
    c.sieve_limit = 100;
    CHECK(frf::make_source(c)(9) == std::complex<double>(1.0, 0.0));

    const std::string path =
        write_temp("coeffs.csv", "# comment\n1,0\n\n-0.5,2\n0.25\n");
    c.source = "custom:" + path;
    const auto table = frf::make_source(c);
    REQUIRE(table.available_limit().has_value());
    CHECK(*table.available_limit() == 3);
    CHECK(table(2) == std::complex<double>(-0.5, 2.0));
    CHECK(table(3) == std::complex<double>(0.25, 0.0));
    std::filesystem::remove(path);

    const std::string bad = write_temp("bad.csv", "1,0\nnot-a-number,2\n");
    c.source = "custom:" + bad;
    CHECK_THROWS_AS(frf::make_source(c), frf::io_error);
    std::filesystem::remove(bad);

    c.source = "custom:/no/such/frf_coeffs.csv";
    CHECK_THROWS_AS(frf::make_source(c), frf::io_error);
    c.source = "mystery";
    CHECK_THROWS_AS(frf::make_source(c), frf::argument_error);
}

TEST_CASE("cmd_eval zero series renders zero columns") {
    RunConfig c;
    c.command = "eval";
    c.source = "custom:" + write_temp("zero.csv", "0,0\n");
    c.samples = 256;
    c.accuracy = 1.0;  // direct truncation: N = 1
    const auto doc = CsvDocument::parse(frf::cmd_eval(c));
    REQUIRE(doc.header == std::vector<std::string>{"t", "re", "im", "abs"});
    REQUIRE(doc.rows.size() == 256);
    for (const auto& row : doc.rows) {
        CHECK(cell_value(row[1]) == 0.0);
        CHECK(cell_value(row[2]) == 0.0);
        CHECK(cell_value(row[3]) == 0.0);
    }
    CHECK(meta_of(doc, "n_used") == "1");
    CHECK(meta_of(doc, "tail_bound") == "none");
}

TEST_CASE("cmd_eval moebius fine grid dominates coarse grid samples") {
    RunConfig coarse;
    coarse.command = "eval";
    coarse.samples = 512;
    coarse.sieve_limit = 1000;
    RunConfig fine = coarse;
    fine.samples = 2048;
    const auto dc = CsvDocument::parse(frf::cmd_eval(coarse));
    const auto df = CsvDocument::parse(frf::cmd_eval(fine));
    double fine_max = 0.0;
    for (const auto& row : df.rows) fine_max = std::max(fine_max, cell_value(row[3]));
    for (const auto& row : dc.rows) REQUIRE(cell_value(row[3]) <= fine_max + 1e-15);
    // the coarse grid is a subset: identical t rows carry identical bytes
    CHECK(dc.rows[0] == df.rows[0]);
    CHECK(dc.rows[1] == df.rows[4]);
}

TEST_CASE("cmd_eval riemann value at t = 0") {
    RunConfig c;
    c.command = "eval";
    c.source = "const";
    c.k = 2;
    c.p = 2.0;
    c.alpha = "trivial";
    c.samples = 256;
    c.accuracy = 1e-3;
    const auto doc = CsvDocument::parse(frf::cmd_eval(c));
    const double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    CHECK(std::abs(cell_value(doc.rows[0][3]) - zeta2) < 1e-3);
    CHECK(meta_of(doc, "alpha") == "trivial");
    CHECK(cell_value(meta_of(doc, "tail_bound")) <= 1e-3);
}

TEST_CASE("cmd_eval svg format") {
    RunConfig c;
    c.command = "eval";
    c.source = "const";
    c.samples = 256;
    c.accuracy = 0.5;
    c.format = "svg";
    const std::string svg = frf::run_command(c);
    CHECK(svg.find("<polyline") != std::string::npos);

    c.command = "boxdim";
    CHECK_THROWS_AS(frf::run_command(c), frf::argument_error);
}

TEST_CASE("cmd_table renders the exponent table") {
    RunConfig c;
    c.command = "table";
    const auto doc = CsvDocument::parse(frf::cmd_table(c));
    REQUIRE(doc.rows.size() == 12);
    REQUIRE(doc.rows[0] ==
            std::vector<std::string>{"unconditional", "1", "—", "—", "—", "—"});
    CHECK(doc.rows[1][2] == "1/2");
    CHECK(doc.rows[2][2] == "2/3");
    CHECK(doc.rows[3][2] == "3/4");
    CHECK(doc.rows[4][2] == "1/4");
    CHECK(doc.rows[5][2] == "9/16");
    CHECK(doc.rows[6][2] == "65/96");
    CHECK(doc.rows[7][2] == "385/512");
    CHECK(doc.rows[8][2] == "1/2");
    CHECK(doc.rows[11][2] == "7/8");
    CHECK(doc.rows[5][5] == "true");
}

TEST_CASE("cmd_alpha fits the constant-coefficient growth") {
    RunConfig c;
    c.command = "alpha";
    c.source = "const";
    c.x_ladder = "7:10";
    c.t_grid = 64;
    const auto doc = CsvDocument::parse(frf::cmd_alpha(c));
    CHECK(std::abs(cell_value(meta_of(doc, "alpha_hat")) - 1.0) < 0.02);
    REQUIRE(doc.rows.size() == 4);
    CHECK(cell_value(doc.rows[0][1]) == 128.0);  // M(2^7) = 2^7 at t = 0
}

TEST_CASE("cmd_holder rejects sub-resolution ladders") {
    RunConfig c;
    c.command = "holder";
    c.source = "const";
    c.samples = 256;
    c.accuracy = 0.5;
    c.h_ladder = "4:8";  // h = 2^-8 needs >= 2^9 samples
    CHECK_THROWS_AS(frf::cmd_holder(c), frf::argument_error);
}

TEST_CASE("cmd_report on the riemann family") {
    RunConfig c;
    c.command = "report";
    c.source = "const";
    c.k = 2;
    c.p = 2.0;
    c.alpha = "trivial";
    c.samples = 4096;
    c.accuracy = 5e-3;
    c.h_ladder = "4:9";
    c.scales = "3:8";
    c.x_ladder = "4:7";
    const std::string text = frf::cmd_report(c);
    const auto doc = CsvDocument::parse(text);
    CHECK(doc.to_string() == text);  // reserialization is byte-exact

    CHECK(cell_value(meta_of(doc, "eta_theory")) == 0.5);
    CHECK(cell_value(meta_of(doc, "dim_graph_bound")) == 1.5);
    CHECK(cell_value(meta_of(doc, "dim_path_bound")) == 2.0);
    CHECK(cell_value(meta_of(doc, "eta_theory")) +
              cell_value(meta_of(doc, "dim_graph_bound")) ==
          2.0);
    CHECK(meta_of(doc, "assumption") == "user");

    REQUIRE(doc.rows.size() == 4);
    REQUIRE(doc.header ==
            std::vector<std::string>{"component", "eta_hat", "eta_rms", "dim_hat",
                                     "dim_rms", "dim_bound", "margin", "status"});
    for (int r = 0; r < 3; ++r) {
        CHECK(doc.rows[r][5] == "1.5");
        CHECK(doc.rows[r][7] == "ok");
    }
    CHECK(doc.rows[3][0] == "path");
    CHECK(doc.rows[3][5] == "2");
    CHECK(doc.rows[3][7] == "ok");
    CHECK(std::abs(cell_value(doc.rows[1][1]) - 0.5) < 0.1);  // re eta_hat
}

TEST_CASE("cmd_report surfaces degenerate components as rows") {
    // the zero series: every scalar increment vanishes identically
    std::string table;
    for (int i = 0; i < 16; ++i) table += "0,0\n";
    RunConfig c;
    c.command = "report";
    c.source = "custom:" + write_temp("zero_report.csv", table);
    c.alpha = "0.5";
    c.samples = 4096;
    c.accuracy = 1.0;  // certified N = 16 under alpha = 1/2
    c.h_ladder = "4:9";
    c.scales = "3:8";
    const auto doc = CsvDocument::parse(frf::cmd_report(c));
    CHECK(meta_of(doc, "alpha_hat") == "-");  // ladder outruns the table
    REQUIRE(doc.rows.size() == 4);
    for (int r = 0; r < 3; ++r) {
        CHECK(doc.rows[r][7] == "degenerate");
        CHECK(doc.rows[r][1] == "-");
    }
    CHECK(std::abs(cell_value(doc.rows[3][3])) < 0.01);  // point path dim
    CHECK(doc.rows[3][7] == "ok");
}

TEST_CASE("cmd_report on a smooth circle series") {
    // F(t) = e^{2 pi i t} exactly: re/im are C^1, the path is the circle
    std::string table = "1,0\n";
    for (int i = 0; i < 15; ++i) table += "0,0\n";
    RunConfig c;
    c.command = "report";
    c.source = "custom:" + write_temp("circle.csv", table);
    c.alpha = "0.5";
    c.samples = 4096;
    c.accuracy = 1.0;  // certified N = 16 under alpha = 1/2
    c.h_ladder = "4:9";
    c.scales = "3:8";
    const auto doc = CsvDocument::parse(frf::cmd_report(c));
    CHECK(cell_value(meta_of(doc, "eta_theory")) == 0.5);
    CHECK(meta_of(doc, "alpha_hat") == "-");
    REQUIRE(doc.rows.size() == 4);
    CHECK(doc.rows[0][0] == "abs");
    CHECK(std::abs(cell_value(doc.rows[1][1]) - 1.0) < 0.05);  // re eta_hat
    CHECK(doc.rows[1][7] == "ok");
    CHECK(std::abs(cell_value(doc.rows[2][1]) - 1.0) < 0.05);  // im eta_hat
    CHECK(std::abs(cell_value(doc.rows[3][3]) - 1.0) < 0.1);  // circle path dim
    CHECK(doc.rows[3][7] == "ok");
}

TEST_CASE("cmd_report without a hypothesis is uncertified") {
    RunConfig c;
    c.command = "report";
    c.source = "custom:" + write_temp("uncert.csv", "1,0\n");
    c.samples = 4096;
    c.accuracy = 1.0;  // uncertified truncation: N = 1
    c.h_ladder = "4:9";
    c.scales = "3:8";
    const auto doc = CsvDocument::parse(frf::cmd_report(c));
    CHECK(meta_of(doc, "assumption") == "none");
    CHECK(std::abs(cell_value(doc.rows[1][1]) - 1.0) < 0.05);  // re eta_hat
    CHECK(doc.rows[1][5] == "-");
    CHECK(doc.rows[1][7] == "uncertified");
    CHECK(doc.rows[3][7] == "uncertified");
}

TEST_CASE("reports are deterministic across thread counts") {
    RunConfig c;
    c.command = "report";
    c.source = "random";
    c.seed = 7;
    c.k = 2;
    c.p = 2.0;
    c.alpha = "trivial";
    c.samples = 4096;
    c.accuracy = 5e-3;
    c.h_ladder = "4:9";
    c.scales = "3:8";
    c.x_ladder = "4:7";
    c.threads = 1;
    const std::string serial = frf::run_command(c);
    c.threads = 4;
    const std::string threaded = frf::run_command(c);
    CHECK(serial == threaded);
    CHECK(serial.find("seed=7") != std::string::npos);
}

TEST_CASE("execute maps outcomes to exit codes") {
    RunConfig ok;
    ok.command = "table";
    const auto out_path = temp_file("exit0.csv");
    ok.out = out_path.string();
    CHECK(frf::execute(ok) == 0);
    CHECK(frf::read_text_file(ok.out) == frf::run_command(ok));
    std::filesystem::remove(out_path);

    RunConfig bad_args;
    bad_args.command = "eval";
    bad_args.samples = 300;
    CHECK(frf::execute(bad_args) == 2);

    RunConfig starved;
    starved.command = "eval";
    starved.source = "moebius";
    starved.sieve_limit = 50;
    starved.samples = 256;
    starved.accuracy = 0.01;  // needs N = 100 > 50
    starved.out = temp_file("exit3.csv").string();
    CHECK(frf::execute(starved) == 3);

    RunConfig degenerate;
    degenerate.command = "holder";
    degenerate.source = "custom:" + write_temp("degen.csv", "0,0\n");
    degenerate.samples = 4096;
    degenerate.accuracy = 1.0;
    degenerate.h_ladder = "4:9";
    degenerate.out = temp_file("exit4.csv").string();
    CHECK(frf::execute(degenerate) == 4);

    RunConfig unwritable;
    unwritable.command = "table";
    unwritable.out = "/no/such/dir/frf_out.csv";
    CHECK(frf::execute(unwritable) == 5);

    RunConfig unknown;
    unknown.command = "mystery";
    CHECK(frf::execute(unknown) == 2);
}
