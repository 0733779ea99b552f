#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "discmodes/cli.hpp"
#include "discmodes/io.hpp"

using namespace discmodes;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = cli_main(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class TempFile {
  public:
    explicit TempFile(const std::string& name)
        : path_(std::string("/tmp/discmodes_test_") + name) {}
    ~TempFile() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }
    void write(const std::string& text) const {
        std::ofstream f(path_);
        f << text;
    }
    std::string read() const {
        std::ifstream f(path_);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

  private:
    std::string path_;
};

}  // namespace

TEST_CASE("windows prints the bare interval when unambiguous") {
    const CliRun r = run({"windows", "--f56", "0.75", "--ft56", "0.25", "--ftp", "0",
                          "--ftm", "0", "--ft3", "0", "--branch", "A"});
    CHECK(r.code == 0);
    CHECK(r.out == "(-1, 2)\n");
}

TEST_CASE("windows labels lines when several intervals differ") {
    const CliRun r = run({"windows", "--ft56", "0.75", "--branch", "B", "--convention",
                          "both"});
    CHECK(r.code == 0);
    CHECK(r.out.find("paper_literal: (-1.5, 1)") != std::string::npos);
    CHECK(r.out.find("shifted_index: (-2.5, 0)") != std::string::npos);
}

TEST_CASE("verify exits zero on valid parameters") {
    const CliRun r = run({"verify", "--f56", "0.3", "--ft56", "0.1", "--ft3", "0.5",
                          "--ftp", "0.2", "--ftm", "0.4", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("pass") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("argument errors exit 2 with usage text") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const CliRun r = run({"verify", "--no-such-flag"});
    CHECK(r.code == 2);
    CHECK(r.err.find("Usage") != std::string::npos);
}

TEST_CASE("invalid physics parameters exit 2") {
    CHECK(run({"verify", "--rho0", "-1"}).code == 2);
    CHECK(run({"norm", "--sign", "sideways"}).code == 2);
    CHECK(run({"norm", "--tol", "-1e-9"}).code == 2);
}

TEST_CASE("help exits zero") {
    const CliRun r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("windows") != std::string::npos);
    CHECK(r.out.find("scan") != std::string::npos);
}

TEST_CASE("norm prints both conventions on the ambiguous B case") {
    const CliRun r = run({"norm", "--ft56", "0.75", "--n", "0", "--branch", "B"});
    CHECK(r.code == 0);
    CHECK(r.out.find("paper_literal") != std::string::npos);
    CHECK(r.out.find("shifted_index") != std::string::npos);
    CHECK(r.out.find("divergent(origin)") != std::string::npos);
    CHECK(r.out.find("agree=yes") != std::string::npos);
}

TEST_CASE("norm reports the closed form and quadrature for a finite mode") {
    const CliRun r = run({"norm", "--f56", "0.75", "--ft56", "0.25", "--n", "1",
                          "--branch", "A", "--sign", "minus"});
    CHECK(r.code == 0);
    CHECK(r.out.find("closed_form=4") != std::string::npos);
    CHECK(r.out.find("quadrature=4") != std::string::npos);
}

TEST_CASE("config file supplies defaults, explicit flags win") {
    TempFile cfg("cfg.json");
    cfg.write("{\"f56\": 0.75, \"ft56\": 0.25, \"branch\": \"A\"}");
    const CliRun from_cfg = run({"windows", "--config", cfg.path()});
    CHECK(from_cfg.code == 0);
    CHECK(from_cfg.out == "(-1, 2)\n");

    const CliRun overridden =
        run({"windows", "--config", cfg.path(), "--ft56", "-0.25"});
    CHECK(overridden.code == 0);
    CHECK(overridden.out == "(-1, 1)\n");
}

TEST_CASE("config rejects a missing file and bad json") {
    CHECK(run({"windows", "--config", "/tmp/definitely_missing_5321.json"}).code == 2);
    TempFile cfg("bad.json");
    cfg.write("{nope");
    CHECK(run({"windows", "--config", cfg.path()}).code == 2);
}

TEST_CASE("profile writes a two-column series") {
    TempFile out("profile.txt");
    const CliRun r = run({"profile", "--f56", "0.3", "--n", "1", "--points", "7", "--out",
                          out.path()});
    CHECK(r.code == 0);
    std::istringstream in(out.read());
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        CHECK(line.find(' ') != std::string::npos);
    }
    CHECK(lines == 7);
}

TEST_CASE("profile --secular demands a degenerate point") {
    CHECK(run({"profile", "--n", "1", "--secular"}).code == 2);
    const CliRun ok = run({"profile", "--n", "1", "--secular", "--ft3", "0.5", "--ftp",
                           "0.25", "--ftm", "-1", "--points", "3"});
    CHECK(ok.code == 0);
}

TEST_CASE("profile norm integrand of the unit example integrates to one") {
    TempFile out("integrand.csv");
    const CliRun r = run({"profile", "--f56", "0.5", "--ft56", "0.5", "--sign", "minus",
                          "--quantity", "integrand", "--format", "csv", "--rmin", "1e-2",
                          "--rmax", "50", "--points", "100", "--out", out.path()});
    CHECK(r.code == 0);
    CHECK(out.read().rfind("rho,value\n", 0) == 0);
}

TEST_CASE("scan writes csv to a file and json to stdout") {
    TempFile out("scan.csv");
    const CliRun r = run({"scan", "--f56", "0:1:2", "--ft56", "0.25", "--n-min", "-2",
                          "--n-max", "2", "--out", out.path()});
    CHECK(r.code == 0);
    const std::string text = out.read();
    CHECK(text.rfind("f56,ft56", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 2 * 2);

    const CliRun j = run({"scan", "--f56", "0.75", "--ft56", "0.25", "--format", "json"});
    CHECK(j.code == 0);
    std::istringstream in(j.out);
    CHECK(read_records_json(in).size() == 4);
}

TEST_CASE("scan rejects a bad axis string") {
    CHECK(run({"scan", "--f56", "0:1:2:9"}).code == 2);
    CHECK(run({"scan", "--f56", "abc"}).code == 2);
    CHECK(run({"scan", "--f56", "1:0:5"}).code == 2);
}

TEST_CASE("unwritable output path exits 1") {
    const CliRun r = run({"scan", "--f56", "0.1", "--out", "/nonexistent_dir_321/x.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("error") != std::string::npos);
}
