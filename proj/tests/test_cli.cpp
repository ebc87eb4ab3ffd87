#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "iqy/cli.hpp"
#include "iqy/cli_table.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace iqy::cli;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("iqy_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "iqy-spectra");
    std::vector<char*> argv;
    for (std::string& a : args) {
        argv.push_back(a.data());
    }
    return run(static_cast<int>(argv.size()), argv.data());
}

RunConfig mie_config() {
    RunConfig c;
    apply_setting(c, "potential", "mie");
    apply_setting(c, "mass", "1");
    apply_setting(c, "cps", "0");
    apply_setting(c, "mie-a", "-0.1");
    apply_setting(c, "mie-b", "-1");
    apply_setting(c, "mie-c", "-0.01");
    apply_setting(c, "n-min", "0");
    apply_setting(c, "n-max", "2");
    apply_setting(c, "kappa", "-1,1");
    apply_setting(c, "tensor-h", "0");
    return c;
}

}  // namespace

TEST_CASE("default pseudospin sweep has the doublet-table shape") {
    const CommandResult r = cmd_spectrum(RunConfig{});
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 33);
    CHECK(lines[0] == "symmetry,n_nu,n_spect,kappa,label,H,E,residual,beta_sq,strict_valid");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        CHECK(split(lines[i]).size() == 10);
    }
    CHECK(lines[1] == "pspin,1,1,-4,1f7/2,0,nan,nan,nan,false");
    CHECK(r.output.find('\r') == std::string::npos);
}

TEST_CASE("output does not depend on the worker count") {
    RunConfig c;
    apply_setting(c, "mode", "relaxed");
    setenv("SPECTRA_THREADS", "1", 1);
    const std::string one = cmd_spectrum(c).output;
    setenv("SPECTRA_THREADS", "8", 1);
    const std::string many = cmd_spectrum(c).output;
    unsetenv("SPECTRA_THREADS");
    CHECK(one == many);
    CHECK(one == cmd_spectrum(c).output);
}

TEST_CASE("configuration errors") {
    RunConfig c;
    apply_setting(c, "kappa", "");
    CHECK_THROWS_AS(c.validate(), iqy::Error);
    RunConfig z;
    apply_setting(z, "kappa", "-1,0");
    CHECK_THROWS_AS(z.validate(), iqy::Error);
    RunConfig u;
    CHECK_THROWS_AS(apply_setting(u, "bogus", "1"), iqy::Error);
    CHECK_THROWS_AS(apply_setting(u, "mass", "five"), iqy::Error);
    CHECK_THROWS_AS(apply_setting(u, "window", "2,1"), iqy::Error);

    CHECK(run_args({"spectrum", "--kappa", ""}) == kExitConfig);
    CHECK(run_args({"spectrum", "--kappa", "0"}) == kExitConfig);
    CHECK(run_args({"spectrum", "--screening", "-1"}) == kExitConfig);
    CHECK(run_args({"spectrum", "--no-such-flag"}) == kExitConfig);
    CHECK(run_args({"spectrum", "--symmetry", "pspin", "--potential", "mie", "--symmetry", "spin"}) == kExitConfig);
}

TEST_CASE("config file with flag overrides") {
    const auto cfg = temp_path("config.txt");
    {
        std::ofstream out(cfg);
        out << "# test config\nsymmetry = spin\nkappa = -2, 1\nn_min = 0\nn-max = 0\ntensor-h = 0\n";
    }
    const auto out = temp_path("spectrum.csv");
    CHECK(run_args({"spectrum", "--config", cfg.string(), "--kappa", "-3", "--out", out.string()}) == 0);
    const auto lines = lines_of(slurp(out));
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].rfind("spin,0,0,-3,", 0) == 0);

    CHECK(run_args({"spectrum", "--config", temp_path("missing.txt").string()}) == kExitIo);
    CHECK(run_args({"spectrum", "--out", "/nonexistent-dir/x.csv"}) == kExitIo);
    std::filesystem::remove(cfg);
    std::filesystem::remove(out);
}

TEST_CASE("JSON mirrors the CSV fields") {
    RunConfig c;
    apply_setting(c, "mode", "relaxed");
    apply_setting(c, "kappa", "-1,2");
    const auto csv = lines_of(cmd_spectrum(c).output);
    apply_setting(c, "format", "json");
    const auto j = nlohmann::json::parse(cmd_spectrum(c).output);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == csv.size() - 1);
    const auto header = split(csv[0]);
    for (std::size_t i = 0; i < j.size(); ++i) {
        REQUIRE(j[i].size() == header.size());
        const auto cells = split(csv[i + 1]);
        for (std::size_t k = 0; k < header.size(); ++k) {
            const auto& v = j[i].at(header[k]);
            if (v.is_number_float()) {
                CHECK(format_number(v.get<double>()) == cells[k]);
            } else if (v.is_boolean()) {
                CHECK((v.get<bool>() ? "true" : "false") == cells[k]);
            } else if (v.is_number_integer()) {
                CHECK(std::to_string(v.get<long long>()) == cells[k]);
            } else if (v.is_null()) {
                CHECK(cells[k] == "nan");
            } else {
                CHECK(v.get<std::string>() == cells[k]);
            }
        }
    }
}

TEST_CASE("crosscheck") {
    const CommandResult iqy = cmd_crosscheck(RunConfig{});
    CHECK(iqy.exit_code == 0);
    CHECK(iqy.output.find(",fail,") == std::string::npos);

    const CommandResult mie = cmd_crosscheck(mie_config());
    CHECK(mie.exit_code == 0);
    CHECK(mie.output.rfind("# compared=6 ", 0) == 0);
    for (const auto& line : lines_of(mie.output)) {
        if (line.find("pspin,mie,") == 0) {
            CHECK(line.find(",pass,") != std::string::npos);
        }
    }

    RunConfig broken = mie_config();
    apply_setting(broken, "inject-residual-offset", "1e-3");
    CHECK(cmd_crosscheck(broken).exit_code == kExitCrosscheck);
}

TEST_CASE("table reproduction report") {
    const CommandResult r = cmd_reproduce_tables(RunConfig{});
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("pspin H=0 partners equal,8,8,pass") != std::string::npos);
    CHECK(r.output.find("spin H=0 partners equal,8,8,pass") != std::string::npos);
    CHECK(r.output.find("pspin H=5 partners split,8,8,pass") != std::string::npos);
    CHECK(r.output.find("spin H=5 kappa<0 member higher,8,8,pass") != std::string::npos);
    CHECK(r.output.find("no real-domain screening fit,2,2,pass") != std::string::npos);
    CHECK(r.output.find("pspin,1,-1,-0.491129,-0.0399981946,") != std::string::npos);
    CHECK(r.output.find(",fail,") == std::string::npos);

    RunConfig j;
    apply_setting(j, "format", "json");
    const auto doc = nlohmann::json::parse(cmd_reproduce_tables(j).output);
    CHECK(doc.at("entries").size() == 64);
    CHECK(doc.at("passed").get<bool>());
}

TEST_CASE("wavefunction dump") {
    RunConfig c = mie_config();
    apply_setting(c, "n-min", "2");
    apply_setting(c, "kappa", "-1");
    const CommandResult r = cmd_wavefunction(c);
    CHECK(r.exit_code == 0);
    CHECK(r.output == cmd_wavefunction(c).output);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() > 100);
    CHECK(lines[1].rfind("# nodes=2 ", 0) == 0);
    CHECK(lines[3] == "r,s,F,G");
    double g_max = 0.0;
    for (std::size_t i = 4; i < lines.size(); ++i) {
        g_max = std::max(g_max, std::fabs(std::stod(split(lines[i])[3])));
    }
    CHECK(std::fabs(std::stod(split(lines[4])[3])) < 1e-6 * g_max);
    CHECK(std::fabs(std::stod(split(lines.back())[3])) < 1e-6 * g_max);

    // No closed-form root for the IQY defaults.
    CHECK(run_args({"wavefunction"}) == kExitNoRoot);
}

TEST_CASE("number formatting and CSV quoting") {
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-0.491129) == "-0.491129");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    Table t;
    t.columns = {"a", "b"};
    t.rows.push_back({std::string("x,y"), true});
    CHECK(render_csv(t) == "a,b\n\"x,y\",true\n");
}
