#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "woven/report_json.hpp"

#ifndef WOVEN_CLI_PATH
#error "WOVEN_CLI_PATH must point at the command-line binary"
#endif

using nlohmann::json;
using namespace woven;

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("woven_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string shell_quote(const std::string& s) {
    std::string quoted = "'";
    for (char c : s) {
        if (c == '\'') {
            quoted += "'\\''";
        } else {
            quoted += c;
        }
    }
    quoted += "'";
    return quoted;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;

    json report() const { return json::parse(out); }
};

CliRun run_cli(const std::vector<std::string>& args) {
    static int counter = 0;
    const fs::path out_path = work_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err_path = work_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;

    std::string cmd = shell_quote(WOVEN_CLI_PATH);
    for (const std::string& a : args) cmd += " " + shell_quote(a);
    cmd += " > " + shell_quote(out_path.string()) + " 2> " + shell_quote(err_path.string());

    const int status = std::system(cmd.c_str());
    CliRun r;
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string write_file(const std::string& name, const std::string& content) {
    const fs::path path = work_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

std::string frame_file(const std::string& name, const Frame& f) {
    return write_file(name, frame_to_json(f).dump(2) + "\n");
}

Frame f_112() { return Frame(2, {{1, 0}, {1, 0}, {0, 1}}); }
Frame f_121() { return Frame(2, {{1, 0}, {0, 1}, {1, 0}}); }

}  // namespace

TEST_CASE("bounds command reports the optimal bounds and the report envelope") {
    const std::string path = frame_file("b112.json", f_112());
    const CliRun r = run_cli({"bounds", path});
    REQUIRE(r.exit_code == 0);
    const json j = r.report();
    CHECK(j.at("version") == "1");
    CHECK(j.at("command") == "bounds");
    CHECK(j.at("inputs") == json::array({path}));
    CHECK(j.at("result").at("lower").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j.at("result").at("upper").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
    // Timestamps are on by default and ISO-8601 UTC.
    REQUIRE(j.contains("timestamp"));
    CHECK(std::regex_match(j.at("timestamp").get<std::string>(),
                           std::regex(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)")));
}

TEST_CASE("deterministic reports are byte-identical across runs") {
    const std::string path = frame_file("b112_det.json", f_112());
    const CliRun a = run_cli({"--deterministic", "bounds", path});
    const CliRun b = run_cli({"--deterministic", "bounds", path});
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.report().contains("timestamp"));
}

TEST_CASE("excess command reports the greedy spanning split") {
    const std::string path = frame_file("e112.json", f_112());
    const CliRun r = run_cli({"excess", path});
    REQUIRE(r.exit_code == 0);
    const json result = r.report().at("result");
    CHECK(result.at("excess") == 1);
    CHECK(result.at("riesz_indices") == json::array({1, 3}));
    CHECK(result.at("redundant_indices") == json::array({2}));
}

TEST_CASE("weave command returns exit 1 and a witness for a non-woven pair") {
    const std::string a = frame_file("w112.json", f_112());
    const std::string b = frame_file("w121.json", f_121());
    const CliRun r = run_cli({"weave", a, b, "--exhaustive"});
    CHECK(r.exit_code == 1);
    const json result = r.report().at("result");
    CHECK(result.at("woven") == false);
    CHECK(result.at("partitions_checked") == 8);
    REQUIRE(result.contains("witness"));
    CHECK(result.at("witness").at("sigma") == json::array({1, 2}));
}

TEST_CASE("weave command returns exit 0 for a woven pair") {
    const std::string a = frame_file("wa.json", f_112());
    const std::string b = frame_file("wb.json", Frame(2, {{1, 0}, {0, 1}, {0, 1}}));
    const CliRun r = run_cli({"weave", a, b});
    CHECK(r.exit_code == 0);
    const json result = r.report().at("result");
    CHECK(result.at("woven") == true);
    CHECK(result.at("universal_lower").get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(result.at("universal_upper").get<double>() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("weave reports are byte-identical across worker counts") {
    const std::string a = frame_file("wt_a.json", woven_test::random_frame(3, 7, 91));
    const std::string b = frame_file("wt_b.json", woven_test::random_frame(3, 7, 92));
    const CliRun one = run_cli({"--deterministic", "weave", a, b, "--threads", "1"});
    REQUIRE(one.exit_code >= 0);
    for (const std::string threads : {"2", "4", "0"}) {
        const CliRun more = run_cli({"--deterministic", "weave", a, b, "--threads", threads});
        CHECK(more.exit_code == one.exit_code);
        CHECK(more.out == one.out);
    }
}

TEST_CASE("weave-multi scans every assignment across three frames") {
    const std::string a = frame_file("m1.json", f_112());
    const std::string b = frame_file("m2.json", f_112());
    const std::string c = frame_file("m3.json", f_112());
    const CliRun r = run_cli({"weave-multi", a, b, c});
    CHECK(r.exit_code == 0);
    const json result = r.report().at("result");
    CHECK(result.at("woven") == true);
    CHECK(result.at("partitions_checked") == 27);
}

TEST_CASE("certify reports an applicable certificate with exit 0") {
    const std::string f = frame_file("onb2.json", woven_test::onb(2));
    const std::string u = write_file("u09.json", R"({"matrix": [[0.9, 0], [0, 0.9]]})");
    const CliRun r = run_cli({"certify", "operator_multiplier", f, "--u", u});
    REQUIRE(r.exit_code == 0);
    const json j = r.report();
    CHECK(j.at("command") == "certify operator_multiplier");
    CHECK(j.at("inputs") == json::array({f, u}));
    const json result = j.at("result");
    CHECK(result.at("name") == "operator_multiplier");
    CHECK(result.at("kind") == "two_sided");
    CHECK(result.at("applicable") == true);
    CHECK(result.at("guaranteed_lower").get<double>() ==
          doctest::Approx(0.81).epsilon(1e-12));
    CHECK(result.at("quantities").at("deviation").get<double>() ==
          doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("certify reports a non-applicable certificate with exit 1") {
    const std::string f = frame_file("wide2.json", Frame(2, {{2, 0}, {0, 2}}));
    const CliRun r = run_cli({"certify", "canonical_dual_self", f});
    CHECK(r.exit_code == 1);
    const json result = r.report().at("result");
    CHECK(result.at("applicable") == false);
    CHECK(result.contains("failed_condition"));
    CHECK_FALSE(result.contains("guaranteed_lower"));
}

TEST_CASE("certify turns a non-woven hypothesis pair into a negative result") {
    const std::string a = frame_file("nw_a.json", f_112());
    const std::string b = frame_file("nw_b.json", f_121());
    const CliRun r = run_cli({"certify", "dual_transfer", a, b});
    CHECK(r.exit_code == 1);
    const json result = r.report().at("result");
    CHECK(result.at("applicable") == false);
    const std::string reason = result.at("failed_condition").get<std::string>();
    CHECK(reason.find("not woven") != std::string::npos);
}

TEST_CASE("certify scalar_weaving takes comma-separated scalar lists") {
    const std::string a = frame_file("sw_a.json", f_112());
    const std::string b = frame_file("sw_b.json", Frame(2, {{1, 0}, {0, 1}, {0, 1}}));
    const CliRun r =
        run_cli({"certify", "scalar_weaving", a, b, "--alpha=1,2,1", "--beta=-1,1,3"});
    REQUIRE(r.exit_code == 0);
    const json result = r.report().at("result");
    CHECK(result.at("guaranteed_lower").get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(result.at("guaranteed_upper").get<double>() == doctest::Approx(18.0).epsilon(1e-9));
}

TEST_CASE("certify transitive_bridge runs on scalars alone") {
    const CliRun r = run_cli({"certify", "transitive_bridge", "--a1", "1", "--a2", "1",
                              "--b-psi", "1.5", "--b1", "2", "--b2", "2"});
    REQUIRE(r.exit_code == 0);
    const json j = r.report();
    CHECK(j.at("inputs") == json::array());
    CHECK(j.at("result").at("guaranteed_lower").get<double>() ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("input errors exit with code 2") {
    const std::string malformed = write_file("bad1.json", "{");
    CHECK(run_cli({"bounds", malformed}).exit_code == 2);

    const std::string unknown_field = write_file(
        "bad2.json", R"({"dim": 2, "vectors": [[1, 0], [0, 1]], "extra": 1})");
    CHECK(run_cli({"bounds", unknown_field}).exit_code == 2);

    const std::string zero_dim = write_file("bad3.json", R"({"dim": 0, "vectors": []})");
    CHECK(run_cli({"bounds", zero_dim}).exit_code == 2);

    const std::string bad_entry =
        write_file("bad4.json", R"({"dim": 1, "vectors": [["abc"]]})");
    CHECK(run_cli({"bounds", bad_entry}).exit_code == 2);

    CHECK(run_cli({"bounds", (work_dir() / "missing.json").string()}).exit_code == 2);
    CHECK(run_cli({"no-such-command"}).exit_code == 2);
    CHECK(run_cli({"certify", "no_such_certificate"}).exit_code == 2);
    CHECK(run_cli({"weave", frame_file("only_one.json", f_112())}).exit_code == 2);
    CHECK(run_cli({"weave", frame_file("x1.json", f_112()),
                   frame_file("x2.json", f_112()), "--exhaustive",
                   "--cert", "synthesis_proximity"})
              .exit_code == 2);
}

TEST_CASE("a rank-deficient pair is a negative verdict, not an input error") {
    const std::string rank_deficient =
        write_file("flat.json", R"({"dim": 2, "vectors": [[1, 0], [2, 0]]})");
    const CliRun r = run_cli({"weave", rank_deficient, rank_deficient});
    CHECK(r.exit_code == 1);
    CHECK(r.report().at("result").at("woven") == false);
}

TEST_CASE("weave --cert proves wovenness through a named certificate") {
    const std::string a = frame_file("wc_a.json", woven_test::onb(2));
    const std::string b = frame_file("wc_b.json", Frame(2, {{0.9, 0}, {0, 0.9}}));
    const CliRun r = run_cli({"weave", a, b, "--cert", "synthesis_proximity"});
    REQUIRE(r.exit_code == 0);
    const json j = r.report();
    CHECK(j.at("command") == "weave --cert synthesis_proximity");
    CHECK(j.at("result").at("name") == "synthesis_proximity");
    CHECK(j.at("result").at("applicable") == true);
}

TEST_CASE("numeric entries accept hex-float strings") {
    const std::string path = write_file(
        "hex.json", R"({"dim": 2, "vectors": [["0x1p0", 0], [0, "0x1.8p1"]]})");
    const CliRun r = run_cli({"bounds", path});
    REQUIRE(r.exit_code == 0);
    CHECK(r.report().at("result").at("lower").get<double>() ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.report().at("result").at("upper").get<double>() ==
          doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("dual command lists seeded verified duals") {
    const std::string path = frame_file("dual3.json", Frame(2, {{3, 0}, {3, 0}, {0, 1}}));
    const CliRun r = run_cli({"dual", path, "--count", "3", "--seed", "5", "--scale", "1"});
    REQUIRE(r.exit_code == 0);
    const json result = r.report().at("result");
    CHECK(result.at("excess") == 1);
    const json canonical = result.at("canonical").at("vectors");
    CHECK(canonical[0][0].get<double>() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(canonical[2][1].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(result.at("duals").size() == 3);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(result.at("duals")[k].at("seed") == 5 + k);
        CHECK(result.at("duals")[k].at("verified") == true);
    }
}

TEST_CASE("search command is seeded and exits by outcome") {
    const std::vector<std::string> args = {"--deterministic", "search", "--dim", "2",
                                           "--count", "3", "--trials", "40",
                                           "--seed", "7"};
    const CliRun a = run_cli(args);
    const CliRun b = run_cli(args);
    CHECK(a.out == b.out);
    const json result = a.report().at("result");
    const std::size_t found = result.at("found").get<std::size_t>();
    CHECK(a.exit_code == (found >= 1 ? 0 : 1));
    CHECK(result.at("counterexamples").size() == found);
}

TEST_CASE("frame JSON round-trips bit-exactly") {
    SplitMix64 rng(2718);
    for (int k = 0; k < 50; ++k) {
        const std::size_t d = 1 + k % 4;
        const std::size_t n = d + k % 3;
        std::vector<std::vector<double>> vectors(n, std::vector<double>(d));
        for (auto& v : vectors) {
            for (double& x : v) x = rng.symmetric(10.0);
        }
        vectors[0][0] = 1.0 / 3.0;  // a value with no short decimal form
        const Frame f(d, vectors);
        const json dumped = json::parse(frame_to_json(f).dump());
        const Frame back = frame_from_json(dumped);
        CHECK(back == f);
    }
}
