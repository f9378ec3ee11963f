#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string binary() {
    const char* bin = std::getenv("KCOST_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "KCOST_BIN must point at the CLI binary");
    return bin;
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
    const std::string outfile = "cli_stdout.tmp";
    const std::string cmd =
        env_prefix + binary() + " " + args + " > " + outfile + " 2> cli_stderr.tmp";
    const int st = std::system(cmd.c_str());
    RunResult r;
    if (st != -1 && WIFEXITED(st)) r.code = WEXITSTATUS(st);
    std::ifstream f(outfile);
    std::stringstream ss;
    ss << f.rdbuf();
    r.out = ss.str();
    return r;
}

nlohmann::json parse(const RunResult& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    REQUIRE_MESSAGE(f.good(), path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> ls;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) ls.push_back(line);
    return ls;
}

struct Cleanup {
    std::vector<std::string> paths;
    ~Cleanup() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
};

}  // namespace

TEST_CASE("help exits zero, junk exits one") {
    CHECK(run("--help").code == 0);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("gen lower1d --epsilon 0.5 --t 1").code == 1);       // out of range
    CHECK(run("solve --data no_such_file.csv --k 1").code == 1);   // missing file
    CHECK(run("seed --data no_such_file.csv").code == 1);          // missing file
}

TEST_CASE("hard instance pipeline through the binary") {
    Cleanup gc{{"cli_lower.csv", "cli_curve.csv", "cli_stdout.tmp", "cli_stderr.tmp"}};

    auto g = run("gen lower1d --epsilon 0.03125 --t 2 --out cli_lower.csv");
    REQUIRE(g.code == 0);
    auto j = parse(g);
    CHECK(j["tool"] == "kcost");
    CHECK(j["command"] == "gen lower1d");
    CHECK(j["spec"]["r"] == 2);
    CHECK(j["spec"]["eta"] == 5);
    CHECK(j["spec"]["realized_n"] == 10);
    CHECK(j["spec"]["delta_apex"] == 64.0);

    auto s = run("solve --data cli_lower.csv --k 4 --method dp1d");
    REQUIRE(s.code == 0);
    j = parse(s);
    CHECK(j["value"] == 0.0);
    CHECK(j["exact"] == true);

    auto l = run("estimate-l --data cli_lower.csv --k 1 --epsilon 0.03125");
    REQUIRE(l.code == 0);
    j = parse(l);
    CHECK(j["l_hat"] == 4);
    CHECK(j["exact"] == true);
    CHECK(j["delta_k"] == 64.0);

    auto c = run("decay-curve --data cli_lower.csv --oracle dp1d --out cli_curve.csv");
    REQUIRE(c.code == 0);
    const auto rows = lines_of(slurp("cli_curve.csv"));
    REQUIRE(rows.size() == 11);
    CHECK(rows[0] == "m,cost,exact");
    CHECK(rows[1] == "1,64,1");
    CHECK(rows[4] == "4,0,1");
    CHECK(rows[10] == "10,0,1");
    // Middle rows decay: parse and compare against the exact optima.
    CHECK(std::stod(rows[2].substr(2)) == doctest::Approx(6.4).epsilon(1e-12));
    CHECK(std::stod(rows[3].substr(2)) == doctest::Approx(3.2).epsilon(1e-12));

    auto o = run("seed --data cli_lower.csv --experiment overseed --k 1 "
                 "--epsilon 0.03125 --oracle dp1d --trials 5");
    REQUIRE(o.code == 0);
    j = parse(o);
    CHECK(j["m_used"] == 4);
    CHECK(j["success_rate"] == 1.0);
}

TEST_CASE("plain seeding writes the picked points") {
    Cleanup gc{{"cli_seed_data.csv", "cli_picks.csv", "cli_stdout.tmp",
                "cli_stderr.tmp"}};
    auto g = run("gen random --kind uniform-box --n 15 --d 2 --seed 4 "
                 "--out cli_seed_data.csv");
    REQUIRE(g.code == 0);
    auto s = run("seed --data cli_seed_data.csv --m 3 --seed 9 "
                 "--centers-out cli_picks.csv");
    REQUIRE(s.code == 0);
    auto j = parse(s);
    CHECK(j["chosen"].size() == 3);
    CHECK(j["early_stop"] == false);
    const auto rows = lines_of(slurp("cli_picks.csv"));
    REQUIRE(rows.size() == 4);  // dim header + 3 points
    CHECK(rows[0] == "# dim=2");
}

TEST_CASE("reports are deterministic apart from the timestamp") {
    Cleanup gc{{"cli_rand_a.csv", "cli_rand_b.csv", "cli_report.json",
                "cli_stdout.tmp", "cli_stderr.tmp"}};
    const std::string args =
        "gen random --kind gaussian-mixture --n 20 --d 2 --k 2 --sigma 1.5 "
        "--box-lo -3 --box-hi 3 --seed 7";
    auto a = run(args + " --out cli_rand_a.csv --report cli_report.json");
    auto b = run(args + " --out cli_rand_b.csv");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp("cli_rand_a.csv") == slurp("cli_rand_b.csv"));

    auto ja = parse(a);
    auto jb = parse(b);
    // The report file carries the same text that went to stdout.
    CHECK(slurp("cli_report.json") == a.out);
    ja.erase("timestamp");
    jb.erase("timestamp");
    ja["config"].erase("out");
    jb["config"].erase("out");
    CHECK(ja == jb);
}

TEST_CASE("seed can come from the environment") {
    Cleanup gc{{"cli_env_a.csv", "cli_env_b.csv", "cli_stdout.tmp",
                "cli_stderr.tmp"}};
    auto a = run("gen random --kind uniform-box --n 10 --d 1 --seed 42 "
                 "--out cli_env_a.csv");
    auto b = run("gen random --kind uniform-box --n 10 --d 1 --out cli_env_b.csv",
                 "KCOST_SEED=42 ");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(slurp("cli_env_a.csv") == slurp("cli_env_b.csv"));
}

TEST_CASE("grid construction certifies its ratio") {
    Cleanup gc{{"cli_pm1.csv", "cli_grid.csv", "cli_stdout.tmp", "cli_stderr.tmp"}};
    write_text("cli_pm1.csv", "# dim=1\n-1\n1\n");
    auto r = run("construct upper1d --data cli_pm1.csv --epsilon 0.5 "
                 "--out cli_grid.csv");
    REQUIRE(r.code == 0);
    auto j = parse(r);
    CHECK(j["size"] == 9);
    CHECK(j["size_bound"] == 12);
    CHECK(j["phi0"] == 2.0);
    CHECK(j["ratio"].get<double>() ==
          doctest::Approx(0.0036796564403574422).epsilon(1e-12));
    CHECK(j["pass"] == true);
    CHECK(lines_of(slurp("cli_grid.csv")).size() == 10);  // header + 9 values
}

TEST_CASE("net build reports a full certificate") {
    auto r = run("nets build --d 2 --epsilon 0.5");
    REQUIRE(r.code == 0);
    auto j = parse(r);
    CHECK(j["certificate"]["size"] == 12);
    CHECK(j["certificate"]["cover_pass"] == true);
    CHECK(j["certificate"]["packing_pass"] == true);
    CHECK(j["certificate"]["min_pairwise"].get<double>() ==
          doctest::Approx(0.5176380902050409).epsilon(1e-14));
    CHECK(j["certificate"]["max_gap"].get<double>() ==
          doctest::Approx(0.2610523844401034).epsilon(1e-14));
}

TEST_CASE("metric commands validate, cover, and fail loudly") {
    Cleanup gc{{"cli_line_metric.csv", "cli_bad_metric.csv", "cli_stdout.tmp",
                "cli_stderr.tmp"}};
    write_text("cli_line_metric.csv",
               "0,1,2,10\n1,0,1,9\n2,1,0,8\n10,9,8,0\n");
    auto v = run("metric validate --metric cli_line_metric.csv");
    CHECK(v.code == 0);
    CHECK(parse(v)["ok"] == true);

    auto c = run("metric cover --metric cli_line_metric.csv --r 4");
    REQUIRE(c.code == 0);
    auto j = parse(c);
    CHECK(j["valid"] == true);
    CHECK(j["size"] == 2);

    auto a = run("construct annuli --metric cli_line_metric.csv --center 0 "
                 "--epsilon 0.5");
    REQUIRE(a.code == 0);
    CHECK(parse(a)["pass"] == true);

    auto d = run("metric doubling --metric cli_line_metric.csv --samples 16");
    CHECK(d.code == 0);
    auto gmm = run("metric gamma --metric cli_line_metric.csv --epsilon 0.5 "
                   "--samples 16");
    CHECK(gmm.code == 0);
    CHECK(parse(gmm)["gamma_hat"].get<int>() >= 1);

    // Triangle violation: validation is exit 2, construction refuses.
    write_text("cli_bad_metric.csv", "0,1,5\n1,0,1\n5,1,0\n");
    auto bad = run("metric validate --metric cli_bad_metric.csv");
    CHECK(bad.code == 2);
    CHECK(parse(bad)["ok"] == false);
    CHECK(run("construct annuli --metric cli_bad_metric.csv --center 0 "
              "--epsilon 0.5")
              .code == 1);
}

TEST_CASE("coreset build then validate round trip") {
    Cleanup gc{{"cli_mix.csv", "cli_ws.csv", "cli_bad_ws.csv", "cli_stdout.tmp",
                "cli_stderr.tmp"}};
    auto g = run("gen random --kind separated-clusters --n 60 --d 2 --k 3 "
                 "--sigma 0.1 --separation 50 --seed 2 --out cli_mix.csv");
    REQUIRE(g.code == 0);

    auto b = run("coreset build --data cli_mix.csv --k 3 --epsilon 0.5 "
                 "--method fan --oracle lloyd --seed 2 --out cli_ws.csv");
    REQUIRE(b.code == 0);
    auto j = parse(b);
    CHECK(j["weight_sum"] == 60.0);

    auto v = run("coreset validate --data cli_mix.csv --coreset cli_ws.csv "
                 "--k 3 --epsilon 0.5 --trials 60 --seed 5");
    CHECK(v.code == 0);
    CHECK(parse(v)["certificate"]["pass"] == true);

    // A coreset whose mass sits far away is rejected with exit 2.
    write_text("cli_bad_ws.csv", "# dim=2\n1000,1000,60\n");
    auto bad = run("coreset validate --data cli_mix.csv --coreset cli_bad_ws.csv "
                   "--k 3 --epsilon 0.5 --trials 30 --seed 5");
    CHECK(bad.code == 2);
    CHECK(parse(bad)["certificate"]["pass"] == false);
}

TEST_CASE("geometric check gates on the ratio") {
    Cleanup gc{{"cli_two.csv", "cli_far.csv", "cli_stdout.tmp", "cli_stderr.tmp"}};
    write_text("cli_two.csv", "# dim=1\n0\n1\n");
    write_text("cli_far.csv", "# dim=1\n5\n");

    auto ok = run("coreset check-geometric --data cli_two.csv --set cli_two.csv "
                  "--k 1 --epsilon 0.5");
    CHECK(ok.code == 0);
    CHECK(parse(ok)["pass"] == true);

    auto bad = run("coreset check-geometric --data cli_two.csv --set cli_far.csv "
                   "--k 1 --epsilon 0.5");
    CHECK(bad.code == 2);
    auto j = parse(bad);
    CHECK(j["pass"] == false);
    CHECK(j["delta_k"] == 0.5);
}

TEST_CASE("planar hard instance reports its certificates") {
    auto r = run("gen lowerd --epsilon 0.03125 --k 2 --d 2 --t 1");
    REQUIRE(r.code == 0);
    auto j = parse(r);
    CHECK(j["spec"]["realized_n"] == 24);
    CHECK(j["spec"]["delta_apex"] == 96.0);
    CHECK(j["spec"]["apex_spacing"] == 1152.0);
    CHECK(j["spec"]["directions"] == 12);
    CHECK(j["net"]["size"] == 12);
}
