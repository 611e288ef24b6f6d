#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <regsets/cli.hpp>

using namespace regsets;

namespace {

struct CliResult {
    int status;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = cli::run(std::move(args), out, err);
    return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("verify: the order-20 fixture certifies (2,3)") {
    const auto r = run_cli({"verify", "--group", "genq:20", "--set",
                            "x2,x8,y,x5y,x8y,x3y,x6y,xy,x,x9,x5", "--subset", "e,x2,x4,x6,x8",
                            "--json"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["a"] == 2);
    CHECK(j["outcome"]["b"] == 3);
    CHECK(j["outcome"]["set_size"] == 5);
    CHECK(j["outcome"]["degree"] == 11);
    CHECK(j["outcome"]["witness"].is_null());
    CHECK(j["status"] == 0);
}

TEST_CASE("verify: non-regular subsets exit 1 with a witness") {
    const auto r = run_cli({"verify", "--group", "cyclic:6", "--set", "1,5", "--subset", "0,1",
                            "--json"});
    REQUIRE(r.status == cli::exit_negative);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["witness"]["u"] == "2");
    CHECK(j["outcome"]["witness"]["v"] == "3");
}

TEST_CASE("verify: empty or full subsets are usage errors, not negatives") {
    CHECK(run_cli({"verify", "--group", "cyclic:6", "--set", "1,5", "--subset", ""}).status ==
          cli::exit_usage);
    CHECK(run_cli({"verify", "--group", "cyclic:6", "--set", "1,5", "--subset", "0,1,2,3,4,5"})
              .status == cli::exit_usage);
}

TEST_CASE("condition1: q8 <i> fails with witness j") {
    const auto r = run_cli({"condition1", "--group", "q8", "--subgroup", "i", "--json"});
    REQUIRE(r.status == cli::exit_negative);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["holds"] == false);
    CHECK(j["outcome"]["witness"] == "j");

    CHECK(run_cli({"condition1", "--group", "genq:20", "--subgroup", "x2"}).status ==
          cli::exit_ok);
}

TEST_CASE("construct: the order-20 example emits the 11-element set") {
    const auto r = run_cli({"construct", "--group", "genq:20", "--subgroup", "x2", "--a", "2",
                            "--b", "3", "--json"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["trace"]["S"].size() == 11);
    CHECK(j["outcome"]["certificate"]["a"] == 2);
    CHECK(j["outcome"]["certificate"]["b"] == 3);
    CHECK(j["outcome"]["trace"]["m"] == 1);
    CHECK(j["outcome"]["trace"]["K"] == nlohmann::json({"x2", "x8"}));

    SECTION("infeasible targets exit 1") {
        CHECK(run_cli({"construct", "--group", "q8", "--subgroup", "i", "--a", "0", "--b", "1"})
                  .status == cli::exit_negative);
    }
}

TEST_CASE("transversal subcommand") {
    const auto ok = run_cli({"transversal", "--group", "genq:20", "--subgroup", "x2", "--json"});
    REQUIRE(ok.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(ok.out);
    CHECK(j["outcome"]["s0"] == nlohmann::json({"y", "x5y", "x5"}));
    CHECK(j["outcome"]["m"] == 1);

    CHECK(run_cli({"transversal", "--group", "q8", "--subgroup", "i"}).status ==
          cli::exit_negative);
}

TEST_CASE("enumerate subcommand") {
    const auto r = run_cli({"enumerate", "--group", "cyclic:6", "--set", "1,5", "--a", "0", "--b",
                            "1", "--json"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["count"] == 3);
    CHECK(j["outcome"]["sets"][0]["set"] == nlohmann::json({"0", "3"}));

    CHECK(run_cli({"enumerate", "--group", "cyclic:6", "--set", "", "--a", "0", "--b", "1"})
              .status == cli::exit_negative);
    CHECK(run_cli({"enumerate", "--group", "cyclic:6", "--set", "1,5", "--a", "0"}).status ==
          cli::exit_usage);
}

TEST_CASE("feasible subcommand") {
    const auto r = run_cli({"feasible", "--group", "q8", "--subgroup", "i", "--json"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["normal"] == true);
    CHECK(j["outcome"]["H"] == nlohmann::json({"1", "-1", "i", "-i"}));
    REQUIRE(j["outcome"]["cells"].size() == 4 * 5);
    for (const auto& cell : j["outcome"]["cells"]) {
        const bool expect = cell["b"].get<int>() % 2 == 0;
        CHECK(cell["feasible"] == expect);
        CHECK(cell["witness"].is_null() != expect);
    }
}

TEST_CASE("quotient subcommand") {
    const auto r = run_cli({"quotient", "--group", "cyclic:4", "--set", "1,3", "--subset", "0,2",
                            "--json"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["outcome"]["matrix"] == nlohmann::json({{0, 2}, {2, 0}}));
    CHECK(j["outcome"]["mu"] == -2);

    CHECK(run_cli({"quotient", "--group", "cyclic:6", "--set", "1,5", "--subset", "0,1"}).status ==
          cli::exit_negative);
}

TEST_CASE("eigcheck subcommand") {
    CHECK(run_cli({"eigcheck", "--group", "cyclic:6", "--set", "1,5", "--lambda", "-1"}).status ==
          cli::exit_ok);
    CHECK(run_cli({"eigcheck", "--group", "cyclic:6", "--set", "1,5", "--lambda", "3"}).status ==
          cli::exit_negative);
}

TEST_CASE("edges flag serializes the graph") {
    const auto r = run_cli({"verify", "--group", "cyclic:4", "--set", "1,3", "--subset", "0,2",
                            "--edges", "--json"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["inputs"]["edges"] ==
          nlohmann::json::parse(R"([["0","1"],["0","3"],["1","2"],["2","3"]])"));
    const auto human = run_cli({"eigcheck", "--group", "cyclic:4", "--set", "1,3", "--lambda",
                                "0", "--edges"});
    CHECK(human.out.find("0 -- 1") != std::string::npos);
}

TEST_CASE("probe-q1 subcommand handles product specs in the group list") {
    const auto r = run_cli({"probe-q1", "--groups",
                            "dihedral:3,product(cyclic:2,cyclic:2),q8", "--json"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["inputs"]["groups"].size() == 3);
    CHECK(j["outcome"]["disagreements"].empty());
    // dihedral:3 contributes reflection subgroups
    CHECK(!j["outcome"]["rows"].empty());
}

TEST_CASE("probe-q1 keeps perm specs with generator commas intact") {
    const auto r = run_cli({"probe-q1", "--groups", "perm:(0 1),(0 1 2),dihedral:3", "--json",
                            "--workers", "2"});
    REQUIRE(r.status == cli::exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["inputs"]["groups"].size() == 2);
    CHECK(j["inputs"]["groups"][0] == "perm:(0 1),(0 1 2)");
    CHECK(j["outcome"]["rows"].size() == 6);  // three reflections in each copy of S3
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).status == cli::exit_usage);
    CHECK(run_cli({"frobnicate"}).status == cli::exit_usage);
    CHECK(run_cli({"verify", "--group", "cyclic:6"}).status == cli::exit_usage);
    CHECK(run_cli({"verify", "--group", "cyclic:99x", "--set", "1", "--subset", "0"}).status ==
          cli::exit_usage);
    CHECK(run_cli({"verify", "--group", "cyclic:6", "--set", "1", "--subset", "0"}).status ==
          cli::exit_usage);  // not inverse-closed
    CHECK(run_cli({"verify", "--group", "cyclic:6", "--set", "1,5", "--subset", "7"}).status ==
          cli::exit_usage);  // unknown element name
    const auto r = run_cli({"construct", "--group", "genq:20", "--subgroup", "y", "--a", "0",
                            "--b", "1"});
    CHECK(r.status == cli::exit_usage);  // <y> is not normal
    CHECK(r.err.find("normal") != std::string::npos);
}

TEST_CASE("help exits 0") {
    const auto r = run_cli({"--help"});
    CHECK(r.status == cli::exit_ok);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("json output round-trips byte-identically") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"verify", "--group", "genq:20", "--set", "x2,x8,y,x5y,x8y,x3y,x6y,xy,x,x9,x5",
              "--subset", "e,x2,x4,x6,x8", "--json"},
             {"construct", "--group", "genq:16", "--subgroup", "x2", "--a", "2", "--b", "2",
              "--json"},
             {"feasible", "--group", "q8", "--subgroup", "-1", "--json"},
             {"transversal", "--group", "cyclic:6", "--subgroup", "3", "--json"},
             {"probe-q1", "--groups", "dihedral:3", "--json"},
         }) {
        const auto r = run_cli(args);
        const auto parsed = nlohmann::ordered_json::parse(r.out);
        CHECK(parsed.dump(2) + "\n" == r.out);
    }
}
