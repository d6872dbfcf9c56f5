#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"

#include "gptdyn/cli.hpp"
#include "gptdyn/config.hpp"
#include "gptdyn/errors.hpp"
#include "gptdyn/report.hpp"

using namespace gptdyn;
namespace fs = std::filesystem;

namespace {

const char *kGbitConfig = R"({
  "name": "gbit",
  "measurements": [
    {"label": "Z", "outcomes": 2, "role": "branch"},
    {"label": "X", "outcomes": 2, "role": "fiducial"}
  ],
  "state_space": {
    "type": "polytope_v",
    "vertices": [["1/1", "1/1", "1/1"], ["1/1", "1/1", "0/1"], ["1/1", "0/1", "1/1"], ["1/1", "0/1", "0/1"]]
  }
})";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
   public:
    TempDir() : path_(fs::temp_directory_path() / ("gptdyn_test_" + std::to_string(std::random_device{}()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string write(const std::string &name, const std::string &text) const {
        auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }

   private:
    fs::path path_;
};

int error_line(const std::function<void()> &f) {
    try {
        f();
    } catch (const ParseError &e) {
        return e.line;
    }
    return -1;
}

}  // namespace

TEST(load_theory, gbit_and_cube) {
    auto g = load_theory(kGbitConfig);
    EXPECT_EQ(g.name(), "gbit");
    EXPECT_EQ(g.N(), 2u);
    EXPECT_EQ(g.M(), 1u);
    EXPECT_EQ(g.d(), 3u);
    EXPECT_EQ(g.state_space().halfspaces.size(), 4u);
    auto cube = load_theory(serialize_theory(make_boxworld(3, 2)));
    EXPECT_EQ(cube.N(), 2u);
    EXPECT_EQ(cube.M(), 2u);
    EXPECT_EQ(cube.d(), 4u);
    EXPECT_EQ(cube.state_space().vertices.size(), 8u);
}

TEST(load_theory, validation_errors) {
    std::string dup = kGbitConfig;
    dup.replace(dup.find("\"fiducial\""), 10, "\"branch\"");
    EXPECT_THROW(load_theory(dup), ValidationError);
    std::string outside = kGbitConfig;
    outside.replace(outside.find("[\"1/1\", \"0/1\", \"0/1\"]"), 21, "[\"1/1\", \"0/1\", \"3/2\"]");
    try {
        load_theory(outside);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_NE(std::string(e.what()).find("vertex 3"), std::string::npos) << e.what();
    }
    // boxworld(4,3): d = 9 vertices without halfspaces.
    auto big = nlohmann::json::parse(serialize_theory(make_boxworld(4, 3)));
    big["state_space"].erase("halfspaces");
    EXPECT_THROW(load_theory(big.dump()), UnsupportedError);
}

TEST(load_theory, parse_errors_carry_line_numbers) {
    const std::string empty = "{\n  \"measurements\": [],\n  \"state_space\": {\"type\": \"ball\"}\n}\n";
    EXPECT_EQ(error_line([&] { load_theory(empty); }), 2);
    const std::string broken = "{\n  \"measurements\": [\n    {\"label\": \"Z\",,}\n  ]\n}\n";
    EXPECT_EQ(error_line([&] { load_theory(broken); }), 3);
    std::string flt = kGbitConfig;
    flt.replace(flt.find("\"0/1\""), 5, "0.5");
    EXPECT_EQ(error_line([&] { load_theory(flt); }), 9);
    const std::string badtype = "{\n  \"measurements\": [{\"label\": \"Z\", \"outcomes\": 2, \"role\": \"branch\"}],\n"
                                "  \"state_space\": {\n    \"type\": \"sphere\"\n  }\n}\n";
    EXPECT_EQ(error_line([&] { load_theory(badtype); }), 4);
    try {
        load_theory(empty);
    } catch (const ParseError &e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 2:", 0), 0u) << e.what();
    }
}

TEST(load_theory, polytope_h_and_ball) {
    const char *h = R"({"measurements": [{"label": "Z", "outcomes": 2, "role": "branch"},
                                         {"label": "X", "outcomes": 2, "role": "fiducial"}],
                        "state_space": {"type": "polytope_h", "halfspaces": [
                          {"a": ["0/1", "-1/1", "0/1"], "b": "0/1"}, {"a": ["0/1", "1/1", "0/1"], "b": "1/1"},
                          {"a": ["0/1", "0/1", "-1/1"], "b": "0/1"}, {"a": ["0/1", "0/1", "1/1"], "b": "1/1"}]}})";
    EXPECT_EQ(load_theory(h).state_space().vertices.size(), 4u);
    auto q = load_theory(serialize_theory(make_qubit()));
    EXPECT_TRUE(q.state_space().is_ball());
}

TEST(serialize_theory, round_trip_is_byte_identical) {
    for (const auto &name : builtin_names()) {
        std::string once = serialize_theory(make_builtin(name));
        EXPECT_EQ(serialize_theory(load_theory(once)), once) << name;
    }
}

TEST(transformation_file, round_trip) {
    RMat t{{1, 0, 0}, {0, 1, 0}, {Rat(1, 2), Rat(-1, 3), 1}};
    std::string text = serialize_transformation(t);
    EXPECT_NE(text.find("\"-1/3\""), std::string::npos);
    EXPECT_EQ(parse_transformation(text), t);
    EXPECT_EQ(serialize_transformation(parse_transformation(text)), text);
    EXPECT_THROW(parse_transformation(R"({"rows": [["1/1", "0/1"]]})"), ParseError);
    EXPECT_THROW(parse_transformation(R"({"cols": []})"), ParseError);
}

TEST(cli, solve_gbit_low) {
    auto r = cli({"solve", "--builtin", "gbit", "--branch", "low", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"], "unique_identity");
    EXPECT_EQ(j["branch"], "low");
    EXPECT_EQ(j["family_dim"], 0);
    EXPECT_EQ(j["forced_fixed_count"], 3);
}

TEST(cli, theorem_qubit) {
    auto r = cli({"theorem", "--builtin", "qubit"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("non-classical dynamics present"), std::string::npos);
}

TEST(cli, verify_identity_file) {
    TempDir dir;
    auto path = dir.write("id.json", serialize_transformation(RMat::identity(3)));
    auto r = cli({"verify", "--builtin", "gbit", "--branch", "low", "--transform", path, "--format", "json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "pass");
    RMat bad{{1, 0, 0}, {0, 1, 0}, {Rat(1, 2), Rat(-1, 2), 1}};
    auto bad_path = dir.write("bad.json", serialize_transformation(bad));
    auto f = cli({"verify", "--builtin", "gbit", "--branch", "low", "--transform", bad_path});
    EXPECT_EQ(f.code, 0);
    EXPECT_NE(f.out.find("FAIL"), std::string::npos);
}

TEST(cli, theory_file) {
    TempDir dir;
    auto path = dir.write("square.json", kGbitConfig);
    auto r = cli({"analyze", "--theory", path, "--format", "json"});
    EXPECT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["class"], "fully_independent");
    EXPECT_EQ(j["per_branch_freedom"]["up"], 1);
    auto empty = dir.write("empty.json", "{\n  \"measurements\": [],\n  \"state_space\": {\"type\": \"ball\"}\n}\n");
    auto e = cli({"analyze", "--theory", empty});
    EXPECT_EQ(e.code, 2);
    EXPECT_NE(e.err.find("line 2"), std::string::npos) << e.err;
}

TEST(cli, exit_codes) {
    EXPECT_EQ(cli({"solve", "--builtin", "pr-box"}).code, 2);
    EXPECT_EQ(cli({"solve", "--theory", "/nonexistent/theory.json"}).code, 2);
    EXPECT_EQ(cli({"solve"}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
    EXPECT_EQ(cli({"solve", "--builtin", "gbit", "--format", "yaml"}).code, 2);
    EXPECT_EQ(cli({"solve", "--builtin", "gbit", "--branch", "middle"}).code, 2);
    EXPECT_EQ(cli({"mub", "--builtin", "gbit", "--labels", "X"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(cli, demo_passes) {
    auto r = cli({"demo"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("not a literature model"), std::string::npos);
    EXPECT_EQ(cli({"demo", "--format", "json"}).code, 0);
}

TEST(cli, text_tables) {
    auto cube = cli({"analyze", "--builtin", "cube"});
    EXPECT_NE(cube.out.find("up      2"), std::string::npos) << cube.out;
    EXPECT_NE(cube.out.find("low     2"), std::string::npos) << cube.out;
    auto octa = cli({"solve", "--builtin", "octahedron", "--format", "json"});
    for (const auto &b : nlohmann::json::parse(octa.out)) {
        EXPECT_EQ(b["family_dim"], 1);
        EXPECT_EQ(b["result"], "family");
    }
}

TEST(cli, json_reports_round_trip_and_stay_exact) {
    TempDir dir;
    auto id = dir.write("id.json", serialize_transformation(RMat::identity(4)));
    std::vector<std::vector<std::string>> commands;
    for (const auto &name : builtin_names()) {
        commands.push_back({"analyze", "--builtin", name});
        commands.push_back({"solve", "--builtin", name});
        commands.push_back({"theorem", "--builtin", name});
        if (make_builtin(name).M() > 0) {
            commands.push_back({"mub", "--builtin", name});
        }
    }
    commands.push_back({"verify", "--builtin", "qubit", "--branch", "up", "--transform", id});
    commands.push_back({"verify", "--builtin", "cube", "--branch", "low", "--transform", id});
    commands.push_back({"demo"});
    for (auto c : commands) {
        auto text = cli(c);
        EXPECT_EQ(text.code, 0) << c[0] << " " << c[2] << text.err;
        EXPECT_EQ(text.out.find("0.333"), std::string::npos);
        c.insert(c.end(), {"--format", "json"});
        auto r = cli(c);
        EXPECT_EQ(r.code, 0) << c[0] << " " << c[2] << r.err;
        EXPECT_EQ(r.out.find("0.333"), std::string::npos);
        EXPECT_EQ(dump_report(nlohmann::json::parse(r.out)), r.out) << c[0] << " " << c[2];
    }
}

TEST(report, mub_counterexample_schema) {
    StateSpaceSpec ss;
    ss.vertices = {RVec{1, 1, 1}, RVec{1, 0, 1}, RVec{1, 0, 0}, RVec{1, 1, Rat(1, 2)}};
    auto t = TheorySpec::create("lopsided", {{"Z", 2, Role::Branch}, {"X", 2, Role::Fiducial}}, ss);
    auto j = mub_json(is_mutually_unbiased(t, {"X", "Z"}));
    EXPECT_EQ(j["verdict"], "not_unbiased");
    ASSERT_TRUE(j["counterexample"].is_object());
    EXPECT_EQ(j["counterexample"]["measurement"], "X");
    EXPECT_EQ(j["counterexample"]["permutation"], nlohmann::json::array({1, 0}));
    for (const auto &x : j["counterexample"]["state"]) {
        EXPECT_TRUE(x.is_string());
        EXPECT_NE(x.get<std::string>().find('/'), std::string::npos);
    }
}

TEST(shipped_configs, load_and_behave) {
    const std::string dir = GPTDYN_CONFIG_DIR;
    auto square = load_theory_file(dir + "/square.json");
    auto diamond = load_theory_file(dir + "/diamond.json");
    auto flip = load_transformation_file(dir + "/flip_x.json");
    EXPECT_EQ(classify_restriction(square).cls, RestrictionClass::FullyIndependent);
    EXPECT_EQ(classify_restriction(diamond).cls, RestrictionClass::FullyConditionallyRestricted);
    EXPECT_TRUE(verify_transformation(diamond, flip, 0).pass);
    EXPECT_FALSE(verify_transformation(square, flip, 0).pass);
    EXPECT_TRUE(compare_monotonicity(square, diamond).strict);
}
