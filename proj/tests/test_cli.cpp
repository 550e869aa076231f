#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ellconn/cli.hpp"

using ellconn::cli::run;

namespace {

std::string data(const char* name) { return std::string(ELLCONN_TEST_DATA) + "/" + name; }

struct Out {
    int code;
    std::string out, err;
};

Out call(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = run(args, o, e);
    return {c, o.str(), e.str()};
}

}  // namespace

TEST_CASE("verify: pass, fail and input errors") {
    Out ok = call({"verify", "--spec", data("hopf_p21.json")});
    CHECK(ok.code == 0);
    CHECK(nlohmann::json::parse(ok.out)["verdict"] == "pass");
    Out bad = call({"verify", "--spec", data("broken.json")});
    CHECK(bad.code == 1);
    CHECK(nlohmann::json::parse(bad.out)["verdict"] == "fail");
    CHECK(call({"build", "--spec", data("unknown_family.json")}).code == 2);
    CHECK(call({"verify", "--spec", data("malformed.json")}).code == 2);
    CHECK(call({"verify", "--spec", data("does_not_exist.json")}).code == 2);
    CHECK(call({"verify", "--spec", data("torus_connection.json")}).code == 0);
    CHECK(call({"verify", "--spec", data("kodaira_wp.json")}).code == 0);
    CHECK(call({"verify", "--spec", data("oper.json")}).code == 0);
}

TEST_CASE("diagnostics are a single line") {
    Out e = call({"build", "--spec", data("unknown_family.json")});
    CHECK(e.err.find('\n') == e.err.size() - 1);
    CHECK(e.out.empty());
}

TEST_CASE("flag handling") {
    CHECK(call({"verify", "--spec", data("hopf_p21.json"), "--bogus"}).code == 2);
    CHECK(call({"verify"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"verify", "--spec", data("hopf_p21.json"), "--samples", "0"}).code == 2);
    CHECK(call({"verify", "--spec", data("hopf_p21.json"), "--format", "xml"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    Out t = call({"verify", "--spec", data("hopf_p21.json"), "--format", "text", "--samples", "20", "--seed", "3"});
    CHECK(t.code == 0);
    CHECK(t.out.find("verdict: pass") == 0);
    CHECK(t.out.find("seed 3, 20 samples") != std::string::npos);
}

TEST_CASE("seed falls back to ELLCONN_SEED") {
    setenv("ELLCONN_SEED", "17", 1);
    Out a = call({"verify", "--spec", data("broken.json")});
    CHECK(nlohmann::json::parse(a.out)["seed"] == 17);
    Out b = call({"verify", "--spec", data("broken.json"), "--seed", "2"});
    CHECK(nlohmann::json::parse(b.out)["seed"] == 2);
    setenv("ELLCONN_SEED", "x1", 1);
    CHECK(call({"verify", "--spec", data("broken.json")}).code == 2);
    unsetenv("ELLCONN_SEED");
}

TEST_CASE("build, curvature and catalog outputs") {
    Out b = call({"build", "--spec", data("hopf_p21.json")});
    CHECK(b.code == 0);
    auto j = nlohmann::json::parse(b.out);
    CHECK(j.contains("F"));
    CHECK(j["family"] == "hopf");
    Out c = call({"curvature", "--spec", data("kodaira_wp.json")});
    CHECK(c.code == 0);
    auto cj = nlohmann::json::parse(c.out);
    CHECK(cj["flat"] == false);
    CHECK(cj["curvature_max"].get<double>() > 1.0);
    Out k = call({"catalog"});
    CHECK(k.code == 0);
    CHECK(nlohmann::json::parse(k.out).size() == 7);
    CHECK(call({"catalog", "--format", "text"}).out.find("kodaira_I") != std::string::npos);
}

TEST_CASE("--out writes the file and stable JSON across runs") {
    const std::string path = "cli_test_out.json";
    CHECK(call({"verify", "--spec", data("kodaira_wp.json"), "--out", path, "--seed", "5"}).code == 0);
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == call({"verify", "--spec", data("kodaira_wp.json"), "--seed", "5"}).out);
    std::remove(path.c_str());
}
