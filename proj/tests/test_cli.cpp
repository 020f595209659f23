#include "cli.hpp"

#include "doctest.h"
#include "json.hpp"

#include <sstream>

using nlohmann::json;

namespace {

struct Out {
    int code;
    std::string text;
    json j;
};

Out call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = blowup::cli::run(args, out, err);
    return {code, out.str(), json::parse(out.str())};
}

std::string data(const char* name) { return std::string(BLOWUP_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("cli: lattice pair of a cubic with K") {
    auto o = call({"lattice", "pair", "--r", "6", "--a", "[3,1,1,1,1,1,1]", "--b", "[-3,-1,-1,-1,-1,-1,-1]"});
    CHECK(o.code == 0);
    CHECK(o.j["results"]["value"] == "-3");
    CHECK(o.j["seed"] == 1);
    CHECK_FALSE(o.j.contains("timing_ms"));
}

TEST_CASE("cli: collinear seshadri constant") {
    auto o = call({"seshadri", "exact", "--tag", "collinear", "--r", "7"});
    CHECK(o.code == 0);
    CHECK(o.j["results"]["epsilon"] == "1/7");
    CHECK(o.j["results"]["certificate"] == "orthogonal_pair");
}

TEST_CASE("cli: containment for three coordinate points") {
    auto o = call({"containment", "--config", data("three-points.json"), "-m", "3", "-r", "2"});
    CHECK(o.code == 0);
    CHECK(o.j["results"]["contained"] == true);
    CHECK(o.j["results"]["rule"] == "direct");
    auto n = call({"containment", "--config", data("three-points.json"), "-m", "1", "-r", "2"});
    CHECK(n.code == 0);
    CHECK(n.j["results"]["contained"] == false);
}

TEST_CASE("cli: reports are byte-identical for identical inputs") {
    std::vector<std::string> a{"--seed", "7", "alpha", "--config", data("random-five.json"), "-m", "2"};
    auto x = call(a), y = call(a);
    CHECK(x.code == 0);
    CHECK(x.text == y.text);
    CHECK(x.j["results"]["alpha"] == 4);
    auto z = call({"--seed", "8", "alpha", "--config", data("random-five.json"), "-m", "2"});
    CHECK(z.j["inputs_digest"] != x.j["inputs_digest"]);

    std::vector<std::string> pn{"prove-nef", "--r", "6", "--class", "[5,2,2,2,2,2,2]"};
    CHECK(call(pn).text == call(pn).text);
}

TEST_CASE("cli: replaying the echoed command reproduces the report") {
    auto first = call({"seshadri", "bound", "--n", "6"});
    std::vector<std::string> again = first.j["command"].get<std::vector<std::string>>();
    CHECK(call(again).text == first.text);
}

TEST_CASE("cli: negative answers exit 0") {
    auto o = call({"prove-nef", "--r", "5", "--class", "[2,1,1,1,1,1]"});
    CHECK(o.code == 0);
    CHECK(o.j["results"]["status"] == "not_nef");
    auto c = call({"cone", "nef", "--tag", "generic", "--r", "6", "--c", "[1,1,1,0,0,0,0]"});
    CHECK(c.code == 0);
    CHECK(c.j["results"]["nef"] == false);
}

TEST_CASE("cli: input errors exit 2 with a code") {
    auto a = call({"lattice", "pair", "--r", "5", "--a", "[3,1,1,1,1,1]", "--b", "[1,2]"});
    CHECK(a.code == 2);
    CHECK(a.j["error"]["code"] == "dimension_mismatch");
    CHECK(call({"lattice", "pair", "--r", "1", "--a", "[3,", "--b", "[1,2]"}).j["error"]["code"] == "malformed_json");
    CHECK(call({"alpha", "--config", data("missing.json"), "-m", "2"}).j["error"]["code"] == "missing_file");
    CHECK(call({"seshadri", "exact", "--tag", "nonsense", "--r", "3"}).code == 2);
    CHECK(call({"frobenius", "--config", data("three-points.json"), "--q", "2"}).code == 2);
    CHECK(call({"nosuch"}).code == 2);
    CHECK(call({"prove-nef", "--field", "Q", "--r", "2", "--class", "[1,0,0]"}).code == 2);
}

TEST_CASE("cli: nagata search at r = 10 finds nothing") {
    auto o = call({"nagata", "--r", "10", "--bound", "12"});
    CHECK(o.code == 0);
    CHECK(o.j["results"]["survivors"].empty());
    auto sq = call({"nagata", "--r", "16"});
    CHECK(sq.j["results"]["square_shortcut"] == true);
}

TEST_CASE("cli: timing only on request") {
    auto o = call({"--timing", "lattice", "canonical", "--r", "3"});
    CHECK(o.j.contains("timing_ms"));
    CHECK(o.j["results"]["square"] == "6");
}
