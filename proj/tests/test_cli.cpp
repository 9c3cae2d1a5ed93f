#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wf/clirun.hpp"
#include "wf/document.hpp"
#include "wf/fixtures.hpp"

using namespace wf;

namespace {

int run(const std::vector<std::string>& args, std::string& out) {
    std::ostringstream os, es;
    int code = run_cli(args, os, es);
    out = os.str() + es.str();
    return code;
}

std::string temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "wf_cli_test";
    std::filesystem::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("fixtures round-trip and validate") {
    std::string dir = temp_dir();
    std::string out;
    CHECK(run({"fixtures", "all", "--out", dir}, out) == 0);
    for (auto& name : fixtures::corpus_names()) {
        std::string path = dir + "/" + name + ".json";
        DocumentSet set = load_documents(path);
        REQUIRE(set.documents.size() == 1);
        std::string report;
        INFO(name);
        CHECK(run({"validate", path}, report) == 0);
    }
}

TEST_CASE("serialization round-trips preserve the complex") {
    GoodCompData g = fixtures::rstar2_torus();
    std::string text = good_comp_to_json("x", g);
    DocumentSet set = parse_documents(text);
    const GoodCompDocument* doc = set.find_good_comp("x");
    REQUIRE(doc != nullptr);
    CHECK(doc->data.K.n_simplices() == g.K.n_simplices());
    CHECK(doc->data.divisor_count() == g.divisor_count());
    // identical output when re-serialized with sorted divisor order
    std::string again = good_comp_to_json("x", doc->data);
    CHECK(text == again);
}

TEST_CASE("reports are deterministic") {
    std::string dir = temp_dir();
    std::string out;
    REQUIRE(run({"fixtures", "rstar", "--out", dir}, out) == 0);
    std::string a, b;
    CHECK(run({"weight", dir + "/rstar.json", "--format", "structured"}, a) == 0);
    CHECK(run({"weight", dir + "/rstar.json", "--format", "structured"}, b) == 0);
    CHECK(a == b);
    CHECK(a.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("malformed documents exit with code two") {
    std::string dir = temp_dir();
    std::string path = dir + "/broken.json";
    {
        std::ofstream f(path);
        f << "{\"kind\": \"good_compactification\"}";
    }
    std::string out;
    CHECK(run({"validate", path}, out) == 2);
    {
        std::ofstream f(path);
        f << "not json at all";
    }
    CHECK(run({"validate", path}, out) == 2);
    {
        // simplex outside the declared vertex range
        std::ofstream f(path);
        f << "{\"kind\": \"good_compactification\", \"name\": \"bad\", \"vertices\": 2, "
             "\"maximal_simplices\": [[0, 5]]}";
    }
    CHECK(run({"validate", path}, out) == 2);
}

TEST_CASE("geometric check failures exit with code one") {
    std::string dir = temp_dir();
    std::string path = dir + "/nodal.json";
    {
        // a figure-eight divisor on the torus fails the crossing counts
        std::ofstream f(path);
        GoodCompData fig8 = GoodCompData::build(
            fixtures::torus().K, {"loop"},
            {{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {4, 8}, {0, 12}, {8, 12}}});
        f << good_comp_to_json("nodal", fig8);
    }
    std::string out;
    CHECK(run({"validate", path}, out) == 1);
}

TEST_CASE("pages dump matches the gysin dump dimensionwise") {
    std::string dir = temp_dir();
    std::string out;
    REQUIRE(run({"fixtures", "rstar", "--out", dir}, out) == 0);
    std::string pages, gysin;
    CHECK(run({"pages", dir + "/rstar.json", "--format", "csv"}, pages) == 0);
    CHECK(run({"gysin", dir + "/rstar.json", "--format", "csv"}, gysin) == 0);
    // corner first page entries (p,q,dim): (0,0,1) (0,1,1) (-1,1,2)
    CHECK(pages.find("page,corner:r=1,0,0,1,") != std::string::npos);
    CHECK(pages.find("page,corner:r=1,0,1,1,1") != std::string::npos);
    CHECK(pages.find("page,corner:r=1,-1,1,2,") != std::string::npos);
    // gysin dump rows (p,k,dim,rank)
    CHECK(gysin.find("page,gysin,0,0,1,0") != std::string::npos);
    CHECK(gysin.find("page,gysin,0,1,1,1") != std::string::npos);
    CHECK(gysin.find("page,gysin,1,0,2,0") != std::string::npos);
}

TEST_CASE("weight command with compare flag") {
    std::string dir = temp_dir();
    std::string out;
    REQUIRE(run({"fixtures", "all", "--out", dir}, out) == 0);
    std::string rep;
    CHECK(run({"weight", dir + "/rstar2-torus.json", "--compare", dir + "/rstar2-p2.json"}, rep) == 0);
    CHECK(rep.find("tables-agree") != std::string::npos);
    CHECK(run({"weight", dir + "/xline3.json", "--compare", dir + "/rstar2-torus.json"}, rep) == 1);
}

TEST_CASE("subdivide flag is accepted and bounded") {
    std::string dir = temp_dir();
    std::string out;
    REQUIRE(run({"fixtures", "rstar", "--out", dir}, out) == 0);
    std::string rep;
    CHECK(run({"weight", dir + "/rstar.json", "--subdivide", "1"}, rep) == 0);
    CHECK(rep.find("W[-1]=1") != std::string::npos);
    CHECK(run({"weight", dir + "/rstar.json", "--subdivide", "7"}, rep) == 2);
}

TEST_CASE("duality and cech commands run on fixtures") {
    std::string dir = temp_dir();
    std::string out;
    REQUIRE(run({"fixtures", "rstar", "--out", dir}, out) == 0);
    std::string rep;
    CHECK(run({"duality", dir + "/rstar.json"}, rep) == 0);
    CHECK(rep.find("annihilator-identity") != std::string::npos);
    CHECK(run({"cech", dir + "/rstar.json"}, rep) == 0);
    CHECK(rep.find("closed_support_homology: 0 2") != std::string::npos);
    CHECK(run({"corner", dir + "/rstar.json"}, rep) == 0);
    CHECK(rep.find("kernel-equals-first-level") != std::string::npos);
}

TEST_CASE("assemble and blowup-check drive through documents") {
    std::string dir = temp_dir();
    std::string out;
    REQUIRE(run({"fixtures", "all", "--out", dir}, out) == 0);
    std::string rep;
    CHECK(run({"assemble", dir + "/lemniscate.json", "--format", "csv"}, rep) == 0);
    CHECK(rep.find("weight,1,-1,1") != std::string::npos);
    CHECK(rep.find("weight,1,0,2") != std::string::npos);
    CHECK(run({"assemble", dir + "/lemniscate-rstar.json", "--format", "csv"}, rep) == 0);
    CHECK(rep.find("weight,1,-2,1") != std::string::npos);
    CHECK(rep.find("weight,1,-1,3") != std::string::npos);
    CHECK(rep.find("weight,1,0,4") != std::string::npos);
    CHECK(run({"blowup-check", dir + "/blowup-transverse.json"}, rep) == 0);
    CHECK(run({"blowup-check", dir + "/blowup-contained.json"}, rep) == 0);
    CHECK(run({"blowup-check", dir + "/blowup-sphere-square.json"}, rep) == 0);
}

TEST_CASE("torus query document") {
    std::string dir = temp_dir();
    std::string path = dir + "/torus.json";
    {
        std::ofstream f(path);
        f << "{\"kind\": \"torus_query\", \"rank\": 2, \"script\": ["
             "\"elem a = 00+11\", \"elem b = 00+10\", \"mul c a b\", \"aug c\", \"grade 2 c\"]}";
    }
    std::string out;
    CHECK(run({"torus", path}, out) == 0);
    CHECK(out.find("aug c = 0") != std::string::npos);
    CHECK(out.find("grade 2 c = {0,1}") != std::string::npos);
}
