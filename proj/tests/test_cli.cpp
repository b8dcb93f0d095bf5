#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qmf/cli.hpp"
#include "qmf/serialize.hpp"

using namespace qmf;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents)
    {
        static int counter = 0;
        path = "qmf_cli_test_" + std::to_string(counter++) + ".json";
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

const char* kManifold = R"({"b_plus":3,"rank":1,"Q":[[1]],"w":[0],
  "classes":[{"K":[1],"d":2,"f":["1","3/2"]},{"K":[-1],"d":2,"f":["1","3/2"]}]})";

const char* kSimpleType = R"({"b_plus":3,"rank":2,"Q":[[0,1],[1,0]],"w":[0,0],
  "classes":[{"K":[2,0],"d":0,"f":["3"]},{"K":[-2,0],"d":0,"f":["3"]}]})";

} // namespace

TEST_CASE("series command")
{
    std::ostringstream out, err;
    CHECK(cli::cmd_series("V", 3, "text", out, err) == 0);
    CHECK(out.str().find("72/24\t2816\t0") != std::string::npos);

    std::ostringstream out2, err2;
    CHECK(cli::cmd_series("h", 2, "json", out2, err2) == 0);
    const auto j = parse_json(out2.str());
    CHECK(j["grading"] == 24);

    std::ostringstream out3, err3;
    CHECK(cli::cmd_series("nosuch", 2, "text", out3, err3) == 2);
    const auto diag = parse_json(err3.str());
    CHECK(diag["error"] == "input");
}

TEST_CASE("verify command exit codes")
{
    VerifyOptions opt;
    opt.qorder = 8;
    std::ostringstream out, err;
    CHECK(cli::cmd_verify("elliptic", opt, out, err) == 0);
    CHECK(out.str().find("suite elliptic") != std::string::npos);

    // negative control: inject the printed T q^2 value
    opt.t2_expected = 30;
    std::ostringstream out2, err2;
    CHECK(cli::cmd_verify("electric", opt, out2, err2) == 1);
    CHECK(out2.str().find("[FAIL] electric/registry-T-q2") != std::string::npos);
    CHECK(out2.str().find("48") != std::string::npos);

    std::ostringstream out3, err3;
    CHECK(cli::cmd_verify("nosuch", VerifyOptions{}, out3, err3) == 2);
}

TEST_CASE("eval command")
{
    const TempFile f(kManifold);
    std::ostringstream out, err;
    REQUIRE(cli::cmd_eval(f.path, "closed", 6, 4, 4, out, err) == 0);
    // round trip: the printed structure re-parses to the same invariant
    const ClosedFormInvariant cf = closed_form_from_json(parse_json(out.str()));
    std::ostringstream out2, err2;
    REQUIRE(cli::cmd_eval(f.path, "closed", 6, 4, 4, out2, err2) == 0);
    CHECK(closed_form_from_json(parse_json(out2.str())) == cf);
    // determinism: byte-identical output
    CHECK(out.str() == out2.str());

    std::ostringstream out3, err3;
    REQUIRE(cli::cmd_eval(f.path, "taylor", 6, 4, 4, out3, err3) == 0);
    const auto j = parse_json(out3.str());
    CHECK(j["vars"][0] == "lambda");

    // schema errors exit 2 with machine-readable diagnostics
    const TempFile bad("{\"rank\": 1}");
    std::ostringstream out4, err4;
    CHECK(cli::cmd_eval(bad.path, "closed", 6, 4, 4, out4, err4) == 2);
    CHECK(parse_json(err4.str())["error"] == "input");

    // validation hard error: odd d
    const TempFile odd(R"({"b_plus":3,"rank":1,"Q":[[1]],"w":[0],
      "classes":[{"K":[1],"d":1,"f":["1"]}]})");
    std::ostringstream out5, err5;
    CHECK(cli::cmd_eval(odd.path, "closed", 6, 4, 4, out5, err5) == 2);
    CHECK(parse_json(err5.str())["error"] == "validation");

    std::ostringstream out6, err6;
    CHECK(cli::cmd_eval(f.path, "nosuch", 6, 4, 4, out6, err6) == 2);

    // simple-type data reduce to the two-sector constant shape
    const TempFile st(kSimpleType);
    std::ostringstream out7, err7;
    REQUIRE(cli::cmd_eval(st.path, "closed", 6, 4, 4, out7, err7) == 0);
    const ClosedFormInvariant stcf = closed_form_from_json(parse_json(out7.str()));
    CHECK(stcf.terms.size() == 4);
    for (const auto& term : stcf.terms) {
        CHECK(term.poly.terms().size() == 1);
    }
}

TEST_CASE("blowup command")
{
    const TempFile f(kManifold);
    std::ostringstream out, err;
    REQUIRE(cli::cmd_blowup(f.path, "w", out, err) == 0);
    const ManifoldData blown = manifold_from_json(parse_json(out.str()));
    CHECK(blown.rank == 2);
    CHECK(blown.classes.size() == 8); // K+-E (d=2) and K+-3E (d=0) per class pair

    std::ostringstream out2, err2;
    REQUIRE(cli::cmd_blowup(f.path, "w+e", out2, err2) == 0);
    CHECK(manifold_from_json(parse_json(out2.str())).w == std::vector<long>{0, 1});

    std::ostringstream out3, err3;
    CHECK(cli::cmd_blowup(f.path, "sideways", out3, err3) == 2);
}

TEST_CASE("convert command round trip")
{
    const TempFile f(kManifold);
    std::ostringstream out, err;
    REQUIRE(cli::cmd_convert(f.path, "f2p", out, err) == 0);
    const TempFile pk(out.str());
    std::ostringstream out2, err2;
    REQUIRE(cli::cmd_convert(pk.path, "p2f", out2, err2) == 0);
    const ManifoldData back = manifold_from_json(parse_json(out2.str()));
    const ManifoldData orig = manifold_from_json(parse_json(kManifold));
    REQUIRE(back.classes.size() == orig.classes.size());
    for (std::size_t i = 0; i < back.classes.size(); ++i) {
        CHECK(back.classes[i].k == orig.classes[i].k);
        CHECK(back.classes[i].f == orig.classes[i].f);
    }

    std::ostringstream out3, err3;
    CHECK(cli::cmd_convert(f.path, "p2p", out3, err3) == 2);
}

TEST_CASE("conjecture-fk command")
{
    std::ostringstream out, err;
    CHECK(cli::cmd_conjecture_fk(4, 0, "1", 3, "text", out, err) == 0);
    CHECK(out.str().find("0/24\t256\t0") != std::string::npos);

    // (chi + sigma)/4 not integral
    std::ostringstream out2, err2;
    CHECK(cli::cmd_conjecture_fk(5, 0, "1", 3, "text", out2, err2) == 2);
    CHECK(parse_json(err2.str())["error"] == "input");
}

TEST_CASE("ab-series command")
{
    std::ostringstream out, err;
    REQUIRE(cli::cmd_ab_series("elliptic", 5, out, err) == 0);
    CHECK(out.str().find("1\t1/16\t1/4") != std::string::npos);
    std::ostringstream out2, err2;
    REQUIRE(cli::cmd_ab_series("reversion", 5, out2, err2) == 0);
    // identical coefficient tables from the two routes
    auto strip_header = [](const std::string& s) {
        return s.substr(s.find("# k"));
    };
    CHECK(strip_header(out.str()) == strip_header(out2.str()));

    std::ostringstream out3, err3;
    CHECK(cli::cmd_ab_series("nosuch", 5, out3, err3) == 2);
}
