#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "cli.hpp"
#include "gl3p/characters.hpp"
#include "gl3p/zeta_local.hpp"
#include "json_io.hpp"

using namespace gl3p;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out, err;
    json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

const std::string kZeta =
    R"({"p":5,"alpha":"3/2","sigma":"principal","sigma_params":["-2","1/5"],"eta1":"trivial","omega_parity":1})";

}  // namespace

TEST_CASE("crit") {
    auto r = run({"crit", "--a", "2", "--omega-parity", "even"});
    REQUIRE(r.code == 0);
    auto d = r.doc();
    CHECK(d["schema"] == "gl3p.report/1");
    CHECK(d["command"] == "crit");
    CHECK(d["result"]["minus"] == json::array({-2, 0}));
    CHECK(d["result"]["plus"] == json::array({1, 3}));
    // omega(-1) eta(-1) = +1 selects even j on the left
    auto odd = run({"crit", "--a", "3", "--omega-parity", "odd", "--eta", "quad:3"}).doc();
    CHECK(odd["result"]["minus"] == json::array({-2, 0}));
    CHECK(odd["result"]["plus"] == json::array({1, 3}));
}

TEST_CASE("zeta closed form from stdin matches the library") {
    auto r = run({"zeta", "--form", "closed", "--j", "0"}, kZeta);
    REQUIRE(r.code == 0);
    auto d = r.doc()["result"];
    auto zi = ZetaInput::principal(5, Rat(3, 2), Rat(-2), Rat(1, 5));
    auto y = Y_closed_form(zi);
    CHECK(d["Y"]["numerator"].size() == y.numerator().terms().size());
    CHECK(d["Y"]["denominator"].size() == y.denominator().terms().size());
    for (const auto& t : d["Y"]["numerator"]) {
        Exponent e{t["x1"].get<int>(), t["x2"].get<int>()};
        CHECK(cli::Node(t["coeff"]).as_cyc() == y.numerator().terms().at(e));
    }
    CHECK(cli::Node(d["Y_at_j"]).as_cyc() == Y_closed_form(zi, 0));

    auto b = run({"zeta", "--form", "bruteforce", "--j", "0"}, kZeta).doc()["result"];
    CHECK(b["matches_closed_form"] == true);
    CHECK(b["matches_closed_form_at_j"] == true);
}

TEST_CASE("reports are byte-identical across runs") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"zeta", "--form", "normalized"},
             {"branch", "--a", "2", "--j", "1"},
             {"einf", "--a", "5", "--j", "2", "--base-j", "0"},
             {"eis", "check-distribution", "--p", "3", "--t", "2"}}) {
        auto a = run(args, kZeta);
        auto b = run(args, kZeta);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("malformed input reports a pointer and exit 1") {
    auto r = run({"zeta"}, R"({"p":5,"alpha":"3/2","sigma_params":["-2",{"conductor":3,"coeffs":["1","x"]}]})");
    CHECK(r.code == 1);
    CHECK(r.doc()["error"]["pointer"] == "/sigma_params/1/coeffs/1");

    r = run({"zeta"}, R"({"p":4,"alpha":1,"sigma_params":[1,1]})");
    CHECK(r.code == 1);
    CHECK(r.doc()["error"]["pointer"] == "/p");

    r = run({"zeta"}, R"({"p":5,"alpha":1})");
    CHECK(r.code == 1);
    CHECK(r.doc()["error"]["pointer"] == "/sigma_params");

    r = run({"refine"}, R"({"p":5, "kind":"principal_series", "chars":[1, 2]})");
    CHECK(r.code == 1);
    CHECK(r.doc()["error"]["pointer"] == "/chars");

    r = run({"zeta"}, "{\"p\": 5,");
    CHECK(r.code == 1);
    CHECK(r.doc()["error"]["message"].get<std::string>().find("malformed JSON") != std::string::npos);

    CHECK(run({"ep", "--p", "5", "--j", "0", "--a", "0", "--omega-parity", "even", "--alpha", "1/0"}).code == 1);
    CHECK(run({"crit", "--a", "2"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("domain errors exit 1") {
    auto r = run({"ep", "--p", "5", "--j", "0", "--a", "0", "--omega-parity", "even", "--alpha", "1"});
    CHECK(r.code == 1);
    CHECK(r.doc()["error"]["kind"] == "domain");
    CHECK(r.err.find("exceptional zero") != std::string::npos);
    CHECK(run({"symsq", "--p", "11", "--j", "1"}).code == 1);
    CHECK(run({"zeta", "--form", "normalized"},
              R"({"p":5,"alpha":"3","sigma":"steinberg","sigma_params":["1/5"]})")
              .code == 1);
}

TEST_CASE("failed identity checks exit 2") {
    // level 2 does not push down to level 1
    auto r = run({"measure"}, R"({"p":3,"levels":[{"level":1,"coeffs":{"2":"1"}},{"level":2,"coeffs":{"1":"1"}}]})");
    CHECK(r.code == 2);
    CHECK(r.doc()["status"] == "verification_failed");
    CHECK(r.doc()["result"]["norm_compatible"] == false);

    auto ok = run({"measure"}, R"({"p":3,"levels":[{"n":1,"coeffs":{"1":"1"}},{"n":2,"coeffs":{"1":"1/2","4":"1/2"}}]})");
    CHECK(ok.code == 0);
    // a report's measure reads back as input
    auto back = run({"measure"}, ok.doc()["result"].dump());
    CHECK(back.code == 0);
    CHECK(back.doc()["result"]["levels"] == ok.doc()["result"]["levels"]);
    CHECK(ok.doc()["result"]["eigenvalue"] == "1");

    // the p = 5, c = 2 smoothing factor is reported, not failed
    auto s = run({"measure", "--c", "2"}, R"({"p":5,"top":{"level":2,"coeffs":{"1":"1"}}})");
    CHECK(s.code == 0);
    CHECK(s.doc()["result"]["smoothing"]["factors"][0]["invertible"] == false);
}

TEST_CASE("selftest") {
    auto r = run({"selftest"});
    CHECK(r.code == 0);
    CHECK(r.doc()["result"]["failed"] == 0);
}

TEST_CASE("--out and the precision variable") {
    auto path = std::filesystem::temp_directory_path() / "gl3p_cli_out.json";
    auto r = run({"--out", path.string(), "einf", "--a", "3", "--j", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    CHECK(json::parse(f)["result"]["e_infty"]["folded"] == "4");
    std::filesystem::remove(path);

    std::vector<std::string> ep{"ep", "--p", "5", "--j", "0", "--a", "0", "--omega-parity", "even", "--alpha", R"({"zeta":[3,1]})"};
    ::setenv("GL3P_DIGITS", "12", 1);
    auto short_run = run(ep).doc()["result"]["approx"]["im"].get<std::string>();
    ::setenv("GL3P_DIGITS", "30", 1);
    auto long_run = run(ep).doc()["result"]["approx"]["im"].get<std::string>();
    CHECK(short_run.size() < long_run.size());
    ::setenv("GL3P_DIGITS", "zero", 1);
    CHECK(run(ep).code == 1);
    ep.insert(ep.begin(), {"--digits", "15"});
    CHECK(run(ep).code == 0);
    ::unsetenv("GL3P_DIGITS");
}

TEST_CASE("sample characters fixture") {
    std::ifstream in(std::string(GL3P_FIXTURES_DIR) + "/characters.json");
    REQUIRE(in.good());
    auto doc = json::parse(in);
    CHECK(doc["schema"] == "gl3p.characters/1");
    for (const auto& c : doc["characters"]) {
        auto chi = cli::character_from_flag(c["spec"].get<std::string>(), "spec");
        auto obj = cli::Node(json{{"modulus", c["modulus"]}, {"exponents", c["exponents"]}}).as_character();
        CHECK(chi == obj);
        const long m = c["modulus"];
        // brute force: conductor is the least d | m with chi trivial on units = 1 mod d
        long cond = m;
        for (long d = 1; d <= m; ++d) {
            if (m % d) continue;
            bool trivial = true;
            for (long a = 1; a <= m && trivial; ++a)
                if (std::gcd(a, m) == 1 && a % d == 1 % d) trivial = chi(a) == CycNumber(1);
            if (trivial) {
                cond = d;
                break;
            }
        }
        CHECK(cond == c["conductor"].get<long>());
        CHECK(chi.conductor() == cond);
        CHECK(chi(m - 1) == CycNumber(c["parity"].get<long>()));
        CHECK(chi.order() == c["order"].get<long>());
        auto r = run({"crit", "--a", "1", "--omega-parity", "even", "--eta", c["spec"].get<std::string>()});
        CHECK(r.code == 0);
        CHECK(r.doc()["result"]["eta"]["conductor"] == cond);
    }
}
