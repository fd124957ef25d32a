#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "rmb/cli.hpp"
#include "rmb/convexity.hpp"
#include "rmb/error.hpp"
#include "rmb/io.hpp"
#include "support.hpp"

using namespace rmb;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = RMB_FIXTURE_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("rmb-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("polygon json")
{
    const auto k = parse_polygon_json(R"({"vertices": [[1, 1], [0, 0], [1.2, 2], [0, 1]]})");
    CHECK(k == rmb::test::q1());
    CHECK(to_json(k)["vertices"].size() == 4);

    for (const char* bad : {"{", R"({"vertices": 3})", R"({"vertices": [[0, 0], [1]]})",
                            R"({"vertices": [[0,0],[1,0],[1,1],[0,1],[0.5,0.5]]})"}) {
        try {
            parse_polygon_json(bad);
            FAIL("expected MalformedInput");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::MalformedInput);
        }
    }
}

TEST_CASE("number formatting round-trips")
{
    for (double v : {0.1, 1e-6, 0.0392837100659193, 1.0 / 3.0, -2.5e300})
        CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(1e-6) == "1e-06");
}

TEST_CASE("certificate json carries thresholds")
{
    const auto j = to_json(certify(rmb::test::q1(), -0.5));
    CHECK(j["verdict"] == "pass");
    CHECK(j["thresholds"]["eps_turn"] == 1e-8);
    CHECK(j["thresholds"]["eps_hess"] == 1e-7);
    CHECK(j["thresholds"]["eps_c1"] == 1e-5);
    CHECK(j["thresholds"]["eps_oracle"] == 1e-9);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("eval")
{
    const auto r = run({"eval", fixture("t1.json"), "--p", "-0.5", "--x", "-0.7071067811865476,0.7071067811865476"});
    CHECK(r.code == 0);
    CHECK(std::abs(std::stod(r.out) - 0.0392837100659193) <= 1e-12);

    const auto bad = run({"eval", fixture("t1.json"), "--p", "-1.5", "--x", "0,1"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("p must lie in (-1,0)") != std::string::npos);
}

TEST_CASE("input errors exit 1")
{
    const auto col = run({"certify", fixture("collinear-points.json"), "--p", "-0.5"});
    CHECK(col.code == 1);
    CHECK(col.err.find("DegenerateInput") != std::string::npos);
    CHECK(run({"certify", fixture("nonconvex.json"), "--p", "-0.5"}).code == 1);
    CHECK(run({"certify", fixture("missing.json"), "--p", "-0.5"}).code == 1);
    CHECK(run({"no-such-command"}).code == 1);
    CHECK(run({"boundary", fixture("t1.json"), "--p", "-0.5", "--samples", "0"}).code == 1);
}

TEST_CASE("certify square")
{
    const auto dir = scratch_dir("certify");
    const auto r = run({"certify", fixture("square.json"), "--p", "-0.5", "--out-dir", dir.string()});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["verdict"] == "pass");
    CHECK(j["perturbation_applied"] == 1e-6);
    CHECK(slurp(dir / "certificate.json") == r.out);
}

TEST_CASE("boundary outputs")
{
    const auto csv = run({"boundary", fixture("t1.json"), "--p", "-0.5", "--samples", "256"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("angle,bx,by,norm_value\n", 0) == 0);
    CHECK(count(csv.out, "\n") == 1 + 256 + 6);
    CHECK(csv.err.find("samples=256") != std::string::npos);
    CHECK(csv.err.find("seed=20240601") != std::string::npos);

    const auto dir = scratch_dir("render");
    const auto both = run({"render", fixture("t1.json"), "--p", "-0.5", "--samples", "256", "--out-dir", dir.string()});
    CHECK(both.code == 0);
    CHECK(slurp(dir / "boundary.csv") == csv.out);
    const std::string svg = slurp(dir / "boundary.svg");
    CHECK(count(svg, "<path") == 2);

    CHECK(run({"boundary", fixture("t1.json"), "--p", "-0.5", "--out-dir", "/proc/forbidden/x"}).code == 1);
}

TEST_CASE("decompose")
{
    const auto r = run({"decompose", fixture("q1.json"), "--x", "-1,1"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["alpha"].size() == 2);
    CHECK(std::abs(j["alpha"][0].get<double>() - 6.0) <= 1e-12);
    CHECK(std::abs(j["alpha"][1].get<double>() + 4.0) <= 1e-12);
}

TEST_CASE("oracle compare and convergence")
{
    const auto r = run({"oracle-compare", fixture("q1.json"), "--p", "-0.5", "--mc-samples", "2000"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "direction,closed_form,xray_exact,mc_estimate,mc_stderr");
    int rows = 0;
    while (std::getline(lines, line)) {
        std::istringstream cells(line);
        std::string dir, cf, xr;
        std::getline(cells, dir, ',');
        std::getline(cells, cf, ',');
        std::getline(cells, xr, ',');
        CHECK(rmb::test::rel(std::stod(cf), std::stod(xr)) <= 1e-10);
        ++rows;
    }
    CHECK(rows == 16);

    CHECK(run({"approx-converge", "--p", "-0.5"}).code == 0);
}

TEST_CASE("matrix experiment")
{
    const auto r = run({"experiment-matrix-norm", "--p", "0.5", "--grid", "0.1,3,10"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("x1,x2,min_eig\n", 0) == 0);
    CHECK(count(r.out, "\n") == 101);
}

TEST_CASE("byte-identical reruns")
{
    const std::vector<std::string> cert{"certify", fixture("q1.json"), "--p", "-0.5"};
    CHECK(run(cert).out == run(cert).out);
    const auto a = scratch_dir("det-a"), b = scratch_dir("det-b");
    run({"render", fixture("q1.json"), "--p", "-0.5", "--out-dir", a.string()});
    run({"render", fixture("q1.json"), "--p", "-0.5", "--out-dir", b.string()});
    CHECK(slurp(a / "boundary.csv") == slurp(b / "boundary.csv"));
    CHECK(slurp(a / "boundary.svg") == slurp(b / "boundary.svg"));
}

}  // TEST_SUITE
