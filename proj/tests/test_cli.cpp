#include <doctest.h>
#include <json.hpp>

#include "cli_runner.hpp"

using qtest::run_cli;
using Json = nlohmann::json;

namespace {

const std::string qr = "--alpha 1/3 --beta 1/2 --delta 1/5 --q 1/2";
const std::string rc = "--family racah --alpha 1/2 --beta 1/3 --delta 1/7";

} // namespace

TEST_CASE("table: q-Racah values start at one")
{
    const auto r = run_cli("table " + qr + " --N 3");
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["family"] == "q-racah");
    CHECK(j["backend"] == "exact");
    CHECK(j["routes_agree"] == true);
    CHECK(j["rows"].size() == 4);
    for (const auto& v : j["rows"][0]["values"]) {
        CHECK(v == "1");
    }
}

TEST_CASE("table: Racah degree-zero column is one")
{
    const auto r = run_cli("table " + rc + " --N 3");
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["family"] == "racah");
    for (const auto& row : j["rows"]) {
        CHECK(row["values"][0] == "1");
    }
}

TEST_CASE("table: routes produce identical output")
{
    const auto a = run_cli("table " + qr + " --N 4 --route ladder");
    const auto b = run_cli("table " + qr + " --N 4 --route hyper");
    const auto c = run_cli("table " + qr + " --N 4 --route closed");
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const auto csv = run_cli("table " + qr + " --N 2 --format csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("\"x\",\"n=0\",\"n=1\",\"n=2\",\"routes\"\n", 0) == 0);
}

TEST_CASE("exit codes")
{
    const auto bad = run_cli("table --alpha 1/3 --beta 1/2 --delta 2 --q 1/2 --N 3");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("delta") != std::string::npos);
    CHECK(run_cli("table --alpha abc --beta 1/2 --delta 1/5 --q 1/2 --N 3").code == 1);
    CHECK(run_cli("table " + qr + " --N 3 --backend quad").code == 1);
    CHECK(run_cli("table " + qr).code == 1);
    CHECK(run_cli("nosuch").code == 1);
    CHECK(run_cli("verify --suite nosuch").code == 1);
}

TEST_CASE("verify: corrupted identity is reported with exit code 3")
{
    const auto r = run_cli("verify --suite watson --samples 1 --seed 7 --corrupt-suite watson");
    CHECK(r.code == 3);
    CHECK(r.err.find("FAIL") != std::string::npos);
    CHECK(r.err.find("watson") != std::string::npos);
    const auto j = Json::parse(r.out);
    CHECK(j["passed"] == false);
    CHECK(run_cli("verify --suite watson --samples 1 --seed 7").code == 0);
}

TEST_CASE("verify: eigenvalues at fixed parameters")
{
    const auto r = run_cli("verify --suite eigenvalue " + qr + " --N 4");
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    const auto& eig = j["suites"][0]["details"][0]["eigenvalues"];
    REQUIRE(eig.size() == 5);
    CHECK(eig[0]["lambda"] == "0");
    CHECK(eig[1]["lambda"] == "23/24");
    CHECK(eig[2]["lambda"] == "47/16");
    const auto csv = run_cli("verify --suite eigenvalue,routes --samples 2 --format csv");
    REQUIRE(csv.code == 0);
    CHECK(csv.out.rfind("\"suite\",\"status\",\"samples\",\"checks\",\"failures\",\"rejections\"\n", 0) == 0);
}

TEST_CASE("gram: diagonal with matching closed forms")
{
    for (const std::string& args : {"gram " + qr + " --N 4", "gram " + rc + " --N 4"}) {
        const auto r = run_cli(args);
        REQUIRE(r.code == 0);
        const auto j = Json::parse(r.out);
        CHECK(j["passed"] == true);
        const auto& g = j["gram"];
        for (std::size_t i = 0; i < g.size(); ++i) {
            for (std::size_t k = 0; k < g.size(); ++k) {
                if (i != k) {
                    CHECK(g[i][k] == "0");
                }
            }
        }
        for (const auto& d : j["diagonal"]) {
            CHECK(d["closed_form_match"] == true);
            CHECK(d["value"] == d["closed_form"]);
        }
    }
}

TEST_CASE("limit: error shrinks with epsilon")
{
    const auto r = run_cli("limit --alpha 1/2 --beta 1/3 --delta 1/7 --N 3");
    REQUIRE(r.code == 0);
    const auto j = Json::parse(r.out);
    CHECK(j["correspondence"].is_string());
    const auto& rows = j["rows"];
    REQUIRE(rows.size() == 3);
    CHECK(rows[1]["max_abs_error"].get<double>() < rows[0]["max_abs_error"].get<double>());
    CHECK(rows[2]["max_abs_error"].get<double>() < rows[1]["max_abs_error"].get<double>());
    CHECK(j["decreasing"] == true);
}

TEST_CASE("determinism and backend selection")
{
    const std::string v = "verify --suite all --samples 2 --seed 11 --N-max 4";
    const auto a = run_cli(v);
    const auto b = run_cli(v);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(run_cli("gram " + qr + " --N 3").out == run_cli("gram " + qr + " --N 3").out);

    const auto f = run_cli("table " + qr + " --N 3", "QLADDER_BACKEND=float");
    REQUIRE(f.code == 0);
    CHECK(Json::parse(f.out)["backend"] == "float");
    const auto e = run_cli("table " + qr + " --N 3 --backend exact", "QLADDER_BACKEND=float");
    CHECK(Json::parse(e.out)["backend"] == "exact");
}

TEST_CASE("output file option")
{
    const auto path = std::filesystem::temp_directory_path() / "qladder_cli_table.json";
    const auto r = run_cli("table " + qr + " --N 2 -o '" + path.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(qtest::slurp(path) == run_cli("table " + qr + " --N 2").out);
    std::filesystem::remove(path);
}
