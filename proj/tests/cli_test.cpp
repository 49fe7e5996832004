#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"

using json = nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

// Runs the binary through the shell with stderr dropped; stdout is the
// deterministic channel under test.
CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    std::string cmd = env_prefix + std::string(ALTSIGMA_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CliResult r;
    if (!pipe) return r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

struct TempFile {
    std::string path;
    explicit TempFile(const char* name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("compute emits one frozen record") {
    auto r = run_cli("compute beta 12");
    CHECK(r.code == 0);
    CHECK(r.out == "{\"schema\":\"1\",\"type\":\"value\",\"fn\":\"beta\",\"n\":\"12\",\"value\":\"6\"}\n");
    auto r2 = run_cli("compute beta_a 4 --a 2");
    CHECK(r2.code == 0);
    auto j = json::parse(r2.out);
    CHECK(j["a"] == "2");
    CHECK(j["value"] == "13");
    CHECK(run_cli("compute a_alt 6").out.find("\"value\":\"4\"") != std::string::npos);
}

TEST_CASE("usage errors exit 2, arithmetic limits exit 3") {
    CHECK(run_cli("compute nosuchfn 10").code == 2);
    CHECK(run_cli("compute beta").code == 2);
    CHECK(run_cli("nosuchcommand").code == 2);
    CHECK(run_cli("compute beta 0").code == 2);
    CHECK(run_cli("table --fn a_alt --max 10").code == 2);
    // beta_3 of 2^65 leaves the 128-bit range.
    CHECK(run_cli("compute beta_a 36893488147419103232 --a 3").code == 3);
}

TEST_CASE("table renders both formats and honors an empty range") {
    auto csv = run_cli("table --fn beta --max 5 --format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out == "n,value\n1,1\n2,1\n3,2\n4,3\n5,4\n");
    auto jl = run_cli("table --fn theta --max 3 --format jsonl");
    CHECK(jl.code == 0);
    CHECK(jl.out ==
          "{\"schema\":\"1\",\"n\":\"1\",\"value\":\"1\"}\n"
          "{\"schema\":\"1\",\"n\":\"2\",\"value\":\"-1\"}\n"
          "{\"schema\":\"1\",\"n\":\"3\",\"value\":\"-2\"}\n");
    auto empty = run_cli("table --fn beta --max 0");
    CHECK(empty.code == 0);
    CHECK(empty.out.empty());
}

TEST_CASE("verify exits 0 on clean suites and 1 when a counterexample exists") {
    auto ok = run_cli("verify --suite oracle --max 300");
    CHECK(ok.code == 0);
    for (const auto& line : lines(ok.out)) CHECK(json::parse(line)["ok"] == true);
    auto bad = run_cli("verify --suite unitary --max 100");
    CHECK(bad.code == 1);
    auto first = json::parse(lines(bad.out).at(0));
    CHECK(first["id"] == "unitary_gcd_square_count");
    CHECK(first["ok"] == false);
    CHECK(first["counterexample"] == "n=4");
    auto second = json::parse(lines(bad.out).at(1));
    CHECK(second["id"] == "beta_star_conv");
    CHECK(second["ok"] == true);
}

TEST_CASE("search reports the frozen imperfect list and repeats byte for byte") {
    auto a = run_cli("search --kind imperfect --m 1 --k 2 --max 100000");
    CHECK(a.code == 0);
    auto j = json::parse(a.out);
    CHECK(j["kind"] == "imperfect");
    CHECK(j["high_water"] == "100000");
    CHECK(j["hits"] == json::array({"2", "12", "40", "252", "880", "10880", "75852"}));
    auto b = run_cli("search --kind imperfect --m 1 --k 2 --max 100000");
    auto c = run_cli("search --kind imperfect --m 1 --k 2 --max 100000 --threads 4 --block 4096");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}

TEST_CASE("checkpoint-resumed searches reproduce the single-pass bytes") {
    TempFile cp("altsigma_cli_resume.json");
    auto single = run_cli("search --kind imperfect --m 1 --k 2 --max 100000");
    auto partial = run_cli("search --kind imperfect --m 1 --k 2 --max 40000 --checkpoint " + cp.path);
    CHECK(partial.code == 0);
    auto resumed = run_cli("search --kind imperfect --m 1 --k 2 --max 100000 --checkpoint " + cp.path);
    CHECK(resumed.code == 0);
    CHECK(resumed.out == single.out);

    auto mismatched = run_cli("search --kind imperfect --m 1 --k 3 --max 100000 --checkpoint " + cp.path);
    CHECK(mismatched.code == 2);
    std::ofstream(cp.path) << "{{{";
    auto corrupt = run_cli("search --kind imperfect --m 1 --k 2 --max 100000 --checkpoint " + cp.path);
    CHECK(corrupt.code == 3);
}

TEST_CASE("structural search kinds succeed end to end") {
    auto consec = run_cli("search --kind consecutive --max 740");
    CHECK(consec.code == 0);
    CHECK(json::parse(consec.out)["hits"] ==
          json::array({"1", "20", "116", "135", "171", "194", "740"}));
    auto lehmer = run_cli("search --kind lehmer --max 100000");
    CHECK(lehmer.code == 0);
    auto lj = json::parse(lehmer.out);
    CHECK(lj["hits"] == json::array());
    CHECK(lj["note"].get<std::string>().find("n = 4") != std::string::npos);
    auto mk = run_cli("search --kind mk");
    CHECK(mk.code == 0);
    CHECK(lines(mk.out).size() == 4);
    auto fermat = run_cli("search --kind fermat");
    CHECK(fermat.code == 0);
    auto rows = lines(fermat.out);
    CHECK(rows.size() == 6);
    CHECK(json::parse(rows[5])["super_imperfect"] == false);
    CHECK(json::parse(rows[5])["ok"] == true);
}

TEST_CASE("asymptotic records carry exact sums and respect the tolerance gate") {
    auto r = run_cli("asymptotic --expr beta --x 100000");
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["sum"] == "3289890783");
    CHECK(j["exponent"] == "2");
    CHECK(run_cli("asymptotic --expr beta --x 10000 --tol 1e-12").code == 1);
    auto k = run_cli("asymptotic --expr inv_beta --x 100000");
    CHECK(k.code == 0);
    auto kj = json::parse(k.out);
    CHECK(kj["scale_bits"] == "96");
    CHECK(kj.contains("k1"));
    CHECK(kj.contains("k2_estimate"));
}

TEST_CASE("liminf, density and expansion round trip through the CLI") {
    auto lm = run_cli("asymptotic --expr liminf --x 100000");
    CHECK(lm.code == 0);
    auto lj = json::parse(lm.out);
    REQUIRE(lj["records"].size() == 2);
    CHECK(lj["records"][0]["n"] == "10");
    CHECK(lj["records"][1]["n"] == "30");
    CHECK(run_cli("asymptotic --expr density --t 0.5 --eps 0.05 --x 1000").code == 0);
    auto miss = run_cli("asymptotic --expr density --t 0.01 --eps 0.001 --x 1000");
    CHECK(miss.code == 1);
    CHECK(json::parse(miss.out)["witness"].is_null());
    auto ex = run_cli("expansion --n 30 --terms 2000");
    CHECK(ex.code == 0);
    auto ej = json::parse(ex.out);
    CHECK(ej["n"] == "30");
    CHECK(ej["terms"] == "2000");
}

TEST_CASE("the sieve budget environment variable is enforced") {
    CHECK(run_cli("search --kind imperfect --m 2 --k 2 --max 10000000",
                  "ALTSIGMA_SIEVE_BUDGET_MB=1 ")
              .code == 3);
    CHECK(run_cli("compute beta 12", "ALTSIGMA_SIEVE_BUDGET_MB=junk ").code == 2);
    CHECK(run_cli("compute beta 12", "ALTSIGMA_SIEVE_BUDGET_MB=64 ").code == 0);
}
