#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "bolab/snapshot_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
    static const auto base = fs::temp_directory_path() / ("bolab_cli_" + std::to_string(std::random_device{}()));
    const auto p = base / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + BOLAB_CLI_PATH + std::string(" ") + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

json manifest(const fs::path& dir) { return json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("cli: argument and configuration errors exit 2") {
    const auto d = scratch("errors");
    CHECK(run_cli("") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("evolve --config " + (d / "missing.json").string() + " -o " + d.string()) == 2);
    std::ofstream(d / "bad.json") << R"({"evolve": {"n": 64, "mystery": true}})";
    CHECK(run_cli("evolve --config " + (d / "bad.json").string() + " -o " + d.string()) == 2);
    CHECK(run_cli("evolve -o " + d.string() + " --override nosuchkey=1") == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("cli: evolve writes readable snapshots and a reproducible manifest") {
    const std::string ov =
        " --override n=512 L=100 T=0.5 dt=0.001 snapshot_stride=250 write_snapshots=true";
    const auto a = scratch("evolve_a");
    const auto b = scratch("evolve_b");
    REQUIRE(run_cli("evolve -o " + a.string() + ov) == 0);
    REQUIRE(run_cli("evolve -o " + b.string() + ov) == 0);
    const auto s = bolab::io::read_snapshot((a / "snapshots" / "snap_000002.bin").string());
    CHECK(s.field.size() == 512);
    CHECK(s.t == doctest::Approx(0.5));
    CHECK(fs::exists(a / "ledger.csv"));
    const auto ma = manifest(a), mb = manifest(b);
    CHECK(ma["status"] == "pass");
    CHECK(ma["exit_code"] == 0);
    CHECK(ma["outputs_hash"] == mb["outputs_hash"]);
    CHECK(ma["config_hash"] == mb["config_hash"]);
    bool listed = false;
    for (const auto& o : ma["outputs"]) listed = listed || o["path"] == "ledger.csv";
    CHECK(listed);
    CHECK(json::parse(slurp(a / "config.json"))["evolve"]["n"] == 512);
}

TEST_CASE("cli: output directory from the environment") {
    const auto d = scratch("env_out");
    REQUIRE(run_cli("evolve --override n=256 L=50 T=0.01 dt=0.001 snapshot_stride=10 write_snapshots=false",
                  "BOLAB_OUTPUT_DIR=" + d.string()) == 0);
    CHECK(fs::exists(d / "manifest.json"));
    CHECK(fs::exists(d / "evolve_summary.json"));
}

TEST_CASE("cli: measure-decay then report") {
    const auto d = scratch("decay");
    const std::string ov = " --override n=1024 L=400 kind=zero T=0.2 dt=0.002 snapshot_stride=50";
    REQUIRE(run_cli("measure-decay -o " + d.string() + ov) == 0);
    CHECK(fs::exists(d / "decay_report.json"));
    CHECK(fs::exists(d / "decay_report.csv"));
    CHECK(run_cli("report -o " + d.string()) == 0);
    const std::string lf = slurp(d / "lowfreq_check.csv");
    CHECK(lf.rfind("t,slope,threshold,pass,vacuous\n", 0) == 0);
    CHECK(fs::exists(d / "fits.csv"));
    const auto e = scratch("report_missing");
    CHECK(run_cli("report -o " + e.string()) == 2);
}

TEST_CASE("cli: verify-normal-form passes and detects an injected fault") {
    const auto ok = scratch("nf_ok");
    const auto bad = scratch("nf_bad");
    const std::string ov = " --override fields=3 residual.enabled=false";
    CHECK(run_cli("verify-normal-form -o " + ok.string() + ov) == 0);
    CHECK(run_cli("verify-normal-form -o " + bad.string() + ov + " inject_symbol_fault=true") == 3);
    CHECK(manifest(bad)["status"] == "fail");
    CHECK(fs::exists(bad / "normal_form.csv"));
}

TEST_CASE("cli: verify-kernels") {
    const auto d = scratch("kernels");
    CHECK(run_cli("verify-kernels -o " + d.string() + " --override 'values=[16,64,256,1024]' nx=12 max_slope=-2.5") == 0);
    const auto fit = json::parse(slurp(d / "kernel_fit.json"));
    CHECK(fit["slope"].get<double>() < -2.5);
    CHECK(fit["all_converged"] == true);
}

TEST_CASE("cli: verify-operators defaults pass") {
    const auto d = scratch("operators");
    CHECK(run_cli("verify-operators -o " + d.string() + " --override calculus.fields=50 pseudoproduct.trials=5") == 0);
    CHECK(slurp(d / "operators.csv").rfind("suite,name,value,lo,hi,pass\n", 0) == 0);
}
