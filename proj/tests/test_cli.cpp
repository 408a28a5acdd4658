#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tatecup/cli.hpp"
#include "tatecup/cochain.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

std::string write_spec(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / ("tatecup_cli_" + name + ".spec");
    std::ofstream(path) << body;
    return path.string();
}

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "tatecup");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = tatecup::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const char* kZ2 = R"(
[group C2]
define = cyclic 2

[module Z]
group = C2
carrier = Z

[module F2]
group = C2
carrier = 2

[pairing mult]
left = F2
right = F2
out = F2
value 0 0 = 1
)";

}  // namespace

TEST_CASE("cli: cohomology in both formats") {
    auto spec = write_spec("z2", kZ2);
    auto r = run({"--spec", spec, "cohomology", "Z", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "H^1 = 0\n");
    r = run({"--spec", spec, "--format", "machine", "cohomology", "Z", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "RESULT H^2(Z) = Z/2\n");
    r = run({"--spec", spec, "cohomology", "Z", "0"});
    CHECK(r.out == "H^0 = Z\n");
}

TEST_CASE("cli: cup of the F2 generator with itself") {
    auto spec = write_spec("z2", kZ2);
    auto r = run({"--spec", spec, "--format", "machine", "cup", "mult", "F2@1:1", "1:1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("F2@2:1") != std::string::npos);
}

TEST_CASE("cli: an empty spec is an empty workspace") {
    auto spec = write_spec("empty", "# nothing\n\n");
    auto r = run({"--spec", spec, "--format", "machine", "verify", "--suite", "complex"});
    CHECK(r.code == 0);
    CHECK(r.out == "RESULT checks = 0\nRESULT failed = 0\n");
}

TEST_CASE("cli: syntax errors carry line numbers and exit 2") {
    auto spec = write_spec("bad", "[group C2]\ndefine = cyclic 2\ncolour = red\n");
    auto r = run({"--spec", spec, "cohomology", "X", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(r.err.find("colour") != std::string::npos);

    spec = write_spec("dangling", "[module M]\ngroup = G9\ncarrier = 2\n");
    r = run({"--spec", spec, "cohomology", "M", "0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(r.err.find("G9") != std::string::npos);

    r = run({"--spec", "/nonexistent/file.spec", "cohomology", "M", "0"});
    CHECK(r.code == 2);
}

TEST_CASE("cli: a non-equivariant pairing names the pairing and the witness") {
    // Z/2 acting by -1 on Z/4; the pairing into the trivial Z/4 is not equivariant.
    auto spec = write_spec("neq", R"(
[group C2]
define = cyclic 2
[module N]
group = C2
carrier = 4
act 1 = [[-1]]
[module T]
group = C2
carrier = 4
[pairing bad]
left = N
right = T
out = T
value 0 0 = 1
)");
    auto r = run({"--spec", spec, "cohomology", "T", "0"});
    CHECK(r.code == 1);
    CHECK(r.err.find("bad") != std::string::npos);
    CHECK(r.err.find("(1,0,0)") != std::string::npos);
}

TEST_CASE("cli: the column cap exits 3") {
    auto spec = write_spec("z2", kZ2);
    auto r = run({"--spec", spec, "--max-cols", "4", "cohomology", "F2", "3"});
    CHECK(r.code == 3);
    CHECK(r.err.find("estimated columns") != std::string::npos);
    tatecup::set_max_columns(200000);
}

TEST_CASE("cli: bad class tokens and unknown names") {
    auto spec = write_spec("z2", kZ2);
    CHECK(run({"--spec", spec, "cup", "mult", "F2@1:7,7", "1:1"}).code == 2);
    CHECK(run({"--spec", spec, "cup", "nope", "F2@1:1", "1:1"}).code == 2);
    CHECK(run({"--spec", spec, "verify", "--suite", "nope"}).code == 2);
    CHECK(run({"--spec", spec}).code == 2);
}
