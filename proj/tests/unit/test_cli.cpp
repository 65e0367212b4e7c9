#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun cli(const std::string& args) {
    std::string cmd = "cd '" DIVSUB_SOURCE_DIR "' && '" DIVSUB_CLI_PATH "' " + args + " 2>/dev/null";
    CliRun r;
    FILE* p = popen(cmd.c_str(), "r");
    if (p == nullptr) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("divsub-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(cli("adapters --no-timestamp").code, 0);
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("matrix").code, 2);
    EXPECT_EQ(cli("matrix --suites suites --format nonsense").code, 2);
    EXPECT_EQ(cli("curate --suites /nonexistent").code, 2);
    EXPECT_EQ(cli("variants clients/missing-op.json --no-timestamp").code, 0);
    EXPECT_EQ(cli("variants clients/missing-op.json --strict --no-timestamp").code, 1);
    EXPECT_EQ(cli("variants clients/full-compat.json --strict --no-timestamp").code, 0);
    EXPECT_EQ(cli("matrix --suites suites --strict --no-timestamp").code, 1);
    EXPECT_EQ(cli("corpus --strict --no-timestamp").code, 0);
}

TEST(Cli, AdapterCountsFromFixture) {
    CliRun r = cli("adapters --no-timestamp --format structured-text --fixture fixtures/table3.csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"naive\": 265202"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("\"curated\": 636"), std::string::npos) << r.out;
}

TEST(Cli, TimestampHeader) {
    CliRun r = cli("adapters");
    EXPECT_EQ(r.out.rfind("# generated ", 0), 0u) << r.out;
    EXPECT_NE(cli("adapters --format structured-text").out.find("\"generated\""), std::string::npos);
}

TEST(Cli, OutputFileIsWrittenWhole) {
    fs::path out = scratch("matrix.csv");
    fs::remove(out);
    CliRun r = cli("matrix --suites suites --format csv --no-timestamp -o '" + out.string() + "'");
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::string written = slurp(out);
    EXPECT_EQ(written.rfind("wrapper,bridge,passed,total,color\n", 0), 0u);
    for (const auto& e : fs::directory_iterator(out.parent_path())) {
        EXPECT_EQ(e.path().filename().string().find(".tmp"), std::string::npos) << e.path();
    }
    EXPECT_EQ(written, cli("matrix --suites suites --format csv --no-timestamp").out);

    fs::path unwritable = scratch("no-such-dir") / "x" / "out.csv";
    EXPECT_EQ(cli("adapters -o '" + unwritable.string() + "'").code, 2);
    EXPECT_FALSE(fs::exists(unwritable));
}

TEST(Cli, RerunsAreByteIdentical) {
    for (const std::string& args : {"curate --suites suites", "matrix --suites suites --format structured-text",
                                    "variants clients", "check-client clients", "corpus", "assess --suites suites --clients clients"}) {
        CliRun a = cli(args + " --no-timestamp -j 1");
        CliRun b = cli(args + " --no-timestamp");
        EXPECT_EQ(a.code, 0) << args;
        EXPECT_FALSE(a.out.empty()) << args;
        EXPECT_EQ(a.out, b.out) << args;
    }
}
