#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "cyseries/records.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "cyseries");
    std::ostringstream out, err;
    const int code = cys::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Outcome run_nostore(std::vector<std::string> args) {
    args.insert(args.begin(), "--no-store");
    return run(std::move(args));
}

const std::string kData = CYSERIES_DATA_DIR;

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(CliFrobenius, CaseThreeLeadingCoefficients) {
    const Outcome r = run_nostore({"frobenius", "t3", "--order", "10"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("a0: 1, 32, 7776, ", 0), 0u) << r.out;
}

TEST(CliFrobenius, OrderZero) {
    const Outcome r = run_nostore({"frobenius", "t3", "--order", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.substr(0, 6), "a0: 1\n");
}

TEST(CliFrobenius, UnknownCaseIsAnError) {
    const Outcome r = run_nostore({"frobenius", "t99"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
}

TEST(CliInvariants, ClosedForm) {
    const Outcome r = run_nostore({"invariants", "t8"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "e = 5\nh = 70\nf = 16/3\n")) << r.out;
}

TEST(CliInvariants, OperatorFileViaSingularPoint) {
    const Outcome r = run_nostore({"invariants", kData + "/operators/Aalpha.op", "--singular"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "e = 1\nh = 14/3\nf = 1/3\n")) << r.out;
}

TEST(CliInvariants, MissingOperatorFile) {
    EXPECT_EQ(run_nostore({"invariants", kData + "/operators/nothere.op"}).code, 2);
}

TEST(CliUsage, BadArguments) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run_nostore({"hunt", "t3", "--sign", "x"}).code, 2);
    EXPECT_EQ(run_nostore({"hunt", "t3", "--k-grid", "k/3"}).code, 2);
    EXPECT_EQ(run_nostore({"frobenius"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliHunt, NewSeriesOnThirdsGrid) {
    const Outcome r = run_nostore({"hunt", "t8", "--k-grid", "i/3:0..60", "--sign", "+"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "t8 k=8/3 u=+1 j=160 z=1/1000000 tau2=304/9 a=12/125 b=168/125 c=2128/375"))
        << r.out;
}

TEST(CliHunt, NegativeSignCaseThree) {
    const Outcome r = run_nostore({"hunt", "t3", "--k-grid", "i/1:1..1", "--sign", "-"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "t3 k=1 u=-1 j=25 z=-1/4096 tau2=5 a=1/8 b=1 c=5/2")) << r.out;
}

TEST(CliHunt, EmptyGrid) {
    const Outcome r = run_nostore({"hunt", "t3", "--k-grid", "i/3:5..4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(CliHunt, DeterministicOutputAndStore) {
    const fs::path store = fs::temp_directory_path() / "cyseries_cli_test_store.jsonl";
    fs::remove(store);
    const std::vector<std::string> args{"--store", store.string(), "hunt", "t3", "--k-grid", "i/1:0..1", "--sign", "-"};
    const Outcome a = run(args);
    const Outcome b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto lines = cys::ResultStore(store).lines();
    ASSERT_EQ(lines.size() % 2, 0u);
    ASSERT_GE(lines.size(), 2u);
    const std::size_t half = lines.size() / 2;
    for (std::size_t i = 0; i < half; ++i) {
        EXPECT_EQ(lines[i], lines[half + i]);
        EXPECT_EQ(cys::candidate_to_json(cys::candidate_from_json(lines[i])), lines[i]);
    }
}

TEST(CliVerify, SexticSeriesTo100Digits) {
    const Outcome r = run_nostore({"verify", kData + "/formulas/sextic.json", "--digits", "100"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "sextic: verified 100 digits")) << r.out;
}

TEST(CliVerify, DivergentRecordIsANumericFailure) {
    const Outcome r = run_nostore({"verify", kData + "/formulas/divergent.json", "--id", "t3-k0"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.out, "numeric failure")) << r.out;
}

TEST(CliVerify, UnknownId) {
    EXPECT_EQ(run_nostore({"verify", kData + "/formulas/sextic.json", "--id", "nope"}).code, 2);
}

TEST(CliCongruence, SexticModP5) {
    const Outcome r = run_nostore({"congruence", kData + "/congruences/supercongruences.json", "--id", "sextic", "--primes",
                               "5..19", "--mod-exp", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "sextic p=5: skipped")) << r.out;
    for (const char* p : {"7", "11", "13", "17", "19"})
        EXPECT_TRUE(contains(r.out, std::string("sextic p=") + p + ": holds mod p^5")) << r.out;
    EXPECT_FALSE(contains(r.out, "FAILS"));
}

TEST(CliCongruence, PerturbedExponentFails) {
    const Outcome r = run_nostore({"congruence", kData + "/congruences/supercongruences.json", "--id", "Beps", "--primes",
                               "5..30", "--mod-exp", "5"});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(contains(r.out, "FAILS mod p^5")) << r.out;
}
