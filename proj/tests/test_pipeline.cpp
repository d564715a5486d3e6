#include "cuboid/pipeline.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cuboid;

namespace {

const ObstructionSystem& sys() { return shared_system(); }

const PipelineReport& full_report() {
    static const PipelineReport r = run_pipeline(sys(), {BigInt(100), 4});
    return r;
}

// Asserts that every literal occurs in `text`, in the given order.
void expect_in_order(const std::string& text, const std::vector<std::string>& literals) {
    std::size_t pos = 0;
    for (const auto& lit : literals) {
        std::size_t at = text.find(lit, pos);
        ASSERT_NE(at, std::string::npos) << "missing (in order): " << lit;
        pos = at + lit.size();
    }
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("cuboid_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST(Verify, AllChecksPass) {
    std::ostringstream os;
    EXPECT_EQ(cmd_verify(sys(), os), kExitOk);
    expect_in_order(os.str(), {"deg_s F = 16", "deg_a F = 10", "Check R1_div == R1_model ?   true",
                               "Check R0_div == R0_model ?   true", "Check Resultant == F ?       true",
                               "[PASS] F(1,a) == -a^4*(a-2)^6", "[PASS] P_1(x) == (x-1)*(x+1)^4"});
    EXPECT_EQ(os.str().find("[FAIL]"), std::string::npos);
}

TEST(Verify, Deterministic) {
    std::ostringstream a, b;
    cmd_verify(sys(), a);
    cmd_verify(sys(), b);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Verify, TamperedSystemFails) {
    RemainderCoefficients rc = transcribed_coefficients();
    rc.u = rc.u + MPoly(ring_sa(), Rational(1));
    const ObstructionSystem bad = ObstructionSystem::from_coefficients(rc);
    std::ostringstream os;
    EXPECT_EQ(cmd_verify(bad, os), kExitCheckFailed);
    EXPECT_NE(os.str().find("[FAIL] R1_div == R1_model"), std::string::npos);
    EXPECT_NE(os.str().find("First failing identity: R1_div == R1_model\nresidue: "), std::string::npos);
}

TEST(FiberCommand, DefaultTranscript) {
    std::ostringstream os;
    EXPECT_EQ(cmd_fiber(sys(), default_fiber_values(), os), kExitOk);
    expect_in_order(os.str(), {"--- Fiber s = 1 ---", "Rational roots in a: [ <0, 4>, <2, 6> ]", "<0, -1, true, true>",
                               "<2, \"L=0\", \"C=0 ?\", true>", "--- Fiber s = 4 ---", "369152308224",
                               "Rational roots in a: []", "--- Fiber s = 4/9 ---", "Rational roots in a: []",
                               "--- Fiber s = 2 ---", "9825088", "Rational roots in a: []"});
}

TEST(FiberCommand, ZeroFiberWitnesses) {
    std::ostringstream os;
    EXPECT_EQ(cmd_fiber(sys(), {Rational(0)}, os), kExitOk);
    expect_in_order(os.str(), {"<0, 0, true, true>", "<6, 1, true, true>"});
}

TEST(DegenerateCommand, Transcript) {
    std::ostringstream os;
    EXPECT_EQ(cmd_degenerate(sys(), os), kExitOk);
    expect_in_order(os.str(), {"has degree: 27", "(linear factors only): [ <2, 6> ]", "degree 21, rational roots: none",
                               "--- Degenerate analysis at a = 2 ---", "gcd_s(L,C) = s^3 - s^2 - s + 1",
                               "[ <-1, 1>, <1, 2> ]", "Degenerate locus (s, a): <-1, 2> <1, 2>",
                               "Factor pattern check: pass", "Classification check: pass"});
}

TEST(SearchCommand, Transcript) {
    std::ostringstream os;
    EXPECT_EQ(cmd_search(sys(), {BigInt(100), 4}, os), kExitOk);
    expect_in_order(os.str(), {"Degree = 17 (computed)", "Arithmetic genus = 120 (documented constant, not computed)",
                               "Geometric genus  = 7 (documented constant, not computed)",
                               "Rational points found on Cproj (8)", "Affine solution (s, a) = <-1, 2>",
                               "Affine solution (s, a) = <1, 2>", "Point at infinity: (0 : 1 : 0)",
                               "Affine points: 5; points at infinity: 3; singular points: 6",
                               "Violating points (s > 0, s != 1): none"});
}

TEST(Genus, NeverClaimedComputed) {
    std::ostringstream os;
    render_report(os, full_report());
    const std::string text = os.str();
    std::size_t pos = 0;
    while ((pos = text.find("genus", pos)) != std::string::npos) {
        std::size_t eol = text.find('\n', pos);
        EXPECT_NE(text.substr(pos, eol - pos).find("not computed"), std::string::npos);
        pos = eol;
    }
    const Json j = report_to_json(full_report());
    EXPECT_EQ(j["step5"]["genus"]["computed"], false);
    EXPECT_EQ(j["step5"]["curve_degree"], 17);
}

TEST(Report, JsonSchemaShape) {
    const Json j = report_to_json(full_report());
    for (const char* key : {"step1", "step2", "step3", "step4", "step5", "verdict"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["step1"]["deg_s"], 16);
    EXPECT_EQ(j["step4"]["res_degree"], 27);
    EXPECT_EQ(j["step3"][0]["s"], "1/1");
    EXPECT_EQ(j["step4"]["locus"], Json::parse(R"([["-1/1","2/1"],["1/1","2/1"]])"));
    EXPECT_EQ(j["verdict"]["conditional"], true);
    EXPECT_TRUE(j["step5"]["violating"].empty());
}

TEST(Report, JsonRoundTripIsByteIdentical) {
    const std::string once = report_to_json(full_report()).dump(2);
    const PipelineReport back = report_from_json(Json::parse(once));
    EXPECT_EQ(back, full_report());
    EXPECT_EQ(report_to_json(back).dump(2), once);
}

TEST(Report, VerdictIsConditional) {
    ASSERT_TRUE(full_report().verdict.has_value());
    const std::string& text = full_report().verdict->text;
    EXPECT_EQ(text.rfind("no violating point up to bound 100; conclusion conditional on completeness", 0), 0U);
    EXPECT_NE(text.find("not proven"), std::string::npos);
}

TEST(Report, JsonInTextOutMatchesInline) {
    const std::string path = temp_path("full.json");
    write_file(path, report_to_json(full_report()).dump(2));
    std::ostringstream from_file, err, inline_text;
    EXPECT_EQ(cmd_report(sys(), {path}, {BigInt(100), 4}, from_file, err), kExitOk);
    render_report(inline_text, full_report());
    EXPECT_EQ(from_file.str(), inline_text.str());
    std::filesystem::remove(path);
}

TEST(Report, MergesPartialInputs) {
    const std::string p5 = temp_path("step5.json");
    std::ostringstream s5;
    ASSERT_EQ(cmd_search(sys(), {BigInt(12), 2}, s5, OutputFormat::json), kExitOk);
    write_file(p5, s5.str());
    std::ostringstream out, err;
    EXPECT_EQ(cmd_report(sys(), {p5}, {BigInt(100), 2}, out, err, OutputFormat::json), kExitOk);
    const Json j = Json::parse(out.str());
    EXPECT_EQ(j["step5"]["bound"], "12");
    EXPECT_TRUE(j.contains("step4"));
    EXPECT_NE(j["verdict"]["text"].get<std::string>().find("up to bound 12"), std::string::npos);
    std::filesystem::remove(p5);
}

TEST(Report, MissingOrMalformedInput) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_report(sys(), {temp_path("does_not_exist.json")}, {BigInt(5), 1}, out, err), kExitUsage);
    const std::string bad = temp_path("bad.json");
    write_file(bad, "{\"step5\": {\"bound\": 3}}");
    EXPECT_EQ(cmd_report(sys(), {bad}, {BigInt(5), 1}, out, err), kExitUsage);
    write_file(bad, "not json");
    EXPECT_EQ(cmd_report(sys(), {bad}, {BigInt(5), 1}, out, err), kExitUsage);
    std::filesystem::remove(bad);
}

TEST(Report, InjectedViolatingPointIsNamed) {
    Json j = report_to_json(full_report());
    j["step5"]["violating"] = Json::parse(R"([["4/1","3/1"]])");
    const std::string path = temp_path("fake.json");
    write_file(path, j.dump(2));
    std::ostringstream out, err;
    EXPECT_EQ(cmd_report(sys(), {path}, {BigInt(100), 1}, out, err), kExitViolation);

    const Rational s0(4), a0(3);
    const Rational b0 = mp_evaluate(sys().C(), {{"s", s0}, {"a", a0}}) / mp_evaluate(sys().L(), {{"s", s0}, {"a", a0}});
    const QPoly quartic = lift_quartic(BigInt(2), BigInt(1), a0, b0).quartic;
    const std::string text = out.str();
    EXPECT_NE(text.find("(s, a, b) = (4, 3, " + b0.to_string() + ")"), std::string::npos) << text;
    EXPECT_NE(text.find("lifted quartic for (p, q) = (2, 1): " + quartic.to_string("t")), std::string::npos);
    EXPECT_NE(text.find("divides Q_{p,q}(t): false"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Report, ViolatingPointWithNonSquareS) {
    Step5 st = *full_report().step5;
    st.violating = {{Rational(2), Rational(1)}};
    Verdict v = compose_verdict(sys(), *full_report().step4, st);
    EXPECT_TRUE(v.conditional);
    EXPECT_NE(v.text.find("not the square of a rational"), std::string::npos);
}

TEST(Workers, EnvironmentDefault) {
    ::setenv(kWorkersEnv, "3", 1);
    EXPECT_EQ(default_workers(), 3U);
    ::setenv(kWorkersEnv, "junk", 1);
    EXPECT_GE(default_workers(), 1U);
    ::unsetenv(kWorkersEnv);
    EXPECT_GE(default_workers(), 1U);
}
