#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mdisc/cli.hpp"

using namespace mdisc;
using namespace mdisc::cli;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run run_job(const JobSpec& job) {
    std::ostringstream out, err;
    const int status = run(job, out, err);
    return {status, out.str(), err.str()};
}

JobSpec inline_job(Command c, const char* expr, const char* ring = "y1,y2,y3,t") {
    JobSpec j;
    j.command = c;
    j.ring = ring;
    j.expr = expr;
    return j;
}

std::string sample(const char* name) { return std::string(MDISC_SAMPLES_DIR) + "/" + name; }

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mdisc_test_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p);
    f << text;
}

}  // namespace

TEST(Cli, BoundCuspidalD4) {
    auto job = inline_job(Command::bound, "y1^2+y2*y3^2+y3^3");
    job.weights = "2,1,1";
    job.t_var = "t";
    const auto r = run_job(job);
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_NE(r.out.find("\nA=3\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nphi=u2*u3^2 + u3^3\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nd=1\n"), std::string::npos);
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, BoundHypothesisFails) {
    auto job = inline_job(Command::bound, "y1^2+y2^3+y3^5");
    job.weights = "3,2,1";
    const auto r = run_job(job);
    EXPECT_EQ(r.status, kExitNoBound);
    EXPECT_EQ(r.out, "hypothesis fails\n");
}

TEST(Cli, SearchNode) {
    auto job = inline_job(Command::search, "y1^2+y2^2+y3^2+t^2");
    job.budget = 5;
    const auto r = run_job(job);
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_NE(r.out.find("\nd=1\n"), std::string::npos);
    EXPECT_NE(r.out.find("\nweights=1,1,1\n"), std::string::npos);
}

TEST(Cli, InputErrorsExitTwo) {
    auto bad_expr = inline_job(Command::bound, "y1^2 +* y2");
    bad_expr.weights = "1,1,1";
    auto r = run_job(bad_expr);
    EXPECT_EQ(r.status, kExitInputError);
    EXPECT_NE(r.err.find("offset"), std::string::npos);
    EXPECT_TRUE(r.out.empty());

    auto no_weights = inline_job(Command::bound, "y1^2");
    EXPECT_EQ(run_job(no_weights).status, kExitInputError);

    auto bad_weights = inline_job(Command::bound, "y1^2");
    bad_weights.weights = "1,x,1";
    EXPECT_EQ(run_job(bad_weights).status, kExitInputError);

    auto bad_t = inline_job(Command::bound, "y1^2");
    bad_t.weights = "1,1,1";
    bad_t.t_var = "w";
    EXPECT_EQ(run_job(bad_t).status, kExitInputError);

    auto no_budget = inline_job(Command::search, "y1^2");
    EXPECT_EQ(run_job(no_budget).status, kExitInputError);

    EXPECT_EQ(run_job(inline_job(Command::cdv, "y1^2+y2^2")).status, kExitInputError);

    JobSpec missing;
    missing.command = Command::cdv;
    missing.file = "/nonexistent/path.poly";
    EXPECT_EQ(run_job(missing).status, kExitInputError);

    JobSpec no_cert;
    no_cert.command = Command::verify;
    EXPECT_EQ(run_job(no_cert).status, kExitInputError);
}

TEST(Cli, FileInput) {
    JobSpec job;
    job.command = Command::cdv;
    job.file = sample("e7_square.poly");
    const auto r = run_job(job);
    EXPECT_EQ(r.status, kExitOk) << r.err;
    EXPECT_NE(r.out.find("du_val_type=E7"), std::string::npos);
    EXPECT_NE(r.out.find("transform=e7_shift y1 -> -1/2*y3*t + y1"), std::string::npos);

    EXPECT_EQ(cli::parse_input_file("# c\n\nring: x, t\n x^2 +\n t^3\n"),
              parse(declare_ring("x,t"), "x^2+t^3"));
    EXPECT_THROW(cli::parse_input_file("x^2\n"), ParseError);
    EXPECT_THROW(cli::parse_input_file(""), ParseError);
}

TEST(Cli, BlowupScriptOutput) {
    JobSpec job;
    job.command = Command::blowup;
    job.script = "state n=3;blow touching= codim=2 full=0";
    auto r = run_job(job);
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_EQ(r.out, "blow id=1 a'=1 over=0\n");

    job.format = Format::json;
    r = run_job(job);
    const auto j = io::Json::parse(r.out);
    EXPECT_EQ(j["events"][0]["coefficient"], "1");
    EXPECT_EQ(j["schema"], 1);

    JobSpec file_job;
    file_job.command = Command::blowup;
    file_job.file = sample("walk.script");
    r = run_job(file_job);
    EXPECT_EQ(r.out, "walk i=1 j=2 coeffs=-1,-2,-3\nquery min over=-3\n");
}

TEST(Cli, JsonSchemaFieldsAndOrder) {
    auto job = inline_job(Command::cdv, "y1^2+y2^3+y3^4 + t*(3*y2^2+3*t*y2+t^2)");
    job.format = Format::json;
    const auto r = run_job(job);
    ASSERT_EQ(r.status, kExitOk) << r.err;
    const auto j = io::Json::parse(r.out);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    const std::vector<std::string> expected{"schema", "kind",  "ring", "input", "weights",     "t_index", "t",
                                            "A",      "phi",   "f1",   "d",     "transforms", "du_val_type",
                                            "stages", "e8_a",  "tool_version"};
    EXPECT_EQ(keys, expected);
    EXPECT_EQ(j["transforms"][0]["kind"], "complete_cube");
    EXPECT_EQ(j["transforms"][0]["replacement"], "y2 - t");
    EXPECT_EQ(j["d"], 1);
    EXPECT_EQ(j["tool_version"], io::kToolVersion);
}

TEST(Cli, OutputIsDeterministic) {
    auto job = inline_job(Command::cdv, "y1^2+y2^3+y3^5 + t*(-2*y3^4+t*y3^3)");
    job.format = Format::json;
    EXPECT_EQ(run_job(job).out, run_job(job).out);
    job.format = Format::text;
    EXPECT_EQ(run_job(job).out, run_job(job).out);
}

TEST(Cli, WritesToOutAndVerifiesRoundTrip) {
    const auto cert_path = temp_path("e8.json");
    auto job = inline_job(Command::cdv, "y1^2+y2^3+y3^5 + t*(-2*y3^4+t*y3^3)");
    job.format = Format::json;
    job.out = cert_path.string();
    auto r = run_job(job);
    ASSERT_EQ(r.status, kExitOk) << r.err;
    EXPECT_TRUE(r.out.empty());

    auto verify = inline_job(Command::verify, "y1^2+y2^3+y3^5 + t*(-2*y3^4+t*y3^3)");
    verify.cert = cert_path.string();
    r = run_job(verify);
    EXPECT_EQ(r.status, kExitOk);
    EXPECT_EQ(r.out, "verified=1\n");

    auto other = inline_job(Command::verify, "y1^2+y2^3+y3^5");
    other.cert = cert_path.string();
    r = run_job(other);
    EXPECT_EQ(r.status, kExitNoBound);
    EXPECT_NE(r.out.find("verified=0"), std::string::npos);

    std::ifstream in(cert_path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = io::Json::parse(ss.str());
    j["stages"][2]["phi"] = "u3^5";
    const auto tampered = temp_path("e8_tampered.json");
    write_file(tampered, j.dump());
    JobSpec self;
    self.command = Command::verify;
    self.cert = tampered.string();
    r = run_job(self);
    EXPECT_EQ(r.status, kExitNoBound);
    EXPECT_NE(r.out.find("stage 2"), std::string::npos);

    write_file(tampered, "{ not json");
    r = run_job(self);
    EXPECT_EQ(r.status, kExitInputError);

    std::filesystem::remove(cert_path);
    std::filesystem::remove(tampered);
}

TEST(Cli, Theorem1CertificateRoundTrip) {
    const auto r = declare_ring("y1,y2,y3,t");
    const Polynomial g = parse(r, "y1^2+y2*y3^2+y3^3");
    const auto b = theorem1_bound(g, WeightAssignment{3, {2, 1, 1}});
    ASSERT_TRUE(b);
    const auto cert = io::from_bound(g, *b);
    const auto back = io::certificate_from_string(io::to_json(cert).dump());
    EXPECT_FALSE(back.cdv);
    EXPECT_TRUE(io::verify(g, back));
    EXPECT_EQ(io::to_json(back), io::to_json(cert));

    auto j = io::to_json(cert);
    j["d"] = 0;
    EXPECT_FALSE(io::verify(g, io::certificate_from_json(j)));
    j["schema"] = 2;
    EXPECT_THROW(io::certificate_from_json(j), StructuralError);
    j = io::to_json(cert);
    j.erase("phi");
    EXPECT_THROW(io::certificate_from_json(j), StructuralError);
}

TEST(Cli, CommandNames) {
    EXPECT_EQ(command_from("verify"), Command::verify);
    EXPECT_EQ(command_from("blowup"), Command::blowup);
    EXPECT_FALSE(command_from("other"));
}
