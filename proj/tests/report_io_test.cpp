#include "conormal/report_io.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

using namespace conormal;

namespace {

VerificationReport sample_report() {
    const TorusGrid g(16, 64);
    std::vector<int> ns{3, 4, 5};
    return verify_theorem2(ns, g);
}

std::string strip_timestamp(std::string s) {
    return std::regex_replace(s, std::regex("\\s*\"generated_at\": \"[^\"]*\",?\\n"), "\n");
}

}  // namespace

TEST(ReportJson, SchemaFields) {
    const nlohmann::json j = to_json(sample_report());
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["theorem_id"], "thm2");
    EXPECT_TRUE(j.contains("modes"));
    EXPECT_TRUE(j.contains("errors"));
    EXPECT_TRUE(j.contains("fitted_slope"));
    EXPECT_TRUE(j.contains("tolerance"));
    EXPECT_TRUE(j.contains("passed"));
    EXPECT_TRUE(j.contains("metadata"));
    EXPECT_EQ(j["modes"].size(), j["errors"].size());
    EXPECT_EQ(j["metadata"]["grid"], nlohmann::json({16, 64}));
    EXPECT_EQ(j["metadata"]["tolerances"].size(), j["errors"].size());
}

TEST(ReportJson, ByteIdenticalModuloTimestamp) {
    const VerificationReport rep = sample_report();
    std::ostringstream a, b;
    write_json(rep, a);
    write_json(rep, b);
    EXPECT_EQ(strip_timestamp(a.str()), strip_timestamp(b.str()));
}

TEST(ReportCsv, RowPerModeAndCheck) {
    const VerificationReport rep = sample_report();
    std::ostringstream os;
    write_csv(rep, os);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "mode,error,tolerance,passed");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, rep.modes.size() + rep.named_checks.size());
}

TEST(FieldCsv, CircleRoundTripReadable) {
    CircleField f = CircleField::mode(8, 2, cplx(0.5, -0.125));
    std::ostringstream os;
    write_csv(f, os);
    const std::string s = os.str();
    EXPECT_NE(s.find("n,re,im"), std::string::npos);
    EXPECT_NE(s.find("2,0.5,-0.125"), std::string::npos);
    // exactly nz data rows
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 1 + 8);
}

TEST(FieldCsv, GridHeader) {
    const TorusGrid g(8, 8);
    std::ostringstream os;
    write_csv(GridField::mode(g, 1, -2, cplx(1.0, 0.0)), os);
    const std::string s = os.str();
    EXPECT_NE(s.find("n,m,re,im"), std::string::npos);
    EXPECT_NE(s.find("1,-2,1,0"), std::string::npos);
}
