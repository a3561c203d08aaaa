#include "cim/cli.hpp"
#include "cim/errors.hpp"
#include "cim/spec_parse.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace cim;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
    args.insert(args.begin(), "cim");
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err, [&](const std::string& k) -> std::optional<std::string> {
        auto it = env.find(k);
        return it == env.end() ? std::nullopt : std::optional<std::string>(it->second);
    });
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows(1);
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            rows.back().push_back(cell);
            cell.clear();
        } else if (c == '\n') {
            rows.back().push_back(cell);
            cell.clear();
            rows.emplace_back();
        } else {
            cell += c;
        }
    }
    rows.pop_back();
    return rows;
}

// First data row's value for `column`.
std::string cell(const std::string& csv, const std::string& column, std::size_t row = 1) {
    const auto rows = parse_csv(csv);
    for (std::size_t i = 0; i < rows[0].size(); ++i) {
        if (rows[0][i] == column) {
            return rows.at(row).at(i);
        }
    }
    ADD_FAILURE() << "no column " << column;
    return {};
}

TEST(SpecParse, MarginalRoundTrip) {
    for (const std::string s : {"exponential:theta=1", "logistic", "rayleigh:sigma=2.5", "genexp:theta=0.5,lambda=3",
                                "uniform:theta=0.1", "invweibull:theta=1,beta=2"}) {
        EXPECT_EQ(format_marginal(parse_marginal(s)), s);
    }
    EXPECT_EQ(format_marginal(parse_marginal("genexp:lambda=3,theta=+0.50")), "genexp:theta=0.5,lambda=3");
    const MarginalFamily m(InverseWeibull{0.1 + 0.2, 2.75});
    EXPECT_EQ(parse_marginal(format_marginal(m)), m);
}

TEST(SpecParse, GosRoundTrip) {
    EXPECT_EQ(format_gos(parse_gos("os:r=1,n=3")), "os:r=1,n=3");
    EXPECT_EQ(format_gos(parse_gos("r=1,n=3,m=0,k=1")), "os:r=1,n=3");
    EXPECT_EQ(format_gos(parse_gos("r=2,n=2,m=-1,k=1")), "record:r=2");
    EXPECT_EQ(format_gos(parse_gos("record:r=2,n=9")), "record:r=2,n=9");
    EXPECT_EQ(format_gos(parse_gos("n=5,r=2,k=2,m=1")), "r=2,n=5,m=1,k=2");
    for (const auto& p : {GosParams(3, 6, -0.5, 1.5), GosParams::record(7), GosParams::order_statistic(4, 4)}) {
        EXPECT_EQ(parse_gos(format_gos(p)), p);
    }
}

TEST(SpecParse, ErrorsIdentifyFieldTokenAndColumn) {
    try {
        parse_gos("os:r=1,n=x");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "n");
        EXPECT_EQ(e.token(), "x");
        EXPECT_EQ(e.column(), 10);
    }
    try {
        parse_marginal("exponential:theta=1,beta=2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field(), "beta");
        EXPECT_EQ(e.column(), 21);
    }
    EXPECT_THROW(parse_marginal("gamma:k=1"), ParseError);
    EXPECT_THROW(parse_marginal("exponential"), ParseError);
    EXPECT_THROW(parse_marginal("exponential:theta=1,theta=2"), ParseError);
    EXPECT_THROW(parse_gos("os:r=1,,n=2"), ParseError);
    EXPECT_THROW(parse_gos("os:r=1.5,n=2"), ParseError);
    EXPECT_THROW(parse_gos("weird:r=1"), ParseError);
    // Well-formed but out of range is a precondition failure, not a parse error.
    EXPECT_THROW(parse_marginal("exponential:theta=-1"), DomainError);
    EXPECT_THROW(parse_gos("os:r=4,n=3"), DomainError);
}

TEST(Cli, MeasureInaccuracyExample) {
    const auto r = run({"measure", "--marginal", "exponential:theta=1", "--gos", "os:r=1,n=3", "--alpha", "1",
                        "--measure", "inaccuracy"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.err.empty());
    EXPECT_EQ(cell(r.out, "value"), "0.75");
    EXPECT_EQ(cell(r.out, "method"), "closed_form");
    EXPECT_EQ(parse_csv(r.out)[0],
              (std::vector<std::string>{"measure", "marginal", "gos", "alpha", "value", "method", "abs_error", "detail"}));
}

TEST(Cli, MeasureAtZeroAlphaGivesEntropies) {
    const auto inacc = run({"measure", "--marginal", "rayleigh:sigma=2", "--gos", "record:r=3", "--alpha", "0",
                            "--measure", "inaccuracy"});
    const auto cpi =
        run({"measure", "--marginal", "uniform:theta=2", "--gos", "record:r=3", "--alpha", "0", "--measure", "cpi"});
    EXPECT_NEAR(std::stod(cell(inacc.out, "value")), shannon_entropy(MarginalFamily(Rayleigh{2.0})), 1e-13);
    EXPECT_NEAR(std::stod(cell(cpi.out, "value")), 0.5, 1e-15);
}

TEST(Cli, MeasureUniformRecordCpi) {
    const auto r =
        run({"measure", "--marginal", "uniform:theta=1", "--gos", "record:r=2", "--alpha", "1", "--measure", "cpi"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(std::stod(cell(r.out, "value")), 0.25 - 0.5 * 5.0 / 36.0, 1e-14);
}

TEST(Cli, MeasureAllIncludesEveryMeasure) {
    const auto r = run({"measure", "--marginal", "exponential:theta=1", "--gos", "os:r=3,n=3", "--alpha", "0.5"});
    ASSERT_EQ(r.code, 0);
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(rows[6][0], "bounds");
    // r > (n + 1) / 2 is outside the bound's range.
    EXPECT_EQ(rows[6][4], "");
    EXPECT_EQ(rows[6][7], "not_applicable");
    const auto only = run({"measure", "--marginal", "exponential:theta=1", "--gos", "os:r=3,n=3", "--alpha", "0.5",
                           "--measure", "bounds"});
    EXPECT_EQ(only.code, 3);
}

TEST(Cli, MeasureBoundsClassification) {
    const auto r =
        run({"measure", "--marginal", "uniform:theta=1", "--gos", "os:r=1,n=3", "--alpha", "1", "--measure", "bounds"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(cell(r.out, "detail"), "above_CE");
    EXPECT_NEAR(std::stod(cell(r.out, "value")), 0.5 * 5.0 / 36.0, 1e-14);
}

TEST(Cli, ExitCodes) {
    const auto parse = run({"measure", "--marginal", "exponential:theta=1", "--gos", "os:r=1,n=x", "--alpha", "1"});
    EXPECT_EQ(parse.code, 2);
    EXPECT_TRUE(parse.out.empty());
    EXPECT_NE(parse.err.find("--gos:1:10:"), std::string::npos) << parse.err;

    const auto domain = run({"measure", "--marginal", "exponential:theta=1", "--gos", "os:r=1,n=3", "--alpha", "2"});
    EXPECT_EQ(domain.code, 3);
    EXPECT_NE(domain.err.find("alpha"), std::string::npos) << domain.err;

    const auto diverge = run({"measure", "--marginal", "invweibull:theta=1,beta=0.8", "--gos", "os:r=1,n=3",
                              "--alpha", "1", "--measure", "cpi"});
    EXPECT_EQ(diverge.code, 3);

    const auto usage = run({"measure", "--marginal", "logistic"});
    EXPECT_NE(usage.code, 0);
    EXPECT_NE(usage.code, 2);
    EXPECT_NE(usage.code, 3);
    EXPECT_NE(usage.code, 4);

    EXPECT_EQ(run({"table", "--table", "3"}).code, 3);
}

TEST(Cli, TableCells) {
    const auto t1 = run({"table", "--table", "1"});
    ASSERT_EQ(t1.code, 0);
    const auto rows = parse_csv(t1.out);
    EXPECT_EQ(rows.size(), 1u + 72u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"table", "statistic", "n", "theta", "alpha", "r", "value",
                                                  "paper_value"}));
    // n=10, theta2=0.5, alpha=-1 comes first.
    EXPECT_EQ(rows[1][7], "1.429");
    EXPECT_EQ(rows[2][7], "0.241");
    const auto t2 = run({"table", "--table", "2", "--paper-precision"});
    const auto rows2 = parse_csv(t2.out);
    EXPECT_EQ(rows2.size(), 1u + 24u);
    bool found = false;
    for (const auto& row : rows2) {
        if (row[2] == "15" && row[4] == "-0.5") {
            found = true;
            if (row[1] == "mean") {
                EXPECT_EQ(row[7], "0.264");
                EXPECT_EQ(row[6], "0.265");
            } else {
                EXPECT_EQ(row[7], "0.005");
            }
        }
    }
    EXPECT_TRUE(found);
}

TEST(Cli, SimulateIsDeterministic) {
    const std::vector<std::string> args = {"simulate", "--marginal", "uniform:theta=1", "--alpha", "-1", "--n", "10",
                                           "--replicates", "500", "--seed", "42"};
    const auto a = run(args);
    auto with_workers = args;
    with_workers.insert(with_workers.end(), {"--workers", "3"});
    const auto b = run(with_workers);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(cell(a.out, "seed"), "42");
    EXPECT_EQ(cell(a.out, "gos"), "record:r=2");
}

TEST(Cli, SimulateSeedFallsBackToEnvironment) {
    const std::vector<std::string> base = {"simulate", "--marginal", "exponential:theta=1", "--alpha", "0.5",
                                           "--replicates", "100"};
    auto explicit_seed = base;
    explicit_seed.insert(explicit_seed.end(), {"--seed", "9"});
    EXPECT_EQ(run(base, {{"CM_SEED", "9"}}).out, run(explicit_seed).out);
    EXPECT_EQ(run(explicit_seed, {{"CM_SEED", "10"}}).out, run(explicit_seed).out);
    EXPECT_EQ(cell(run(base).out, "seed"), "0");
    EXPECT_EQ(run(base, {{"CM_SEED", "nine"}}).code, 2);
}

TEST(Cli, SimulateRejectsFewReplicates) {
    const auto r = run({"simulate", "--marginal", "uniform:theta=1", "--alpha", "-1", "--replicates", "50"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("100"), std::string::npos) << r.err;
}

TEST(Cli, CsvAndJsonCarryIdenticalValues) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"measure", "--marginal", "rayleigh:sigma=1.3", "--gos", "r=2,n=5,m=1,k=2", "--alpha", "-0.7"},
             {"table", "--table", "1"},
             {"simulate", "--marginal", "genexp:theta=1,lambda=1", "--alpha", "0.5", "--n", "40", "--replicates",
              "150", "--seed", "3"}}) {
        const auto csv = run(args);
        auto json_args = args;
        json_args.insert(json_args.end(), {"--format", "json"});
        const auto js = run(json_args);
        ASSERT_EQ(csv.code, 0) << csv.err;
        ASSERT_EQ(js.code, 0) << js.err;
        const auto rows = parse_csv(csv.out);
        const auto doc = nlohmann::json::parse(js.out);
        ASSERT_EQ(doc.size() + 1, rows.size());
        for (std::size_t i = 0; i < doc.size(); ++i) {
            for (std::size_t c = 0; c < rows[0].size(); ++c) {
                const auto& v = doc[i].at(rows[0][c]);
                const std::string& text = rows[i + 1][c];
                if (v.is_null()) {
                    EXPECT_EQ(text, "");
                } else if (v.is_number_float()) {
                    EXPECT_EQ(v.get<double>(), std::stod(text)) << rows[0][c];
                } else if (v.is_number_integer()) {
                    EXPECT_EQ(std::to_string(v.get<long long>()), text);
                } else {
                    EXPECT_EQ(v.get<std::string>(), text);
                }
            }
        }
    }
}

TEST(Cli, CsvQuotingAndLineEndings) {
    cli::RecordSet rs{{"a", "b"}, {{std::string("x,y"), std::string("say \"hi\"")}, {1.0 / 3.0, std::monostate{}}}};
    std::ostringstream out;
    cli::write_csv(rs, out);
    EXPECT_EQ(out.str(), "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n0.333333333333333,\n");
}

}  // namespace
