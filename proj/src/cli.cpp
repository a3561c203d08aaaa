#include "cim/cli.hpp"

#include "cim/cpi.hpp"
#include "cim/empirical.hpp"
#include "cim/errors.hpp"
#include "cim/inaccuracy.hpp"
#include "cim/reference_tables.hpp"
#include "cim/spec_parse.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace cim::cli {

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// The double that the 15-digit text denotes, so CSV and JSON agree exactly.
double to_15_digits(double v) { return std::strtod(format_real(v).c_str(), nullptr); }

double round_3(double v) { return std::round(v * 1000.0) / 1000.0; }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

struct RunConfig {
    std::string command;
    std::string marginal;
    std::string gos;
    double alpha = 0.0;
    std::vector<std::string> measures;
    int table = 0;
    int replicates = 1000;
    int n = 10;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    std::string format = "csv";
    bool paper_precision = false;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;

    QuadratureOptions quadrature() const {
        QuadratureOptions q;
        if (rel_tol) {
            q.rel_tol = *rel_tol;
        }
        if (abs_tol) {
            q.abs_tol = *abs_tol;
        }
        return q;
    }

    double present(double v) const { return paper_precision ? round_3(v) : v; }
};

const std::vector<std::string> kMeasureNames = {"inaccuracy", "reversed-inaccuracy", "quantile-inaccuracy",
                                                "cpi",        "reversed-cpi",        "bounds"};

MarginalFamily parse_marginal_flag(const std::string& text) {
    try {
        return parse_marginal(text);
    } catch (ParseError& e) {
        throw ParseError(std::string("--marginal:1:") + std::to_string(e.column()) + ": " + e.what(), e.field(),
                         e.token(), e.column());
    }
}

GosParams parse_gos_flag(const std::string& text) {
    try {
        return parse_gos(text);
    } catch (ParseError& e) {
        throw ParseError(std::string("--gos:1:") + std::to_string(e.column()) + ": " + e.what(), e.field(), e.token(),
                         e.column());
    }
}

RecordSet cmd_measure(const RunConfig& cfg) {
    const MarginalFamily marginal = parse_marginal_flag(cfg.marginal);
    const GosParams gos = parse_gos_flag(cfg.gos);
    // X marginal does not enter any concomitant measure.
    const FgmModel model(marginal, marginal, cfg.alpha);
    const auto opts = cfg.quadrature();

    std::vector<std::string> wanted = cfg.measures;
    const bool all = wanted.empty() || std::find(wanted.begin(), wanted.end(), "all") != wanted.end();
    if (all) {
        wanted = kMeasureNames;
    }

    RecordSet rs{{"measure", "marginal", "gos", "alpha", "value", "method", "abs_error", "detail"}, {}};
    const std::string m_text = format_marginal(marginal);
    const std::string g_text = format_gos(gos);
    const auto add = [&](const std::string& name, const MeasureResult& r, std::string detail = "") {
        rs.rows.push_back({name, m_text, g_text, cfg.alpha, cfg.present(r.value), std::string(to_string(r.method)),
                           r.abs_error_estimate, std::move(detail)});
    };

    for (const auto& name : wanted) {
        if (name == "inaccuracy") {
            add(name, inaccuracy_gos(model, gos));
        } else if (name == "reversed-inaccuracy") {
            add(name, reversed_inaccuracy(model, gos, opts));
        } else if (name == "quantile-inaccuracy") {
            add(name, quantile_form_inaccuracy(model, gos, opts));
        } else if (name == "cpi") {
            add(name, cpi_gos(model, gos, opts));
        } else if (name == "reversed-cpi") {
            add(name, reversed_cpi(model, gos, opts));
        } else if (name == "bounds") {
            try {
                const CpiBound b = check_cpi_bounds(model, gos);
                const auto cpi = cpi_gos(model, gos, opts);
                const MeasureResult diff{cpi.value - cumulative_entropy(marginal), cpi.method, cpi.abs_error_estimate};
                add(name, diff, std::string(to_string(b)));
            } catch (const DomainError&) {
                if (!all) {
                    throw;
                }
                rs.rows.push_back({name, m_text, g_text, cfg.alpha, std::monostate{}, std::string("none"),
                                   std::monostate{}, std::string("not_applicable")});
            }
        }
    }
    return rs;
}

RecordSet cmd_table(const RunConfig& cfg) {
    namespace ref = cim::reference;
    RecordSet rs{{"table", "statistic", "n", "theta", "alpha", "r", "value", "paper_value"}, {}};
    const long long r = ref::kRecordIndex;
    if (cfg.table == 1) {
        for (std::size_t i = 0; i < ref::kSampleSizes.size(); ++i) {
            for (std::size_t a = 0; a < ref::kAlphas.size(); ++a) {
                for (std::size_t t = 0; t < ref::kTheta2.size(); ++t) {
                    const int n = ref::kSampleSizes[i];
                    const auto m = moments_mtbged(n, ref::kTheta2[t], ref::kAlphas[a], ref::kRecordIndex);
                    rs.rows.push_back({1LL, std::string("mean"), static_cast<long long>(n), ref::kTheta2[t],
                                       ref::kAlphas[a], r, cfg.present(m.mean), ref::kTable1Mean[i][a][t]});
                    rs.rows.push_back({1LL, std::string("variance"), static_cast<long long>(n), ref::kTheta2[t],
                                       ref::kAlphas[a], r, cfg.present(m.variance), ref::kTable1Variance[i][a][t]});
                }
            }
        }
    } else if (cfg.table == 2) {
        for (std::size_t i = 0; i < ref::kSampleSizes.size(); ++i) {
            for (std::size_t a = 0; a < ref::kAlphas.size(); ++a) {
                const int n = ref::kSampleSizes[i];
                const auto m = moments_mtbud(n, ref::kAlphas[a], ref::kRecordIndex);
                rs.rows.push_back({2LL, std::string("mean"), static_cast<long long>(n), 1.0, ref::kAlphas[a], r,
                                   cfg.present(m.mean), ref::kTable2Mean[i][a]});
                rs.rows.push_back({2LL, std::string("variance"), static_cast<long long>(n), 1.0, ref::kAlphas[a], r,
                                   cfg.present(m.variance), ref::kTable2Variance[i][a]});
            }
        }
    } else {
        throw DomainError("table: unknown table id " + std::to_string(cfg.table) + " (expected 1 or 2)");
    }
    return rs;
}

RecordSet cmd_simulate(const RunConfig& cfg, std::uint64_t seed) {
    const MarginalFamily marginal = parse_marginal_flag(cfg.marginal);
    const GosParams gos = parse_gos_flag(cfg.gos);
    const McConfig mc{marginal, gos, cfg.alpha, cfg.n, cfg.replicates, seed, cfg.workers};
    const McReport rep = mc_validate(mc);

    const auto opt = [&](const std::optional<double>& v) -> Cell {
        if (v) {
            return cfg.present(*v);
        }
        return std::monostate{};
    };
    RecordSet rs{{"marginal", "gos", "alpha", "n", "replicates", "seed", "empirical_mean", "empirical_variance",
                  "theoretical_mean", "theoretical_variance", "analytic_cpi", "bias", "standardization",
                  "ks_statistic", "ks_critical_1pct"},
                 {}};
    rs.rows.push_back({format_marginal(marginal), format_gos(gos), cfg.alpha, static_cast<long long>(rep.n),
                       static_cast<long long>(rep.replicates), std::to_string(seed), cfg.present(rep.empirical_mean),
                       cfg.present(rep.empirical_variance), opt(rep.theoretical_mean), opt(rep.theoretical_variance),
                       cfg.present(rep.analytic_cpi), cfg.present(rep.bias),
                       std::string(rep.standardized_with_theory ? "theoretical" : "empirical"), rep.ks_statistic,
                       rep.ks_critical_1pct});
    return rs;
}

std::uint64_t resolve_seed(const RunConfig& cfg, const EnvLookup& env) {
    if (cfg.seed) {
        return *cfg.seed;
    }
    if (const auto text = env("CM_SEED")) {
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text->data(), text->data() + text->size(), v);
        if (text->empty() || ec != std::errc() || ptr != text->data() + text->size()) {
            throw ParseError("CM_SEED:1:1: expected an unsigned 64-bit integer", "seed", *text, 1);
        }
        return v;
    }
    return 0;
}

}  // namespace

void write_csv(const RecordSet& records, std::ostream& out) {
    for (std::size_t i = 0; i < records.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(records.columns[i]);
    }
    out << '\n';
    for (const auto& row : records.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out << ',';
            }
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        out << format_real(v);
                    } else if constexpr (std::is_same_v<T, long long>) {
                        out << v;
                    } else if constexpr (std::is_same_v<T, std::string>) {
                        out << csv_escape(v);
                    }
                },
                row[i]);
        }
        out << '\n';
    }
}

void write_json(const RecordSet& records, std::ostream& out) {
    auto array = nlohmann::ordered_json::array();
    for (const auto& row : records.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const auto& key = records.columns[i];
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>) {
                        obj[key] = to_15_digits(v);
                    } else if constexpr (std::is_same_v<T, std::monostate>) {
                        obj[key] = nullptr;
                    } else {
                        obj[key] = v;
                    }
                },
                row[i]);
        }
        array.push_back(std::move(obj));
    }
    out << array.dump(2) << '\n';
}

std::optional<std::string> process_env(const std::string& name) {
    if (const char* v = std::getenv(name.c_str())) {
        return std::string(v);
    }
    return std::nullopt;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
    CLI::App app{"Inaccuracy and cumulative past inaccuracy of FGM concomitants"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--paper-precision", cfg.paper_precision, "Round reported values to 3 decimals");
    };

    auto* measure = app.add_subcommand("measure", "Compute inaccuracy / CPI measures for one configuration");
    measure->add_option("--marginal", cfg.marginal, "Y marginal, e.g. exponential:theta=1")->required();
    measure->add_option("--gos", cfg.gos, "GOS index, e.g. os:r=1,n=3 or record:r=2")->required();
    measure->add_option("--alpha", cfg.alpha, "FGM association parameter")->required();
    std::vector<std::string> measure_choices = kMeasureNames;
    measure_choices.push_back("all");
    measure->add_option("--measure", cfg.measures, "Measure(s) to compute (default: all)")
        ->check(CLI::IsMember(measure_choices));
    measure->add_option("--rel-tol", cfg.rel_tol, "Quadrature relative tolerance")->check(CLI::PositiveNumber);
    measure->add_option("--abs-tol", cfg.abs_tol, "Quadrature absolute tolerance")->check(CLI::PositiveNumber);
    add_format(measure);

    auto* table = app.add_subcommand("table", "Exact estimator moments next to the published reference tables");
    table->add_option("--table", cfg.table, "Table id (1 or 2)")->required();
    add_format(table);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo validation of the empirical CPI");
    simulate->add_option("--marginal", cfg.marginal, "Y marginal to sample from")->required();
    cfg.gos = "record:r=2";
    simulate->add_option("--gos", cfg.gos, "GOS index")->capture_default_str();
    simulate->add_option("--alpha", cfg.alpha, "FGM association parameter")->required();
    simulate->add_option("--n", cfg.n, "Sample size")->capture_default_str();
    simulate->add_option("--replicates", cfg.replicates, "Number of replicates (>= 100)")->capture_default_str();
    simulate->add_option("--seed", cfg.seed, "Seed (falls back to $CM_SEED, then 0)");
    simulate->add_option("--workers", cfg.workers, "Worker threads (0 = all cores); output is independent of it");
    add_format(simulate);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        RecordSet rs;
        if (measure->parsed()) {
            rs = cmd_measure(cfg);
        } else if (table->parsed()) {
            rs = cmd_table(cfg);
        } else {
            rs = cmd_simulate(cfg, resolve_seed(cfg, env));
        }
        if (cfg.format == "json") {
            write_json(rs, out);
        } else {
            write_csv(rs, out);
        }
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "error: precondition violated: " << e.what() << '\n';
        return 3;
    } catch (const UnsupportedConfiguration& e) {
        err << "error: unsupported configuration: " << e.what() << '\n';
        return 3;
    } catch (const DivergentIntegral& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const IntegrationError& e) {
        err << "error: " << e.what() << " (best estimate " << format_real(e.best_estimate()) << ")\n";
        return 4;
    } catch (const NanIntegrand& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace cim::cli
