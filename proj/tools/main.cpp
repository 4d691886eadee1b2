// Command-line front end: simulate synthetic series, analyze CSV data, run
// Monte Carlo experiments.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcgc/harness.hpp"
#include "lcgc/io.hpp"
#include "lcgc/selection.hpp"
#include "lcgc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void center_in_place(std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    for (auto& s : v) s -= mean;
}

lcgc::SimModelSpec spec_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw lcgc::ConfigError("cannot open spec file '" + path + "'");
    }
    const auto kv = lcgc::parse_flat_config(in);
    static const std::vector<std::string> known = {"a1", "a2", "b1",      "b2",      "c1", "c2",
                                                   "sigma_x", "sigma_y", "rho",     "delay",
                                                   "burn_in"};
    std::string unknown;
    for (const auto& [key, value] : kv) {
        bool found = false;
        for (const auto& k : known) found |= k == key;
        if (!found) unknown += unknown.empty() ? key : (", " + key);
    }
    if (!unknown.empty()) {
        throw lcgc::ConfigError("unknown spec keys: " + unknown);
    }
    auto get = [&](const std::string& key, double fallback) {
        const auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw lcgc::ConfigError("spec key '" + key + "' is not numeric");
        }
    };
    lcgc::SimModelSpec spec;
    spec.a1 = get("a1", 0.0);
    spec.a2 = get("a2", 0.0);
    spec.b1 = get("b1", 0.0);
    spec.b2 = get("b2", 0.0);
    spec.c1 = get("c1", 0.0);
    spec.c2 = get("c2", 0.0);
    spec.noise.sigma_x = get("sigma_x", 1.0);
    spec.noise.sigma_y = get("sigma_y", 1.0);
    spec.noise.rho = get("rho", 0.0);
    spec.noise.delay = static_cast<int>(get("delay", 1.0));
    spec.burn_in = static_cast<int>(get("burn_in", 1000.0));
    return spec;
}

struct SimulateArgs {
    std::string model;
    std::string spec_file;
    int T = 0;
    std::optional<std::uint64_t> seed;
    std::optional<int> delay;
    int burn_in = 1000;
    std::string out = "-";
};

int run_simulate(const SimulateArgs& args) {
    lcgc::SimModelSpec spec;
    if (!args.spec_file.empty()) {
        spec = spec_from_file(args.spec_file);
    } else {
        spec = lcgc::preset(args.model[0]);
        spec.burn_in = args.burn_in;
    }
    if (args.delay) spec.noise.delay = *args.delay;
    spec.T = args.T;

    const lcgc::TimeSeriesPair pair = lcgc::generate(spec, *args.seed);
    if (args.out == "-") {
        lcgc::write_series_csv(std::cout, pair);
    } else {
        std::ofstream out(args.out);
        if (!out) {
            std::cerr << "error: cannot open output file '" << args.out << "'\n";
            return kExitData;
        }
        lcgc::write_series_csv(out, pair);
    }
    return kExitOk;
}

struct TestArgs {
    std::string in = "-";
    std::string method;
    int l_a = 0;
    int l_b = 0;
    int l_c = 0;
    int l_eta = 0;
    bool search = false;
    double fwer = 0.05;
    int max_lag_search = 6;
    bool center = false;
    std::string out;
};

void write_result_file(const std::string& path, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ofstream out(path);
    if (!out) {
        throw lcgc::ConfigError("cannot open result file '" + path + "'");
    }
    for (const auto& [key, value] : kv) out << key << " = " << value << '\n';
}

void report_fixed(const lcgc::CausalityTestResult& r, const TestArgs& args) {
    std::cout << "method: " << args.method << " (fixed lags)\n";
    std::cout << "window samples used: " << r.n_used << "\n";
    std::cout << "F = " << lcgc::format_double(r.f_value) << "  dof = (" << r.d1 << ", " << r.d2
              << ")\n";
    std::cout << "p-value = " << lcgc::format_double(r.p_value) << "\n";
    std::cout << "RSS null = " << lcgc::format_double(r.rss_null)
              << "  RSS alt = " << lcgc::format_double(r.rss_alt) << "\n";
    if (!args.out.empty()) {
        write_result_file(args.out, {{"method", args.method},
                                     {"mode", "fixed"},
                                     {"f_value", lcgc::format_double(r.f_value)},
                                     {"d1", std::to_string(r.d1)},
                                     {"d2", std::to_string(r.d2)},
                                     {"p_value", lcgc::format_double(r.p_value)},
                                     {"rss_null", lcgc::format_double(r.rss_null)},
                                     {"rss_alt", lcgc::format_double(r.rss_alt)},
                                     {"n_used", std::to_string(r.n_used)}});
    }
}

void report_stepwise(const lcgc::StepwiseDecision& d, const TestArgs& args) {
    std::cout << "method: " << args.method << " (stepwise lag search)\n";
    std::cout << "interaction: " << (d.interaction_detected ? "DETECTED" : "not detected");
    if (d.selected_l_c) std::cout << " (l_c = " << *d.selected_l_c << ")";
    std::cout << "\n";
    if (args.method == "proposed") {
        std::cout << "noise correlation: "
                  << (d.noise_corr_detected ? "DETECTED" : "not detected");
        if (d.selected_l_eta) std::cout << " (l_eta = " << *d.selected_l_eta << ")";
        std::cout << "\n";
    }
    if (d.aborted_for_collinearity) {
        std::cout << "note: lag search stopped early on multicollinearity\n";
    }
    std::cout << "tests:\n";
    for (const auto& rec : d.p_value_trail) {
        std::cout << "  " << lcgc::to_string(rec.term) << " lag " << rec.lag
                  << "  p = " << lcgc::format_double(rec.p_value)
                  << "  threshold = " << lcgc::format_double(rec.threshold)
                  << (rec.adopted ? "  adopted" : "") << "\n";
    }
    if (!args.out.empty()) {
        std::vector<std::pair<std::string, std::string>> kv = {
            {"method", args.method},
            {"mode", "search"},
            {"interaction_detected", d.interaction_detected ? "true" : "false"},
            {"noise_corr_detected", d.noise_corr_detected ? "true" : "false"},
            {"aborted_for_collinearity", d.aborted_for_collinearity ? "true" : "false"}};
        if (d.selected_l_c) kv.emplace_back("selected_l_c", std::to_string(*d.selected_l_c));
        if (d.selected_l_eta) kv.emplace_back("selected_l_eta", std::to_string(*d.selected_l_eta));
        for (std::size_t i = 0; i < d.p_value_trail.size(); ++i) {
            const auto& rec = d.p_value_trail[i];
            const std::string prefix = "trail." + std::to_string(i);
            kv.emplace_back(prefix + ".term", lcgc::to_string(rec.term));
            kv.emplace_back(prefix + ".lag", std::to_string(rec.lag));
            kv.emplace_back(prefix + ".p_value", lcgc::format_double(rec.p_value));
            kv.emplace_back(prefix + ".threshold", lcgc::format_double(rec.threshold));
            kv.emplace_back(prefix + ".adopted", rec.adopted ? "true" : "false");
        }
        write_result_file(args.out, kv);
    }
}

int run_test(const TestArgs& args) {
    std::vector<double> x, y;
    {
        std::ifstream file;
        std::istream* in = &std::cin;
        if (args.in != "-") {
            file.open(args.in);
            if (!file) {
                std::cerr << "error: cannot open input file '" << args.in << "'\n";
                return kExitUsage;
            }
            in = &file;
        }
        const lcgc::TimeSeriesPair parsed = lcgc::read_series_csv(*in);
        x = parsed.x();
        y = parsed.y();
    }
    if (args.center) {
        center_in_place(x);
        center_in_place(y);
    }
    const lcgc::TimeSeriesPair pair(std::move(x), std::move(y));

    if (args.search) {
        const lcgc::StepwiseDecision d =
            args.method == "proposed"
                ? lcgc::stepwise_decide(pair, args.l_a, args.l_b, args.fwer, args.max_lag_search)
                : lcgc::stepwise_decide_normal(pair, args.l_a, args.fwer, args.max_lag_search);
        report_stepwise(d, args);
    } else {
        const lcgc::CausalityTestResult r =
            args.method == "proposed"
                ? lcgc::proposed_gc_test(pair,
                                         lcgc::LagConfig{args.l_a, args.l_b, args.l_c, args.l_eta})
                : lcgc::normal_gc_test(pair, args.l_a, args.l_c);
        report_fixed(r, args);
    }
    return kExitOk;
}

struct ExperimentArgs {
    std::string config;
    std::string out_dir;
    int threads = 0;
};

int run_experiment(const ExperimentArgs& args, const std::string& command_line) {
    std::ifstream in(args.config);
    if (!in) {
        std::cerr << "error: cannot open config file '" << args.config << "'\n";
        return kExitUsage;
    }
    const lcgc::ExperimentFile file = lcgc::parse_experiment_file(in);
    const lcgc::ExperimentConfig config = lcgc::resolve_experiment(file, args.threads);

    const std::string started = iso_timestamp();
    lcgc::ExperimentResult result;
    if (file.procedure == "power") {
        result = lcgc::run_power_curve(config);
    } else if (config.procedure == lcgc::Procedure::normal ||
               config.procedure == lcgc::Procedure::proposed) {
        result = lcgc::run_sampling_distribution(config);
    } else {
        result = lcgc::run_accuracy(config);
    }
    const std::string finished = iso_timestamp();

    namespace fs = std::filesystem;
    fs::create_directories(args.out_dir);
    const fs::path dir(args.out_dir);
    const fs::path stats_path = dir / "statistics.csv";
    const fs::path rates_path = dir / "rates.csv";
    const fs::path manifest_path = dir / "manifest.txt";
    {
        std::ofstream out(stats_path);
        lcgc::write_statistics_csv(out, result.statistics);
    }
    {
        std::ofstream out(rates_path);
        lcgc::write_rates_csv(out, result.rates, config.trials);
    }
    {
        // The manifest doubles as a config file: metadata lines are comments,
        // so `experiment --config manifest.txt` re-runs the same experiment.
        std::ofstream out(manifest_path);
        out << "# lcgc experiment manifest\n";
        out << "# version: " << lcgc::kVersion << "\n";
        out << "# command: " << command_line << "\n";
        out << "# started: " << started << "\n";
        out << "# finished: " << finished << "\n";
        out << "# output: " << stats_path.string() << "\n";
        out << "# output: " << rates_path.string() << "\n";
        for (const auto& cell : result.cells) {
            out << "# cell: T=" << cell.T << " procedure=" << cell.procedure
                << " trials=" << cell.trials << " failures=" << cell.failures
                << " seconds=" << cell.seconds << "\n";
        }
        out << lcgc::render_resolved_config(file);
    }

    std::cout << "wrote " << stats_path.string() << ", " << rates_path.string() << ", "
              << manifest_path.string() << "\n";
    for (const auto& rate : result.rates) {
        std::cout << "  T=" << rate.T << " " << rate.procedure << " " << rate.metric << " = "
                  << rate.rate << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Granger causality tests robust to delayed latent common inputs"};
    app.set_version_flag("--version", lcgc::kVersion);
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic series as CSV");
    auto* model_opt = simulate->add_option("--model", sim.model, "Preset model: a, b, c or d")
                          ->check(CLI::IsMember({"a", "b", "c", "d"}));
    auto* spec_opt = simulate->add_option("--spec-file", sim.spec_file,
                                          "Coefficient file (key = value lines)");
    model_opt->excludes(spec_opt);
    simulate->add_option("--T", sim.T, "Number of samples to emit")
        ->required()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Random seed")->required();
    simulate->add_option("--delay", sim.delay, "Override the noise-correlation delay")
        ->check(CLI::Range(0, 6));
    simulate->add_option("--burn-in", sim.burn_in, "Discarded warmup samples")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    simulate->add_option("--out", sim.out, "Output CSV path ('-' = stdout)")
        ->capture_default_str();
    simulate->callback([&] {
        if (sim.model.empty() && sim.spec_file.empty()) {
            throw CLI::RequiredError("--model or --spec-file");
        }
    });

    TestArgs test;
    CLI::App* test_cmd = app.add_subcommand("test", "Run a causality test on CSV data");
    test_cmd->add_option("--in", test.in, "Input CSV ('-' = stdin)")->capture_default_str();
    test_cmd->add_option("--method", test.method, "normal or proposed")
        ->required()
        ->check(CLI::IsMember({"normal", "proposed"}));
    test_cmd->add_option("--la", test.l_a, "Target self-lag order l_a")
        ->required()
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--lb", test.l_b, "Source self-lag order l_b")
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--lc", test.l_c, "Interaction lag order l_c")
        ->check(CLI::PositiveNumber);
    test_cmd->add_option("--leta", test.l_eta, "Noise-correlation lag l_eta")
        ->check(CLI::PositiveNumber);
    test_cmd->add_flag("--search", test.search, "Select lags by BIC and run the stepwise test");
    test_cmd->add_option("--fwer", test.fwer, "Familywise error rate (or single-test level)")
        ->check(CLI::Range(1e-9, 1.0))
        ->capture_default_str();
    test_cmd->add_option("--max-lag-search", test.max_lag_search, "Largest lag searched")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    test_cmd->add_flag("--center", test.center, "Subtract the sample mean from each series");
    test_cmd->add_option("--out", test.out, "Machine-readable result file (key = value lines)");
    test_cmd->callback([&] {
        if (test.method == "proposed" && test.l_b == 0) {
            throw CLI::RequiredError("--lb (required with --method proposed)");
        }
        if (!test.search) {
            if (test.l_c == 0) {
                throw CLI::RequiredError("--lc (or use --search)");
            }
            if (test.method == "proposed" && test.l_eta == 0) {
                throw CLI::RequiredError("--leta (or use --search)");
            }
        }
    });

    ExperimentArgs exp;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
    exp_cmd->add_option("--config", exp.config, "Experiment config file")->required();
    exp_cmd->add_option("--out-dir", exp.out_dir, "Output directory")->required();
    exp_cmd->add_option("--threads", exp.threads, "Worker threads (0 = all cores)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    std::ostringstream command_line;
    for (int i = 0; i < argc; ++i) command_line << (i ? " " : "") << argv[i];

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (test_cmd->parsed()) return run_test(test);
        return run_experiment(exp, command_line.str());
    } catch (const lcgc::CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lcgc::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lcgc::InvalidArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lcgc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
