#include "lcgc/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace lcgc {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream iss(s);
    while (std::getline(iss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

std::optional<double> parse_double(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    double v = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

std::optional<long long> parse_int(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) return std::nullopt;
    long long v = 0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value,
                                         std::chars_format::general, 17);
    return std::string(buf, ptr);
}

TimeSeriesPair read_series_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) {
        throw CsvError("empty input", 1);
    }
    ++line_no;
    // strip a UTF-8 BOM if present
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    const std::vector<std::string> header = split(line, ',');
    int x_col = -1, y_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = trim(header[i]);
        if (name == "x") x_col = static_cast<int>(i);
        if (name == "y") y_col = static_cast<int>(i);
    }
    if (x_col < 0 || y_col < 0) {
        throw CsvError("header must contain columns x and y", 1);
    }

    std::vector<double> x, y;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (static_cast<int>(fields.size()) <= std::max(x_col, y_col)) {
            throw CsvError("row has too few fields", line_no);
        }
        const auto xv = parse_double(fields[static_cast<std::size_t>(x_col)]);
        const auto yv = parse_double(fields[static_cast<std::size_t>(y_col)]);
        if (!xv || !yv) {
            throw CsvError("could not parse numeric field", line_no);
        }
        x.push_back(*xv);
        y.push_back(*yv);
    }
    if (x.empty()) {
        throw CsvError("no data rows", line_no);
    }
    try {
        return TimeSeriesPair(std::move(x), std::move(y));
    } catch (const InvalidArgumentError& e) {
        throw CsvError(e.what(), line_no);
    }
}

void write_series_csv(std::ostream& out, const TimeSeriesPair& pair) {
    out << "t,x,y\n";
    for (int t = 1; t <= pair.length(); ++t) {
        out << t << ',' << format_double(pair.x_at(t)) << ',' << format_double(pair.y_at(t))
            << '\n';
    }
}

std::map<std::string, std::string> parse_flat_config(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value' on line " + std::to_string(line_no));
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("empty key on line " + std::to_string(line_no));
        }
        if (!out.emplace(key, value).second) {
            throw ConfigError("duplicate key '" + key + "' on line " + std::to_string(line_no));
        }
    }
    return out;
}

ExperimentFile parse_experiment_file(std::istream& in) {
    const auto kv = parse_flat_config(in);

    static const std::vector<std::string> known = {
        "model", "procedure", "sample_sizes", "trials",
        "seed",  "delay",     "fwer",         "max_lag_search"};
    std::string unknown;
    for (const auto& [key, value] : kv) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            unknown += unknown.empty() ? key : (", " + key);
        }
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown config keys: " + unknown);
    }
    auto require = [&](const std::string& key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end() || it->second.empty()) {
            throw ConfigError("missing required config key '" + key + "'");
        }
        return it->second;
    };

    ExperimentFile file;
    file.model = require("model");
    file.procedure = require("procedure");
    for (const std::string& tok : split(require("sample_sizes"), ',')) {
        const auto v = parse_int(tok);
        if (!v || *v < 1) {
            throw ConfigError("sample_sizes must be a comma list of positive integers");
        }
        file.sample_sizes.push_back(static_cast<int>(*v));
    }
    const auto trials = parse_int(require("trials"));
    if (!trials || *trials < 1) {
        throw ConfigError("trials must be a positive integer");
    }
    file.trials = static_cast<int>(*trials);
    const auto seed = parse_int(require("seed"));
    if (!seed || *seed < 0) {
        throw ConfigError("seed must be a non-negative integer");
    }
    file.seed = static_cast<std::uint64_t>(*seed);

    if (const auto it = kv.find("delay"); it != kv.end()) {
        const auto d = parse_int(it->second);
        if (!d || *d < 0) {
            throw ConfigError("delay must be a non-negative integer");
        }
        file.delay = static_cast<int>(*d);
    }
    if (const auto it = kv.find("fwer"); it != kv.end()) {
        const auto f = parse_double(it->second);
        if (!f || !(*f > 0.0 && *f < 1.0)) {
            throw ConfigError("fwer must lie in (0, 1)");
        }
        file.fwer = *f;
    }
    if (const auto it = kv.find("max_lag_search"); it != kv.end()) {
        const auto m = parse_int(it->second);
        if (!m || *m < 1) {
            throw ConfigError("max_lag_search must be a positive integer");
        }
        file.max_lag_search = static_cast<int>(*m);
    }

    if (file.model.size() != 1 || file.model[0] < 'a' || file.model[0] > 'd') {
        throw ConfigError("model must be one of a, b, c, d");
    }
    if (file.procedure != "power" && !procedure_from_string(file.procedure)) {
        throw ConfigError(
            "procedure must be one of normal, proposed, stepwise_normal, stepwise_proposed, power");
    }
    return file;
}

ExperimentConfig resolve_experiment(const ExperimentFile& file, int threads) {
    ExperimentConfig config;
    config.model = preset(file.model[0]);
    config.model_name = file.model;
    if (file.delay) config.model.noise.delay = *file.delay;
    config.sample_sizes = file.sample_sizes;
    config.trials = file.trials;
    if (file.procedure == "power") {
        config.procedure = Procedure::stepwise_proposed;  // run_power_curve runs both
    } else {
        config.procedure = *procedure_from_string(file.procedure);
    }
    config.seed = file.seed;
    config.fwer = file.fwer;
    config.max_lag_search = file.max_lag_search;
    config.threads = threads;
    // True lags of the preset family; l_eta follows the configured delay.
    config.true_lags = LagConfig{2, 2, 2, std::max(config.model.noise.delay, 1)};
    return config;
}

std::string render_resolved_config(const ExperimentFile& file) {
    std::ostringstream out;
    out << "model = " << file.model << '\n';
    out << "procedure = " << file.procedure << '\n';
    out << "sample_sizes = ";
    for (std::size_t i = 0; i < file.sample_sizes.size(); ++i) {
        if (i > 0) out << ',';
        out << file.sample_sizes[i];
    }
    out << '\n';
    out << "trials = " << file.trials << '\n';
    out << "seed = " << file.seed << '\n';
    if (file.delay) out << "delay = " << *file.delay << '\n';
    out << "fwer = " << format_double(file.fwer) << '\n';
    out << "max_lag_search = " << file.max_lag_search << '\n';
    return out.str();
}

void write_statistics_csv(std::ostream& out, const std::vector<StatRecord>& statistics) {
    out << "trial,T,procedure,f_value\n";
    for (const auto& s : statistics) {
        out << s.trial << ',' << s.T << ',' << s.procedure << ',' << format_double(s.f_value)
            << '\n';
    }
}

void write_rates_csv(std::ostream& out, const std::vector<RateEntry>& rates, int trials) {
    out << "T,procedure,rate,stderr,metric\n";
    for (const auto& r : rates) {
        out << r.T << ',' << r.procedure << ',' << format_double(r.rate) << ',';
        if (trials >= 2) out << format_double(r.stderr_);
        out << ',' << r.metric << '\n';
    }
}

}  // namespace lcgc
