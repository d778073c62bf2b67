#include "draco/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace draco {

namespace {

std::string trim(const std::string& s) {
    std::size_t first = 0;
    std::size_t last = s.size();
    while (first < last && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
    while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
    return s.substr(first, last - first);
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size() || v < 0) throw std::invalid_argument(value);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a non-negative integer, got '" +
                          value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs an unsigned integer, got '" + value +
                          "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("config: key '" + key + "' needs a boolean, got '" + value + "'");
}

std::vector<std::size_t> parse_index_list(const std::string& key, const std::string& value) {
    std::vector<std::size_t> out;
    if (trim(value).empty()) return out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_size(key, trim(item)));
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> values;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(lineno) + " is not 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config: empty key on line " + std::to_string(lineno));
        }
        values[key] = value;
    }
    return values;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

void apply_overrides(std::map<std::string, std::string>& values,
                     const std::vector<std::string>& overrides) {
    for (const auto& item : overrides) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override '" + item + "' is not key=value");
        }
        values[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    }
}

namespace {

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& schema() {
    static const std::map<std::string, Setter> table = {
        {"code.P",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.node_count = parse_size(k, v);
         }},
        {"code.s",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.max_adversaries = parse_size(k, v);
         }},
        {"code.scheme",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "repetition") {
                 c.scheme = Scheme::Repetition;
             } else if (v == "cyclic") {
                 c.scheme = Scheme::Cyclic;
             } else {
                 throw ConfigError("config: key '" + k + "' must be repetition|cyclic");
             }
         }},
        {"code.pack",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.pack = parse_bool(k, v);
         }},
        {"code.tables_cache",
         [](ExperimentConfig& c, const std::string&, const std::string& v) {
             c.tables_cache = v;
         }},
        {"attack.kind",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "none") {
                 c.attack.kind = AttackKind::None;
             } else if (v == "reverse") {
                 c.attack.kind = AttackKind::ReverseGradient;
             } else if (v == "constant") {
                 c.attack.kind = AttackKind::Constant;
             } else {
                 throw ConfigError("config: key '" + k + "' must be none|reverse|constant");
             }
         }},
        {"attack.c",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.attack.reverse_scale = parse_double(k, v);
         }},
        {"attack.kappa",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.attack.constant_value = parse_double(k, v);
         }},
        {"attack.count",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.attack.count = parse_size(k, v);
         }},
        {"attack.seed",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.attack_seed = parse_u64(k, v);
         }},
        {"attack.selection",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "random") {
                 c.attack.selection = AdversarySelection::UniformRandomPerRound;
             } else if (v == "fixed") {
                 c.attack.selection = AdversarySelection::FixedSet;
             } else {
                 throw ConfigError("config: key '" + k + "' must be random|fixed");
             }
         }},
        {"attack.fixed",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.attack.fixed_set = parse_index_list(k, v);
         }},
        {"aggregator",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "mean") {
                 c.aggregator = AggregatorKind::Mean;
             } else if (v == "gm") {
                 c.aggregator = AggregatorKind::GeometricMedian;
             } else if (v == "draco-rep") {
                 c.aggregator = AggregatorKind::DracoRepetition;
             } else if (v == "draco-cyclic") {
                 c.aggregator = AggregatorKind::DracoCyclic;
             } else {
                 throw ConfigError("config: key '" + k +
                                   "' must be mean|gm|draco-rep|draco-cyclic");
             }
         }},
        {"gm.max_iters",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.gm.max_iters = parse_size(k, v);
         }},
        {"gm.tol",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.gm.step_tol = parse_double(k, v);
         }},
        {"model.kind",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "linreg") {
                 c.model.kind = ModelKind::LinearRegression;
             } else if (v == "logreg") {
                 c.model.kind = ModelKind::LogisticRegression;
             } else if (v == "mlp") {
                 c.model.kind = ModelKind::TinyMlp;
             } else {
                 throw ConfigError("config: key '" + k + "' must be linreg|logreg|mlp");
             }
         }},
        {"model.hidden",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.model.hidden = parse_index_list(k, v);
         }},
        {"model.activation",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "tanh") {
                 c.model.activation = Activation::Tanh;
             } else if (v == "relu") {
                 c.model.activation = Activation::Relu;
             } else {
                 throw ConfigError("config: key '" + k + "' must be tanh|relu");
             }
         }},
        {"data.kind",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             if (v == "regression") {
                 c.data_kind = DataKind::Regression;
             } else if (v == "blobs") {
                 c.data_kind = DataKind::Blobs;
             } else {
                 throw ConfigError("config: key '" + k + "' must be regression|blobs");
             }
         }},
        {"data.n",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.data_count = parse_size(k, v);
         }},
        {"data.dim",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.model.feature_dim = parse_size(k, v);
         }},
        {"data.noise_sd",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.data_noise_sd = parse_double(k, v);
         }},
        {"data.cache",
         [](ExperimentConfig& c, const std::string&, const std::string& v) {
             c.data_cache = v;
         }},
        {"train.B",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.batch = parse_size(k, v);
         }},
        {"train.gamma",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.learning_rate = parse_double(k, v);
         }},
        {"train.iters",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.iterations = parse_size(k, v);
         }},
        {"train.seed",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.seed = parse_u64(k, v);
         }},
        {"tol.solve",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.tol.solve_tol = parse_double(k, v);
         }},
        {"tol.zero",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.tol.zero_tol = parse_double(k, v);
         }},
        {"tol.recover",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.tol.recover_tol = parse_double(k, v);
         }},
        {"out.dir",
         [](ExperimentConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
        {"out.transcripts",
         [](ExperimentConfig& c, const std::string&, const std::string& v) {
             c.transcript_path = v;
         }},
        {"out.deterministic_timings",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.deterministic_timings = parse_bool(k, v);
         }},
        {"out.debug_oracle",
         [](ExperimentConfig& c, const std::string& k, const std::string& v) {
             c.debug_oracle = parse_bool(k, v);
         }},
    };
    return table;
}

}  // namespace

ExperimentConfig config_from_values(const std::map<std::string, std::string>& values) {
    ExperimentConfig config;
    const auto& table = schema();
    for (const auto& [key, value] : values) {
        const auto it = table.find(key);
        if (it == table.end()) throw ConfigError("config: unknown key '" + key + "'");
        it->second(config, key, value);
    }
    return config;
}

std::vector<std::string> known_config_keys() {
    std::vector<std::string> keys;
    for (const auto& [key, setter] : schema()) keys.push_back(key);
    return keys;
}

}  // namespace draco
