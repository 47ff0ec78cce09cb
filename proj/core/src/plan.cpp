#include "gsnoise/plan.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "gsnoise/dataset_io.hpp"
#include "gsnoise/error.hpp"

namespace gsnoise {

std::string Cell::key() const
{
    return std::string(to_string(method)) + '|' + dataset + '|'
           + std::to_string(noise.basis_points()) + '|' + std::to_string(sample_id) + '|'
           + std::to_string(rep_index);
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    while (true) {
        const auto comma = s.find(',');
        auto item = trim(s.substr(0, comma));
        if (!item.empty()) {
            out.push_back(std::move(item));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value)
{
    T v{};
    auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) {
        throw ConfigError("config key '" + key + "': cannot parse '" + value + "'");
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "on" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "off" || value == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + value + "'");
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

ConfigMap parse_config(std::string_view text)
{
    ConfigMap out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        auto key = trim(std::string_view(stripped).substr(0, eq));
        auto value = trim(std::string_view(stripped).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        if (!out.emplace(key, value).second) {
            throw ConfigError("config key '" + key + "' given twice");
        }
    }
    return out;
}

ConfigMap read_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::uint64_t run_seed(std::uint64_t base, Method m, std::string_view dataset, NoiseLevel r,
                       int sample_id, int rep_index)
{
    std::uint64_t s = seed_combine(base, fnv1a64("run"));
    s = seed_combine(s, static_cast<std::uint64_t>(m));
    s = seed_combine(s, fnv1a64(dataset));
    s = seed_combine(s, static_cast<std::uint64_t>(r.basis_points()));
    s = seed_combine(s, static_cast<std::uint64_t>(sample_id));
    return seed_combine(s, static_cast<std::uint64_t>(rep_index));
}

std::uint64_t data_seed(std::uint64_t base, std::string_view dataset, Partition p, int sample_id)
{
    std::uint64_t s = seed_combine(base, fnv1a64("data"));
    s = seed_combine(s, fnv1a64(dataset));
    s = seed_combine(s, static_cast<std::uint64_t>(p));
    return seed_combine(s, static_cast<std::uint64_t>(sample_id));
}

std::uint64_t noise_seed(std::uint64_t base, std::string_view dataset, NoiseLevel r,
                         int sample_id, int rep_index, bool per_repetition)
{
    std::uint64_t s = seed_combine(base, fnv1a64("noise"));
    s = seed_combine(s, fnv1a64(dataset));
    s = seed_combine(s, static_cast<std::uint64_t>(r.basis_points()));
    s = seed_combine(s, static_cast<std::uint64_t>(sample_id));
    return per_repetition ? seed_combine(s, static_cast<std::uint64_t>(rep_index)) : s;
}

std::string ExperimentPlan::config_hash(Method m) const
{
    std::string canon = m == Method::GP ? gp.canonical() : gsgp.canonical();
    canon += ";noise_per_rep=" + std::to_string(noise_per_repetition);
    return hex64(fnv1a64(canon));
}

std::string ExperimentPlan::describe() const
{
    std::ostringstream os;
    os << "datasets = ";
    for (std::size_t i = 0; i < datasets.size(); ++i) os << (i ? "," : "") << datasets[i];
    os << "\nnoise_levels = ";
    for (std::size_t i = 0; i < noise_levels.size(); ++i)
        os << (i ? "," : "") << noise_levels[i].label();
    os << "\nmethods = ";
    for (std::size_t i = 0; i < methods.size(); ++i) os << (i ? "," : "") << to_string(methods[i]);
    os << "\nrepetitions = " << repetitions << "\nsamples = " << samples
       << "\nbase_seed = " << base_seed
       << "\nnoise_per_repetition = " << (noise_per_repetition ? "true" : "false")
       << "\npop_size = " << gp.pop_size << "\ngenerations = " << gp.generations
       << "\ntournament_size = " << gp.tournament_size << "\nelitism = " << gp.elitism
       << "\ninit_max_depth = " << gp.init_max_depth << "\ngp.p_crossover = " << format_real(gp.p_crossover)
       << "\ngp.max_depth = " << gp.max_depth
       << "\ngp.mutation_max_depth = " << gp.mutation_max_depth
       << "\ngsgp.p_crossover = " << format_real(gsgp.p_crossover) << "\ngsgp.ms_fraction = " << format_real(gsgp.ms_fraction)
       << "\ngsgp.random_tree_depth = " << gsgp.random_tree_depth
       << "\ngsgp.bound_mutation_trees = " << (gsgp.bound_mutation_trees ? "true" : "false")
       << '\n';
    return os.str();
}

void expand_cells(ExperimentPlan& plan)
{
    if (plan.repetitions < 1) {
        throw ConfigError("repetitions must be positive");
    }
    if (plan.samples < 1 || plan.samples > kUniformResamples) {
        throw ConfigError("samples must be in 1.." + std::to_string(kUniformResamples));
    }
    plan.gp.validate();
    plan.gsgp.validate();

    std::set<std::string> seen_names;
    for (const auto& name : plan.datasets) {
        find_spec(name);
        if (!seen_names.insert(name).second) {
            throw ConfigError("duplicate cells: dataset '" + name + "' listed twice");
        }
    }
    std::set<NoiseLevel> seen_levels;
    for (auto r : plan.noise_levels) {
        if (!seen_levels.insert(r).second) {
            throw ConfigError("duplicate cells: noise level " + r.label() + " listed twice");
        }
    }
    std::set<Method> seen_methods;
    for (auto m : plan.methods) {
        if (!seen_methods.insert(m).second) {
            throw ConfigError("duplicate cells: method listed twice");
        }
    }

    plan.cells.clear();
    for (const auto& name : plan.datasets) {
        const auto& spec = find_spec(name);
        const bool resampled = spec.uses_uniform_sampling();
        if (resampled && plan.repetitions % plan.samples != 0) {
            throw ConfigError("repetitions (" + std::to_string(plan.repetitions)
                              + ") must be divisible by samples (" + std::to_string(plan.samples)
                              + ")");
        }
        const int sample_count = resampled ? plan.samples : 1;
        const int reps_per_sample = plan.repetitions / sample_count;
        for (auto r : plan.noise_levels) {
            for (auto m : plan.methods) {
                for (int s = 0; s < sample_count; ++s) {
                    const int sample_id = resampled ? s + 1 : 0;
                    for (int rep = 0; rep < reps_per_sample; ++rep) {
                        plan.cells.push_back({m, name, r, sample_id, rep,
                                              run_seed(plan.base_seed, m, name, r, sample_id, rep)});
                    }
                }
            }
        }
    }
}

namespace {

void apply_preset(ExperimentPlan& plan, const std::string& preset)
{
    plan.datasets.clear();
    for (const auto& spec : benchmark_registry()) {
        plan.datasets.push_back(spec.name);
    }
    if (preset == "full") {
        plan.noise_levels = standard_noise_grid();
        plan.repetitions = 50;
        plan.gp = GpConfig{};
        plan.gsgp = GsgpConfig{};
    } else if (preset == "desk") {
        plan.noise_levels = {NoiseLevel::from_rate(0.0), NoiseLevel::from_rate(0.1),
                             NoiseLevel::from_rate(0.2)};
        plan.repetitions = 10;
        plan.gp = GpConfig{};
        plan.gsgp = GsgpConfig{};
        plan.gp.pop_size = plan.gsgp.pop_size = 200;
        plan.gp.generations = plan.gsgp.generations = 200;
    } else {
        throw ConfigError("unknown preset '" + preset + "' (expected full or desk)");
    }
}

} // namespace

ExperimentPlan full_plan()
{
    ExperimentPlan plan;
    apply_preset(plan, "full");
    expand_cells(plan);
    return plan;
}

ExperimentPlan desk_plan()
{
    ExperimentPlan plan;
    apply_preset(plan, "desk");
    expand_cells(plan);
    return plan;
}

ExperimentPlan plan_experiment(const ConfigMap& config)
{
    ExperimentPlan plan;
    auto preset = config.find("preset");
    apply_preset(plan, preset == config.end() ? "full" : preset->second);

    for (const auto& [key, value] : config) {
        if (key == "preset") {
            continue;
        } else if (key == "datasets") {
            if (value == "all") {
                continue;
            }
            plan.datasets = split_list(value);
            if (plan.datasets.empty()) {
                throw ConfigError("datasets list is empty");
            }
        } else if (key == "noise_levels") {
            if (value == "standard") {
                plan.noise_levels = standard_noise_grid();
                continue;
            }
            plan.noise_levels.clear();
            for (const auto& item : split_list(value)) {
                plan.noise_levels.push_back(NoiseLevel::parse(item));
            }
            if (plan.noise_levels.empty()) {
                throw ConfigError("malformed noise grid: no levels");
            }
        } else if (key == "methods") {
            plan.methods.clear();
            for (const auto& item : split_list(value)) {
                plan.methods.push_back(parse_method(item));
            }
            if (plan.methods.empty()) {
                throw ConfigError("methods list is empty");
            }
        } else if (key == "repetitions") {
            plan.repetitions = parse_number<int>(key, value);
        } else if (key == "samples") {
            plan.samples = parse_number<int>(key, value);
        } else if (key == "base_seed") {
            plan.base_seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "noise_per_repetition") {
            plan.noise_per_repetition = parse_bool(key, value);
        } else if (key == "pop_size") {
            plan.gp.pop_size = plan.gsgp.pop_size = parse_number<std::size_t>(key, value);
        } else if (key == "generations") {
            plan.gp.generations = plan.gsgp.generations = parse_number<std::size_t>(key, value);
        } else if (key == "tournament_size") {
            plan.gp.tournament_size = plan.gsgp.tournament_size =
                parse_number<std::size_t>(key, value);
        } else if (key == "elitism") {
            plan.gp.elitism = plan.gsgp.elitism = parse_number<std::size_t>(key, value);
        } else if (key == "init_max_depth") {
            plan.gp.init_max_depth = plan.gsgp.init_max_depth =
                parse_number<std::size_t>(key, value);
        } else if (key == "gp.p_crossover") {
            plan.gp.p_crossover = parse_number<double>(key, value);
            plan.gp.p_mutation = 1.0 - plan.gp.p_crossover;
        } else if (key == "gp.max_depth") {
            plan.gp.max_depth = parse_number<std::size_t>(key, value);
        } else if (key == "gp.mutation_max_depth") {
            plan.gp.mutation_max_depth = parse_number<std::size_t>(key, value);
        } else if (key == "gsgp.p_crossover") {
            plan.gsgp.p_crossover = parse_number<double>(key, value);
            plan.gsgp.p_mutation = 1.0 - plan.gsgp.p_crossover;
        } else if (key == "gsgp.ms_fraction") {
            plan.gsgp.ms_fraction = parse_number<double>(key, value);
        } else if (key == "gsgp.random_tree_depth") {
            plan.gsgp.random_tree_depth = parse_number<std::size_t>(key, value);
        } else if (key == "gsgp.bound_mutation_trees") {
            plan.gsgp.bound_mutation_trees = parse_bool(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    expand_cells(plan);
    return plan;
}

ExperimentPlan plan_experiment(const std::filesystem::path& config_file)
{
    return plan_experiment(read_config(config_file));
}

CellData materialize(const ExperimentPlan& plan, const Cell& cell)
{
    const auto& spec = find_spec(cell.dataset);
    Rng train_rng(data_seed(plan.base_seed, cell.dataset, Partition::Train, cell.sample_id));
    Rng test_rng(data_seed(plan.base_seed, cell.dataset, Partition::Test, cell.sample_id));
    Rng noise_rng(noise_seed(plan.base_seed, cell.dataset, cell.noise, cell.sample_id,
                             cell.rep_index, plan.noise_per_repetition));
    auto clean = build_dataset(spec, Partition::Train, cell.sample_id, train_rng);
    return {inject_noise(clean, cell.noise, noise_rng),
            build_dataset(spec, Partition::Test, cell.sample_id, test_rng)};
}

RunRecord run_cell(const ExperimentPlan& plan, const Cell& cell)
{
    const auto started = std::chrono::steady_clock::now();
    const auto data = materialize(plan, cell);
    const auto result = cell.method == Method::GP
                            ? run_gp(plan.gp, data.train, data.test, cell.seed)
                            : run_gsgp(plan.gsgp, data.train, data.test, cell.seed);
    RunRecord rec;
    rec.method = cell.method;
    rec.dataset = cell.dataset;
    rec.noise = cell.noise;
    rec.sample_id = cell.sample_id;
    rec.rep_index = cell.rep_index;
    rec.seed = cell.seed;
    rec.final_train_nrmse = result.train_nrmse;
    rec.final_test_nrmse = result.test_nrmse;
    rec.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    rec.config_hash = plan.config_hash(cell.method);
    return rec;
}

} // namespace gsnoise
