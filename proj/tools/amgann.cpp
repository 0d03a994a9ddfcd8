/// @file amgann.cpp
/// @brief Command-line front end: corpus generation, splitting, surrogate
///        training, prediction, threshold selection, solving, CPU-time
///        benchmarking, regression analysis, and CSV export.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "amgann/amgann.hpp"

extern "C" void openblas_set_num_threads(int);

namespace {

using namespace amgann;
using nlohmann::json;

// ==========================================================================
// Shared helpers
// ==========================================================================

/// Parses a threshold grid spec: a bare integer is a count of equally spaced
/// points on [0.12, 0.72]; otherwise a comma-separated list of values.
std::vector<real_t> parse_theta_grid(const std::string& spec) {
    if (spec.find_first_not_of("0123456789") == std::string::npos)
        return theta_grid(static_cast<index_t>(std::stoll(spec)));
    std::vector<real_t> grid;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const real_t value = std::stod(item, &used);
        if (used != item.size())
            throw InvalidParameterError("theta grid: cannot parse '" + item + "'");
        if (!(value > 0.0) || value > 1.0)
            throw InvalidParameterError("theta grid: thresholds must lie in (0, 1]");
        grid.push_back(value);
    }
    if (grid.empty()) throw InvalidParameterError("theta grid: empty spec");
    return grid;
}

const std::vector<std::string> kPatternNames = {
    "a", "b", "c", "d", "two_strides", "checkerboard_2x2", "four_strides", "checkerboard_4x4"};

/// Builds the coefficient from --pattern/--eps/--eps2 flag values.
DiffusionPattern pattern_from_flags(const std::string& name, real_t eps,
                                    const std::optional<real_t>& eps2) {
    const PatternKind kind = pattern_from_name(name);
    return eps2 ? DiffusionPattern::pair(kind, eps, *eps2)
                : DiffusionPattern::single(kind, eps);
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing '" + path + "'");
}

void emit(const json& j, const std::string& out_path) {
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty()) write_json(out_path, j);
}

std::string g17(real_t x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json coefficient_json(const DiffusionPattern& p) {
    json j;
    j["pattern"] = pattern_name(p.kind);
    if (p.two_exponents)
        j["epsilon"] = {p.eps_white, p.eps_gray};
    else
        j["epsilon"] = p.eps_white;
    return j;
}

std::vector<BenchmarkPoint> load_benchmark(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    const json j = json::parse(in);
    std::vector<BenchmarkPoint> points;
    for (const json& item : j.at("points")) points.push_back(benchmark_point_from_json(item));
    return points;
}

/// Groups benchmark points by refinement level and runs the through-origin
/// regression of time on rho per level, with per-(coefficient) test cases.
std::vector<std::pair<index_t, OlsReport>> per_level_regressions(
    const std::vector<BenchmarkPoint>& points) {
    std::map<index_t, std::vector<RhoTimePoint>> by_level;
    std::map<std::string, index_t> case_ids;
    for (const BenchmarkPoint& p : points) {
        const std::string key = coefficient_json(p.coefficient).dump();
        const auto [it, inserted] = case_ids.emplace(key, static_cast<index_t>(case_ids.size()));
        by_level[p.k].push_back({it->second, p.rho, p.time_mean});
    }
    std::vector<std::pair<index_t, OlsReport>> reports;
    for (const auto& [k, pts] : by_level) reports.emplace_back(k, least_squares_rho_time(pts));
    return reports;
}

NormalizedView view_of(const Sample& s) {
    NormalizedView v;
    v.m = s.m;
    v.mode = s.mode;
    v.values = s.view;
    return v;
}

/// Checks that every sample in a corpus shares one view size and mode.
void require_uniform(const std::vector<Sample>& corpus, const std::string& what) {
    for (const Sample& s : corpus)
        if (s.m != corpus.front().m || s.mode != corpus.front().mode)
            throw InvalidParameterError(what + ": samples mix view sizes or modes");
}

// ==========================================================================
// Subcommand bodies
// ==========================================================================

struct GenerateArgs {
    std::string dataset;
    std::string out;
    index_t m = 50;
    std::string mode = "sum-standard";
    index_t min_k = 3, max_k = 7;
    index_t theta_count = 0;
    bool full = false, time = false;
    real_t tol = 1e-8;
    index_t n_max = 500;
};

int run_generate(const GenerateArgs& a) {
    GenerateOptions opt;
    opt.m = a.m;
    opt.mode = normalization_mode_from_string(a.mode);
    opt.min_k = a.full ? 3 : a.min_k;
    opt.max_k = a.full ? 10 : a.max_k;
    opt.theta_count = a.theta_count;
    opt.time = a.time;
    opt.tol = a.tol;
    opt.n_max = a.n_max;

    const auto progress = [](const GenerateKey& key, const GenerateReport& r) {
        const index_t done = r.written + r.skipped;
        if (done % 25 != 0 && done != r.total) return;
        std::cerr << "[" << done << "/" << r.total << "] " << pattern_name(key.coefficient.kind)
                  << " eps=" << key.coefficient.eps_white;
        if (key.coefficient.two_exponents) std::cerr << "," << key.coefficient.eps_gray;
        std::cerr << " k=" << key.k << " theta=" << key.theta << "\n";
    };
    const GenerateReport report = a.dataset == "ds1" ? generate_dataset1(a.out, opt, progress)
                                                     : generate_dataset2(a.out, opt, progress);
    emit(json{{"dataset", a.dataset},
              {"path", a.out},
              {"written", report.written},
              {"skipped", report.skipped},
              {"total", report.total}},
         "");
    return 0;
}

struct SplitArgs {
    std::string in, in2, out_prefix;
    std::uint64_t seed = 0;
    real_t train = 0.6, val = 0.2, test = 0.2;
};

int run_split(const SplitArgs& a) {
    const std::vector<Sample> corpus = load_corpus(a.in);
    SplitResult result;
    if (a.in2.empty()) {
        result = split(corpus, SplitSpec{a.train, a.val, a.test}, a.seed);
    } else {
        result = split_composite(corpus, load_corpus(a.in2), a.seed);
    }
    const std::string train_path = a.out_prefix + ".train.bin";
    const std::string val_path = a.out_prefix + ".val.bin";
    const std::string test_path = a.out_prefix + ".test.bin";
    save_corpus(train_path, result.train);
    save_corpus(val_path, result.val);
    save_corpus(test_path, result.test);
    emit(json{{"train", {{"path", train_path}, {"count", result.train.size()}}},
              {"val", {{"path", val_path}, {"count", result.val.size()}}},
              {"test", {{"path", test_path}, {"count", result.test.size()}}}},
         "");
    return 0;
}

struct TrainArgs {
    std::string train_path, val_path, out;
    std::uint64_t seed = 0;
    index_t epochs = 1000, patience = 50, batch = 32;
    real_t lr = 1e-3;
    index_t conv1_width = 40, conv1_depth = 2;
    real_t conv1_dropout = 0.25;
    index_t conv2_width = 0, conv2_depth = 1;
    real_t conv2_dropout = 0.0;
    index_t head_units = 128, dense_width = 128, dense_depth = 4;
    bool quiet = false;
};

int run_train(const TrainArgs& a) {
    const std::vector<Sample> train_corpus = load_corpus(a.train_path);
    const std::vector<Sample> val_corpus = load_corpus(a.val_path);
    if (train_corpus.empty() || val_corpus.empty())
        throw DegenerateInputError("train: empty corpus");
    require_uniform(train_corpus, "train corpus");
    require_uniform(val_corpus, "validation corpus");
    if (train_corpus.front().m != val_corpus.front().m ||
        train_corpus.front().mode != val_corpus.front().mode)
        throw InvalidParameterError("train: corpora disagree on view size or mode");

    NetworkConfig config;
    config.conv1 = {a.conv1_width, a.conv1_depth, a.conv1_dropout};
    if (a.conv2_width > 0)
        config.conv2 = ConvGroupConfig{a.conv2_width, a.conv2_depth, a.conv2_dropout};
    else
        config.conv2.reset();
    config.head_units = a.head_units;
    config.dense_width = a.dense_width;
    config.dense_depth = a.dense_depth;

    TrainOptions options;
    options.batch_size = a.batch;
    options.max_epochs = a.epochs;
    options.patience = a.patience;
    options.adam.learning_rate = a.lr;
    if (!a.quiet)
        options.on_epoch = [](index_t epoch, real_t tr, real_t val, bool best) {
            std::cerr << "epoch " << epoch << " train " << tr << " val " << val
                      << (best ? " *" : "") << "\n";
        };

    const auto [model, history] =
        train(to_train_samples(train_corpus), to_train_samples(val_corpus), config,
              train_corpus.front().m, a.seed, train_corpus.front().mode, options);
    save_model(a.out, model);
    emit(json{{"path", a.out},
              {"epochs_run", history.train_loss.size()},
              {"best_epoch", history.best_epoch},
              {"final_train_loss", history.train_loss.back()},
              {"best_val_loss", history.val_loss[static_cast<std::size_t>(history.best_epoch)]},
              {"parameters", model.params.size()}},
         "");
    return 0;
}

struct PredictArgs {
    std::string model, in, out_csv;
};

int run_predict(const PredictArgs& a) {
    const SurrogateModel model = load_model(a.model);
    const std::vector<Sample> corpus = load_corpus(a.in);
    if (corpus.empty()) throw DegenerateInputError("predict: empty corpus");

    std::vector<real_t> predictions, targets;
    for (const Sample& s : corpus) {
        predictions.push_back(forward(model, view_of(s), s.neg_log2_h(), s.theta));
        targets.push_back(s.rho);
    }
    if (!a.out_csv.empty()) {
        std::ofstream out(a.out_csv);
        if (!out) throw IoError("cannot open '" + a.out_csv + "' for writing");
        out << "pattern,eps1,eps2,k,theta,rho,predicted\n";
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const Sample& s = corpus[i];
            out << pattern_name(s.coefficient.kind) << "," << g17(s.coefficient.eps_white) << ","
                << g17(s.coefficient.two_exponents ? s.coefficient.eps_gray
                                                   : s.coefficient.eps_white)
                << "," << s.k << "," << g17(s.theta) << "," << g17(s.rho) << ","
                << g17(predictions[i]) << "\n";
        }
    }
    json j{{"count", corpus.size()},
           {"mse", loss_mse(predictions, targets)},
           {"mae", metric_mae(predictions, targets)}};
    if (!a.out_csv.empty()) j["csv"] = a.out_csv;
    emit(j, "");
    return 0;
}

struct ProblemArgs {
    std::string pattern;
    real_t eps = 0.0;
    std::optional<real_t> eps2;
    index_t k = 5;
};

struct SelectArgs {
    std::string model, grid, out;
    ProblemArgs problem;
};

int run_select_theta(const SelectArgs& a) {
    const SurrogateModel model = load_model(a.model);
    const std::vector<real_t> grid =
        a.grid.empty() ? default_selection_grid() : parse_theta_grid(a.grid);
    const ProblemSpec spec(StructuredMesh(index_t{1} << a.problem.k),
                           pattern_from_flags(a.problem.pattern, a.problem.eps, a.problem.eps2));

    const real_t t0 = cpu_seconds();
    const auto [matrix, rhs] = assemble(spec);
    const NormalizedView view = normalize(pooling(csr_to_coo(matrix), model.m), model.mode);
    const ThetaSelection sel = select_theta(model, view, spec.mesh.neg_log2_h(), grid);
    const real_t elapsed = cpu_seconds() - t0;

    emit(json{{"problem", to_json(spec)},
              {"theta_star", sel.theta_star},
              {"grid", sel.grid},
              {"predicted", sel.predicted},
              {"selection_seconds", elapsed}},
         a.out);
    return 0;
}

struct SolveArgs {
    std::string model, grid, out;
    std::optional<real_t> theta;
    ProblemArgs problem;
    index_t nu_pre = 1, nu_post = 1, n_max = 500;
    real_t tol = 1e-8;
};

int run_solve(const SolveArgs& a) {
    const ProblemSpec spec(StructuredMesh(index_t{1} << a.problem.k),
                           pattern_from_flags(a.problem.pattern, a.problem.eps, a.problem.eps2));
    json j{{"problem", to_json(spec)}};
    if (a.theta) {
        const auto [matrix, rhs] = assemble(spec);
        const TwoLevelHierarchy h = amg_setup(matrix, *a.theta, a.nu_pre, a.nu_post);
        const auto [u, report] = pcg(matrix, rhs, h, a.tol, a.n_max);
        j["theta"] = *a.theta;
        j["report"] = to_json(report);
        j["l2_error"] = l2_error(spec, u);
    } else {
        const SurrogateModel model = load_model(a.model);
        const std::vector<real_t> grid =
            a.grid.empty() ? default_selection_grid() : parse_theta_grid(a.grid);
        const AnnAmgResult result =
            ann_amg_solve(spec, model, grid, a.nu_pre, a.nu_post, a.n_max, a.tol);
        j["theta"] = result.selection.theta_star;
        j["report"] = to_json(result.report);
        j["l2_error"] = l2_error(spec, result.solution);
        j["selection"] = {{"theta_star", result.selection.theta_star},
                          {"grid", result.selection.grid},
                          {"predicted", result.selection.predicted},
                          {"selection_seconds", result.selection_seconds}};
    }
    emit(j, a.out);
    return 0;
}

struct BenchmarkArgs {
    std::string out, grid = "5";
    std::vector<std::string> patterns{"c", "d"};
    std::vector<real_t> eps{0.0, 3.5};
    index_t min_k = 5, max_k = 7;
    real_t tol = 1e-8;
    index_t n_max = 500;
};

int run_benchmark(const BenchmarkArgs& a) {
    std::vector<DiffusionPattern> problems;
    for (const std::string& name : a.patterns)
        for (real_t eps : a.eps)
            problems.push_back(DiffusionPattern::single(pattern_from_name(name), eps));
    const std::vector<real_t> thetas = parse_theta_grid(a.grid);

    std::cerr << "repetition schedule:";
    for (index_t k = a.min_k; k <= a.max_k; ++k)
        std::cerr << " k=" << k << ":" << repetition_count(k);
    std::cerr << "\n";
    const auto progress = [](const BenchmarkPoint& p, std::size_t done, std::size_t total) {
        std::cerr << "[" << done << "/" << total << "] " << pattern_name(p.coefficient.kind)
                  << " eps=" << p.coefficient.eps_white << " k=" << p.k << " theta=" << p.theta
                  << " rho=" << p.rho << " time=" << p.time_mean << "s x" << p.repetitions
                  << "\n";
    };
    const std::vector<BenchmarkPoint> points =
        timing_benchmark(problems, a.min_k, a.max_k, thetas, a.tol, a.n_max, progress);

    json items = json::array();
    for (const BenchmarkPoint& p : points) items.push_back(to_json(p));
    write_json(a.out, json{{"points", items}});
    emit(json{{"path", a.out}, {"points", points.size()}}, "");
    return 0;
}

struct AnalyzeArgs {
    std::string in, out;
};

int run_analyze(const AnalyzeArgs& a) {
    const std::vector<BenchmarkPoint> points = load_benchmark(a.in);
    const auto reports = per_level_regressions(points);

    json levels = json::array();
    for (const auto& [k, report] : reports) {
        json j = to_json(report);
        j["k"] = k;
        j["h"] = 1.0 / static_cast<real_t>(index_t{1} << k);
        levels.push_back(j);
    }

    // Human-readable table, one column per refinement level.
    const auto row = [&](const std::string& label, const auto& value_of) {
        std::cout << label;
        for (const auto& [k, report] : reports) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%14.4g", static_cast<double>(value_of(report)));
            std::cout << buf;
        }
        std::cout << "\n";
    };
    std::cout << "level         ";
    for (const auto& [k, report] : reports) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%14s", ("k=" + std::to_string(k)).c_str());
        std::cout << buf;
    }
    std::cout << "\n";
    row("data points   ", [](const OlsReport& r) { return static_cast<real_t>(r.n); });
    row("R^2           ", [](const OlsReport& r) { return r.r_squared; });
    row("adj. R^2      ", [](const OlsReport& r) { return r.adj_r_squared; });
    row("F-statistic   ", [](const OlsReport& r) { return r.f_statistic; });
    row("AIC           ", [](const OlsReport& r) { return r.aic; });
    row("rho coef.     ", [](const OlsReport& r) { return r.beta; });
    row("rho SE        ", [](const OlsReport& r) { return r.std_error; });
    row("rho t-value   ", [](const OlsReport& r) { return r.t_value; });
    row("rho p-value   ", [](const OlsReport& r) { return r.p_value; });

    if (!a.out.empty()) write_json(a.out, json{{"levels", levels}});
    return 0;
}

struct ExportArgs {
    std::string benchmark, model, corpus, out_dir;
};

int run_export_figures(const ExportArgs& a) {
    bool wrote_any = false;
    json outputs = json::array();

    if (!a.benchmark.empty()) {
        const std::vector<BenchmarkPoint> points = load_benchmark(a.benchmark);

        // CPU time against the threshold, one series per (pattern, eps, k).
        const std::string theta_time = a.out_dir + "/theta_time.csv";
        {
            std::ofstream out(theta_time);
            if (!out) throw IoError("cannot open '" + theta_time + "' for writing");
            out << "pattern,eps1,eps2,k,theta,time_mean,time_std,rho,iterations\n";
            for (const BenchmarkPoint& p : points)
                out << pattern_name(p.coefficient.kind) << "," << g17(p.coefficient.eps_white)
                    << ","
                    << g17(p.coefficient.two_exponents ? p.coefficient.eps_gray
                                                       : p.coefficient.eps_white)
                    << "," << p.k << "," << g17(p.theta) << "," << g17(p.time_mean) << ","
                    << g17(p.time_std) << "," << g17(p.rho) << "," << p.iterations << "\n";
        }
        outputs.push_back(theta_time);

        // Scatter of time against rho, normalized per (coefficient, k) group.
        const std::string scatter = a.out_dir + "/rho_time_scatter.csv";
        {
            std::map<std::string, std::pair<real_t, real_t>> maxima;
            const auto group_of = [](const BenchmarkPoint& p) {
                return coefficient_json(p.coefficient).dump() + "#" + std::to_string(p.k);
            };
            for (const BenchmarkPoint& p : points) {
                auto& m = maxima[group_of(p)];
                m.first = std::max(m.first, std::abs(p.rho));
                m.second = std::max(m.second, std::abs(p.time_mean));
            }
            std::ofstream out(scatter);
            if (!out) throw IoError("cannot open '" + scatter + "' for writing");
            out << "pattern,eps1,eps2,k,theta,rho_normalized,time_normalized\n";
            for (const BenchmarkPoint& p : points) {
                const auto& m = maxima[group_of(p)];
                if (m.first == 0.0 || m.second == 0.0) continue;
                out << pattern_name(p.coefficient.kind) << "," << g17(p.coefficient.eps_white)
                    << ","
                    << g17(p.coefficient.two_exponents ? p.coefficient.eps_gray
                                                       : p.coefficient.eps_white)
                    << "," << p.k << "," << g17(p.theta) << "," << g17(p.rho / m.first) << ","
                    << g17(p.time_mean / m.second) << "\n";
            }
        }
        outputs.push_back(scatter);
        wrote_any = true;
    }

    if (!a.model.empty() || !a.corpus.empty()) {
        if (a.model.empty() || a.corpus.empty())
            throw InvalidParameterError(
                "export-figures: --model and --corpus must be given together");
        const SurrogateModel model = load_model(a.model);
        const std::vector<Sample> corpus = load_corpus(a.corpus);

        // Predicted and measured convergence factors per sample.
        const std::string predictions = a.out_dir + "/predictions.csv";
        std::ofstream out(predictions);
        if (!out) throw IoError("cannot open '" + predictions + "' for writing");
        out << "pattern,eps1,eps2,k,theta,rho,predicted\n";
        for (const Sample& s : corpus) {
            const real_t pred = forward(model, view_of(s), s.neg_log2_h(), s.theta);
            out << pattern_name(s.coefficient.kind) << "," << g17(s.coefficient.eps_white) << ","
                << g17(s.coefficient.two_exponents ? s.coefficient.eps_gray
                                                   : s.coefficient.eps_white)
                << "," << s.k << "," << g17(s.theta) << "," << g17(s.rho) << "," << g17(pred)
                << "\n";
        }
        outputs.push_back(predictions);
        wrote_any = true;
    }

    if (!wrote_any)
        throw InvalidParameterError(
            "export-figures: pass --benchmark and/or --model with --corpus");
    emit(json{{"outputs", outputs}}, "");
    return 0;
}

/// Registers the --pattern/--eps/--eps2/--k flag group on a subcommand.
void add_problem_flags(CLI::App* sub, ProblemArgs& p) {
    sub->add_option("--pattern", p.pattern, "diffusion pattern (a|b|c|d or full name)")
        ->required()
        ->check(CLI::IsMember(kPatternNames));
    sub->add_option("--eps", p.eps, "diffusion exponent: coefficient is 10^eps on gray tiles")
        ->required();
    sub->add_option("--eps2", p.eps2,
                    "second exponent: 10^eps on white and 10^eps2 on gray tiles");
    sub->add_option("--k", p.k, "refinement level; the mesh has 2^k cells per side")
        ->required()
        ->check(CLI::Range(index_t{2}, index_t{12}));
}

} // namespace

int main(int argc, char** argv) {
    int threads = 1;
    if (const char* env = std::getenv("AMGANN_THREADS")) threads = std::max(1, std::atoi(env));
    openblas_set_num_threads(threads);

    CLI::App app{"Two-level AMG-preconditioned CG with a learned strong-threshold selector"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand(
        "generate", "Generate a training corpus over the parameter grid (resumable)");
    generate->add_option("dataset", gen.dataset, "which corpus grid: ds1 or ds2")
        ->required()
        ->check(CLI::IsMember({"ds1", "ds2"}));
    generate->add_option("--out", gen.out, "corpus file to create or resume")->required();
    generate->add_option("--m", gen.m, "pooled view side length (default 50)");
    generate->add_option("--mode", gen.mode, "normalization mode (default sum-standard)")
        ->check(CLI::IsMember({"sum-standard", "sum-scaled", "mean-standard", "mean-scaled"}));
    CLI::Option* min_k = generate->add_option("--min-k", gen.min_k, "coarsest level (default 3)");
    CLI::Option* max_k = generate->add_option("--max-k", gen.max_k, "finest level (default 7)");
    generate->add_option("--theta-count", gen.theta_count,
                         "thresholds per problem (default 25 for ds1, 18 for ds2)");
    generate->add_flag("--full", gen.full, "full documented grid, levels 3..10")
        ->excludes(min_k)
        ->excludes(max_k);
    generate->add_flag("--time", gen.time,
                       "time each solve with the repetition schedule (breaks bit-exact reruns)");
    generate->add_option("--tol", gen.tol, "solver tolerance (default 1e-8)");
    generate->add_option("--n-max", gen.n_max, "solver iteration cap (default 500)");
    generate->callback([&gen] { run_generate(gen); });

    SplitArgs spl;
    CLI::App* split_cmd =
        app.add_subcommand("split", "Split one corpus by fractions, or two by the pooled rule");
    split_cmd->add_option("--in", spl.in, "corpus file")->required();
    CLI::Option* in2 = split_cmd->add_option(
        "--in2", spl.in2, "second corpus: keep 50% of --in and 80% of --in2, pool, take "
                          "a quarter for validation; the rest of both is the test set");
    split_cmd->add_option("--out-prefix", spl.out_prefix,
                          "writes <prefix>.train.bin, <prefix>.val.bin, <prefix>.test.bin")
        ->required();
    split_cmd->add_option("--seed", spl.seed, "shuffle seed (default 0)");
    split_cmd->add_option("--train", spl.train, "training fraction (default 0.6)")->excludes(in2);
    split_cmd->add_option("--val", spl.val, "validation fraction (default 0.2)")->excludes(in2);
    split_cmd->add_option("--test", spl.test, "test fraction (default 0.2)")->excludes(in2);
    split_cmd->callback([&spl] { run_split(spl); });

    TrainArgs tr;
    CLI::App* train_cmd = app.add_subcommand("train", "Train the surrogate on split corpora");
    train_cmd->add_option("--train", tr.train_path, "training corpus")->required();
    train_cmd->add_option("--val", tr.val_path, "validation corpus")->required();
    train_cmd->add_option("--out", tr.out, "model file to write")->required();
    train_cmd->add_option("--seed", tr.seed, "initialization/shuffle/dropout seed (default 0)");
    train_cmd->add_option("--epochs", tr.epochs, "epoch cap (default 1000)");
    train_cmd->add_option("--patience", tr.patience,
                          "epochs without validation improvement before stopping (default 50)");
    train_cmd->add_option("--batch", tr.batch, "batch size (default 32)");
    train_cmd->add_option("--lr", tr.lr, "Adam learning rate (default 1e-3)");
    train_cmd->add_option("--conv1-width", tr.conv1_width, "first conv stage channels");
    train_cmd->add_option("--conv1-depth", tr.conv1_depth, "first conv stage depth");
    train_cmd->add_option("--conv1-dropout", tr.conv1_dropout, "first conv stage dropout rate");
    train_cmd->add_option("--conv2-width", tr.conv2_width,
                          "second conv stage channels (0 disables the stage)");
    train_cmd->add_option("--conv2-depth", tr.conv2_depth, "second conv stage depth");
    train_cmd->add_option("--conv2-dropout", tr.conv2_dropout, "second conv stage dropout rate");
    train_cmd->add_option("--head-units", tr.head_units, "dense head width");
    train_cmd->add_option("--dense-width", tr.dense_width, "dense stack width");
    train_cmd->add_option("--dense-depth", tr.dense_depth, "dense stack depth");
    train_cmd->add_flag("--quiet", tr.quiet, "suppress per-epoch progress");
    train_cmd->callback([&tr] { run_train(tr); });

    PredictArgs pr;
    CLI::App* predict =
        app.add_subcommand("predict", "Evaluate a model on a corpus (MSE, MAE, optional CSV)");
    predict->add_option("--model", pr.model, "model file")->required();
    predict->add_option("--in", pr.in, "corpus file")->required();
    predict->add_option("--out", pr.out_csv, "per-sample CSV to write");
    predict->callback([&pr] { run_predict(pr); });

    SelectArgs sel;
    CLI::App* select =
        app.add_subcommand("select-theta", "Pick the strong threshold for one problem");
    select->add_option("--model", sel.model, "model file")->required();
    add_problem_flags(select, sel.problem);
    select->add_option("--theta-grid", sel.grid,
                       "candidate grid: a count on [0.12, 0.72] or a comma list "
                       "(default: the training grid of 25)");
    select->add_option("--out", sel.out, "also write the selection JSON here");
    select->callback([&sel] { run_select_theta(sel); });

    SolveArgs sol;
    CLI::App* solve = app.add_subcommand(
        "solve", "Solve one problem, with the threshold chosen by a model or pinned");
    CLI::Option* model_opt = solve->add_option("--model", sol.model, "model file selecting theta");
    solve->add_option("--theta", sol.theta, "pinned strong threshold (bypasses the model)")
        ->excludes(model_opt);
    add_problem_flags(solve, sol.problem);
    solve->add_option("--theta-grid", sol.grid, "candidate grid when --model is used");
    solve->add_option("--nu1", sol.nu_pre, "pre-smoothing sweeps (default 1)");
    solve->add_option("--nu2", sol.nu_post, "post-smoothing sweeps (default 1)");
    solve->add_option("--tol", sol.tol, "relative residual tolerance (default 1e-8)");
    solve->add_option("--n-max", sol.n_max, "iteration cap (default 500)");
    solve->add_option("--out", sol.out, "also write the result JSON here");
    solve->callback([&sol, model_opt] {
        if (model_opt->count() == 0 && !sol.theta)
            throw CLI::RequiredError("solve: one of --model or --theta");
        run_solve(sol);
    });

    BenchmarkArgs bm;
    CLI::App* benchmark = app.add_subcommand(
        "benchmark", "Time PCG solves over a parameter grid with the repetition schedule");
    benchmark->add_option("--out", bm.out, "benchmark JSON to write")->required();
    benchmark->add_option("--pattern", bm.patterns, "patterns to run (default c,d)")
        ->delimiter(',')
        ->check(CLI::IsMember(kPatternNames));
    benchmark->add_option("--eps", bm.eps, "diffusion exponents (default 0.0,3.5)")
        ->delimiter(',');
    benchmark->add_option("--min-k", bm.min_k, "coarsest level (default 5)")
        ->check(CLI::Range(index_t{3}, index_t{10}));
    benchmark->add_option("--max-k", bm.max_k, "finest level (default 7)")
        ->check(CLI::Range(index_t{3}, index_t{10}));
    benchmark->add_option("--theta-grid", bm.grid,
                          "count on [0.12, 0.72] or comma list (default 5)");
    benchmark->add_option("--tol", bm.tol, "solver tolerance (default 1e-8)");
    benchmark->add_option("--n-max", bm.n_max, "solver iteration cap (default 500)");
    benchmark->callback([&bm] { run_benchmark(bm); });

    AnalyzeArgs an;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "Per-level least-squares tables of solve time against rho");
    analyze->add_option("--in", an.in, "benchmark JSON from the benchmark subcommand")
        ->required();
    analyze->add_option("--out", an.out, "also write the tables as JSON");
    analyze->callback([&an] { run_analyze(an); });

    ExportArgs ex;
    CLI::App* export_cmd = app.add_subcommand(
        "export-figures", "Write plot-ready CSV series from benchmark/model artifacts");
    export_cmd->add_option("--benchmark", ex.benchmark,
                           "benchmark JSON: writes theta_time.csv and rho_time_scatter.csv");
    export_cmd->add_option("--model", ex.model, "model file: writes predictions.csv");
    export_cmd->add_option("--corpus", ex.corpus, "corpus the predictions are computed on");
    export_cmd->add_option("--out-dir", ex.out_dir, "directory for the CSV files")->required();
    export_cmd->callback([&ex] { run_export_figures(ex); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
