// Command-line front end: compare, properties, anomaly, cluster, bench, gen.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "deltacon/anomaly.hpp"
#include "deltacon/baselines.hpp"
#include "deltacon/bench.hpp"
#include "deltacon/cluster.hpp"
#include "deltacon/generators.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/properties.hpp"
#include "deltacon/similarity.hpp"

namespace fs = std::filesystem;
using namespace deltacon;

namespace {

struct CompareConfig {
    std::string input_a, input_b;
    std::vector<std::string> methods = {"dc0"};
    bool synthetic = false;
    bool one_based = false;
    bool csv = false;
    std::optional<int> n_override;
    std::optional<double> eps_override;
    int groups = 5;
    std::uint64_t seed = 0;
    int nseeds = 1;
    double tol = 1e-9;
    std::string dump_dir;
};

Graph load_input(const std::string& spec, const CompareConfig& cfg, std::uint64_t gen_seed) {
    if (cfg.synthetic) return generate(spec, gen_seed);
    return load_edge_list(spec, cfg.n_override, cfg.one_based);
}

void print_result(const SimilarityResult& r, bool csv, bool header) {
    if (!csv) {
        std::cout << to_json(r).dump() << "\n";
        return;
    }
    if (header)
        std::cout << "method,distance,similarity,epsilon,g,seed,runtime_ms\n";
    auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
    std::cout << method_name(r.method) << ',' << opt(r.distance) << ',' << opt(r.similarity) << ','
              << opt(r.params.epsilon) << ',' << opt(r.params.groups) << ',' << opt(r.params.seed)
              << ',' << r.runtime_ms << "\n";
}

int cmd_compare(const CompareConfig& cfg) {
    Graph a = load_input(cfg.input_a, cfg, cfg.seed);
    Graph b = load_input(cfg.input_b, cfg, cfg.seed);
    SolveOptions solve{cfg.tol, 100000};

    std::vector<std::string> methods = cfg.methods;
    if (std::find(methods.begin(), methods.end(), "all") != methods.end())
        methods = {"dc0", "dc", "veo", "ged", "lambda-adj", "lambda-lap", "lambda-nl"};

    bool first = true;
    for (const auto& name : methods) {
        auto method = method_from_flag(name);
        if (!method) throw ValidationError("unknown method \"" + name + "\"");
        SimilarityResult r;
        switch (*method) {
            case Method::dc0: r = deltacon0(a, b, solve, cfg.eps_override); break;
            case Method::dc:
                r = cfg.nseeds > 1
                        ? deltacon_mean(a, b, cfg.groups, cfg.seed, cfg.nseeds, solve, cfg.eps_override)
                        : deltacon::deltacon(a, b, cfg.groups, cfg.seed, solve, cfg.eps_override);
                break;
            case Method::veo: r = veo(a, b); break;
            case Method::ged: r = ged(a, b); break;
            case Method::lambda_adj: r = lambda_distance(a, b, MatrixKind::adjacency); break;
            case Method::lambda_lap: r = lambda_distance(a, b, MatrixKind::laplacian); break;
            case Method::lambda_nl: r = lambda_distance(a, b, MatrixKind::normalized_laplacian); break;
        }
        print_result(r, cfg.csv, first);
        first = false;
    }

    if (!cfg.dump_dir.empty()) {
        fs::create_directories(cfg.dump_dir);
        auto [ua, ub] = union_node_space(a, b);
        double eps = cfg.eps_override.value_or(shared_epsilon(ua, ub));
        int idx = 1;
        for (const Graph* g : {&ua, &ub}) {
            std::ofstream out(fs::path(cfg.dump_dir) / ("affinity" + std::to_string(idx++) + ".csv"));
            dump_csv(full_affinity(*g, eps, solve), out);
        }
    }
    return 0;
}

int cmd_properties(const std::string& method_flag, const HarnessOptions& opts) {
    auto method = method_from_flag(method_flag);
    if (!method) throw ValidationError("unknown method \"" + method_flag + "\"");

    std::vector<CaseResult> results;
    for (const auto& battery : {table4_battery(), table5_battery(), table6_battery()})
        for (const auto& row : battery) results.push_back(run_case(row, *method, opts));
    std::cout << markdown_table(results, *method);
    int violations = 0;
    for (const auto& r : results) violations += r.pass ? 0 : 1;
    std::cout << "\n" << results.size() - violations << "/" << results.size() << " properties hold\n";
    return 0;
}

std::vector<fs::path> sorted_graph_files(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError("no graph files in " + dir);
    return files;
}

int cmd_anomaly(const std::string& dir, int groups, std::uint64_t seed, int nseeds, bool one_based) {
    std::vector<Graph> snapshots;
    for (const auto& f : sorted_graph_files(dir))
        snapshots.push_back(load_edge_list(f, std::nullopt, one_based));

    TimelineOptions opts;
    opts.groups = groups;
    opts.seed = seed;
    opts.nseeds = nseeds;
    auto scores = similarity_timeline(snapshots, opts);
    auto rep = control_limits(scores);

    std::cout << "step,score,lower,upper,flag\n";
    for (std::size_t t = 0; t < rep.scores.size(); ++t) {
        bool flagged = std::find(rep.flagged.begin(), rep.flagged.end(), static_cast<int>(t)) !=
                       rep.flagged.end();
        std::cout << t << ',' << rep.scores[t] << ',' << rep.lower_limit << ',' << rep.upper_limit
                  << ',' << (flagged ? 1 : 0) << "\n";
    }
    return 0;
}

int cmd_cluster(const std::string& dir, int k, const PairwiseOptions& opts, bool one_based) {
    std::vector<Graph> graphs;
    std::vector<std::string> names;
    for (const auto& f : sorted_graph_files(dir)) {
        graphs.push_back(load_edge_list(f, std::nullopt, one_based));
        names.push_back(f.filename().string());
    }
    auto dg = ward_cluster(pairwise_similarity(graphs, opts));
    auto labels = cut(dg, k);

    nlohmann::ordered_json j;
    j["files"] = names;
    j["labels"] = labels;
    auto merges = nlohmann::ordered_json::array();
    for (const auto& m : dg.merges)
        merges.push_back({{"a", m.a}, {"b", m.b}, {"height", m.height}, {"size", m.size}});
    j["merges"] = merges;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_bench(int min_pow, int max_pow, double mean_degree, int groups, std::uint64_t seed,
              int repeats) {
    std::vector<std::size_t> sizes;
    for (int p = min_pow; p <= max_pow; ++p) sizes.push_back(std::size_t(1) << p);
    std::cout << "m,runtime_ms\n";
    for (const auto& row : bench_deltacon(sizes, mean_degree, groups, seed, repeats))
        std::cout << row.edges << ',' << row.runtime_ms << "\n";
    return 0;
}

int cmd_gen(const std::string& name, const std::string& out, std::uint64_t seed) {
    Graph g = generate(name, seed);
    save_edge_list(g, out);
    std::cout << "wrote " << name << " (" << g.node_count() << " nodes, " << g.edge_count()
              << " edges) to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph connectivity similarity toolkit"};
    app.require_subcommand(1);

    CompareConfig cc;
    auto* compare = app.add_subcommand("compare", "Similarity between two graphs");
    compare->add_option("input_a", cc.input_a, "edge-list file (or graph name with --synthetic)")
        ->required();
    compare->add_option("input_b", cc.input_b)->required();
    compare->add_option("--method", cc.methods,
                        "dc0|dc|veo|ged|lambda-adj|lambda-lap|lambda-nl|all (repeatable)");
    compare->add_flag("--synthetic", cc.synthetic, "interpret inputs as K/P/C/S/L/B/WhB names");
    compare->add_flag("--one-based", cc.one_based, "ids in the files start at 1");
    compare->add_flag("--csv", cc.csv, "CSV instead of JSON records");
    compare->add_option("--n-override", cc.n_override, "force the node count");
    compare->add_option("--epsilon", cc.eps_override, "override the neighbor-influence constant")
        ->check(CLI::Range(1e-12, 0.999999));
    compare->add_option("--g", cc.groups, "group count for dc")->check(CLI::PositiveNumber);
    compare->add_option("--seed", cc.seed, "partition seed (and synthetic generation seed)");
    compare->add_option("--seeds", cc.nseeds, "average dc over this many partition seeds")
        ->check(CLI::PositiveNumber);
    compare->add_option("--tol", cc.tol, "solver residual tolerance")->check(CLI::PositiveNumber);
    compare->add_option("--dump-affinities", cc.dump_dir, "write affinity matrices as CSV here");

    std::string prop_method = "dc0";
    HarnessOptions prop_opts;
    auto* properties = app.add_subcommand("properties", "Run the similarity-property battery");
    properties->add_option("--method", prop_method, "method under test");
    properties->add_option("--g", prop_opts.groups)->check(CLI::PositiveNumber);
    properties->add_option("--seeds", prop_opts.nseeds)->check(CLI::PositiveNumber);
    properties->add_option("--gen-seed", prop_opts.gen_seed, "generation seed for named graphs");

    std::string anomaly_dir;
    int anomaly_g = 5, anomaly_seeds = 10;
    std::uint64_t anomaly_seed = 0;
    bool anomaly_one_based = false;
    auto* anomaly = app.add_subcommand("anomaly", "Timeline control chart over snapshots");
    anomaly->add_option("--dir", anomaly_dir, "directory of ordered edge-list files")->required();
    anomaly->add_option("--g", anomaly_g)->check(CLI::PositiveNumber);
    anomaly->add_option("--seeds", anomaly_seeds)->check(CLI::PositiveNumber);
    anomaly->add_option("--seed", anomaly_seed);
    anomaly->add_flag("--one-based", anomaly_one_based);

    std::string cluster_dir;
    int cluster_k = 2;
    PairwiseOptions cluster_opts;
    bool cluster_one_based = false, cluster_dc0 = false;
    auto* cluster = app.add_subcommand("cluster", "Ward clustering of pairwise similarities");
    cluster->add_option("--graphs", cluster_dir, "directory of edge-list files")->required();
    cluster->add_option("--k", cluster_k, "cluster count")->check(CLI::PositiveNumber);
    cluster->add_option("--g", cluster_opts.groups)->check(CLI::PositiveNumber);
    cluster->add_option("--seed", cluster_opts.seed);
    cluster->add_option("--seeds", cluster_opts.nseeds)->check(CLI::PositiveNumber);
    cluster->add_flag("--dc0", cluster_dc0, "use the exact measure");
    cluster->add_flag("--one-based", cluster_one_based);

    int bench_min = 14, bench_max = 20, bench_groups = 5, bench_repeats = 3;
    double bench_degree = 16.0;
    std::uint64_t bench_seed = 77;
    auto* bench = app.add_subcommand("bench", "Runtime vs edge count on random graphs");
    bench->add_option("--min-pow", bench_min, "smallest size as a power of two");
    bench->add_option("--max-pow", bench_max, "largest size as a power of two");
    bench->add_option("--mean-degree", bench_degree)->check(CLI::PositiveNumber);
    bench->add_option("--g", bench_groups)->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_seed);
    bench->add_option("--repeats", bench_repeats)->check(CLI::PositiveNumber);

    std::string gen_name, gen_out;
    std::uint64_t gen_seed = 0;
    auto* gen = app.add_subcommand("gen", "Write a synthetic graph as an edge list");
    gen->add_option("name", gen_name, "Table-style graph name, e.g. mm2WhB10")->required();
    gen->add_option("--out", gen_out, "output path")->required();
    gen->add_option("--seed", gen_seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compare) return cmd_compare(cc);
        if (*properties) return cmd_properties(prop_method, prop_opts);
        if (*anomaly)
            return cmd_anomaly(anomaly_dir, anomaly_g, anomaly_seed, anomaly_seeds, anomaly_one_based);
        if (*cluster) {
            cluster_opts.use_dc0 = cluster_dc0;
            return cmd_cluster(cluster_dir, cluster_k, cluster_opts, cluster_one_based);
        }
        if (*bench)
            return cmd_bench(bench_min, bench_max, bench_degree, bench_groups, bench_seed,
                             bench_repeats);
        if (*gen) return cmd_gen(gen_name, gen_out, gen_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
