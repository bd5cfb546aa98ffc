#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sse/constraints.hpp"
#include "sse/dataset.hpp"
#include "sse/flat_optimizer.hpp"
#include "sse/graph.hpp"
#include "sse/hier_optimizer.hpp"
#include "sse/metrics.hpp"
#include "sse/objective.hpp"
#include "tree_json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitConflict = 3;
constexpr int kExitNotConverged = 4;

struct GraphOptions {
    std::string input;
    bool labeled = false;
    std::string kernel = "gaussian";
    double sigma = 10.0;
    std::string p = "auto";
    int k = 0;  // 0: derive from labels
};

struct ConstraintOptions {
    std::string file;
    double gen_pairwise = -1.0;
    double gen_label = -1.0;

    bool generates() const { return gen_pairwise >= 0.0 || gen_label >= 0.0; }
    bool any() const { return !file.empty() || generates(); }
};

void add_graph_options(CLI::App* cmd, GraphOptions& o) {
    cmd->add_option("-i,--input", o.input, "Feature CSV, one row per data point")->required();
    cmd->add_flag("--labeled", o.labeled, "Treat the trailing CSV column as an integer label");
    cmd->add_option("--kernel", o.kernel, "Similarity kernel")
        ->check(CLI::IsMember({"gaussian", "cosine"}))
        ->capture_default_str();
    cmd->add_option("--sigma", o.sigma, "Gaussian kernel width")->capture_default_str();
    cmd->add_option("--p", o.p, "Neighbors per vertex, or 'auto'")->capture_default_str();
    cmd->add_option("--k", o.k, "Cluster count used by p=auto (default: from labels)");
}

void add_constraint_options(CLI::App* cmd, ConstraintOptions& o) {
    auto* file = cmd->add_option("--constraints", o.file, "Constraint file (ML/CL/PL/NL lines)");
    auto* gp = cmd->add_option("--gen-pairwise", o.gen_pairwise,
                               "Generate this fraction of n as ML and as CL pairs");
    auto* gl = cmd->add_option("--gen-label", o.gen_label,
                               "Generate this fraction of n as positive and negative labels");
    file->excludes(gp)->excludes(gl);
    gp->excludes(gl);
}

void print_warnings(const sse::Warnings& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct BuiltGraph {
    sse::DataMatrix data;
    sse::SimilarityMatrix sim;
    sse::WeightedGraph g;
    int p_used = 0;
    int k_used = 0;
};

int distinct_labels(const std::vector<int>& labels) {
    std::vector<int> d = labels;
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return static_cast<int>(d.size());
}

BuiltGraph build_graph(const GraphOptions& o, sse::Warnings& warnings) {
    BuiltGraph b;
    b.data = sse::load_csv(o.input, o.labeled);
    sse::KernelSpec kernel;
    kernel.kind = o.kernel == "cosine" ? sse::KernelSpec::Kind::cosine
                                       : sse::KernelSpec::Kind::gaussian;
    kernel.sigma = o.sigma;
    b.sim = sse::build_similarity(b.data, kernel, &warnings);
    if (o.p == "auto") {
        b.k_used = o.k;
        if (b.k_used <= 0) {
            if (!b.data.has_labels())
                throw sse::InputError("p=auto needs --k or a labeled input");
            b.k_used = distinct_labels(b.data.labels);
        }
        b.p_used = sse::default_p(b.k_used, b.data.rows);
        if (b.p_used >= b.data.rows) b.p_used = b.data.rows - 1;
    } else {
        try {
            b.p_used = std::stoi(o.p);
        } catch (const std::exception&) {
            throw sse::InputError("--p expects an integer or 'auto'");
        }
        b.k_used = o.k;
    }
    b.g = sse::sparsify_knn(b.sim, b.p_used);
    return b;
}

sse::ConstraintSet make_constraint_set(const ConstraintOptions& o, const BuiltGraph& b,
                                       std::uint64_t seed, sse::Warnings& warnings) {
    if (!o.file.empty()) return sse::load_constraints(o.file, b.data.rows);
    if (o.gen_pairwise >= 0.0 || o.gen_label >= 0.0) {
        if (!b.data.has_labels())
            throw sse::InputError("constraint generation needs a labeled input (--labeled)");
        auto kind = o.gen_pairwise >= 0.0 ? sse::ConstraintKind::pairwise
                                          : sse::ConstraintKind::label;
        double amount = o.gen_pairwise >= 0.0 ? o.gen_pairwise : o.gen_label;
        return sse::generate_constraints(b.data.labels, kind, amount, seed, &warnings);
    }
    return {};
}

json config_json(const GraphOptions& g, const ConstraintOptions& c, const BuiltGraph& b,
                 double phi, std::uint64_t seed) {
    json j;
    j["input"] = g.input;
    j["labeled"] = g.labeled;
    j["kernel"] = g.kernel;
    if (g.kernel == "gaussian") j["sigma"] = g.sigma;
    j["p"] = b.p_used;
    if (b.k_used > 0) j["k"] = b.k_used;
    j["phi"] = phi;
    j["seed"] = seed;
    if (!c.file.empty())
        j["constraints"] = c.file;
    else if (c.gen_pairwise >= 0.0)
        j["gen_pairwise"] = c.gen_pairwise;
    else if (c.gen_label >= 0.0)
        j["gen_label"] = c.gen_label;
    else
        j["constraints"] = nullptr;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sse::InputError("cannot write output file: " + path);
    out << text;
}

void write_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

json mean_std(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
    return json{{"mean", mean}, {"std", std::sqrt(var)}};
}

// ---------------------------------------------------------------------------
// partition
// ---------------------------------------------------------------------------

int run_partition(const GraphOptions& go, const ConstraintOptions& co, sse::Hyperparams hp,
                  int repeats, const std::string& out_path) {
    sse::Warnings warnings;
    BuiltGraph b = build_graph(go, warnings);

    json runs = json::array();
    std::vector<double> aris, nmis, objectives;
    bool all_converged = true;

    json primary;
    for (int r = 0; r < repeats; ++r) {
        std::uint64_t seed = hp.seed + static_cast<std::uint64_t>(r);
        sse::ConstraintSet cs = make_constraint_set(co, b, seed, warnings);
        sse::RelationGraph rel = cs.empty()
                                     ? sse::RelationGraph::from_edges(b.data.rows, {})
                                     : sse::relation_from_constraints(cs, b.sim);
        sse::FlatResult res = sse::minimize_2d(b.g, rel, hp);
        all_converged = all_converged && res.converged;

        json run;
        run["seed"] = seed;
        run["objective"] = res.objective;
        run["converged"] = res.converged;
        run["merges"] = res.merges;
        run["sweeps"] = res.sweeps;
        run["num_modules"] = res.partition.num_modules();
        if (b.data.has_labels()) {
            double a = sse::ari(res.partition.assignment, b.data.labels);
            double m = sse::nmi(res.partition.assignment, b.data.labels);
            run["ari"] = a;
            run["nmi"] = m;
            aris.push_back(a);
            nmis.push_back(m);
        }
        objectives.push_back(res.objective);
        if (r == 0) {
            primary["assignments"] = res.partition.assignment;
            json sizes = json::array();
            for (const auto& m : res.partition.modules) sizes.push_back(m.size());
            primary["module_sizes"] = sizes;
            primary["objective_trace"] = res.trace;
            primary["objective"] = res.objective;
            primary["converged"] = res.converged;
            primary["num_modules"] = res.partition.num_modules();
        }
        runs.push_back(run);
    }

    json out;
    out["schema_version"] = 1;
    out["command"] = "partition";
    out["n"] = b.data.rows;
    out["config"] = config_json(go, co, b, hp.phi, hp.seed);
    out["seed"] = hp.seed;
    out.update(primary);
    out["repeats"] = runs;
    if (repeats > 1) {
        json summary;
        summary["objective"] = mean_std(objectives);
        if (!aris.empty()) {
            summary["ari"] = mean_std(aris);
            summary["nmi"] = mean_std(nmis);
        }
        out["summary"] = summary;
    }
    write_json_file(out_path, out);
    print_warnings(warnings);
    return all_converged ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------------------
// hierarchy
// ---------------------------------------------------------------------------

int run_hierarchy(const GraphOptions& go, const ConstraintOptions& co, sse::Hyperparams hp,
                  int repeats, const std::string& out_prefix) {
    sse::Warnings warnings;
    BuiltGraph b = build_graph(go, warnings);

    json runs = json::array();
    std::vector<double> dps, aris, nmis;

    json tree_doc;
    for (int r = 0; r < repeats; ++r) {
        std::uint64_t seed = hp.seed + static_cast<std::uint64_t>(r);
        sse::ConstraintSet cs = make_constraint_set(co, b, seed, warnings);
        sse::RelationGraph rel = cs.empty()
                                     ? sse::RelationGraph::from_edges(b.data.rows, {})
                                     : sse::relation_from_constraints(cs, b.sim);
        sse::HierResult res = sse::minimize_highd(b.g, rel, hp);
        sse::Partition part = sse::extract_partition(res.tree_k, b.g, rel, hp.phi, 2);

        json run;
        run["seed"] = seed;
        run["objective_binary"] = res.objective_binary;
        run["objective_k"] = res.objective_k;
        run["height_binary"] = res.binary_tree.height();
        run["height_k"] = res.tree_k.height();
        run["num_modules"] = part.num_modules();
        if (b.data.has_labels()) {
            double dp = sse::dendrogram_purity(res.binary_tree, b.data.labels);
            double a = sse::ari(part.assignment, b.data.labels);
            double m = sse::nmi(part.assignment, b.data.labels);
            run["dp"] = dp;
            run["ari"] = a;
            run["nmi"] = m;
            dps.push_back(dp);
            aris.push_back(a);
            nmis.push_back(m);
        }
        runs.push_back(run);

        if (r == 0) {
            tree_doc["schema_version"] = 1;
            tree_doc["command"] = "hierarchy";
            tree_doc["n"] = b.data.rows;
            tree_doc["config"] = config_json(go, co, b, hp.phi, hp.seed);
            tree_doc["config"]["height"] = hp.height;
            tree_doc["seed"] = seed;
            tree_doc["height_binary"] = res.binary_tree.height();
            tree_doc["height_k"] = res.tree_k.height();
            tree_doc["objective_binary"] = res.objective_binary;
            tree_doc["objective_k"] = res.objective_k;
            tree_doc["stretch_trace"] = res.stretch_trace;
            tree_doc["compress_trace"] = res.compress_trace;
            tree_doc["binary_tree"] = sse::cli::tree_to_json(res.binary_tree);
            tree_doc["tree_k"] = sse::cli::tree_to_json(res.tree_k);
            write_text_file(out_prefix + ".nwk", res.binary_tree.to_newick() + "\n");

            json pj;
            pj["schema_version"] = 1;
            pj["command"] = "hierarchy-partition";
            pj["n"] = b.data.rows;
            pj["seed"] = seed;
            pj["assignments"] = part.assignment;
            json sizes = json::array();
            for (const auto& mm : part.modules) sizes.push_back(mm.size());
            pj["module_sizes"] = sizes;
            pj["num_modules"] = part.num_modules();
            write_json_file(out_prefix + ".partition.json", pj);
        }
    }
    tree_doc["repeats"] = runs;
    if (repeats > 1 && !dps.empty()) {
        json summary;
        summary["dp"] = mean_std(dps);
        summary["ari"] = mean_std(aris);
        summary["nmi"] = mean_std(nmis);
        tree_doc["summary"] = summary;
    }
    write_json_file(out_prefix + ".tree.json", tree_doc);
    print_warnings(warnings);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// gen-constraints
// ---------------------------------------------------------------------------

int run_gen_constraints(const std::string& labels_path, const std::string& kind, double amount,
                        std::uint64_t seed, const std::string& out_path) {
    auto labels = sse::load_labels(labels_path);
    sse::Warnings warnings;
    auto cs = sse::generate_constraints(
        labels, kind == "label" ? sse::ConstraintKind::label : sse::ConstraintKind::pairwise,
        amount, seed, &warnings);
    std::ostringstream text;
    sse::write_constraints(text, cs);
    if (out_path.empty() || out_path == "-")
        std::cout << text.str();
    else
        write_text_file(out_path, text.str());
    print_warnings(warnings);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

std::vector<int> load_prediction(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sse::InputError("cannot open prediction file: " + path);
    char c = 0;
    while (in.get(c) && std::isspace(static_cast<unsigned char>(c))) {
    }
    in.close();
    if (c == '{') {
        std::ifstream jin(path);
        json j;
        try {
            jin >> j;
        } catch (const json::exception& e) {
            throw sse::InputError("prediction json: " + std::string(e.what()));
        }
        if (!j.contains("assignments"))
            throw sse::InputError("prediction json has no 'assignments' field");
        return j.at("assignments").get<std::vector<int>>();
    }
    return sse::load_labels(path);
}

sse::EncodingTree load_tree(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sse::InputError("cannot open tree file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw sse::InputError("tree json: " + std::string(e.what()));
    }
    if (j.contains("binary_tree")) return sse::cli::tree_from_json(j.at("binary_tree"));
    return sse::cli::tree_from_json(j);
}

int run_eval(const std::string& pred_path, const std::string& tree_path,
             const std::string& truth_path, std::vector<std::string> metrics,
             const std::string& out_path) {
    if (pred_path.empty() && tree_path.empty())
        throw sse::InputError("eval needs --pred and/or --tree");
    auto truth = sse::load_labels(truth_path);
    if (metrics.empty()) {
        if (!pred_path.empty()) {
            metrics.push_back("ari");
            metrics.push_back("nmi");
        }
        if (!tree_path.empty()) metrics.push_back("dp");
    }
    json out;
    out["schema_version"] = 1;
    out["command"] = "eval";
    std::optional<std::vector<int>> pred;
    if (!pred_path.empty()) pred = load_prediction(pred_path);
    std::optional<sse::EncodingTree> tree;
    if (!tree_path.empty()) tree = load_tree(tree_path);

    for (const auto& m : metrics) {
        if (m == "ari" || m == "nmi") {
            if (!pred) throw sse::InputError(m + " needs --pred");
            if (pred->size() != truth.size())
                throw sse::InputError("prediction / truth length mismatch");
            out[m] = m == "ari" ? sse::ari(*pred, truth) : sse::nmi(*pred, truth);
        } else if (m == "dp") {
            if (!tree) throw sse::InputError("dp needs --tree");
            out[m] = sse::dendrogram_purity(*tree, truth);
        } else {
            throw sse::InputError("unknown metric '" + m + "'");
        }
    }
    if (out_path.empty() || out_path == "-")
        std::cout << out.dump(2) << "\n";
    else
        write_json_file(out_path, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-supervised clustering by structural entropy minimization"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI file");

    GraphOptions go_p, go_h;
    ConstraintOptions co_p, co_h;
    sse::Hyperparams hp_p, hp_h;
    int repeats_p = 1, repeats_h = 1;
    std::string out_partition = "sse_partition.json";
    std::string out_prefix = "sse_hierarchy";

    auto* part = app.add_subcommand("partition", "Flat clustering (2-level encoding tree)");
    add_graph_options(part, go_p);
    add_constraint_options(part, co_p);
    part->add_option("--phi", hp_p.phi, "Constraint penalty weight")->capture_default_str();
    part->add_option("--seed", hp_p.seed, "Run seed (constraint sampling)")->capture_default_str();
    part->add_option("--max-sweeps", hp_p.max_sweeps, "Moving-stage sweep cap")
        ->capture_default_str();
    part->add_option("--max-merges", hp_p.max_merges, "Optional merge cap (0 = unlimited)")
        ->capture_default_str();
    part->add_option("--tol", hp_p.tol, "Strict-improvement threshold")->capture_default_str();
    part->add_option("--repeats", repeats_p, "Re-run with reseeded constraints, report mean/std")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    part->add_option("-o,--out", out_partition, "Output JSON path")->capture_default_str();

    auto* hier = app.add_subcommand("hierarchy", "Hierarchical clustering (encoding tree)");
    add_graph_options(hier, go_h);
    add_constraint_options(hier, co_h);
    hier->add_option("--phi", hp_h.phi, "Constraint penalty weight")->capture_default_str();
    hier->add_option("--height", hp_h.height, "Target tree height K")->capture_default_str();
    hier->add_option("--seed", hp_h.seed, "Run seed (constraint sampling)")
        ->capture_default_str();
    hier->add_option("--repeats", repeats_h, "Re-run with reseeded constraints, report mean/std")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    hier->add_option("-o,--out-prefix", out_prefix,
                     "Output prefix for .tree.json/.nwk/.partition.json")
        ->capture_default_str();

    std::string gc_labels, gc_kind = "pairwise", gc_out;
    double gc_amount = 0.2;
    std::uint64_t gc_seed = 0;
    auto* gen = app.add_subcommand("gen-constraints", "Sample constraints from ground truth");
    gen->add_option("--labels", gc_labels, "Label file, one integer per line")->required();
    gen->add_option("--kind", gc_kind, "Constraint kind")
        ->check(CLI::IsMember({"pairwise", "label"}))
        ->capture_default_str();
    gen->add_option("--amount", gc_amount, "Fraction of n to sample")->capture_default_str();
    gen->add_option("--seed", gc_seed, "Sampling seed")->capture_default_str();
    gen->add_option("-o,--out", gc_out, "Output path (default: stdout)");

    std::string ev_pred, ev_tree, ev_truth, ev_out;
    std::vector<std::string> ev_metrics;
    auto* ev = app.add_subcommand("eval", "Score a clustering against ground truth");
    ev->add_option("--pred", ev_pred, "Partition JSON or label file");
    ev->add_option("--tree", ev_tree, "Tree JSON (hierarchy output)");
    ev->add_option("--truth", ev_truth, "Ground-truth label file")->required();
    ev->add_option("--metrics", ev_metrics, "Metrics to compute (ari, nmi, dp)")->delimiter(',');
    ev->add_option("-o,--out", ev_out, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (part->parsed()) return run_partition(go_p, co_p, hp_p, repeats_p, out_partition);
        if (hier->parsed()) return run_hierarchy(go_h, co_h, hp_h, repeats_h, out_prefix);
        if (gen->parsed())
            return run_gen_constraints(gc_labels, gc_kind, gc_amount, gc_seed, gc_out);
        if (ev->parsed()) return run_eval(ev_pred, ev_tree, ev_truth, ev_metrics, ev_out);
    } catch (const sse::ConstraintConflict& e) {
        std::cerr << "constraint conflict: " << e.what() << "\n";
        return kExitConflict;
    } catch (const sse::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
