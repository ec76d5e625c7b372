// chromahom: chromatic homology of simple graphs over Z[x]/<x^m>, computed
// from the NBC spanning-tree complex with a brute-force enhanced-state
// complex available as a cross-check.

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chromahom/chromatic_oracle.hpp"
#include "chromahom/json_io.hpp"
#include "chromahom/st_complex.hpp"
#include "chromahom/verify.hpp"

namespace {

using namespace chromahom;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitGuard = 2;
constexpr int kExitIntegrity = 3;
constexpr int kExitCheckFailed = 4;

struct CommonOpts {
    std::string input;
    int m = 2;
    std::string model = "spanning-tree";
    std::string output = "json";
    std::string root;
    std::string order_csv;
    int threads = 1;
    bool force = false;
};

std::vector<int> parse_order_csv(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw GraphError(GraphError::Code::bad_order, "--order must be a comma-separated permutation");
        }
    }
    return out;
}

OrderedGraph load_graph(const CommonOpts& opt) {
    std::ifstream in(opt.input);
    if (!in)
        throw GraphError(GraphError::Code::malformed_document, "cannot open input file: " + opt.input);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::optional<std::string> root;
    if (!opt.root.empty()) root = opt.root;
    std::optional<std::vector<int>> order;
    if (!opt.order_csv.empty()) order = parse_order_csv(opt.order_csv);
    return parse_graph(buffer.str(), root, order);
}

BigradedComplex build_model(const OrderedGraph& g, const CommonOpts& opt, bool with_labels) {
    if (opt.model == "spanning-tree") return assemble_complex(g, opt.m, with_labels);
    if (opt.model == "oracle") return assemble_oracle(g, opt.m, false, -1, opt.force, with_labels);
    if (opt.model == "oracle-nbc") return assemble_oracle(g, opt.m, true, -1, opt.force, with_labels);
    throw CLI::ValidationError("--model must be spanning-tree, oracle or oracle-nbc");
}

void add_common(CLI::App* cmd, CommonOpts& opt, bool needs_input = true) {
    auto* input = cmd->add_option("--input", opt.input, "graph JSON file");
    if (needs_input) input->required();
    cmd->add_option("-m", opt.m, "algebra parameter m of Z[x]/<x^m>")->check(CLI::Range(2, 64));
    cmd->add_option("--model", opt.model, "spanning-tree | oracle | oracle-nbc");
    cmd->add_option("--output", opt.output, "json | table");
    cmd->add_option("--root", opt.root, "override the root vertex");
    cmd->add_option("--order", opt.order_csv, "edge order permutation, e.g. 3,1,2");
    cmd->add_option("--threads", opt.threads, "parallel stripe workers")->check(CLI::Range(1, 64));
    cmd->add_flag("--force", opt.force, "bypass size guards");
}

int cmd_compute(const CommonOpts& opt) {
    OrderedGraph g = load_graph(opt);
    BigradedComplex c = build_model(g, opt, false);
    HomologyTable table = homology(c, opt.threads);
    if (opt.output == "table")
        std::cout << homology_to_text(table, opt.m, c.model);
    else
        std::cout << homology_to_json(table, opt.m, c.model).dump(2) << "\n";
    return kExitOk;
}

int cmd_trees(const CommonOpts& opt) {
    OrderedGraph g = load_graph(opt);
    if (opt.output == "json") {
        std::cout << trees_to_json(g).dump(2) << "\n";
        return kExitOk;
    }
    for (const TreeRecord& t : nbc_trees(g)) {
        std::cout << t.lex_rank << "  [";
        auto labels = t.edges.labels();
        for (std::size_t k = 0; k < labels.size(); ++k)
            std::cout << (k ? "," : "") << labels[k];
        std::cout << "]  " << t.activity_word << "  i=" << t.grading()
                  << " j+=" << t.ia_set.count() << " j-=" << t.ia_set.count() + 1 << "\n";
    }
    return kExitOk;
}

int cmd_complex(const CommonOpts& opt) {
    OrderedGraph g = load_graph(opt);
    std::cout << complex_to_json(build_model(g, opt, true)).dump(2) << "\n";
    return kExitOk;
}

int cmd_oracle(const CommonOpts& opt, bool nbc_only) {
    OrderedGraph g = load_graph(opt);
    BigradedComplex c = assemble_oracle(g, opt.m, nbc_only, -1, opt.force, true);
    std::cout << complex_to_json(c).dump(2) << "\n";
    return kExitOk;
}

int cmd_poly(const CommonOpts& opt) {
    OrderedGraph g = load_graph(opt);
    IntPolynomial dc = chromatic_poly_deletion_contraction(g);
    IntPolynomial nbc = chromatic_poly_nbc(g);
    if (opt.output == "table") {
        std::cout << "deletion-contraction: " << dc.to_string("lambda") << "\n";
        std::cout << "nbc-expansion:        " << nbc.to_string("lambda") << "\n";
        std::cout << "match: " << (dc == nbc ? "yes" : "NO") << "\n";
    } else {
        OrderedJson out;
        out["deletion_contraction"] = polynomial_to_json(dc, "lambda");
        out["nbc"] = polynomial_to_json(nbc, "lambda");
        out["match"] = dc == nbc;
        std::cout << out.dump(2) << "\n";
    }
    return dc == nbc ? kExitOk : kExitCheckFailed;
}

struct RandomSpec {
    int count = 3;
    int vertices = 6;
    int extra = 2;
    std::uint64_t seed = 1;
};

RandomSpec parse_random_spec(const std::string& spec) {
    RandomSpec out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--random expects key=value pairs, e.g. n=3,seed=7");
        std::string key = item.substr(0, eq);
        long long value = std::stoll(item.substr(eq + 1));
        if (key == "n" || key == "count")
            out.count = static_cast<int>(value);
        else if (key == "v" || key == "vertices")
            out.vertices = static_cast<int>(value);
        else if (key == "extra")
            out.extra = static_cast<int>(value);
        else if (key == "seed")
            out.seed = static_cast<std::uint64_t>(value);
        else
            throw CLI::ValidationError("--random: unknown key '" + key + "'");
    }
    return out;
}

OrderedJson report_to_json(const std::string& subject, const VerifyReport& report) {
    OrderedJson out;
    out["subject"] = subject;
    OrderedJson checks = OrderedJson::array();
    for (const CheckResult& c : report.checks) {
        OrderedJson entry;
        entry["name"] = c.name;
        entry["status"] = c.pass ? "pass" : "fail";
        entry["note"] = c.note;
        entry["ms"] = c.ms;
        checks.push_back(std::move(entry));
    }
    out["checks"] = std::move(checks);
    out["status"] = report.all_pass() ? "pass" : "fail";
    return out;
}

void print_report_table(const std::string& subject, const VerifyReport& report) {
    std::cout << subject << "\n";
    for (const CheckResult& c : report.checks)
        std::cout << "  " << (c.pass ? "[pass] " : "[FAIL] ") << c.name << ": " << c.note << " ("
                  << c.ms << " ms)\n";
}

int cmd_verify(const CommonOpts& opt, const std::string& checks_csv, const std::string& random_spec) {
    std::vector<std::string> names;
    if (checks_csv.empty()) {
        names = default_checks();
    } else {
        std::stringstream ss(checks_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (std::find(known_checks().begin(), known_checks().end(), item) == known_checks().end())
                throw CLI::ValidationError("unknown check '" + item + "'");
            names.push_back(item);
        }
    }
    VerifyOptions vopt;
    vopt.m = opt.m;
    vopt.force = opt.force;
    vopt.threads = opt.threads;

    std::vector<std::pair<std::string, OrderedGraph>> subjects;
    if (!random_spec.empty()) {
        RandomSpec spec = parse_random_spec(random_spec);
        for (int k = 0; k < spec.count; ++k) {
            std::string label = "random(v=" + std::to_string(spec.vertices) +
                                ",extra=" + std::to_string(spec.extra) +
                                ",seed=" + std::to_string(spec.seed + static_cast<std::uint64_t>(k)) + ")";
            subjects.push_back({label, random_connected_graph(spec.vertices, spec.extra,
                                                              spec.seed + static_cast<std::uint64_t>(k))});
        }
    } else {
        if (opt.input.empty())
            throw CLI::ValidationError("verify needs --input or --random");
        subjects.push_back({opt.input, load_graph(opt)});
    }

    bool all = true;
    OrderedJson reports = OrderedJson::array();
    for (const auto& [label, g] : subjects) {
        VerifyReport report = run_checks(g, names, vopt);
        all = all && report.all_pass();
        if (opt.output == "table")
            print_report_table(label, report);
        else
            reports.push_back(report_to_json(label, report));
    }
    if (opt.output != "table") {
        OrderedJson out;
        out["m"] = opt.m;
        out["reports"] = std::move(reports);
        out["status"] = all ? "pass" : "fail";
        std::cout << out.dump(2) << "\n";
    }
    return all ? kExitOk : kExitCheckFailed;
}

int cmd_bench(const CommonOpts& opt) {
    OrderedGraph g = load_graph(opt);
    using clock = std::chrono::steady_clock;

    auto t0 = clock::now();
    BigradedComplex st = assemble_complex(g, opt.m, false);
    HomologyTable st_table = homology(st, opt.threads);
    double st_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();

    std::map<int, long long> st_counts, oracle_counts;
    for (const auto& [j, stripe] : st.stripes)
        for (std::size_t k = 0; k < stripe.dims.size(); ++k)
            st_counts[stripe.i_lo + static_cast<int>(k)] += stripe.dims[k];

    int guard = default_oracle_guard();
    bool oracle_ran = opt.force || g.edge_count() <= guard;
    double oracle_ms = 0.0;
    if (oracle_ran) {
        auto t1 = clock::now();
        BigradedComplex oracle = assemble_oracle(g, opt.m, false, guard, opt.force);
        HomologyTable oracle_table = homology(oracle, opt.threads);
        oracle_ms = std::chrono::duration<double, std::milli>(clock::now() - t1).count();
        for (const auto& [j, stripe] : oracle.stripes)
            for (std::size_t k = 0; k < stripe.dims.size(); ++k)
                oracle_counts[stripe.i_lo + static_cast<int>(k)] += stripe.dims[k];
        if (!(oracle_table == st_table)) return kExitIntegrity;
    }

    if (opt.output == "table") {
        std::cout << "generators per homological grading (m=" << opt.m << ")\n";
        std::cout << "  i   spanning-tree   oracle\n";
        long long st_total = 0, oracle_total = 0;
        int max_i = 0;
        for (const auto& [i, n] : st_counts) max_i = std::max(max_i, i);
        for (const auto& [i, n] : oracle_counts) max_i = std::max(max_i, i);
        for (int i = 0; i <= max_i; ++i) {
            long long a = st_counts.count(i) ? st_counts[i] : 0;
            long long b = oracle_counts.count(i) ? oracle_counts[i] : 0;
            st_total += a;
            oracle_total += b;
            std::cout << "  " << i << "   " << a << "   " << (oracle_ran ? std::to_string(b) : "-")
                      << "\n";
        }
        std::cout << "  total   " << st_total << "   "
                  << (oracle_ran ? std::to_string(oracle_total) : "skipped (guard)") << "\n";
        std::cout << "homology wall time: spanning-tree " << st_ms << " ms, oracle "
                  << (oracle_ran ? std::to_string(oracle_ms) + " ms" : "skipped") << "\n";
    } else {
        OrderedJson out;
        out["m"] = opt.m;
        OrderedJson per_i = OrderedJson::array();
        int max_i = 0;
        for (const auto& [i, n] : st_counts) max_i = std::max(max_i, i);
        for (const auto& [i, n] : oracle_counts) max_i = std::max(max_i, i);
        for (int i = 0; i <= max_i; ++i) {
            OrderedJson row;
            row["i"] = i;
            row["spanning_tree"] = st_counts.count(i) ? st_counts[i] : 0;
            if (oracle_ran) row["oracle"] = oracle_counts.count(i) ? oracle_counts[i] : 0;
            per_i.push_back(std::move(row));
        }
        out["generators"] = std::move(per_i);
        out["spanning_tree_ms"] = st_ms;
        if (oracle_ran)
            out["oracle_ms"] = oracle_ms;
        else
            out["oracle"] = "skipped (guard)";
        std::cout << out.dump(2) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chromatic homology over Z[x]/<x^m> via the NBC spanning-tree complex"};
    app.require_subcommand(1);

    CommonOpts compute_opt, trees_opt, complex_opt, oracle_opt, poly_opt, verify_opt, bench_opt;
    std::string checks_csv, random_spec;
    bool nbc_only = false;

    add_common(app.add_subcommand("compute", "compute the homology table"), compute_opt);
    add_common(app.add_subcommand("trees", "list NBC spanning trees with activity data"), trees_opt);
    add_common(app.add_subcommand("complex", "dump generators and differentials"), complex_opt);
    auto* oracle_cmd = app.add_subcommand("oracle", "dump the enhanced-state complex");
    add_common(oracle_cmd, oracle_opt);
    oracle_cmd->add_flag("--nbc-only", nbc_only, "restrict to NBC spanning subgraphs");
    add_common(app.add_subcommand("poly", "chromatic polynomial, both computations"), poly_opt);
    auto* verify_cmd = app.add_subcommand("verify", "run structural checks");
    add_common(verify_cmd, verify_opt, false);
    verify_cmd->add_option("--checks", checks_csv, "comma-separated check list");
    verify_cmd->add_option("--random", random_spec, "random corpus, e.g. n=3,seed=7,v=6,extra=2");
    add_common(app.add_subcommand("bench", "generator counts and timings, both models"), bench_opt);

    try {
        app.parse(argc, argv);
        if (app.got_subcommand("compute")) return cmd_compute(compute_opt);
        if (app.got_subcommand("trees")) return cmd_trees(trees_opt);
        if (app.got_subcommand("complex")) return cmd_complex(complex_opt);
        if (app.got_subcommand("oracle")) return cmd_oracle(oracle_opt, nbc_only);
        if (app.got_subcommand("poly")) return cmd_poly(poly_opt);
        if (app.got_subcommand("verify")) return cmd_verify(verify_opt, checks_csv, random_spec);
        if (app.got_subcommand("bench")) return cmd_bench(bench_opt);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const chromahom::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const chromahom::IntegrityError& e) {
        std::cerr << "internal integrity error: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const chromahom::GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
