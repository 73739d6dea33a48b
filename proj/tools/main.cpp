// follab command-line front end: validation, admissibility checks, census
// runs, moves, elimination, accounting and DOT emission.
//
// Exit codes: 0 success / check passed, 1 invalid input, 2 check failed
// (bound violated, not admissible, certificate rejected), 3 census resource
// cap exceeded (progress state saved when FOLLAB_CACHE_DIR is set).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "follab/follab.hpp"

namespace fs = std::filesystem;
using namespace follab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitCheckFailed = 2;
constexpr int kExitInterrupted = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::ParseError, "cannot write " + path);
    out << content;
}

LevelTreeData load_tree_data(const std::string& path) {
    return tree_data_from_string(read_file(path));
}

LevelTree load_tree(const std::string& path) {
    return LevelTree::from_data(load_tree_data(path));
}

void emit_tree(const LevelTree& tree, const std::string& out_path) {
    auto text = tree_to_string(tree);
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

std::string census_state_path(int k, int s_max, bool mod_flip) {
    const char* dir = std::getenv("FOLLAB_CACHE_DIR");
    if (!dir || !*dir) return {};
    std::ostringstream name;
    name << "census_k" << k << "_s" << s_max << (mod_flip ? "_flip" : "") << ".json";
    return (fs::path(dir) / name.str()).string();
}

int run_validate(const std::string& file, bool as_json) {
    auto data = load_tree_data(file);
    auto report = validate(data);
    if (as_json) {
        std::cout << emit_json(to_json(report));
    } else if (report.valid()) {
        std::cout << "valid\n";
    } else {
        std::cout << "invalid\n";
        for (const auto& v : report.violations)
            std::cout << "  " << v.code << ": " << v.message << "\n";
    }
    return report.valid() ? kExitOk : kExitCheckFailed;
}

int run_check(const std::string& file, bool as_json) {
    auto tree = load_tree(file);
    auto report = is_admissible(tree);
    if (as_json) {
        std::cout << emit_json(to_json(report));
    } else if (report.admissible) {
        std::cout << "admissible\n";
    } else {
        std::cout << "not admissible\n";
        for (const auto& v : report.violations) {
            std::cout << "  " << violation_kind_name(v.kind) << ":";
            for (const auto& id : v.witness) std::cout << " " << id;
            std::cout << "\n";
        }
    }
    return report.admissible ? kExitOk : kExitCheckFailed;
}

void dump_witnesses(const CensusReport& report, const std::string& dir) {
    fs::create_directories(dir);
    json manifest;
    manifest["k"] = report.k;
    manifest["s"] = report.max_saddles_observed;
    manifest["witnesses"] = json::array();
    for (std::size_t i = 0; i < report.witnesses.size(); ++i) {
        std::ostringstream name;
        name << "witness_" << std::setw(3) << std::setfill('0') << i << ".json";
        auto tree = decode_canonical(report.witnesses[i]);
        write_file((fs::path(dir) / name.str()).string(), tree_to_string(tree));
        manifest["witnesses"].push_back(
            json{{"file", name.str()}, {"code", report.witnesses[i]}});
    }
    write_file((fs::path(dir) / "manifest.json").string(), emit_json(manifest));
}

int census_command(int k, int probe, std::optional<int> s_max_arg, bool mod_flip, int threads,
               std::uint64_t node_cap, std::uint64_t time_cap_ms, bool resume,
               const std::string& witness_dir, bool as_json) {
    int s_max;
    std::optional<int> probe_used;
    if (s_max_arg) {
        s_max = *s_max_arg;
    } else if (k >= 2) {
        s_max = 5 * k - 8 + probe;
        probe_used = probe;
    } else {
        std::cerr << "census: the 5k-8 bound needs k >= 2; pass --s-max for smaller k\n";
        return kExitBadInput;
    }

    CensusOptions opts;
    opts.threads = threads;
    opts.node_cap = node_cap;
    opts.time_cap_ms = time_cap_ms;
    opts.mod_flip = mod_flip;

    CensusProgress progress;
    const CensusProgress* resume_ptr = nullptr;
    auto state_path = census_state_path(k, s_max, mod_flip);
    if (resume) {
        if (state_path.empty()) {
            std::cerr << "census: --resume needs FOLLAB_CACHE_DIR\n";
            return kExitBadInput;
        }
        if (!fs::exists(state_path)) {
            std::cerr << "census: no saved state at " << state_path << "\n";
            return kExitBadInput;
        }
        progress = progress_from_json(json::parse(read_file(state_path)));
        resume_ptr = &progress;
    }

    CensusReport report;
    try {
        report = detail::report_from(follab::run_census(k, s_max, opts, nullptr, resume_ptr),
                                     probe_used);
    } catch (const CensusInterrupted& e) {
        if (!state_path.empty()) {
            fs::create_directories(fs::path(state_path).parent_path());
            write_file(state_path, emit_json(to_json(e.progress())));
            std::cerr << "census interrupted at level " << e.progress().completed_level + 1
                      << "; progress saved to " << state_path << "\n";
        } else {
            std::cerr << "census interrupted at level " << e.progress().completed_level + 1
                      << "; set FOLLAB_CACHE_DIR to save progress\n";
        }
        return kExitInterrupted;
    }
    if (!state_path.empty() && fs::exists(state_path)) fs::remove(state_path);

    if (as_json) {
        std::cout << emit_json(to_json(report));
    } else {
        std::cout << census_text(report);
        for (const auto& w : report.witnesses) std::cout << "  " << w << "\n";
    }
    if (!witness_dir.empty()) dump_witnesses(report, witness_dir);
    return report.has_bound && !report.bound_respected ? kExitCheckFailed : kExitOk;
}

int run_eliminate(const std::string& file, const std::string& out_tree, bool as_json) {
    auto tree = load_tree(file);
    auto [final_tree, ledger] = eliminate_all(tree);
    if (as_json) {
        json j;
        j["ledger"] = to_json(ledger);
        j["final_tree"] = to_json(final_tree);
        std::cout << emit_json(j);
    } else {
        for (std::size_t i = 0; i < ledger.steps.size(); ++i)
            std::cout << "step " << i << ": eliminate " << ledger.steps[i].saddle << " cost "
                      << ledger.steps[i].cost << "\n";
        std::cout << "total_cost " << ledger.total_cost << "\n";
    }
    if (!out_tree.empty()) write_file(out_tree, tree_to_string(final_tree));
    return kExitOk;
}

int run_certify(const std::string& file, bool as_json) {
    auto cert = certificate_from_json(json::parse(read_file(file)));
    auto report = check_certificate(cert);
    if (as_json) {
        std::cout << emit_json(to_json(report));
    } else if (report.passed) {
        std::cout << "certificate accepted\n";
    } else {
        std::cout << "certificate rejected at clause (" << report.failed_clause
                  << "): " << report.detail << "\n";
    }
    return report.passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"level-tree foliations of marked spheres: saddle taxonomy, census, "
                 "moves and bridge-number accounting"};
    app.require_subcommand(1);

    // validate
    std::string validate_file;
    bool validate_json = false;
    auto* cmd_validate = app.add_subcommand("validate", "check level-tree invariants");
    cmd_validate->add_option("file", validate_file, "foliation JSON")->required();
    cmd_validate->add_flag("--json", validate_json, "emit JSON");

    // check
    std::string check_file;
    bool check_json = false;
    auto* cmd_check = app.add_subcommand("check", "admissibility report");
    cmd_check->add_option("file", check_file, "foliation JSON")->required();
    cmd_check->add_flag("--json", check_json, "emit JSON");

    // census
    int census_k = 0, census_probe = 1, census_threads = 1;
    std::optional<int> census_s_max;
    std::uint64_t census_node_cap = 0, census_time_cap = 0;
    bool census_flip = false, census_resume = false, census_json = false;
    std::string census_witness_dir;
    auto* cmd_census = app.add_subcommand("census", "enumerate admissible classes per saddle count");
    cmd_census->add_option("--k", census_k, "number of marked points")->required();
    cmd_census->add_option("--probe", census_probe, "levels probed beyond 5k-8 (default 1)");
    cmd_census->add_option("--s-max", census_s_max, "explicit saddle cap (overrides --probe)");
    cmd_census->add_flag("--mod-flip", census_flip, "count classes up to flip as well");
    cmd_census->add_option("--witness-dir", census_witness_dir, "dump extremal trees here");
    cmd_census->add_option("--threads", census_threads, "worker threads (results independent)");
    cmd_census->add_option("--node-cap", census_node_cap, "abort after this many candidates");
    cmd_census->add_option("--time-cap-ms", census_time_cap, "abort after this wall time");
    cmd_census->add_flag("--resume", census_resume, "resume from FOLLAB_CACHE_DIR state");
    cmd_census->add_flag("--json", census_json, "emit JSON");

    // move finger|split
    auto* cmd_move = app.add_subcommand("move", "saddle-creating rewrites");
    cmd_move->require_subcommand(1);
    std::string finger_file, finger_edge, finger_orientation = "push-down",
                finger_through = "join", finger_out;
    std::size_t finger_index = 0;
    auto* cmd_finger = cmd_move->add_subcommand("finger", "push a finger through a marked leaf");
    cmd_finger->add_option("file", finger_file, "foliation JSON")->required();
    cmd_finger->add_option("--edge", finger_edge, "edge carrying the mark")->required();
    cmd_finger->add_option("--mark-index", finger_index, "mark position on the edge (default 0)");
    cmd_finger->add_option("--orientation", finger_orientation, "push-down | push-up")
        ->check(CLI::IsMember({"push-down", "push-up"}));
    cmd_finger->add_option("--through", finger_through, "continuation side: join | pair")
        ->check(CLI::IsMember({"join", "pair"}));
    cmd_finger->add_option("-o,--out", finger_out, "output file (default stdout)");

    std::string split_file, split_edge, split_out;
    int split_below = 0, split_cap = 0, split_keep = 0;
    auto* cmd_split = cmd_move->add_subcommand("split", "pinch a marked outermost disk in two");
    cmd_split->add_option("file", split_file, "foliation JSON")->required();
    cmd_split->add_option("--edge", split_edge, "outermost edge")->required();
    cmd_split->add_option("--below", split_below, "marks staying toward the saddle")->required();
    cmd_split->add_option("--cap", split_cap, "marks moving to the fresh cap")->required();
    cmd_split->add_option("--keep", split_keep, "marks staying on the original cap")->required();
    cmd_split->add_option("-o,--out", split_out, "output file (default stdout)");

    // eliminate
    std::string elim_file, elim_strategy = "min-cost", elim_out_tree;
    bool elim_json = false;
    auto* cmd_elim = app.add_subcommand("eliminate", "cancel all saddles, printing the ledger");
    cmd_elim->add_option("file", elim_file, "foliation JSON")->required();
    cmd_elim->add_option("--strategy", elim_strategy, "elimination strategy")
        ->check(CLI::IsMember({"min-cost"}));
    cmd_elim->add_option("--out-tree", elim_out_tree, "write the final saddle-free tree here");
    cmd_elim->add_flag("--json", elim_json, "emit JSON");

    // reduce
    std::string reduce_file, reduce_saddle, reduce_out;
    auto* cmd_reduce = app.add_subcommand("reduce", "five-saddle reduction at a saddle");
    cmd_reduce->add_option("file", reduce_file, "foliation JSON")->required();
    cmd_reduce->add_option("--saddle", reduce_saddle, "non-standard saddle")->required();
    cmd_reduce->add_option("-o,--out", reduce_out, "output file (default stdout)");

    // bound
    int bound_n = 1, bound_b1 = 1, bound_b2 = 1;
    bool bound_json = false;
    auto* cmd_bound = app.add_subcommand("bound", "tangle-product bridge-number lower bound");
    cmd_bound->add_option("--n", bound_n, "strand count")->required();
    cmd_bound->add_option("--beta1", bound_b1, "bridge number of the first factor")->required();
    cmd_bound->add_option("--beta2", bound_b2, "bridge number of the second factor")->required();
    cmd_bound->add_flag("--json", bound_json, "emit JSON");

    // schubert
    int sch_b1 = 1, sch_b2 = 1;
    bool sch_json = false;
    auto* cmd_sch = app.add_subcommand("schubert", "connected-sum bridge-number value");
    cmd_sch->add_option("--beta1", sch_b1, "bridge number of the first summand")->required();
    cmd_sch->add_option("--beta2", sch_b2, "bridge number of the second summand")->required();
    cmd_sch->add_flag("--json", sch_json, "emit JSON");

    // certify
    std::string certify_file;
    bool certify_json = false;
    auto* cmd_certify = app.add_subcommand("certify", "check an accounting certificate");
    cmd_certify->add_option("file", certify_file, "certificate JSON")->required();
    cmd_certify->add_flag("--json", certify_json, "emit JSON");

    // products
    std::string products_table;
    int products_n = 1;
    bool products_json = false;
    auto* cmd_products = app.add_subcommand("products", "pairwise bound report from a knot table");
    cmd_products->add_option("--table", products_table, "CSV knot table")->required();
    cmd_products->add_option("--n", products_n, "strand count")->required();
    cmd_products->add_flag("--json", products_json, "emit JSON");

    // dot
    std::string dot_file;
    auto* cmd_dot = app.add_subcommand("dot", "emit Graphviz DOT");
    cmd_dot->add_option("file", dot_file, "foliation JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);  // prints the message
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (*cmd_validate) return run_validate(validate_file, validate_json);
        if (*cmd_check) return run_check(check_file, check_json);
        if (*cmd_census)
            return census_command(census_k, census_probe, census_s_max, census_flip, census_threads,
                              census_node_cap, census_time_cap, census_resume,
                              census_witness_dir, census_json);
        if (*cmd_finger) {
            auto tree = load_tree(finger_file);
            auto orientation = finger_orientation == "push-down" ? FingerOrientation::PushDown
                                                                 : FingerOrientation::PushUp;
            auto through = finger_through == "join" ? ThroughSide::ContinuationOnJoin
                                                    : ThroughSide::ContinuationOnPair;
            emit_tree(finger_move(tree, finger_edge, finger_index, orientation, through),
                      finger_out);
            return kExitOk;
        }
        if (*cmd_split) {
            auto tree = load_tree(split_file);
            emit_tree(split_outermost(tree, split_edge,
                                      SplitPartition{split_below, split_cap, split_keep}),
                      split_out);
            return kExitOk;
        }
        if (*cmd_elim) return run_eliminate(elim_file, elim_out_tree, elim_json);
        if (*cmd_reduce) {
            auto tree = load_tree(reduce_file);
            emit_tree(reduce_five(tree, reduce_saddle), reduce_out);
            return kExitOk;
        }
        if (*cmd_bound) {
            auto value = product_lower_bound(bound_n, bound_b1, bound_b2);
            if (bound_json) {
                json j{{"n", bound_n},
                       {"beta1", bound_b1},
                       {"beta2", bound_b2},
                       {"lower_bound", value},
                       {"vacuous", value < 1}};
                std::cout << emit_json(j);
            } else {
                std::cout << value << (value < 1 ? " (vacuous)" : "") << "\n";
            }
            return kExitOk;
        }
        if (*cmd_sch) {
            auto value = schubert_sum(sch_b1, sch_b2);
            if (sch_json)
                std::cout << emit_json(json{{"beta1", sch_b1},
                                            {"beta2", sch_b2},
                                            {"schubert", value}});
            else
                std::cout << value << "\n";
            return kExitOk;
        }
        if (*cmd_certify) return run_certify(certify_file, certify_json);
        if (*cmd_products) {
            auto report = product_report(load_knot_table(products_table), products_n);
            std::cout << (products_json ? emit_json(to_json(report)) : product_report_tsv(report));
            return kExitOk;
        }
        if (*cmd_dot) {
            std::cout << emit_dot(load_tree(dot_file));
            return kExitOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
