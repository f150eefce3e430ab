#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ggdr/error.hpp"
#include "ggdr/generator.hpp"
#include "ggdr/graph.hpp"
#include "ggdr/matcher.hpp"
#include "ggdr/parser.hpp"
#include "ggdr/report.hpp"
#include "ggdr/reasoner.hpp"
#include "ggdr/validator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;

void emit(const std::string& document, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << document;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ggdr::IntegrityError("cannot write '" + out_path + "'");
    out << document;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct Options {
    std::string graph_dir;
    std::string ggd_file;
    std::string spec_file;
    std::string plan = "anti";
    std::size_t cap = ggdr::kDefaultStepCap;
    std::uint64_t seed = 1;
    double scale = 1.0;
    std::string out_path;
    std::size_t workers = 1;
    bool explain = false;
    bool timings = false;
    bool witness = false;
};

int cmd_validate(const Options& opt) {
    ggdr::PropertyGraph graph = ggdr::load_graph(opt.graph_dir);
    ggdr::GgdSet set = ggdr::load_ggds(opt.ggd_file);
    const ggdr::PlanKind plan =
        opt.plan == "outer" ? ggdr::PlanKind::Outer : ggdr::PlanKind::Anti;
    if (opt.explain) {
        for (const auto& ggd : set.ggds) {
            std::cerr << "# " << ggd.name << " source\n"
                      << ggdr::plan_pattern(graph, ggd.source, ggd.source_where).to_text()
                      << "# " << ggd.name << " target\n"
                      << ggdr::plan_pattern(graph, ggd.target, ggd.target_having).to_text();
        }
    }
    auto reports = ggdr::validate_set(graph, set, plan, opt.workers);
    emit(ggdr::validation_document(reports, opt.timings), opt.out_path);
    for (const auto& report : reports) {
        if (!report.valid()) return kExitNegative;
    }
    return kExitOk;
}

int cmd_sat(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    ggdr::GgdSet set = ggdr::load_ggds(opt.ggd_file);
    ggdr::SatResult result = ggdr::check_satisfiability(set, opt.cap);
    emit(ggdr::sat_document(result, opt.witness, elapsed_ms(start), opt.timings),
         opt.out_path);
    switch (result.verdict) {
        case ggdr::SatResult::Verdict::Satisfiable: return kExitOk;
        case ggdr::SatResult::Verdict::Unsatisfiable: return kExitNegative;
        case ggdr::SatResult::Verdict::Unknown: return kExitUnknown;
    }
    return kExitError;
}

int cmd_implies(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    ggdr::GgdSet set = ggdr::load_ggds(opt.ggd_file);
    if (set.ggds.empty()) throw ggdr::IntegrityError("empty rule file");
    // the last rule in the file is the candidate; the rest form the set
    ggdr::Ggd candidate = set.ggds.back();
    set.ggds.pop_back();
    ggdr::ImplicationResult result = ggdr::check_implication(set, candidate, opt.cap);
    emit(ggdr::implication_document(result, elapsed_ms(start), opt.timings), opt.out_path);
    switch (result.verdict) {
        case ggdr::ImplicationResult::Verdict::Implied: return kExitOk;
        case ggdr::ImplicationResult::Verdict::NotImplied: return kExitNegative;
        case ggdr::ImplicationResult::Verdict::Unknown: return kExitUnknown;
    }
    return kExitError;
}

int cmd_wacyclic(const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    ggdr::GgdSet set = ggdr::load_ggds(opt.ggd_file);
    ggdr::DependencyGraph graph = ggdr::build_dependency_graph(set);
    if (opt.explain) std::cerr << graph.to_dot();
    emit(ggdr::wacyclic_document(graph, elapsed_ms(start), opt.timings), opt.out_path);
    return graph.weakly_acyclic ? kExitOk : kExitNegative;
}

int cmd_gen(const Options& opt) {
    ggdr::GgdSet set = opt.ggd_file.empty() ? ggdr::GgdSet{} : ggdr::load_ggds(opt.ggd_file);
    ggdr::GenSpec spec = ggdr::GenSpec::from_json_file(opt.spec_file);
    ggdr::Generated generated = ggdr::generate_graph(spec, set, opt.seed, opt.scale);
    if (opt.out_path.empty()) throw ggdr::IntegrityError("gen requires --out DIR");
    ggdr::write_generated(generated, opt.out_path);
    std::cerr << "generated " << generated.graph.vertex_count() << " vertices, "
              << generated.graph.edge_count() << " edges\n";
    return kExitOk;
}

int cmd_explain(const Options& opt) {
    ggdr::PropertyGraph graph = ggdr::load_graph(opt.graph_dir);
    ggdr::GgdSet set = ggdr::load_ggds(opt.ggd_file);
    std::string out;
    for (const auto& ggd : set.ggds) {
        out += "# " + ggd.name + " source\n" +
               ggdr::plan_pattern(graph, ggd.source, ggd.source_where).to_text();
        out += "# " + ggd.name + " target\n" +
               ggdr::plan_pattern(graph, ggd.target, ggd.target_having).to_text();
    }
    emit(out, opt.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GGD reasoning engine: validation, satisfiability, implication"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool needs_graph, bool needs_ggds) {
        if (needs_graph) cmd->add_option("--graph", opt.graph_dir, "graph directory")->required();
        auto* ggds = cmd->add_option("--ggds", opt.ggd_file, "rule file");
        if (needs_ggds) ggds->required();
        cmd->add_option("--out", opt.out_path, "output path");
        cmd->add_flag("--timings", opt.timings, "include wall times in the output");
    };

    CLI::App* validate = app.add_subcommand("validate", "find violated rules");
    add_common(validate, true, true);
    validate->add_option("--plan", opt.plan, "anti|outer")
        ->check(CLI::IsMember({"anti", "outer"}));
    validate->add_option("--workers", opt.workers, "parallel per-rule validation");
    validate->add_flag("--explain", opt.explain, "dump execution plans to stderr");

    CLI::App* sat = app.add_subcommand("sat", "decide satisfiability of a rule set");
    add_common(sat, false, true);
    sat->add_option("--cap", opt.cap, "chase step cap");
    sat->add_flag("--witness", opt.witness, "embed a witness graph in the verdict");

    CLI::App* implies = app.add_subcommand(
        "implies", "decide whether the rules imply the last rule in the file");
    add_common(implies, false, true);
    implies->add_option("--cap", opt.cap, "chase step cap");

    CLI::App* wacyclic = app.add_subcommand("wacyclic", "check weak acyclicity");
    add_common(wacyclic, false, true);
    wacyclic->add_flag("--explain", opt.explain, "dump the dependency graph as DOT to stderr");

    CLI::App* gen = app.add_subcommand("gen", "generate a synthetic graph");
    add_common(gen, false, false);
    gen->add_option("--spec", opt.spec_file, "generator spec (json)")->required();
    gen->add_option("--seed", opt.seed, "rng seed");
    gen->add_option("--scale", opt.scale, "linear scale factor");

    CLI::App* explain = app.add_subcommand("explain", "dump execution plans");
    add_common(explain, true, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) return cmd_validate(opt);
        if (app.got_subcommand(sat)) return cmd_sat(opt);
        if (app.got_subcommand(implies)) return cmd_implies(opt);
        if (app.got_subcommand(wacyclic)) return cmd_wacyclic(opt);
        if (app.got_subcommand(gen)) return cmd_gen(opt);
        if (app.got_subcommand(explain)) return cmd_explain(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
