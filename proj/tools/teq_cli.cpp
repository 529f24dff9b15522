// teq — exact models of twisted equivariant cohomology.
//
// Subcommands operate on JSON problem descriptions (see README.md for the
// schema) and print plain-text or JSON reports.  Exit status: 0 when every
// executed task succeeded, 1 otherwise.

#include "teq/error.hpp"
#include "teq/runner.hpp"

#include <optional>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

struct CommonFlags {
    std::string format = "text";
    std::string out;
    std::optional<int> levels;
    std::optional<int> mode_cap;
    uint64_t seed = 20260815;
    int probes = 200;
};

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--format", f.format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--out", f.out, "Write the report to a file instead of stdout");
}

void add_truncation_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--levels", f.levels,
                    "Override the problem's truncation depth / stage count")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--mode-cap", f.mode_cap, "Override the problem's Fourier-mode cap")
        ->check(CLI::NonNegativeNumber);
}

int emit(const teq::RunReport& rep, const CommonFlags& f) {
    std::string text = f.format == "json" ? rep.to_json().dump(2) + "\n" : rep.render_text();
    if (f.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(f.out);
        if (!os) {
            std::cerr << "error: cannot write '" << f.out << "'\n";
            return 1;
        }
        os << text;
    }
    return rep.ok() ? 0 : 1;
}

teq::RunOptions to_options(const CommonFlags& f) {
    teq::RunOptions opt;
    opt.levels = f.levels;
    opt.mode_cap = f.mode_cap;
    opt.seed = f.seed;
    opt.probes = f.probes;
    return opt;
}

int run_on_file(const std::string& path, std::vector<std::string> tasks,
                const CommonFlags& f) {
    const std::string bytes = teq::read_file(path);
    teq::Problem p = teq::problem_from_json(nlohmann::json::parse(bytes));
    if (tasks.empty()) {  // "run": use the task list embedded in the file
        tasks = p.tasks;
        if (tasks.empty()) {
            std::cerr << "error: '" << path << "' lists no tasks\n";
            return 1;
        }
    }
    teq::RunReport rep =
        teq::run_problem(p, tasks, to_options(f), path, teq::fnv1a64_hex(bytes));
    return emit(rep, f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact models of twisted equivariant cohomology"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("teq ") + teq::teq_version);

    struct Sub {
        CLI::App* cmd = nullptr;
        std::string file;
        CommonFlags flags;
        std::vector<std::string> tasks;
    };
    std::vector<std::unique_ptr<Sub>> subs;

    auto make_file_cmd = [&](const std::string& name, const std::string& desc,
                             std::vector<std::string> tasks, bool truncation) {
        auto s = std::make_unique<Sub>();
        s->cmd = app.add_subcommand(name, desc);
        s->tasks = std::move(tasks);
        s->cmd->add_option("file", s->file, "JSON problem description")
            ->required()
            ->check(CLI::ExistingFile);
        add_output_flags(s->cmd, s->flags);
        if (truncation) add_truncation_flags(s->cmd, s->flags);
        subs.push_back(std::move(s));
        return subs.back().get();
    };

    make_file_cmd("validate", "Check the defining conditions of the extended action",
                  {"validate"}, false);
    make_file_cmd("cohomology", "Cohomology of one truncation level", {"cohomology"}, true);
    make_file_cmd("tower", "Cohomology of every truncation level with restriction maps",
                  {"tower"}, true);
    make_file_cmd("limit", "Inverse limit of the truncation tower", {"limit"}, true);
    make_file_cmd("uncompleted", "Stage cohomology of the uncompleted complex",
                  {"uncompleted"}, true);
    make_file_cmd("compare", "Completed invariants vs the tensor-product profile",
                  {"compare"}, true);
    make_file_cmd("average", "Split a group family as B - lambda*B by exact averaging",
                  {"average"}, false);
    Sub* run_sub =
        make_file_cmd("run", "Execute the task list embedded in the problem file", {}, true);
    run_sub->cmd->add_option("--seed", run_sub->flags.seed, "Verifier seed");
    run_sub->cmd->add_option("--probes", run_sub->flags.probes, "Verifier probes per family");

    // verify runs on built-in instances and needs no problem file
    CommonFlags vflags;
    std::vector<std::string> vsuites;
    CLI::App* verify =
        app.add_subcommand("verify", "Run the operator-identity suites on built-in instances");
    verify->add_option("--seed", vflags.seed, "Probe seed");
    verify->add_option("--probes", vflags.probes, "Probes per identity family")
        ->check(CLI::PositiveNumber);
    verify->add_option("--suites", vsuites, "Comma-separated subset of suites to run")
        ->delimiter(',');
    add_output_flags(verify, vflags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            teq::VerifyConfig cfg;
            cfg.seed = vflags.seed;
            cfg.probes = vflags.probes;
            cfg.suites = vsuites;
            teq::TaskResult tr;
            tr.task = "verify";
            nlohmann::json suites = nlohmann::json::array();
            for (const auto& r : teq::run_verifier(cfg)) {
                nlohmann::json e{{"suite", r.suite}, {"ok", r.ok}, {"checks", r.checks}};
                if (!r.ok) e["witness"] = r.witness;
                suites.push_back(std::move(e));
                tr.lines.push_back((r.ok ? "PASS " : "FAIL ") + r.suite + "  (" +
                                   std::to_string(r.checks) + " checks)");
                if (!r.ok) tr.lines.push_back("  " + r.witness);
                tr.ok = tr.ok && r.ok;
            }
            tr.data["suites"] = std::move(suites);
            tr.data["seed"] = cfg.seed;
            tr.data["probes"] = cfg.probes;
            teq::RunReport rep;
            rep.source = "built-in instances";
            rep.seed = cfg.seed;
            rep.tasks.push_back(std::move(tr));
            return emit(rep, vflags);
        }
        for (const auto& s : subs)
            if (s->cmd->parsed()) return run_on_file(s->file, s->tasks, s->flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
