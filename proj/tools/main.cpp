#include "qmi/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Mutual-information solver for planar dispersive bodies"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 1 runtime failure or failed check, "
               "2 unusable configuration.");

    qmi::cli::Options opt;
    std::function<int(const qmi::cli::Options&)> action;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* config =
            sub->add_option("--config", opt.config_path, "run configuration");
        if (needs_config) config->required();
        sub->add_option("--out", opt.out_dir, "output directory")
            ->capture_default_str();
        sub->add_option("--threads", opt.threads,
                        "assembly worker threads (default: config or 1)");
        sub->add_option("--seed", opt.seed,
                        "override the sampling seed (worldline, ssa)");
        sub->add_option("--refinement", opt.refinement,
                        "override the mesh refinement level");
    };

    struct Entry {
        const char* name;
        const char* help;
        int (*run)(const qmi::cli::Options&);
        bool needs_config;
    };
    const Entry entries[] = {
        {"qmi-sweep", "mutual information over a gap sweep",
         qmi::cli::run_qmi_sweep, true},
        {"capacitance", "single-body capacitance over a lambda grid",
         qmi::cli::run_capacitance, true},
        {"ssa", "three-body strong-subadditivity report", qmi::cli::run_ssa,
         true},
        {"tripartite", "integrated three-body information",
         qmi::cli::run_tripartite, true},
        {"worldline", "Dirichlet worldline estimates over a gap sweep",
         qmi::cli::run_worldline, true},
        {"selftest", "built-in invariant suite", qmi::cli::run_selftest,
         false},
    };
    for (const Entry& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, e.needs_config);
        sub->callback([&action, run = e.run] { action = run; });
    }

    CLI11_PARSE(app, argc, argv);
    return action(opt);
}
