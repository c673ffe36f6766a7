#include <CLI11.hpp>

#include <cstdlib>
#include <string>

#include "xcav/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Resonant field and excitation maps for focused x-ray pulses "
                 "in thin-film cavities"};
    app.require_subcommand(1);

    xcav::CliOptions opts;
    if (const char* env = std::getenv("XCAV_THREADS"))
        opts.threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));

    std::string command;
    for (const char* name : {"rocking", "fieldmap", "invert", "chi", "validate"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "config file")->required();
        sub->add_option("--out", opts.out_dir, "output directory override");
        sub->add_option("--grid", opts.grid_n, "k-grid points per axis override");
        sub->add_option("--threads", opts.threads, "worker threads for z scans");
        sub->add_flag("--quiet", opts.quiet, "suppress stdout summaries");
        sub->callback([&command, name]() { command = name; });
    }

    CLI11_PARSE(app, argc, argv);
    return xcav::run_command(command, opts);
}
