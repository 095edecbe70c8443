#include <CLI11.hpp>
#include <iostream>

#include "legendre/error.hpp"
#include "legendre/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Legendre curves in smooth, strictly convex normed planes"};
    app.require_subcommand(1);

    std::string config_path;
    std::size_t samples = 0;
    std::string out_dir;
    CLI::App* run = app.add_subcommand("run", "execute a JSON run configuration");
    run->add_option("config", config_path, "configuration file")->required();
    run->add_option("--samples", samples, "override the curve sample count");
    run->add_option("--out", out_dir, "directory for relative output paths");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    legendre::io::RunOverrides overrides;
    if (samples > 0) overrides.samples = samples;
    if (!out_dir.empty()) overrides.out_dir = out_dir;
    try {
        legendre::io::RunConfig cfg = legendre::io::load_config(config_path);
        return legendre::io::run(std::move(cfg), overrides, std::cout, std::cerr);
    } catch (const legendre::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return legendre::io::exit_code_for(e.kind());
    }
}
