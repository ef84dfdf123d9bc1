// Command-line front end: build, verify, stats.

#include "extbwt/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"External-memory BWT and LCP construction for collections of equal-length strings"};
    app.require_subcommand(1);

    extbwt::RunConfig cfg;
    std::string format = "lines";
    std::string out_bwt;
    std::string out_lcp;
    std::string input;
    std::string workdir = cfg.workdir.string();

    auto add_pipeline_flags = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "input file, one string per line or FASTA")->required();
        cmd->add_option("--format", format, "lines | fasta")->check(CLI::IsMember({"lines", "fasta"}));
        cmd->add_option("--alphabet", cfg.alphabet, "symbols in lexicographic order, '$' excluded");
        cmd->add_option("--workdir", workdir, "directory for list files and stats.txt");
        cmd->add_option("--int-width", cfg.int_width, "bytes per integer list element (1, 4, 8); default automatic");
        cmd->add_option("--buffer-bytes", cfg.buffer_bytes, "I/O buffer per open list");
        cmd->add_flag("--keep-intermediates", cfg.keep_intermediates, "keep T, B and N lists");
    };

    auto* build = app.add_subcommand("build", "compute BWT and LCP");
    add_pipeline_flags(build);
    build->add_option("--out-bwt", out_bwt, "BWT list path without extension (default <workdir>/bwt)");
    build->add_option("--out-lcp", out_lcp, "LCP list path without extension (default <workdir>/lcp)");
    build->add_flag("--text", cfg.text, "also write <out>.txt renderings");

    auto* verify = app.add_subcommand("verify", "compare the pipeline with the brute-force oracle");
    add_pipeline_flags(verify);
    verify->add_option("--max-oracle-size", cfg.max_oracle_size, "largest m(k+1) the oracle accepts");
    verify->add_flag("--reuse-partials", cfg.reuse_partials, "merge the B_*.bin lists already in the workdir");

    auto* stats = app.add_subcommand("stats", "print stats.txt of a finished build");
    stats->add_option("--workdir", workdir, "workdir of a finished build");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : extbwt::exit_input;
    }

    cfg.input = input;
    cfg.workdir = workdir;
    if (!out_bwt.empty()) cfg.out_bwt = out_bwt;
    if (!out_lcp.empty()) cfg.out_lcp = out_lcp;
    cfg.format = format == "fasta" ? extbwt::InputFormat::fasta : extbwt::InputFormat::lines;

    if (*build) return extbwt::cmd_build(cfg, std::cout, std::cerr);
    if (*verify) return extbwt::cmd_verify(cfg, std::cout, std::cerr);
    return extbwt::cmd_stats(cfg.workdir, std::cout, std::cerr);
}
