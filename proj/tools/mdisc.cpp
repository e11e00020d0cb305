#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mdisc/cli.hpp"

namespace {

void add_polynomial_input(CLI::App* app, mdisc::cli::JobSpec& job) {
    app->add_option("--file", job.file, "Input file: a 'ring:' line, then the polynomial")->check(CLI::ExistingFile);
    app->add_option("--ring", job.ring, "Comma-separated variable names");
    app->add_option("--expr", job.expr, "Polynomial expression");
}

void add_format(CLI::App* app, mdisc::cli::JobSpec& job) {
    app->add_option("--format", job.format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, mdisc::cli::Format>{{"text", mdisc::cli::Format::text},
                                                      {"json", mdisc::cli::Format::json}},
            CLI::ignore_case));
    app->add_option("--out", job.out, "Write the report to this path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact certificates for minimal discrepancy bounds of hypersurface singularities"};
    app.set_version_flag("--version", std::string(mdisc::io::kToolVersion));
    app.require_subcommand(1);

    mdisc::cli::JobSpec job;

    auto* bound = app.add_subcommand("bound", "Weighted initial-form bound for given weights");
    add_polynomial_input(bound, job);
    bound->add_option("--weights", job.weights, "Weights a1,...,an of the non-t coordinates")->required();
    bound->add_option("--t", job.t_var, "Variable playing the role of t (default: last)");
    add_format(bound, job);

    auto* search = app.add_subcommand("search", "Best bound over all t choices and weights up to a budget");
    add_polynomial_input(search, job);
    search->add_option("--budget", job.budget, "Maximum weight sum")->required();
    add_format(search, job);

    auto* cdv = app.add_subcommand("cdv", "Certify md <= 1 for a cDV point y1^2 + f(y2,y3) + t g");
    add_polynomial_input(cdv, job);
    add_format(cdv, job);

    auto* blowup = app.add_subcommand("blowup", "Run a blow-up script");
    blowup->add_option("--file", job.file, "Script file")->check(CLI::ExistingFile);
    blowup->add_option("--script", job.script, "Inline script, ';' separates lines");
    add_format(blowup, job);

    auto* verify = app.add_subcommand("verify", "Re-check a JSON certificate");
    verify->add_option("--cert", job.cert, "Certificate file")->required()->check(CLI::ExistingFile);
    add_polynomial_input(verify, job);
    add_format(verify, job);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mdisc::cli::kExitInputError;
    }

    const auto* chosen = app.get_subcommands().front();
    job.command = *mdisc::cli::command_from(chosen->get_name());
    return mdisc::cli::run(job, std::cout, std::cerr);
}
