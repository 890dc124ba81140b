// frf: evaluate fractal Fourier series and measure their scaling exponents.
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "frf/commands.hpp"

namespace {

void add_common_options(CLI::App* sub, frf::RunConfig& config) {
    sub->set_config("--config", "", "Read key=value defaults from a file");
    sub->allow_config_extras(CLI::config_extras_mode::error);
    sub->add_option("--source", config.source,
                    "Coefficients: const|moebius|liouville|random|custom:<path>");
    sub->add_option("--k", config.k, "Frequency power n^k");
    sub->add_option("--p", config.p, "Amplitude decay n^-p");
    sub->add_option("--a", config.a, "Weierstrass amplitude base (0 < a < 1)");
    sub->add_option("--b", config.b, "Weierstrass frequency base (integer >= 2)");
    sub->add_option("--alpha", config.alpha,
                    "Growth hypothesis: grh|conj|trivial|<number>");
    sub->add_option("--alpha-const", config.alpha_constant,
                    "Constant C in the growth hypothesis");
    sub->add_option("--samples", config.samples, "Uniform t samples (power of two)");
    sub->add_option("--scales", config.scales, "Box-count levels j0:j1 (r = 2^-j)");
    sub->add_option("--h-ladder", config.h_ladder, "Increment levels j0:j1 (h = 2^-j)");
    sub->add_option("--x-ladder", config.x_ladder, "Growth levels j0:j1 (x = 2^j)");
    sub->add_option("--t-grid", config.t_grid, "Uniform t points for growth maxima");
    sub->add_option("--seed", config.seed, "Seed for the random-signs source");
    sub->add_option("--sieve-limit", config.sieve_limit, "Sieve size for mu/lambda");
    sub->add_option("--accuracy", config.accuracy, "Target evaluation accuracy");
    sub->add_option("--slack", config.slack, "Tolerance added to theory bounds");
    sub->add_option("--threads", config.threads, "Worker threads");
    sub->add_option("--out", config.out, "Write output here instead of stdout");
    sub->add_option("--format", config.format, "Output format: csv|svg");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractal Fourier series: evaluation, exponents, box dimensions"};
    app.require_subcommand(1);

    frf::RunConfig config;
    const struct {
        const char* name;
        const char* help;
    } subs[] = {
        {"eval", "Sample a series on a uniform grid"},
        {"alpha", "Fit the growth exponent of the partial-sum maxima"},
        {"holder", "Fit uniform Holder exponents from increments"},
        {"boxdim", "Box-count graph and path dimensions"},
        {"table", "Print the known exponent table for F_{k,k}(mu)"},
        {"report", "Full exponent report with theory cross-checks"},
    };
    for (const auto& s : subs) add_common_options(app.add_subcommand(s.name, s.help), config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    config.command = app.get_subcommands().front()->get_name();
    return frf::execute(config);
}
