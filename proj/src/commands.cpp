#include "frf/commands.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "frf/boxdim.hpp"
#include "frf/scaling.hpp"

namespace frf {

namespace {

bool is_weierstrass(const RunConfig& c) { return !std::isnan(c.a) || c.b != 0; }

std::pair<int, int> parse_levels(const std::string& text, const char* flag) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw argument_error(std::string(flag) + ": expected j0:j1, got '" + text + "'");
    char* end = nullptr;
    const long lo = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + colon)
        throw argument_error(std::string(flag) + ": bad integer in '" + text + "'");
    const long hi = std::strtol(text.c_str() + colon + 1, &end, 10);
    if (end != text.c_str() + text.size())
        throw argument_error(std::string(flag) + ": bad integer in '" + text + "'");
    if (lo > hi) throw argument_error(std::string(flag) + ": need j0 <= j1");
    return {static_cast<int>(lo), static_cast<int>(hi)};
}

double parse_real(const std::string& text, const char* what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || text.empty())
        throw argument_error(std::string(what) + ": bad number '" + text + "'");
    return v;
}

std::optional<AlphaHypothesis> resolve_alpha(const RunConfig& c) {
    if (c.alpha.empty()) return std::nullopt;
    double alpha = 0.0;
    if (c.alpha == "grh") {
        alpha = alpha_for_assumption(Assumption::Grh, c.k);
    } else if (c.alpha == "conj") {
        alpha = alpha_for_assumption(Assumption::SquareRootConjecture, c.k);
    } else if (c.alpha == "trivial") {
        alpha = 1.0;
    } else {
        alpha = parse_real(c.alpha, "--alpha");
    }
    return AlphaHypothesis{alpha, c.alpha_constant};
}

Assumption assumption_of(const RunConfig& c) {
    if (c.alpha == "grh") return Assumption::Grh;
    if (c.alpha == "conj") return Assumption::SquareRootConjecture;
    return Assumption::UserSupplied;
}

const char* assumption_name(Assumption a) {
    switch (a) {
        case Assumption::Unconditional:
            return "unconditional";
        case Assumption::Grh:
            return "grh";
        case Assumption::SquareRootConjecture:
            return "conjectural";
        case Assumption::UserSupplied:
            return "user";
    }
    return "user";
}

// Dyadic increment ladder h = 2^-j for j = hi..lo, ascending in h.
Eigen::ArrayXd dyadic_h_ladder(int lo, int hi) {
    if (lo < 1 || hi > 40) throw argument_error("--h-ladder: levels must lie in [1, 40]");
    Eigen::ArrayXd h(hi - lo + 1);
    for (int j = hi; j >= lo; --j) h[hi - j] = std::ldexp(1.0, -j);
    return h;
}

Eigen::ArrayXd dyadic_x_ladder(int lo, int hi) {
    if (lo < 0 || hi > 40) throw argument_error("--x-ladder: levels must lie in [0, 40]");
    Eigen::ArrayXd x(hi - lo + 1);
    for (int j = lo; j <= hi; ++j) x[j - lo] = std::ldexp(1.0, j);
    return x;
}

WeierstrassSpec make_weierstrass(const RunConfig& c, CoefficientSource f) {
    if (std::isnan(c.a) || c.b == 0)
        throw argument_error("Weierstrass family needs both --a and --b");
    return WeierstrassSpec(c.a, c.b, std::move(f));
}

// Evaluates whichever family the config names on the uniform grid.
SampleGrid family_grid(const RunConfig& c, const CoefficientSource& f,
                       const Eigen::ArrayXd& t) {
    if (is_weierstrass(c)) {
        const WeierstrassSpec w = make_weierstrass(c, f);
        return weierstrass_grid(w, t, weierstrass_terms_for(w, c.accuracy), c.threads);
    }
    const SeriesSpec series(f, c.k, c.p, resolve_alpha(c));
    return evaluate_grid(series, t, c.accuracy, c.threads);
}

void add_family_meta(CsvDocument& doc, const RunConfig& c) {
    doc.add_meta("command", c.command);
    doc.add_meta("source", c.source);
    if (is_weierstrass(c)) {
        doc.add_meta("family", "weierstrass");
        doc.add_meta("a", c.a);
        doc.add_meta("b", c.b);
    } else {
        doc.add_meta("family", "series");
        doc.add_meta("k", static_cast<std::int64_t>(c.k));
        doc.add_meta("p", c.p);
        doc.add_meta("alpha", c.alpha.empty() ? "none" : c.alpha);
        if (!c.alpha.empty()) doc.add_meta("alpha_constant", c.alpha_constant);
    }
    if (c.source == "random") doc.add_meta("seed", std::to_string(c.seed));
    if (c.source == "moebius" || c.source == "liouville")
        doc.add_meta("sieve_limit", c.sieve_limit);
}

void add_grid_meta(CsvDocument& doc, const SampleGrid& grid) {
    doc.add_meta("n_used", grid.n_used);
    if (grid.tail_bound)
        doc.add_meta("tail_bound", *grid.tail_bound);
    else
        doc.add_meta("tail_bound", "none");
}

void require_csv(const RunConfig& c) {
    if (c.format != "csv")
        throw argument_error(c.command + ": only --format csv is supported here");
}

std::string fit_cell(const LogLogFit& fit) { return format_double(fit.slope); }

}  // namespace

void validate_config(const RunConfig& c) {
    if (c.samples < 256 || (c.samples & (c.samples - 1)) != 0)
        throw argument_error("--samples must be a power of two >= 256");
    if (c.samples > (std::int64_t{1} << 26))
        throw argument_error("--samples above 2^26 is unsupported");
    if (c.k < 1 || c.k > 64) throw argument_error("--k must lie in [1, 64]");
    if (!(c.p > 0.0) || !std::isfinite(c.p)) throw argument_error("--p must be positive");
    if (!(c.accuracy > 0.0) || !std::isfinite(c.accuracy))
        throw argument_error("--accuracy must be positive");
    if (c.t_grid < 1) throw argument_error("--t-grid must be >= 1");
    if (c.sieve_limit < 1) throw argument_error("--sieve-limit must be >= 1");
    if (!(c.slack >= 0.0)) throw argument_error("--slack must be >= 0");
    if (c.threads < 1 || c.threads > 256) throw argument_error("--threads must lie in [1, 256]");
    if (c.format != "csv" && c.format != "svg")
        throw argument_error("--format must be csv or svg");
    if (!std::isnan(c.a) || c.b != 0) {
        if (std::isnan(c.a) || c.b == 0)
            throw argument_error("--a and --b must be given together");
    }
}

CoefficientSource make_source(const RunConfig& c) {
    if (c.source == "const") return CoefficientSource::constant({1.0, 0.0});
    if (c.source == "moebius") return CoefficientSource::moebius(build_sieve(c.sieve_limit));
    if (c.source == "liouville") return CoefficientSource::liouville(build_sieve(c.sieve_limit));
    if (c.source == "random") return CoefficientSource::random_signs(c.seed);
    if (c.source.rfind("custom:", 0) == 0) {
        const std::string path = c.source.substr(7);
        const std::string text = read_text_file(path);
        std::vector<std::complex<double>> table;
        std::size_t pos = 0;
        std::size_t line_no = 0;
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string::npos) end = text.size();
            std::string line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
                line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            const std::size_t comma = line.find(',');
            try {
                const double re =
                    parse_real(line.substr(0, comma), "custom source");
                const double im = comma == std::string::npos
                                      ? 0.0
                                      : parse_real(line.substr(comma + 1), "custom source");
                table.push_back({re, im});
            } catch (const argument_error&) {
                throw io_error(path + ":" + std::to_string(line_no) +
                               ": expected 're,im', got '" + line + "'");
            }
        }
        if (table.empty()) throw io_error(path + ": no coefficient rows");
        return CoefficientSource::custom(std::move(table));
    }
    throw argument_error("--source must be const|moebius|liouville|random|custom:<path>");
}

std::string cmd_eval(const RunConfig& c) {
    validate_config(c);
    const CoefficientSource f = make_source(c);
    const SampleGrid grid = family_grid(c, f, uniform_grid(c.samples));
    if (c.format == "svg") return svg_polyline(grid.values);
    CsvDocument doc;
    add_family_meta(doc, c);
    doc.add_meta("samples", c.samples);
    doc.add_meta("accuracy", c.accuracy);
    add_grid_meta(doc, grid);
    doc.header = {"t", "re", "im", "abs"};
    doc.rows.reserve(static_cast<std::size_t>(grid.t_values.size()));
    for (Eigen::Index i = 0; i < grid.t_values.size(); ++i) {
        const auto& z = grid.values[i];
        doc.rows.push_back({format_double(grid.t_values[i]), format_double(z.real()),
                            format_double(z.imag()), format_double(std::abs(z))});
    }
    return doc.to_string();
}

std::string cmd_table(const RunConfig& c) {
    validate_config(c);
    require_csv(c);
    CsvDocument doc;
    doc.add_meta("command", "table");
    doc.header = {"assumption", "k", "eta", "eta_decimal", "dim_graph_bound",
                  "epsilon_limit"};
    const Assumption order[] = {Assumption::Unconditional, Assumption::Grh,
                                Assumption::SquareRootConjecture};
    for (const Assumption assumption : order) {
        for (int k = 1; k <= 4; ++k) {
            if (assumption == Assumption::Unconditional && k == 1) {
                doc.rows.push_back({assumption_name(assumption), std::to_string(k), "—",
                                    "—", "—", "—"});
                continue;
            }
            const TheoryExponent row = theoretical_exponents(k, assumption);
            doc.rows.push_back({assumption_name(assumption), std::to_string(k),
                                std::to_string(row.eta_num) + "/" + std::to_string(row.eta_den),
                                format_double(row.eta), format_double(row.dim_graph_bound),
                                row.epsilon_limit ? "true" : "false"});
        }
    }
    return doc.to_string();
}

std::string cmd_alpha(const RunConfig& c) {
    validate_config(c);
    require_csv(c);
    if (is_weierstrass(c))
        throw argument_error("alpha: growth sums apply to the series family only");
    const auto [lo, hi] = parse_levels(c.x_ladder, "--x-ladder");
    const Eigen::ArrayXd x = dyadic_x_ladder(lo, hi);
    if (x.size() < 4) throw argument_error("alpha: ladder needs at least 4 rungs");
    const Eigen::ArrayXd t = alpha_t_grid(c.t_grid, 16);
    const CoefficientSource f = make_source(c);
    const Eigen::ArrayXd growth = alpha_growth_profile(f, c.k, x, t, c.threads);
    const LogLogFit fit = fit_growth_profile(x, growth);
    CsvDocument doc;
    add_family_meta(doc, c);
    doc.add_meta("x_ladder", c.x_ladder);
    doc.add_meta("t_grid", c.t_grid);
    doc.add_meta("t_points", static_cast<std::int64_t>(t.size()));
    doc.add_meta("alpha_hat", fit.slope);
    doc.add_meta("intercept", fit.intercept);
    doc.add_meta("rms_residual", fit.rms_residual);
    doc.add_meta("n_points", static_cast<std::int64_t>(fit.n_points));
    doc.header = {"x", "m"};
    for (Eigen::Index i = 0; i < x.size(); ++i)
        doc.rows.push_back({format_double(x[i]), format_double(growth[i])});
    return doc.to_string();
}

std::string cmd_holder(const RunConfig& c) {
    validate_config(c);
    require_csv(c);
    const auto [lo, hi] = parse_levels(c.h_ladder, "--h-ladder");
    const Eigen::ArrayXd h = dyadic_h_ladder(lo, hi);
    const CoefficientSource f = make_source(c);
    const SampleGrid grid = family_grid(c, f, uniform_grid(c.samples));
    CsvDocument doc;
    add_family_meta(doc, c);
    doc.add_meta("samples", c.samples);
    doc.add_meta("accuracy", c.accuracy);
    doc.add_meta("h_ladder", c.h_ladder);
    add_grid_meta(doc, grid);
    const Component comps[] = {Component::Abs, Component::Re, Component::Im,
                               Component::Complex};
    const char* names[] = {"abs", "re", "im", "complex"};
    std::vector<Eigen::ArrayXd> profiles;
    for (int ci = 0; ci < 4; ++ci) {
        profiles.push_back(increment_profile(grid, h, comps[ci]));
        const LogLogFit fit = estimate_holder(grid, h, comps[ci]);
        doc.add_meta(std::string("eta_hat_") + names[ci], fit.slope);
        doc.add_meta(std::string("rms_") + names[ci], fit.rms_residual);
    }
    doc.header = {"h", "d_abs", "d_re", "d_im", "d_complex"};
    for (Eigen::Index i = 0; i < h.size(); ++i)
        doc.rows.push_back({format_double(h[i]), format_double(profiles[0][i]),
                            format_double(profiles[1][i]), format_double(profiles[2][i]),
                            format_double(profiles[3][i])});
    return doc.to_string();
}

std::string cmd_boxdim(const RunConfig& c) {
    validate_config(c);
    require_csv(c);
    const auto [lo, hi] = parse_levels(c.scales, "--scales");
    const std::vector<int> levels = dyadic_levels(lo, hi);
    const CoefficientSource f = make_source(c);
    const SampleGrid grid = family_grid(c, f, uniform_grid(c.samples));
    CsvDocument doc;
    add_family_meta(doc, c);
    doc.add_meta("samples", c.samples);
    doc.add_meta("accuracy", c.accuracy);
    doc.add_meta("scales", c.scales);
    add_grid_meta(doc, grid);
    const Component comps[] = {Component::Abs, Component::Re, Component::Im};
    const char* names[] = {"abs", "re", "im"};
    std::vector<BoxCountCurve> curves;
    for (int ci = 0; ci < 3; ++ci) {
        curves.push_back(boxcount_graph(grid, comps[ci], levels));
        const LogLogFit fit = estimate_dimension(curves.back());
        doc.add_meta(std::string("dim_") + names[ci], fit.slope);
        doc.add_meta(std::string("rms_") + names[ci], fit.rms_residual);
    }
    curves.push_back(boxcount_path(grid, levels));
    const LogLogFit path_fit = estimate_dimension(curves.back());
    doc.add_meta("dim_path", path_fit.slope);
    doc.add_meta("rms_path", path_fit.rms_residual);
    doc.add_meta("path_lower_bound_only", curves.back().lower_bound_only ? "true" : "false");
    doc.header = {"r",        "n_abs",  "n_abs_shift", "n_re",   "n_re_shift",
                  "n_im",     "n_im_shift", "n_path", "n_path_shift"};
    for (std::size_t si = 0; si < levels.size(); ++si) {
        const auto i = static_cast<Eigen::Index>(si);
        std::vector<std::string> row{format_double(curves[0].scales[i])};
        for (int ci = 0; ci < 4; ++ci) {
            row.push_back(std::to_string(curves[static_cast<std::size_t>(ci)].counts[i]));
            row.push_back(
                std::to_string(curves[static_cast<std::size_t>(ci)].shifted_counts[i]));
        }
        doc.rows.push_back(std::move(row));
    }
    return doc.to_string();
}

std::string cmd_report(const RunConfig& c) {
    validate_config(c);
    require_csv(c);
    const auto [s_lo, s_hi] = parse_levels(c.scales, "--scales");
    const std::vector<int> levels = dyadic_levels(s_lo, s_hi);
    const auto [h_lo, h_hi] = parse_levels(c.h_ladder, "--h-ladder");
    const Eigen::ArrayXd h = dyadic_h_ladder(h_lo, h_hi);
    const CoefficientSource f = make_source(c);
    const SampleGrid grid = family_grid(c, f, uniform_grid(c.samples));

    // Theory side: explicit hypothesis for the series family, the exact
    // transformed hypothesis for Weierstrass (alpha = 1 + log_b a on the
    // k = p = 1 reduction).
    std::optional<ExponentReport> theory;
    if (is_weierstrass(c)) {
        const double ab = c.a * static_cast<double>(c.b);
        const double alpha_w = 1.0 + std::log(c.a) / std::log(static_cast<double>(c.b));
        const double bound = f.declared_bound();
        if (bound > 0.0) {
            const SeriesSpec reduced(f, 1, 1.0,
                                     AlphaHypothesis{alpha_w, bound * ab / (ab - 1.0)});
            theory = theorem_bounds(reduced);
        }
    } else if (const auto hyp = resolve_alpha(c)) {
        const SeriesSpec series(f, c.k, c.p, hyp);
        theory = theorem_bounds(series);
        theory->assumption_label = assumption_of(c);
    }

    CsvDocument doc;
    add_family_meta(doc, c);
    doc.add_meta("samples", c.samples);
    doc.add_meta("accuracy", c.accuracy);
    doc.add_meta("h_ladder", c.h_ladder);
    doc.add_meta("scales", c.scales);
    doc.add_meta("slack", c.slack);
    add_grid_meta(doc, grid);
    if (theory) {
        doc.add_meta("assumption", assumption_name(theory->assumption_label));
        doc.add_meta("alpha_used", theory->alpha);
        doc.add_meta("eta_theory", theory->eta_theory);
        doc.add_meta("dim_graph_bound", theory->dim_graph_bound);
        doc.add_meta("dim_path_bound", theory->dim_path_bound);
    } else {
        doc.add_meta("assumption", "none");
    }

    // Growth exponent: series family only, skipped when the ladder
    // outruns coefficient availability.
    if (!is_weierstrass(c)) {
        const auto [x_lo, x_hi] = parse_levels(c.x_ladder, "--x-ladder");
        try {
            const LogLogFit alpha_fit = estimate_alpha(
                f, c.k, dyadic_x_ladder(x_lo, x_hi), alpha_t_grid(c.t_grid, 16), {}, c.threads);
            doc.add_meta("alpha_hat", alpha_fit.slope);
            doc.add_meta("alpha_rms", alpha_fit.rms_residual);
        } catch (const range_error&) {
            doc.add_meta("alpha_hat", "-");
        } catch (const degenerate_data_error&) {
            doc.add_meta("alpha_hat", "-");
        }
    } else {
        doc.add_meta("alpha_hat", "-");
    }

    const BoxCountCurve path_curve = boxcount_path(grid, levels);
    const LogLogFit path_fit = estimate_dimension(path_curve);
    doc.add_meta("path_lower_bound_only", path_curve.lower_bound_only ? "true" : "false");

    doc.header = {"component", "eta_hat", "eta_rms", "dim_hat",
                  "dim_rms",   "dim_bound", "margin", "status"};
    const Component comps[] = {Component::Abs, Component::Re, Component::Im};
    const char* names[] = {"abs", "re", "im"};
    for (int ci = 0; ci < 3; ++ci) {
        std::vector<std::string> row{names[ci]};
        bool degenerate = false;
        try {
            const LogLogFit eta_fit = estimate_holder(grid, h, comps[ci]);
            row.push_back(fit_cell(eta_fit));
            row.push_back(format_double(eta_fit.rms_residual));
        } catch (const degenerate_data_error&) {
            degenerate = true;
            row.push_back("-");
            row.push_back("-");
        }
        const LogLogFit dim_fit = estimate_dimension(boxcount_graph(grid, comps[ci], levels));
        row.push_back(fit_cell(dim_fit));
        row.push_back(format_double(dim_fit.rms_residual));
        if (theory) {
            const InequalityCheck chk =
                check_theorem_inequalities(*theory, dim_fit, path_fit, c.slack);
            row.push_back(format_double(chk.graph_bound));
            row.push_back(format_double(chk.graph_margin));
            row.push_back(degenerate ? "degenerate" : (chk.graph_ok ? "ok" : "exceeds"));
        } else {
            row.push_back("-");
            row.push_back("-");
            row.push_back(degenerate ? "degenerate" : "uncertified");
        }
        doc.rows.push_back(std::move(row));
    }
    {
        std::vector<std::string> row{"path", "-", "-", fit_cell(path_fit),
                                     format_double(path_fit.rms_residual)};
        if (theory) {
            const InequalityCheck chk =
                check_theorem_inequalities(*theory, path_fit, path_fit, c.slack);
            row.push_back(format_double(chk.path_bound));
            row.push_back(format_double(chk.path_margin));
            row.push_back(chk.path_ok ? "ok" : "exceeds");
        } else {
            row.push_back("-");
            row.push_back("-");
            row.push_back("uncertified");
        }
        doc.rows.push_back(std::move(row));
    }
    return doc.to_string();
}

std::string run_command(const RunConfig& c) {
    if (c.command == "eval") return cmd_eval(c);
    if (c.command == "alpha") return cmd_alpha(c);
    if (c.command == "holder") return cmd_holder(c);
    if (c.command == "boxdim") return cmd_boxdim(c);
    if (c.command == "table") return cmd_table(c);
    if (c.command == "report") return cmd_report(c);
    throw argument_error("unknown command '" + c.command + "'");
}

int execute(const RunConfig& config) {
    try {
        const std::string text = run_command(config);
        if (config.out.empty()) {
            std::fwrite(text.data(), 1, text.size(), stdout);
        } else {
            write_text_file(config.out, text);
        }
        return 0;
    } catch (const degenerate_data_error& e) {
        std::fprintf(stderr, "error (degenerate data): %s\n", e.what());
        return 4;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "error (numeric): %s\n", e.what());
        return 4;
    } catch (const resource_error& e) {
        std::fprintf(stderr, "error (resource): %s\n", e.what());
        return 3;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error (i/o): %s\n", e.what());
        return 5;
    } catch (const error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

}  // namespace frf
