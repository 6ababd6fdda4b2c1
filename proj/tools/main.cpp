// bellseq command line tool: tables, threshold chains, cascade values,
// figure data series, the multiplexing game and the brute-force oracles,
// emitted as aligned text, CSV, JSON or a single-series SVG.
//
// Exit codes: 0 success, 1 usage error, 2 infeasible parameters,
// 3 internal invariant failure.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellseq/bellseq.hpp"

namespace {

using bellseq::BoundKind;
using bellseq::PovmFamily;
using bellseq::PovmParams;
using Cell = std::variant<std::string, double, std::int64_t, std::uint64_t>;

std::string fmt_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string cell_text(const Cell& cell) {
    if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
    if (std::holds_alternative<double>(cell)) return fmt_g6(std::get<double>(cell));
    if (std::holds_alternative<std::int64_t>(cell))
        return std::to_string(std::get<std::int64_t>(cell));
    return std::to_string(std::get<std::uint64_t>(cell));
}

nlohmann::json cell_json(const Cell& cell) {
    if (std::holds_alternative<std::string>(cell)) return std::get<std::string>(cell);
    if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
    if (std::holds_alternative<std::int64_t>(cell)) return std::get<std::int64_t>(cell);
    return std::get<std::uint64_t>(cell);
}

struct DataTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

struct OutputSpec {
    std::string format = "table";
    std::string out_path;       // empty = stdout
    nlohmann::json spec_info;   // echoed into JSON output
    // for SVG: indices of the x and y columns
    int svg_x = 0;
    int svg_y = 1;
};

void write_csv(std::ostream& os, const DataTable& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            os << cell_text(row[c]) << (c + 1 < row.size() ? "," : "\n");
}

void write_table(std::ostream& os, const DataTable& table) {
    std::vector<std::size_t> widths(table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) widths[c] = table.columns[c].size();
    for (const auto& row : table.rows)
        for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], cell_text(row[c]).size());
    const auto pad = [&](const std::string& text, std::size_t c) {
        os << text;
        if (c + 1 < widths.size())
            os << std::string(widths[c] - text.size() + 2, ' ');
    };
    for (std::size_t c = 0; c < table.columns.size(); ++c) pad(table.columns[c], c);
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) pad(cell_text(row[c]), c);
        os << "\n";
    }
}

void write_json(std::ostream& os, const DataTable& table, const OutputSpec& spec,
                const nlohmann::json* checks = nullptr) {
    nlohmann::json doc;
    doc["spec"] = spec.spec_info;
    doc["data"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = cell_json(row[c]);
        doc["data"].push_back(std::move(obj));
    }
    if (checks) doc["checks"] = *checks;
    os << doc.dump(2) << "\n";
}

void write_svg(std::ostream& os, const DataTable& table, const OutputSpec& spec) {
    const int width = 640, height = 480, margin = 60;
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : table.rows) {
        const auto num = [&](int c) -> double {
            const Cell& cell = row[static_cast<std::size_t>(c)];
            if (std::holds_alternative<double>(cell)) return std::get<double>(cell);
            if (std::holds_alternative<std::int64_t>(cell))
                return static_cast<double>(std::get<std::int64_t>(cell));
            if (std::holds_alternative<std::uint64_t>(cell))
                return static_cast<double>(std::get<std::uint64_t>(cell));
            throw std::runtime_error("svg: non-numeric column");
        };
        pts.emplace_back(num(spec.svg_x), num(spec.svg_y));
    }
    if (pts.empty()) throw std::runtime_error("svg: empty series");
    double xmin = pts[0].first, xmax = pts[0].first, ymin = pts[0].second, ymax = pts[0].second;
    for (const auto& [x, y] : pts) {
        xmin = std::min(xmin, x); xmax = std::max(xmax, x);
        ymin = std::min(ymin, y); ymax = std::max(ymax, y);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const auto sx = [&](double x) {
        return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin);
    };
    const auto sy = [&](double y) {
        return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin);
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "  <rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "  <line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
       << width - margin << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    os << "  <line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
       << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 4.0;
        const double yv = ymin + (ymax - ymin) * t / 4.0;
        os << "  <text x=\"" << fmt_g6(sx(xv)) << "\" y=\"" << height - margin + 20
           << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt_g6(xv) << "</text>\n";
        os << "  <text x=\"" << margin - 8 << "\" y=\"" << fmt_g6(sy(yv) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << fmt_g6(yv) << "</text>\n";
    }
    os << "  <text x=\"" << width / 2 << "\" y=\"" << height - 15
       << "\" font-size=\"13\" text-anchor=\"middle\">"
       << table.columns[static_cast<std::size_t>(spec.svg_x)] << "</text>\n";
    os << "  <text x=\"15\" y=\"" << height / 2
       << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
       << height / 2 << ")\">" << table.columns[static_cast<std::size_t>(spec.svg_y)]
       << "</text>\n";
    os << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    for (const auto& [x, y] : pts) os << fmt_g6(sx(x)) << "," << fmt_g6(sy(y)) << " ";
    os << "\"/>\n";
    for (const auto& [x, y] : pts)
        os << "  <circle cx=\"" << fmt_g6(sx(x)) << "\" cy=\"" << fmt_g6(sy(y))
           << "\" r=\"2.5\" fill=\"crimson\"/>\n";
    os << "</svg>\n";
}

void emit(const DataTable& table, const OutputSpec& spec,
          const nlohmann::json* checks = nullptr) {
    std::ostringstream buffer;
    if (spec.format == "csv")
        write_csv(buffer, table);
    else if (spec.format == "json")
        write_json(buffer, table, spec, checks);
    else if (spec.format == "svg")
        write_svg(buffer, table, spec);
    else
        write_table(buffer, table);
    if (spec.out_path.empty()) {
        std::cout << buffer.str();
    } else {
        std::ofstream file(spec.out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + spec.out_path);
        file << buffer.str();
    }
}

BoundKind parse_bound(const std::string& name) {
    return name == "pnc" ? BoundKind::pnc : BoundKind::local;
}

PovmFamily parse_family(const std::string& name, double alpha) {
    if (name == "sum-to-one") return PovmFamily::sum_to_one();
    if (name == "fixed-alpha") return PovmFamily::fixed_alpha(alpha);
    return PovmFamily::one_param();
}

// Per-Bob quantum values under the convention used throughout: every
// predecessor measures at its critical sharpness, the current Bob sharply.
std::vector<PovmParams> chain_params_for_bob(const bellseq::ThresholdChain& chain,
                                             std::size_t k) {
    std::vector<PovmParams> params;
    for (std::size_t j = 0; j + 1 < k; ++j) {
        const double eta = chain.criticals[j];
        params.emplace_back(eta, chain.family.alpha_at(eta));
    }
    params.emplace_back(1.0, 0.0);
    return params;
}

struct CommonFlags {
    int n = 2;
    int n_max = 0;
    std::string bound = "local";
    std::string family = "one-param";
    double alpha = 0.0;
    int k_max = 10;
    double bias_p = -1.0;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 12345;
    std::vector<double> etas;
    std::vector<double> alphas;
    OutputSpec out;
};

void add_output_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--format", flags.out.format, "table, csv, json or svg")
        ->check(CLI::IsMember({"table", "csv", "json", "svg"}));
    cmd->add_option("--out", flags.out.out_path, "write to a file instead of stdout");
}

int cmd_bounds(CommonFlags& flags) {
    const int lo = flags.n;
    const int hi = flags.n_max > 0 ? flags.n_max : flags.n;
    DataTable table;
    table.columns = {"n", "local", "pnc", "tsirelson"};
    for (int n = lo; n <= hi; ++n)
        table.add_row({static_cast<std::int64_t>(n), bellseq::local_bound(n),
                       bellseq::pnc_bound(n), bellseq::tsirelson_value(n)});
    flags.out.spec_info = {{"command", "bounds"}, {"n", lo}, {"n_max", hi}};
    emit(table, flags.out);
    return 0;
}

int cmd_oracle(CommonFlags& flags) {
    const int n = flags.n;
    DataTable table;
    table.columns = {"n", "local_analytic", "local_bruteforce", "pnc_analytic",
                     "pnc_bruteforce", "agree"};
    const std::uint64_t local = bellseq::local_bound(n);
    const std::int64_t local_bf = bellseq::local_bound_bruteforce(n);
    const std::uint64_t pnc = bellseq::pnc_bound(n);
    // at n = 2 the constraint set is empty, so the constrained search is
    // the unconstrained one
    const std::int64_t pnc_bf = n == 2 ? local_bf : bellseq::pnc_bound_bruteforce(n);
    const bool agree = local == static_cast<std::uint64_t>(local_bf) &&
                       pnc == static_cast<std::uint64_t>(pnc_bf);
    table.add_row({static_cast<std::int64_t>(n), local, local_bf, pnc, pnc_bf,
                   std::string(agree ? "yes" : "NO")});
    flags.out.spec_info = {{"command", "oracle"}, {"n", n}};
    emit(table, flags.out);
    if (!agree) throw std::runtime_error("oracle disagrees with the closed-form bounds");
    return 0;
}

DataTable chain_table(const bellseq::ThresholdChain& chain) {
    DataTable table;
    table.columns = {"n", "k", "bound", "family", "alpha_rule", "eta_critical", "shares"};
    const std::string alpha_rule =
        chain.family.kind == PovmFamily::Kind::fixed_alpha ? fmt_g6(chain.family.alpha0)
        : chain.family.kind == PovmFamily::Kind::sum_to_one ? std::string("1-eta")
                                                            : std::string("0");
    for (std::size_t k = 0; k < chain.criticals.size(); ++k)
        table.add_row({static_cast<std::int64_t>(chain.n), static_cast<std::int64_t>(k + 1),
                       std::string(bellseq::to_string(chain.kind)),
                       std::string(chain.family.name()), alpha_rule, chain.criticals[k],
                       static_cast<std::int64_t>(chain.criticals[k] < 1.0 ? 1 : 0)});
    return table;
}

int cmd_thresholds(CommonFlags& flags) {
    const auto chain = bellseq::threshold_chain(flags.n, parse_bound(flags.bound),
                                                parse_family(flags.family, flags.alpha),
                                                flags.k_max);
    DataTable table = chain_table(chain);
    flags.out.spec_info = {{"command", "thresholds"}, {"n", flags.n},
                           {"bound", flags.bound},   {"family", flags.family},
                           {"alpha", flags.alpha},   {"k_max", flags.k_max},
                           {"shared_count", chain.shared_count}};
    flags.out.svg_x = 1;  // k
    flags.out.svg_y = 5;  // eta_critical
    emit(table, flags.out);
    return 0;
}

int cmd_cascade(CommonFlags& flags) {
    DataTable table;
    flags.out.spec_info = {{"command", "cascade"}, {"n", flags.n}};
    if (!flags.etas.empty()) {
        // explicit per-Bob parameters
        std::vector<PovmParams> params;
        for (std::size_t j = 0; j < flags.etas.size(); ++j)
            params.emplace_back(flags.etas[j],
                                j < flags.alphas.size() ? flags.alphas[j] : 0.0);
        table.columns = {"n", "k", "eta", "alpha", "bell_closed", "bell_numeric"};
        for (std::size_t k = 1; k <= params.size(); ++k) {
            const std::vector<PovmParams> prefix(params.begin(),
                                                 params.begin() + static_cast<long>(k));
            bellseq::CascadeConfig config;
            config.n = flags.n;
            config.bobs = prefix;
            table.add_row({static_cast<std::int64_t>(flags.n), static_cast<std::int64_t>(k),
                           params[k - 1].eta, params[k - 1].alpha,
                           bellseq::bell_value_closed(flags.n, prefix),
                           bellseq::bell_value_numeric(config)});
        }
        flags.out.spec_info["etas"] = flags.etas;
    } else {
        // chain convention: predecessors critical, current Bob sharp
        const auto chain = bellseq::threshold_chain(flags.n, parse_bound(flags.bound),
                                                    parse_family(flags.family, flags.alpha),
                                                    flags.k_max);
        table.columns = {"n",           "k",          "bound",       "family",
                         "eta_critical", "bell_closed", "bell_numeric"};
        for (std::size_t k = 1; k <= chain.criticals.size(); ++k) {
            const auto params = chain_params_for_bob(chain, k);
            bellseq::CascadeConfig config;
            config.n = flags.n;
            config.bobs = params;
            table.add_row({static_cast<std::int64_t>(flags.n), static_cast<std::int64_t>(k),
                           std::string(bellseq::to_string(chain.kind)),
                           std::string(chain.family.name()), chain.criticals[k - 1],
                           bellseq::bell_value_closed(flags.n, params),
                           bellseq::bell_value_numeric(config)});
        }
        flags.out.spec_info["bound"] = flags.bound;
        flags.out.spec_info["family"] = flags.family;
    }
    emit(table, flags.out);
    return 0;
}

int cmd_biased(CommonFlags& flags) {
    if (flags.etas.empty())
        throw CLI::ValidationError("biased", "--etas is required");
    if (flags.bias_p < 0.0 || flags.bias_p > 1.0)
        throw CLI::ValidationError("biased", "--bias-p must lie in [0, 1]");
    DataTable table;
    table.columns = {"n", "k", "bias_p", "eta", "bell_closed", "bell_numeric"};
    for (std::size_t k = 1; k <= flags.etas.size(); ++k) {
        const std::vector<double> etas(flags.etas.begin(),
                                       flags.etas.begin() + static_cast<long>(k));
        const std::vector<double> ps(k - 1, flags.bias_p);
        bellseq::CascadeConfig config;
        config.n = flags.n;
        config.bias_p = flags.bias_p;
        for (double e : etas) config.bobs.emplace_back(e, 0.0);
        table.add_row({static_cast<std::int64_t>(flags.n), static_cast<std::int64_t>(k),
                       flags.bias_p, etas.back(),
                       bellseq::bell_value_biased_closed(flags.n, etas, ps),
                       bellseq::bell_value_numeric_biased(config)});
    }
    flags.out.spec_info = {{"command", "biased"},
                           {"n", flags.n},
                           {"bias_p", flags.bias_p},
                           {"etas", flags.etas}};
    emit(table, flags.out);
    return 0;
}

int cmd_figure(int index, CommonFlags& flags) {
    DataTable table;
    flags.out.spec_info = {{"command", "figure"}, {"index", index}};
    switch (index) {
        case 1: {
            table.columns = {"n", "k", "bound", "family", "alpha_rule", "eta_critical"};
            for (int n = 2; n <= 100; ++n)
                table.add_row({static_cast<std::int64_t>(n), std::int64_t{1},
                               std::string("local"), std::string("one-param"),
                               std::string("0"),
                               bellseq::first_threshold(n, BoundKind::local)});
            flags.out.svg_x = 0;
            flags.out.svg_y = 5;
            break;
        }
        case 2: {
            table.columns = {"n", "k", "bound", "family", "alpha_rule", "eta_critical"};
            for (int n = 2; n <= 100; ++n) {
                const auto chain = bellseq::threshold_chain(n, BoundKind::local,
                                                            PovmFamily::one_param(), 2);
                table.add_row({static_cast<std::int64_t>(n), std::int64_t{2},
                               std::string("local"), std::string("one-param"),
                               std::string("0"), chain.criticals.at(1)});
            }
            flags.out.svg_x = 0;
            flags.out.svg_y = 5;
            break;
        }
        case 3: {
            const int k_max = flags.k_max > 0 ? flags.k_max : 200;
            const auto chain = bellseq::threshold_chain(100, BoundKind::pnc,
                                                        PovmFamily::sum_to_one(), k_max);
            table = chain_table(chain);
            table.columns.pop_back();  // drop the shares column: pure series
            for (auto& row : table.rows) row.pop_back();
            flags.out.svg_x = 1;
            flags.out.svg_y = 5;
            break;
        }
        case 4: {
            const int k_max = flags.k_max > 0 ? flags.k_max : 100;
            const auto chain = bellseq::threshold_chain(100, BoundKind::pnc,
                                                        PovmFamily::fixed_alpha(0.08), k_max);
            table = chain_table(chain);
            table.columns.pop_back();
            for (auto& row : table.rows) row.pop_back();
            flags.out.svg_x = 1;
            flags.out.svg_y = 5;
            break;
        }
        default:
            throw CLI::ValidationError("figure", "index must be 1..4");
    }
    emit(table, flags.out);
    return 0;
}

int cmd_pom(CommonFlags& flags, bool has_eta) {
    std::optional<PovmParams> povm;
    if (has_eta) povm = PovmParams(flags.etas.empty() ? 1.0 : flags.etas[0], flags.alpha);
    const auto record = bellseq::simulate_game(flags.n, flags.trials, flags.seed, povm);
    DataTable table;
    table.columns = {"n", "trials", "seed", "successes", "empirical_p", "analytic_p"};
    table.add_row({static_cast<std::int64_t>(record.n), record.trials, flags.seed,
                   record.successes, record.empirical_p, record.analytic_p});
    flags.out.spec_info = {{"command", "pom"},
                           {"n", flags.n},
                           {"trials", flags.trials},
                           {"seed", flags.seed}};
    emit(table, flags.out);
    return 0;
}

int cmd_verify(CommonFlags& flags) {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    const auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };

    for (int n = 2; n <= 5; ++n) {
        const auto local = bellseq::local_bound(n);
        const auto local_bf = bellseq::local_bound_bruteforce(n);
        add("local bound vs brute force, n=" + std::to_string(n),
            local == static_cast<std::uint64_t>(local_bf),
            std::to_string(local) + " vs " + std::to_string(local_bf));
        if (n >= 3) {
            const auto pnc = bellseq::pnc_bound(n);
            const auto pnc_bf = bellseq::pnc_bound_bruteforce(n);
            add("pnc bound vs brute force, n=" + std::to_string(n),
                pnc == static_cast<std::uint64_t>(pnc_bf),
                std::to_string(pnc) + " vs " + std::to_string(pnc_bf));
        }
    }

    for (int n = 2; n <= 6; ++n) {
        const double gap =
            std::abs(bellseq::quantum_max_check(n) - bellseq::tsirelson_value(n));
        add("quantum maximum, n=" + std::to_string(n), gap < 1e-9, fmt_g6(gap));
    }

    for (int n = 3; n <= 6; ++n) {
        const auto worst = bellseq::verify_alice_constraints(n);
        add("observable constraints, n=" + std::to_string(n), worst && *worst < 1e-9,
            worst ? fmt_g6(*worst) : "none");
        const double leak = bellseq::verify_parity_obliviousness(n);
        add("parity obliviousness, n=" + std::to_string(n), leak < 1e-9, fmt_g6(leak));
    }

    for (int n = 2; n <= 8; ++n) {
        const auto bobs = bellseq::bob_observables(n);
        double worst = 0.0;
        for (std::size_t a = 0; a < bobs.size(); ++a)
            for (std::size_t b = a + 1; b < bobs.size(); ++b)
                worst = std::max(worst,
                                 (bobs[a] * bobs[b] + bobs[b] * bobs[a]).frobenius_norm());
        add("anticommutation, n=" + std::to_string(n), worst < 1e-9, fmt_g6(worst));
    }

    for (int n = 2; n <= 4; ++n) {
        bellseq::CascadeConfig config;
        config.n = n;
        config.bobs = {PovmParams(0.8, 0.1), PovmParams(0.7, 0.0), PovmParams(0.95, 0.05)};
        const double gap = std::abs(bellseq::bell_value_numeric(config) -
                                    bellseq::bell_value_closed(n, config.bobs));
        add("cascade closed form, n=" + std::to_string(n), gap < 1e-9, fmt_g6(gap));
    }

    for (int n = 2; n <= 6; ++n) {
        const std::vector<double> etas = {0.8, 0.6, 0.9};
        const std::vector<double> ps(etas.size() - 1, 1.0 / n);
        std::vector<PovmParams> params;
        for (double e : etas) params.emplace_back(e, 0.0);
        const double gap = std::abs(bellseq::bell_value_biased_closed(n, etas, ps) -
                                    bellseq::bell_value_closed(n, params));
        add("biased form reduces to unbiased, n=" + std::to_string(n), gap < 1e-12,
            fmt_g6(gap));
    }

    DataTable table;
    table.columns = {"check", "status", "detail"};
    nlohmann::json checks_json = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& check : checks) {
        all_pass = all_pass && check.pass;
        table.add_row({check.name, std::string(check.pass ? "PASS" : "FAIL"), check.detail});
        checks_json.push_back(
            {{"check", check.name}, {"pass", check.pass}, {"detail", check.detail}});
    }
    flags.out.spec_info = {{"command", "verify"}};
    emit(table, flags.out, &checks_json);
    if (!all_pass) throw std::runtime_error("verify: at least one check failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bell-expression family toolkit: bounds, sequential-measurement "
                 "cascades, sharpness thresholds and the multiplexing game"};
    app.require_subcommand(1);
    CommonFlags flags;
    int figure_index = 1;

    auto* bounds = app.add_subcommand("bounds", "classical and quantum bounds");
    bounds->add_option("--n", flags.n)->check(CLI::Range(2, 60));
    bounds->add_option("--n-max", flags.n_max)->check(CLI::Range(2, 60));
    add_output_flags(bounds, flags);

    auto* oracle = app.add_subcommand("oracle", "brute-force bound cross-check");
    oracle->add_option("--n", flags.n)->check(CLI::Range(2, 5));
    add_output_flags(oracle, flags);

    auto* thresholds = app.add_subcommand("thresholds", "critical sharpness chain");
    thresholds->add_option("--n", flags.n)->check(CLI::Range(2, 120));
    thresholds->add_option("--bound", flags.bound)->check(CLI::IsMember({"local", "pnc"}));
    thresholds->add_option("--family", flags.family)
        ->check(CLI::IsMember({"one-param", "sum-to-one", "fixed-alpha"}));
    thresholds->add_option("--alpha", flags.alpha)->check(CLI::Range(0.0, 1.0));
    thresholds->add_option("--k-max", flags.k_max)->check(CLI::Range(1, 100000));
    add_output_flags(thresholds, flags);

    auto* cascade = app.add_subcommand("cascade", "per-Bob quantum values");
    cascade->add_option("--n", flags.n)->check(CLI::Range(2, 8));
    cascade->add_option("--bound", flags.bound)->check(CLI::IsMember({"local", "pnc"}));
    cascade->add_option("--family", flags.family)
        ->check(CLI::IsMember({"one-param", "sum-to-one", "fixed-alpha"}));
    cascade->add_option("--alpha", flags.alpha)->check(CLI::Range(0.0, 1.0));
    cascade->add_option("--k-max", flags.k_max)->check(CLI::Range(1, 8));
    cascade->add_option("--etas", flags.etas, "explicit per-Bob sharpness list")
        ->delimiter(',');
    cascade->add_option("--alphas", flags.alphas, "explicit per-Bob biasedness list")
        ->delimiter(',');
    add_output_flags(cascade, flags);

    auto* biased = app.add_subcommand("biased", "correlated-settings cascade");
    biased->add_option("--n", flags.n)->check(CLI::Range(2, 3));
    biased->add_option("--bias-p", flags.bias_p, "repeat probability")->required();
    biased->add_option("--etas", flags.etas, "per-Bob sharpness list")
        ->delimiter(',')
        ->required();
    add_output_flags(biased, flags);

    auto* figure = app.add_subcommand("figure", "threshold data series 1..4");
    figure->add_option("index", figure_index, "figure number 1..4")
        ->required()
        ->check(CLI::Range(1, 4));
    figure->add_option("--k-max", flags.k_max)->check(CLI::Range(1, 100000));
    add_output_flags(figure, flags);

    auto* pom = app.add_subcommand("pom", "multiplexing game Monte Carlo");
    pom->add_option("--n", flags.n)->check(CLI::Range(2, 6));
    pom->add_option("--trials", flags.trials)->check(CLI::Range(std::uint64_t{1},
                                                                std::uint64_t{100000000}));
    pom->add_option("--seed", flags.seed);
    auto* pom_eta = pom->add_option("--etas", flags.etas, "readout sharpness")
                        ->delimiter(',')
                        ->expected(1);
    pom->add_option("--alpha", flags.alpha, "readout biasedness");
    add_output_flags(pom, flags);

    auto* verify = app.add_subcommand("verify", "run the invariant battery");
    add_output_flags(verify, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(flags);
        if (oracle->parsed()) return cmd_oracle(flags);
        if (thresholds->parsed()) return cmd_thresholds(flags);
        if (cascade->parsed()) return cmd_cascade(flags);
        if (biased->parsed()) return cmd_biased(flags);
        if (figure->parsed()) {
            if (figure->count("--k-max") == 0) flags.k_max = 0;  // per-figure default
            return cmd_figure(figure_index, flags);
        }
        if (pom->parsed()) return cmd_pom(flags, pom_eta->count() > 0);
        if (verify->parsed()) return cmd_verify(flags);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bellseq::infeasible_family_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
