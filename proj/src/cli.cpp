#include "pqc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqc/experiments.hpp"
#include "pqc/report_io.hpp"

namespace pqc {

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string circuits = "all";
    std::string widths = "4";
    std::string layers = "1";
    std::size_t pairs = kDefaultPairs;
    int bins = kDefaultBins;
    int t_max = kDefaultTMax;
    int repeats = 3;
    std::uint64_t seed = 7;
    unsigned workers = 1;
    std::string out = "-";
    std::string format = "csv";
    std::string sizes = "100,200,500,1000,2000,5000,10000";
    std::string which;
    double precision = 0.1;
    double confidence = 0.98;
};

// ---- argument decoding ----------------------------------------------------

long parse_int(std::string_view s, const char* what) {
    long v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) throw ConfigError(std::string("bad ") + what + " '" + std::string(s) + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty()) parts.push_back(item);
    return parts;
}

std::pair<int, int> parse_layers(const std::string& spec) {
    const auto dots = spec.find("..");
    const long a = parse_int(spec.substr(0, dots), "layer range");
    const long b = dots == std::string::npos ? a : parse_int(spec.substr(dots + 2), "layer range");
    if (a < 1 || b < a) throw ConfigError("layer range '" + spec + "' must satisfy 1 <= A <= B");
    return {static_cast<int>(a), static_cast<int>(b)};
}

std::vector<int> parse_widths(const std::string& spec) {
    std::vector<int> widths;
    for (const auto& w : split(spec, ',')) {
        const long v = parse_int(w, "width");
        if (v < 1 || v > kMaxQubits)
            throw ConfigError("width " + w + " outside 1.." + std::to_string(kMaxQubits));
        widths.push_back(static_cast<int>(v));
    }
    if (widths.empty()) throw ConfigError("no widths given");
    return widths;
}

std::vector<const CircuitTemplate*> parse_circuits(const std::string& spec) {
    std::vector<const CircuitTemplate*> out;
    const auto ids = spec == "all" ? benchmark_ids() : split(spec, ',');
    for (const auto& id : ids) {
        try {
            out.push_back(&find_template(id));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (out.empty()) throw ConfigError("no circuits given");
    return out;
}

SamplingConfig sampling(const Options& o) {
    if (o.pairs < 1) throw ConfigError("--pairs must be >= 1");
    if (o.bins < 1) throw ConfigError("--bins must be >= 1");
    if (o.repeats < 1) throw ConfigError("--repeats must be >= 1");
    if (o.workers < 1) throw ConfigError("--workers must be >= 1");
    if (o.t_max < 1 || o.t_max > kExportMoments)
        throw ConfigError("--tmax must be in 1.." + std::to_string(kExportMoments));
    if (o.format != "csv" && o.format != "json") throw ConfigError("--format must be csv or json");
    return {o.pairs, o.bins, o.t_max, o.workers};
}

void check_supported(const std::vector<const CircuitTemplate*>& circuits, const std::vector<int>& widths) {
    for (const auto* t : circuits)
        for (int n : widths)
            if (!t->supports_width(n))
                throw ConfigError("circuit '" + t->id + "' does not support n=" + std::to_string(n));
}

// ---- tabular output -------------------------------------------------------

using Cell = std::variant<std::monostate, std::string, long long, double>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

Cell int_cell(auto v) { return static_cast<long long>(v); }

void write_table(std::ostream& os, const Table& table, const std::string& format) {
    if (format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json obj;
            for (std::size_t k = 0; k < row.size(); ++k)
                std::visit(
                    [&](const auto& v) {
                        using V = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<V, std::monostate>)
                            obj[table.columns[k]] = nullptr;
                        else
                            obj[table.columns[k]] = v;
                    },
                    row[k]);
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t k = 0; k < table.columns.size(); ++k) os << (k ? "," : "") << table.columns[k];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) os << ',';
            std::visit(
                [&](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>)
                        os << format_real(v);
                    else if constexpr (std::is_same_v<V, std::string>)
                        os << csv_field(v);
                    else if constexpr (!std::is_same_v<V, std::monostate>)
                        os << v;
                },
                row[k]);
        }
        os << "\n";
    }
}

// Buffer the whole document so a failed run never leaves a partial file.
void emit(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out == "-") {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + o.out + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing '" + o.out + "'");
}

void emit_table(const Options& o, std::ostream& out, const Table& table) {
    std::ostringstream ss;
    write_table(ss, table, o.format);
    emit(o, out, ss.str());
}

// ---- subcommands ----------------------------------------------------------

void cmd_list(const Options& o, std::ostream& out) {
    sampling(o);
    const int n = parse_widths(o.widths).front();
    const int layers = parse_layers(o.layers).first;
    Table t{{"id", "connectivity", "sampler", "n", "L", "n_params", "n_2q", "depth", "description"}, {}};
    for (const auto& tmpl : catalog()) {
        const int w = std::clamp(n, tmpl.min_width, tmpl.max_width);
        const auto c = cost_metrics(tmpl, w, layers);
        t.rows.push_back({tmpl.id, std::string(to_string(tmpl.connectivity)), std::string(to_string(tmpl.sampler)),
                          int_cell(w), int_cell(layers), int_cell(c.num_params), int_cell(c.num_two_qubit_gates),
                          int_cell(c.depth), tmpl.description});
    }
    emit_table(o, out, t);
}

void cmd_run(const Options& o, std::ostream& out) {
    const auto config = sampling(o);
    const auto circuits = parse_circuits(o.circuits);
    const auto widths = parse_widths(o.widths);
    const auto [first, last] = parse_layers(o.layers);
    check_supported(circuits, widths);

    std::vector<DescriptorReport> reports;
    for (const auto* tmpl : circuits)
        for (int n : widths)
            for (int l = first; l <= last; ++l)
                for (auto& r : compute_repeats(*tmpl, n, l, config, o.seed, o.repeats)) reports.push_back(std::move(r));

    std::ostringstream ss;
    if (o.format == "json")
        write_reports_json(ss, reports);
    else
        write_reports_csv(ss, reports);
    emit(o, out, ss.str());
}

void cmd_baseline(const Options& o, std::ostream& out) {
    const auto config = sampling(o);
    Table t{{"n", "dim", "bins", "pairs", "repeats", "seed", "bias_mean", "bias_std"}, {}};
    for (int n : parse_widths(o.widths)) {
        const std::uint64_t dim = std::uint64_t{1} << n;
        const auto b = kl_bias_baseline(dim, config.bins, config.pairs, o.repeats, baseline_stream(o.seed, n));
        t.rows.push_back({int_cell(n), int_cell(dim), int_cell(config.bins), int_cell(config.pairs),
                          int_cell(o.repeats), int_cell(o.seed), b.mean, opt_cell(b.std)});
    }
    emit_table(o, out, t);
}

Table summary_table(const std::vector<SummaryRow>& rows) {
    Table t{{"group", "circuit_id", "n", "L", "repeats", "expr_mean", "expr_std", "ent_mean", "ent_std", "n_params",
             "n_2q", "depth"},
            {}};
    for (const auto& r : rows)
        t.rows.push_back({r.group, r.template_id, int_cell(r.n), int_cell(r.layers), int_cell(r.repeats),
                          r.expr.mean, opt_cell(r.expr.std), r.ent.mean, opt_cell(r.ent.std),
                          int_cell(r.costs.num_params), int_cell(r.costs.num_two_qubit_gates),
                          int_cell(r.costs.depth)});
    return t;
}

void cmd_tables(const Options& o, std::ostream& out) {
    const auto config = sampling(o);
    const int n = parse_widths(o.widths).front();
    if (n < 2) throw ConfigError("comparison tables need n >= 2");
    if (o.which == "crz-crx")
        emit_table(o, out, summary_table(crz_crx_table(n, config, o.seed, o.repeats)));
    else if (o.which == "connectivity")
        emit_table(o, out, summary_table(connectivity_table(n, config, o.seed, o.repeats)));
    else
        throw ConfigError("unknown table '" + o.which + "' (expected crz-crx or connectivity)");
}

void cmd_saturation(const Options& o, std::ostream& out) {
    const auto config = sampling(o);
    const auto circuits = parse_circuits(o.circuits);
    const auto widths = parse_widths(o.widths);
    const auto [first, last] = parse_layers(o.layers);
    check_supported(circuits, widths);

    Table t{{"circuit_id", "n", "L", "n_2q", "expr_mean", "expr_std", "bias"}, {}};
    for (int n : widths) {
        const auto bias = kl_bias_baseline(std::uint64_t{1} << n, config.bins, config.pairs, 5,
                                           baseline_stream(o.seed, n));
        for (const auto* tmpl : circuits)
            for (const auto& r : saturation_series(*tmpl, n, first, last, config, o.seed, o.repeats))
                t.rows.push_back({r.template_id, int_cell(n), int_cell(r.layers), int_cell(r.two_qubit_gates),
                                  r.expr.mean, opt_cell(r.expr.std), bias.mean});
    }
    emit_table(o, out, t);
}

void cmd_convergence(const Options& o, std::ostream& out) {
    const auto config = sampling(o);
    const auto circuits = parse_circuits(o.circuits);
    const auto widths = parse_widths(o.widths);
    const int layers = parse_layers(o.layers).first;
    check_supported(circuits, widths);
    std::vector<std::size_t> sizes;
    for (const auto& s : split(o.sizes, ',')) {
        const long v = parse_int(s, "sample size");
        if (v < 1) throw ConfigError("sample sizes must be >= 1");
        sizes.push_back(static_cast<std::size_t>(v));
    }
    if (sizes.empty()) throw ConfigError("no sample sizes given");

    Table t{{"circuit_id", "n", "L", "pairs", "repeats", "expr_mean", "expr_std", "ent_mean", "ent_std"}, {}};
    for (const auto* tmpl : circuits)
        for (int n : widths)
            for (const auto& p : convergence_scan(*tmpl, n, layers, sizes, o.repeats, config,
                                                  run_stream(o.seed, tmpl->id, n, layers, 0)))
                t.rows.push_back({tmpl->id, int_cell(n), int_cell(layers), int_cell(p.pairs), int_cell(o.repeats),
                                  p.expr.mean, opt_cell(p.expr.std), p.ent.mean, opt_cell(p.ent.std)});
    emit_table(o, out, t);
}

void cmd_plan(const Options& o, std::ostream& out) {
    if (o.format != "csv" && o.format != "json") throw ConfigError("--format must be csv or json");
    std::uint64_t m = 0;
    try {
        m = chebyshev_sample_size(o.precision, o.confidence);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    emit_table(o, out, Table{{"precision", "confidence", "pairs"}, {{o.precision, o.confidence, int_cell(m)}}});
}

// ---- option wiring --------------------------------------------------------

void add_output(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out, "Output path, '-' for standard output");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_sampling(CLI::App* sub, Options& o) {
    sub->add_option("--pairs", o.pairs, "Sampled state pairs per estimate");
    sub->add_option("--bins", o.bins, "Histogram bins on [0,1]");
    sub->add_option("--tmax", o.t_max, "Highest frame-potential moment (1..4)");
    sub->add_option("--repeats", o.repeats, "Independent repeats");
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--workers", o.workers, "Worker threads");
    sub->add_option("--n", o.widths, "Qubit count(s), comma separated");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Expressibility and entangling capability of parameterized quantum circuits", "pqc"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List the template catalog with costs at a sample (n, L)");
    list->add_option("--n", o.widths, "Sample width");
    list->add_option("--layers", o.layers, "Sample layer count");
    add_output(list, o);

    auto* run = app.add_subcommand("run", "Descriptor reports over a (circuit, n, L, repeat) grid");
    run->add_option("--circuits", o.circuits, "Comma-separated ids, or 'all' for c01..c19");
    run->add_option("--layers", o.layers, "Layer count A or range A..B");
    add_sampling(run, o);
    add_output(run, o);

    auto* baseline = app.add_subcommand("baseline", "Finite-sampling KL bias of Haar-vs-Haar fidelities");
    add_sampling(baseline, o);
    add_output(baseline, o);

    auto* tables = app.add_subcommand("tables", "CRZ-vs-CRX or connectivity comparison table");
    tables->add_option("which", o.which, "crz-crx or connectivity")->required();
    add_sampling(tables, o);
    add_output(tables, o);

    auto* saturation = app.add_subcommand("saturation", "Expressibility against two-qubit gate count over layers");
    saturation->add_option("--circuits", o.circuits, "Comma-separated ids, or 'all' for c01..c19");
    saturation->add_option("--layers", o.layers, "Layer range A..B (default 1..10)");
    add_sampling(saturation, o);
    add_output(saturation, o);

    auto* convergence = app.add_subcommand("convergence", "Descriptors against the number of sampled pairs");
    convergence->add_option("--circuits", o.circuits, "Comma-separated ids, or 'all' for c01..c19");
    convergence->add_option("--layers", o.layers, "Layer count");
    convergence->add_option("--sizes", o.sizes, "Comma-separated pair counts");
    add_sampling(convergence, o);
    add_output(convergence, o);

    auto* plan = app.add_subcommand("plan", "Chebyshev sample size for a relative precision and confidence");
    plan->add_option("--precision", o.precision, "Precision k in units of the standard deviation");
    plan->add_option("--confidence", o.confidence, "Confidence level in (0, 1)");
    add_output(plan, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*list) {
            cmd_list(o, out);
        } else if (*run) {
            cmd_run(o, out);
        } else if (*baseline) {
            if (baseline->count("--repeats") == 0) o.repeats = 5;
            cmd_baseline(o, out);
        } else if (*tables) {
            cmd_tables(o, out);
        } else if (*saturation) {
            if (saturation->count("--layers") == 0) o.layers = "1..10";
            cmd_saturation(o, out);
        } else if (*convergence) {
            cmd_convergence(o, out);
        } else if (*plan) {
            cmd_plan(o, out);
        }
    } catch (const ConfigError& e) {
        err << "pqc: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "pqc: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}

}  // namespace pqc
