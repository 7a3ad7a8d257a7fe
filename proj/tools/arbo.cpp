#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arbo/arbo.hpp"

using namespace arbo;

namespace {

struct family_params {
    std::string name;
    node_id n = 0;
    int k = 2;          // bipath-cycles: cycle count
    int d = 4;          // fatnode: extra edges
    std::int64_t m = 0; // random: edge count, 0 = 2n
    std::uint64_t seed = 1;
};

edge_list make_family(const family_params& f)
{
    if (f.n < 1) throw std::invalid_argument("family size must be >= 1");
    if (f.name == "complete") return gen::complete(f.n);
    if (f.name == "bicycle") return gen::bicycle(f.n);
    if (f.name == "bipath-cycles") return gen::bipath_cycles(f.n, f.k);
    if (f.name == "fatnode") return gen::fatnode(f.n, f.d);
    if (f.name == "random") return gen::random_graph(f.n, f.m > 0 ? f.m : 2 * static_cast<std::int64_t>(f.n), f.seed);
    throw std::invalid_argument("unknown family: " + f.name);
}

edge_list to_edge_list(const rooted_digraph& g)
{
    edge_list el{g.node_count(), g.root(), {}};
    for (edge_id e = 1; e <= g.slot_bound(); ++e)
        if (g.is_linked(e)) el.edges.emplace_back(g.tail(e), g.head(e));
    return el;
}

// Options shared by the commands that take one graph.
struct input_options {
    std::string path;
    family_params family;
    std::optional<node_id> root;

    void attach(CLI::App* app, bool positional = true)
    {
        if (positional) app->add_option("input", path, "edge-list file, '-' for stdin");
        app->add_option("--family", family.name, "generator instead of a file")
            ->check(CLI::IsMember({"complete", "bicycle", "bipath-cycles", "random", "fatnode"}));
        app->add_option("--n", family.n, "generator size");
        app->add_option("--k", family.k, "bipath-cycles cycle count");
        app->add_option("--d", family.d, "fatnode extra edges");
        app->add_option("--m", family.m, "random edge count");
        app->add_option("--seed", family.seed, "random seed");
        app->add_option("--root", root, "override the root");
    }

    edge_list load() const
    {
        const bool has_file = !path.empty(), has_family = !family.name.empty();
        if (has_file == has_family) throw std::invalid_argument("give exactly one of an input file or --family");
        edge_list el;
        if (has_family) {
            el = make_family(family);
        } else if (path == "-") {
            el = to_edge_list(parse_graph(std::cin));
        } else {
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("cannot open " + path);
            el = to_edge_list(parse_graph(in));
        }
        if (root) {
            if (*root < 1 || *root > el.n) throw std::invalid_argument("root out of range");
            el.root = *root;
        }
        return el;
    }
};

struct tuning_options {
    enumerator_config cfg;

    void attach(CLI::App* app)
    {
        decomposition_thresholds& t = cfg.thresholds;
        app->add_option("--c", cfg.c, "batch budget constant")->check(CLI::PositiveNumber);
        app->add_option("--threshold-c-heads", t.c_heads);
        app->add_option("--threshold-leaves", t.leaves);
        app->add_option("--threshold-splits", t.splits);
        app->add_option("--threshold-back-splits", t.back_splits);
        app->add_option("--threshold-c-size", t.c_size);
        app->add_option("--threshold-chains", t.chains);
        app->add_option("--threshold-large-groups", t.large_groups);
        app->add_option("--threshold-small-c", t.small_c);
        app->add_option("--thick-cutoff", cfg.thick_cutoff, "graphs with at most this many nodes take the thick branch");
        app->add_flag("--paranoid", cfg.paranoid, "extra internal consistency checks");
    }
};

bool log_enabled()
{
    const char* v = std::getenv("ARBO_LOG");
    return v && *v && std::string(v) != "0";
}

void log_report(const instrumentation_report& r)
{
    if (!log_enabled()) return;
    std::cerr << "arbo: thin_calls=" << r.thin_calls << " thick_calls=" << r.thick_calls
              << " singleton_fragments=" << r.singleton_fragments << " batched_fragments=" << r.batched_fragments
              << " first_report_work=" << r.first_report_work << " depth=" << r.per_depth.size()
              << (r.stopped ? " stopped" : "") << '\n';
}

void write_summary(std::ostream& out, const instrumentation_report& r)
{
    out << "# N=" << r.reports << " work=" << r.total_work << " max_delay=" << r.max_delay
        << " peak=" << r.peak_retained << '\n';
}

int cmd_enumerate(const input_options& in, const tuning_options& tune, bool full, std::optional<std::uint64_t> limit)
{
    edge_list el = in.load();
    rooted_digraph g = el.build();
    std::ostringstream buf;
    text_delta_sink deltas(buf);
    full_text_sink expanded(buf, static_cast<edge_id>(el.edges.size()));
    delta_sink& base = full ? static_cast<delta_sink&>(expanded) : deltas;
    std::optional<limit_sink> lim;
    if (limit) lim.emplace(base, *limit);
    instrumentation_report r = enumerate(g, lim ? static_cast<delta_sink&>(*lim) : base, tune.cfg);
    std::cout << buf.str();
    write_summary(std::cout, r);
    log_report(r);
    return 0;
}

int cmd_count(const input_options& in, const tuning_options& tune, bool det)
{
    rooted_digraph g = in.load().build();
    counting_sink s;
    instrumentation_report r = enumerate(g, s, tune.cfg);
    std::cout << r.reports << '\n';
    if (det) std::cout << "# det=" << count_arborescences(g) << '\n';
    write_summary(std::cout, r);
    log_report(r);
    return 0;
}

struct verify_counters {
    std::uint64_t graphs = 0, brute = 0, det = 0;
    std::uint64_t brute_fail = 0, det_fail = 0;
    std::optional<edge_list> worst;  // smallest failing input

    void failed(const edge_list& el)
    {
        if (!worst || el.n + el.edges.size() < worst->n + worst->edges.size()) worst = el;
    }
};

// One graph against the chosen oracles; a fault duplicates the first report.
void verify_one(const edge_list& el, const std::string& oracle, const enumerator_config& cfg, bool fault,
                verify_counters& vc)
{
    rooted_digraph g = el.build();
    ++vc.graphs;
    std::vector<delta_event> events;
    std::uint64_t reports = 0;
    bool has_arb = detail::reaches_all(g);
    if (has_arb) {
        recording_sink sink;
        reports = enumerate(g, sink, cfg).reports;
        events = std::move(sink.events);
        if (fault) {
            auto it = std::find(events.begin(), events.end(), delta_event{delta_kind::report});
            if (it != events.end()) {
                events.insert(it, delta_event{delta_kind::report});
                ++reports;
            }
        }
    }
    if (oracle == "brute" || oracle == "both") {
        ++vc.brute;
        bool ok = false;
        try {
            canonical_arb_set want = brute_force_enumerate(g);
            ok = has_arb ? replay_and_validate(g, events) == want : want.empty();
        } catch (const oracle_error&) {
            ok = false;
        }
        if (!ok) {
            ++vc.brute_fail;
            vc.failed(el);
        }
    }
    if (oracle == "det" || oracle == "both") {
        ++vc.det;
        if (big_count(reports) != count_arborescences(g)) {
            ++vc.det_fail;
            vc.failed(el);
        }
    }
}

int cmd_verify(const input_options& in, const tuning_options& tune, const std::string& oracle, bool fault,
               std::uint64_t random_count, node_id max_n)
{
    verify_counters vc;
    if (random_count > 0) {
        if (!in.path.empty() || !in.family.name.empty()) throw std::invalid_argument("--random excludes other inputs");
        if (max_n < 2) throw std::invalid_argument("--max-n must be >= 2");
        gen::rng r(in.family.seed);
        for (std::uint64_t i = 0; i < random_count; ++i) {
            node_id n = 2 + static_cast<node_id>(r.below(max_n - 1));
            std::int64_t m = n - 1 + static_cast<std::int64_t>(r.below(2 * n));
            verify_one(gen::random_graph(n, m, r.below(1ull << 62)), oracle, tune.cfg, fault, vc);
        }
    } else {
        verify_one(in.load(), oracle, tune.cfg, fault, vc);
    }
    auto line = [&](const char* name, std::uint64_t runs, std::uint64_t fails) {
        if (runs == 0) return;
        std::cout << (fails ? "FAIL " : "PASS ") << name << ' ' << runs - fails << '/' << runs << '\n';
    };
    line("brute", vc.brute, vc.brute_fail);
    line("det", vc.det, vc.det_fail);
    if (vc.worst) {
        std::cout << "# counterexample\n" << vc.worst->text();
        return 1;
    }
    return 0;
}

std::vector<node_id> parse_sizes(const std::string& s)
{
    std::vector<node_id> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto dots = tok.find("..");
        if (dots == std::string::npos) {
            out.push_back(static_cast<node_id>(std::stol(tok)));
            continue;
        }
        node_id lo = static_cast<node_id>(std::stol(tok.substr(0, dots)));
        node_id hi = static_cast<node_id>(std::stol(tok.substr(dots + 2)));
        for (node_id v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty --sizes");
    return out;
}

int cmd_bench(const family_params& base, const std::string& sizes, const tuning_options& tune)
{
    std::cout << "family,n,m,N,work,work/(n+m+N),max_delay/m,peak/(n+m)\n";
    std::cout << std::fixed << std::setprecision(4);
    for (node_id n : parse_sizes(sizes)) {
        family_params f = base;
        f.n = n;
        rooted_digraph g = make_family(f).build();
        const double nn = g.node_count(), mm = static_cast<double>(g.edge_count());
        counting_sink s;
        instrumentation_report r = enumerate(g, s, tune.cfg);
        const double big_n = static_cast<double>(r.reports);
        std::cout << f.name << ',' << g.node_count() << ',' << g.edge_count() << ',' << r.reports << ','
                  << r.total_work << ',' << r.total_work / (nn + mm + big_n) << ','
                  << r.max_delay / std::max(1.0, mm) << ',' << r.peak_retained / (nn + mm) << '\n';
        log_report(r);
    }
    return 0;
}

int cmd_gen(family_params f, const std::vector<std::int64_t>& params)
{
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (params.size() < lo || params.size() > hi)
            throw std::invalid_argument("wrong number of parameters for " + f.name);
    };
    if (f.name == "random") {
        need(1, 2);
        if (params.size() == 2) f.m = params[1];
    } else if (f.name == "bipath-cycles") {
        need(1, 2);
        if (params.size() == 2) f.k = static_cast<int>(params[1]);
    } else if (f.name == "fatnode") {
        need(1, 2);
        if (params.size() == 2) f.d = static_cast<int>(params[1]);
    } else {
        need(1, 1);
    }
    f.n = static_cast<node_id>(params[0]);
    std::cout << make_family(f).text();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Enumerate the arborescences of a rooted multigraph as a delta stream."};
    app.require_subcommand(1);

    input_options en_in, co_in, ve_in;
    tuning_options en_t, co_t, ve_t, be_t;

    CLI::App* en = app.add_subcommand("enumerate", "emit the delta stream and a summary line");
    en_in.attach(en);
    en_t.attach(en);
    bool full = false;
    std::optional<std::uint64_t> limit;
    auto* full_opt = en->add_flag("--full", full, "one 'F id ...' line per arborescence");
    en->add_flag("--deltas", "delta lines (default)")->excludes(full_opt);
    en->add_option("--limit", limit, "stop after this many reports")->check(CLI::PositiveNumber);

    CLI::App* co = app.add_subcommand("count", "count arborescences with the enumerator");
    co_in.attach(co);
    co_t.attach(co);
    bool det = false;
    co->add_flag("--det", det, "also print the determinant count");

    CLI::App* ve = app.add_subcommand("verify", "check the enumerator against the oracles");
    ve_in.attach(ve);
    ve_t.attach(ve);
    std::string oracle = "both";
    bool fault = false;
    std::uint64_t random_count = 0;
    node_id max_n = 8;
    ve->add_option("--oracle", oracle)->check(CLI::IsMember({"brute", "det", "both"}));
    ve->add_flag("--inject-fault", fault, "corrupt the stream to show detection");
    ve->add_option("--random", random_count, "check this many random graphs instead of one input");
    ve->add_option("--max-n", max_n, "node cap for --random");

    CLI::App* be = app.add_subcommand("bench", "CSV of instrumented ratios over a size range");
    family_params be_f;
    std::string sizes;
    be->add_option("--family", be_f.name)
        ->required()
        ->check(CLI::IsMember({"complete", "bicycle", "bipath-cycles", "random", "fatnode"}));
    be->add_option("--sizes", sizes, "comma list, ranges as a..b")->required();
    be->add_option("--k", be_f.k);
    be->add_option("--d", be_f.d);
    be->add_option("--m", be_f.m);
    be->add_option("--seed", be_f.seed);
    be_t.attach(be);

    CLI::App* gn = app.add_subcommand("gen", "write a generated edge-list document");
    family_params gn_f;
    std::vector<std::int64_t> params;
    gn->add_option("family", gn_f.name)
        ->required()
        ->check(CLI::IsMember({"complete", "bicycle", "bipath-cycles", "random", "fatnode"}));
    gn->add_option("params", params, "n, then m (random), k (bipath-cycles) or d (fatnode)")->required();
    gn->add_option("--seed", gn_f.seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*en) return cmd_enumerate(en_in, en_t, full, limit);
        if (*co) return cmd_count(co_in, co_t, det);
        if (*ve) return cmd_verify(ve_in, ve_t, oracle, fault, random_count, max_n);
        if (*be) return cmd_bench(be_f, sizes, be_t);
        if (*gn) return cmd_gen(gn_f, params);
    } catch (const std::exception& ex) {
        std::cerr << "arbo: " << ex.what() << '\n';
        return 2;
    }
    return 0;
}
