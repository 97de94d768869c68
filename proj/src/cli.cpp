#include "bincs/cli.hpp"

#include "bincs/builder.hpp"
#include "bincs/constructions.hpp"
#include "bincs/error.hpp"
#include "bincs/format.hpp"
#include "bincs/metrics.hpp"
#include "bincs/recovery.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bincs::cli {

namespace {

std::uint64_t parse_uint(std::string_view text) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("not an unsigned integer: '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
        try {
            return parse_uint(env);
        } catch (const std::invalid_argument&) {
        }
    }
    return kDefaultSeed;
}

// "alpha^k" / "a^k" selects a power of the primitive element; a plain
// integer is the element code (the residue when q is prime).
FieldElement parse_beta(const Field& f, const std::string& text) {
    for (std::string_view prefix : {"alpha^", "a^"}) {
        if (text.rfind(prefix, 0) == 0) {
            return f.alpha_pow(static_cast<std::int64_t>(parse_uint(std::string_view(text).substr(prefix.size()))));
        }
    }
    const std::uint64_t code = parse_uint(text);
    if (code >= f.order()) {
        throw Error(ErrorKind::BadParams, "beta code " + text + " outside GF(" + std::to_string(f.order()) + ")");
    }
    return f.element(static_cast<std::uint32_t>(code));
}

std::string mu_fraction(const CoherenceReport& coh) {
    if (auto e = coh.exact()) {
        if (e->num == 0) return "0";
        return std::to_string(e->num) + "/" + std::to_string(e->den);
    }
    return format_fixed(coh.mu, 6);
}

struct ConstructArgs {
    std::string family;
    std::uint32_t q = 0;
    std::string beta = "1";
    std::string out;
};

int cmd_construct(const ConstructArgs& args, std::ostream& out) {
    const Construction family = parse_construction(args.family);
    BaseMatrix base;
    if (family == Construction::Additive) {
        base = build_additive(args.q);
    } else {
        const Field f = Field::create(args.q);
        const FieldElement beta = parse_beta(f, args.beta);
        base = family == Construction::RsLatin ? build_rs_latin(beta) : build_latin(beta);
    }
    if (!args.out.empty()) save_alist_file(args.out, base.h);

    const Index t = verify_p1(base);
    const CoherenceReport coh = coherence(base.h);
    const Girth g = girth(base.h);
    const Index gamma = base.s - t;
    out << "family=" << to_string(base.construction) << '\n'
        << "q=" << base.q << '\n'
        << "beta_log=" << (base.beta_log ? std::to_string(*base.beta_log) : std::string("n/a")) << '\n'
        << "s=" << base.s << '\n'
        << "t=" << t << '\n'
        << "rows=" << base.h.rows() << '\n'
        << "cols=" << base.h.cols() << '\n'
        << "regular=" << gamma << ',' << gamma << '\n'
        << "lambda=" << coh.lambda_max << '\n'
        << "girth=" << g.to_string() << '\n'
        << "girth_gt_4=" << (g.exceeds(4) ? "yes" : "no") << '\n'
        << "mu=" << mu_fraction(coh) << '\n'
        << "mu_value=" << format_fixed(coh.mu, 6) << '\n';
    std::optional<std::uint64_t> k;
    if (auto e = coh.exact(); e && e->num > 0) k = rip_order(*e);
    out << "rip_order=" << (k ? std::to_string(*k) : std::string("n/a")) << '\n';
    if (!args.out.empty()) out << "alist=" << args.out << '\n';
    out << "gamma=" << gamma << " mu=" << mu_fraction(coh);
    if (k) out << " k<" << *k + 1;
    out << '\n';
    return kOk;
}

struct BuildArgs {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::uint32_t max_q = 64;
    std::vector<std::string> families;
    bool exhaustive_beta = false;
    bool no_extension_fields = false;
    std::string out;
    std::string report;
};

int cmd_build(const BuildArgs& args, std::ostream& out) {
    CatalogOptions opts;
    if (!args.families.empty()) {
        opts.additive = opts.rs_latin = opts.latin = false;
        for (const auto& name : args.families) {
            switch (parse_construction(name)) {
                case Construction::Additive: opts.additive = true; break;
                case Construction::RsLatin: opts.rs_latin = true; break;
                case Construction::Latin: opts.latin = true; break;
            }
        }
    }
    opts.exhaustive_beta = args.exhaustive_beta;
    opts.extension_fields = !args.no_extension_fields;
    const FamilyCatalog catalog = enumerate_catalog(args.max_q, opts);
    const MeasurementMatrix built = build_measurement_matrix(args.m, args.n, catalog);
    if (!args.out.empty()) save_alist_file(args.out, built.matrix);
    if (!args.report.empty()) {
        std::ofstream rep(args.report);
        if (!rep) throw Error(ErrorKind::BadParams, "cannot write '" + args.report + "'");
        rep << built.selection.to_key_value();
    }
    out << built.selection.to_text();
    out << built.selection.to_key_value();
    out << "rows=" << built.matrix.rows() << '\n' << "cols=" << built.matrix.cols() << '\n';
    if (!args.out.empty()) out << "alist=" << args.out << '\n';
    return kOk;
}

struct AnalyzeArgs {
    std::string in;
    std::optional<std::uint64_t> s;
    std::uint64_t t = 0;
    std::string format = "kv";
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
    const SparseBinaryMatrix h = load_alist_file(args.in);
    const CoherenceReport coh = coherence(h);
    const Girth g = girth(h);
    std::optional<BlockDeclaration> decl;
    if (args.s) decl = BlockDeclaration{*args.s, args.t};
    const BoundsReport bounds = bounds_report(h, coh, decl);

    if (args.format == "csv") {
        out << "girth," << coherence_csv_header().substr(0, coherence_csv_header().size() - 1) << ','
            << bounds_csv_header();
        std::string c = to_csv_row(coh);
        c.pop_back();
        out << g.to_string() << ',' << c << ',' << to_csv_row(bounds);
    } else {
        out << "rows=" << h.rows() << '\n' << "cols=" << h.cols() << '\n';
        out << to_key_value(coh);
        out << "girth=" << g.to_string() << '\n';
        out << to_key_value(bounds);
    }
    if (coh.lambda_max > 1) {
        out << "WARN lambda=" << coh.lambda_max << " girth=" << g.to_string()
            << ": two columns share more than one row; bounds assuming girth > 4 do not apply\n";
    }
    if (decl) {
        if (!bounds.theorem2_upper) {
            out << "WARN declared s=" << decl->s << " t=" << decl->t << " gives floor(m/s) <= t\n";
        } else if (coh.mu > *bounds.theorem2_upper + 1e-12) {
            out << "WARN mu=" << format_fixed(coh.mu, 6) << " exceeds 1/(floor(m/s)-t)="
                << format_fixed(*bounds.theorem2_upper, 6) << '\n';
        }
    }
    return kOk;
}

struct ExperimentArgs {
    std::string in;
    bool gaussian = false;
    std::optional<Index> m;
    std::optional<Index> n;
    std::string k = "";
    std::uint64_t trials = 1000;
    std::optional<std::uint64_t> seed;
    double threshold = kPerfectRecoveryThreshold;
    std::string csv;
    bool compare_gaussian = false;
    unsigned threads = 0;
    std::string id;
};

int cmd_experiment(const ExperimentArgs& args, std::ostream& out, std::ostream& err) {
    if (args.gaussian == !args.in.empty()) {
        err << "error: give exactly one of --in or --gaussian\n";
        return kUsage;
    }
    std::vector<Index> ks;
    try {
        ks = parse_k_range(args.k);
    } catch (const std::invalid_argument& e) {
        err << "error: --k: " << e.what() << '\n';
        return kUsage;
    }
    const std::uint64_t seed = args.seed.value_or(default_seed());

    RealMatrix a;
    std::string id = args.id;
    if (args.gaussian) {
        if (!args.m || !args.n) {
            err << "error: --gaussian needs --m and --n\n";
            return kUsage;
        }
        if (*args.m < 1 || *args.n < 1) throw Error(ErrorKind::BadShape, "shape must be positive");
        Rng rng = matrix_stream(seed);
        a = gaussian_matrix(*args.m, *args.n, rng);
        if (id.empty()) id = "gaussian";
    } else {
        const SparseBinaryMatrix h = load_alist_file(args.in);
        a = binarize_to_real(h);
        if (id.empty()) id = std::filesystem::path(args.in).stem().string();
    }
    for (Index k : ks) {
        if (k < 1 || k > a.rows()) {
            throw Error(ErrorKind::BadK, "sparsity k=" + std::to_string(k) + " outside [1, " +
                                             std::to_string(a.rows()) + "]");
        }
    }
    ExperimentOptions opts;
    opts.threshold = args.threshold;
    opts.threads = args.threads;
    opts.matrix_id = id;
    std::string csv = run_experiment(a, ks, args.trials, seed, opts).to_csv(true);
    if (args.compare_gaussian && !args.gaussian) {
        Rng rng = matrix_stream(seed);
        const RealMatrix g = gaussian_matrix(a.rows(), a.cols(), rng);
        opts.matrix_id = "gaussian";
        csv += run_experiment(g, ks, args.trials, seed, opts).to_csv(false);
    }
    if (args.csv.empty()) {
        out << csv;
    } else {
        std::ofstream file(args.csv);
        if (!file) throw Error(ErrorKind::BadParams, "cannot write '" + args.csv + "'");
        file << csv;
        out << "csv=" << args.csv << '\n';
    }
    return kOk;
}

}  // namespace

std::vector<Index> parse_k_range(std::string_view text) {
    std::vector<Index> ks;
    if (text.empty()) throw std::invalid_argument("empty sparsity list");
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        std::vector<std::uint64_t> parts;
        std::size_t p = 0;
        while (true) {
            const std::size_t colon = std::min(item.find(':', p), item.size());
            parts.push_back(parse_uint(item.substr(p, colon - p)));
            if (colon == item.size()) break;
            p = colon + 1;
        }
        if (parts.size() > 3) throw std::invalid_argument("too many ':' in '" + std::string(item) + "'");
        if (parts.size() == 1) {
            ks.push_back(static_cast<Index>(parts[0]));
        } else {
            const std::uint64_t step = parts.size() == 3 ? parts[2] : 1;
            if (step == 0) throw std::invalid_argument("step must be positive");
            if (parts[1] < parts[0]) throw std::invalid_argument("stop below start");
            for (std::uint64_t k = parts[0]; k <= parts[1]; k += step) ks.push_back(static_cast<Index>(k));
        }
        pos = comma + 1;
    }
    return ks;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deterministic binary compressed-sensing matrices: construct, build, analyze, experiment",
                 "bincs"};
    app.require_subcommand(1);

    ConstructArgs construct;
    auto* c = app.add_subcommand("construct", "Build one base matrix and report its properties");
    c->add_option("--family", construct.family, "additive | rs-latin | latin")->required();
    c->add_option("--q", construct.q, "Field order (odd prime for additive)")->required();
    c->add_option("--beta", construct.beta, "Nonzero field element: code or alpha^k (default 1)");
    c->add_option("--out", construct.out, "Write the matrix as alist");

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Select a base for m x n, trim it, and write it");
    b->add_option("--m", build.m, "Rows")->required();
    b->add_option("--n", build.n, "Columns")->required();
    b->add_option("--max-q", build.max_q, "Largest field order in the catalog")->capture_default_str();
    b->add_option("--family", build.families, "Restrict the catalog (repeatable)")->delimiter(',');
    b->add_flag("--exhaustive-beta", build.exhaustive_beta, "Catalog every nonzero beta");
    b->add_flag("--no-extension-fields", build.no_extension_fields, "Only prime fields");
    b->add_option("--out", build.out, "Write the matrix as alist");
    b->add_option("--report", build.report, "Write the selection key=value block");

    AnalyzeArgs analyze;
    auto* an = app.add_subcommand("analyze", "Coherence, girth and bounds of an alist matrix");
    an->add_option("in,--in", analyze.in, "alist file")->required();
    an->add_option("--s", analyze.s, "Declared block side for the trimmed-coherence bound");
    an->add_option("--t", analyze.t, "Declared zero blocks per block row")->capture_default_str();
    an->add_option("--format", analyze.format, "kv | csv")->check(CLI::IsMember({"kv", "csv"}));

    ExperimentArgs exp;
    auto* e = app.add_subcommand("experiment", "Monte Carlo OMP recovery rates");
    e->add_option("--in", exp.in, "alist matrix");
    e->add_flag("--gaussian", exp.gaussian, "Use a Gaussian matrix of shape --m x --n");
    e->add_option("--m", exp.m, "Rows for --gaussian");
    e->add_option("--n", exp.n, "Columns for --gaussian");
    e->add_option("--k", exp.k, "Sparsity levels, e.g. 5:50:5")->required();
    e->add_option("--trials", exp.trials, "Monte Carlo trials per k")->capture_default_str();
    e->add_option("--seed", exp.seed, std::string("Master seed (default $") + kSeedEnv + " or 1)");
    e->add_option("--threshold", exp.threshold, "Perfect-recovery relative error")->capture_default_str();
    e->add_option("--csv", exp.csv, "Write CSV here instead of stdout");
    e->add_flag("--compare-gaussian", exp.compare_gaussian, "Also run a same-shape Gaussian matrix");
    e->add_option("--threads", exp.threads, "Worker threads (0 = all cores)");
    e->add_option("--id", exp.id, "Matrix id in the CSV");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("bincs");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& pe) {
        const int code = app.exit(pe, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c->parsed()) return cmd_construct(construct, out);
        if (b->parsed()) return cmd_build(build, out);
        if (an->parsed()) return cmd_analyze(analyze, out);
        if (e->parsed()) return cmd_experiment(exp, out, err);
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return ex.kind() == ErrorKind::MalformedAlist ? kMalformedInput : kInvalid;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace bincs::cli
