/**
 * knset: command-line driver.
 *
 * Subcommands: validate | betti | ring | quadrics | massey.  Inputs are fan
 * or polytope JSON files; reports are printed as text or canonical JSON.
 * Exit codes: 0 success, 2 parse/validation failure, 3 hypothesis violation
 * (non-simple polytope, wrong input kind), 4 bad cocycle argument.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kn/cohomology.hpp"
#include "kn/errors.hpp"
#include "kn/fan.hpp"
#include "kn/io.hpp"
#include "kn/polytope.hpp"

namespace {

using kn::io::Json;

struct Options {
    std::string input;
    std::string kind = "polytope"; // fan | polytope
    std::string format = "text";   // text | json
    double tol = 1e-9;
    double sv_cut = 1e-7;
    std::uint64_t seed = 20200901;
    int jobs = 1;
};

struct LoadedInput {
    std::optional<kn::Fan> fan;
    std::optional<kn::HPolytope> polytope;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw kn::validation_error(kn::ValidationKind::BadInput, "cannot open input file " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

LoadedInput load(const Options& opt) {
    const std::string text = slurp(opt.input);
    LoadedInput in;
    if (opt.kind == "fan")
        in.fan = kn::io::parse_fan_json(text);
    else if (opt.kind == "polytope")
        in.polytope = kn::io::parse_polytope_json(text);
    else
        throw kn::validation_error(kn::ValidationKind::BadInput,
                                   "--kind must be 'fan' or 'polytope'");
    return in;
}

/// The complex driving the cohomology pipeline for either input kind.
kn::SimplicialComplex complex_of(const LoadedInput& in) {
    if (in.fan) return in.fan->underlying_complex();
    return in.polytope->facet_nerve(); // throws NotSimple
}

std::unique_ptr<kn::io::FileSubcomplexCache> open_cache(const kn::SimplicialComplex& K) {
    const char* env = std::getenv("KNSET_CACHE_DIR");
    std::string dir = env ? env : ".knset-cache";
    if (dir.empty()) return nullptr;
    try {
        return std::make_unique<kn::io::FileSubcomplexCache>(dir, K);
    } catch (...) {
        return nullptr; // cache is best-effort only
    }
}

void emit(const Options& opt, const Json& j, const std::string& text) {
    if (opt.format == "json")
        std::cout << kn::io::dump_canonical(j);
    else
        std::cout << text;
}

std::string betti_text(const std::vector<std::size_t>& b) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
    os << ")";
    return os.str();
}

int cmd_validate(const Options& opt) {
    const LoadedInput in = load(opt);
    Json j = Json::object();
    std::ostringstream text;
    if (in.fan) {
        const kn::Fan& f = *in.fan;
        j["kind"] = "fan";
        j["m"] = f.m();
        j["n"] = f.n();
        j["simplicial"] = true;
        const bool regular = f.is_regular();
        const bool complete = f.is_complete(opt.seed);
        j["regular"] = regular;
        j["complete"] = complete;
        j["rays_primitivized"] = f.primitivized();
        text << "kind: fan\nm: " << f.m() << "\nn: " << f.n() << "\nsimplicial: true\nregular: "
             << (regular ? "true" : "false") << "\ncomplete: " << (complete ? "true" : "false")
             << "\n";
        try {
            const kn::AbelianGroup g = f.group_structure();
            j["group"] = kn::io::abelian_group_json(g);
            text << "G: rank " << g.free_rank;
            if (!g.torsion.empty()) {
                text << ", torsion [";
                for (std::size_t i = 0; i < g.torsion.size(); ++i)
                    text << (i ? "," : "") << g.torsion[i];
                text << "]";
            }
            text << "\n";
        } catch (const kn::validation_error&) {
            j["rays_span"] = false;
            text << "G: undefined (rays do not span)\n";
        }
    } else {
        const kn::HPolytope& P = *in.polytope;
        j["kind"] = "polytope";
        j["m"] = P.m();
        j["n"] = P.n();
        const bool simple = P.is_simple();
        j["simple"] = simple;
        j["vertices"] = P.vertices().size();
        text << "kind: polytope\nm: " << P.m() << "\nn: " << P.n() << "\nsimple: "
             << (simple ? "true" : "false") << "\nvertices: " << P.vertices().size() << "\n";
        if (simple) {
            const kn::Fan f = P.normal_fan();
            const bool regular = f.is_regular();
            const bool complete = f.is_complete(opt.seed);
            j["regular"] = regular;
            j["complete"] = complete;
            const kn::AbelianGroup g = f.group_structure();
            j["group"] = kn::io::abelian_group_json(g);
            text << "normal fan regular: " << (regular ? "true" : "false")
                 << "\nnormal fan complete: " << (complete ? "true" : "false") << "\nG: rank "
                 << g.free_rank;
            if (!g.torsion.empty()) {
                text << ", torsion [";
                for (std::size_t i = 0; i < g.torsion.size(); ++i)
                    text << (i ? "," : "") << g.torsion[i];
                text << "]";
            }
            text << "\n";
        }
    }
    emit(opt, j, text.str());
    return 0;
}

kn::CohomologyReport run_hochster(const Options& opt, const kn::SimplicialComplex& K) {
    auto cache = open_cache(K);
    kn::HochsterOptions h;
    h.jobs = opt.jobs;
    h.cache = cache.get();
    kn::CohomologyReport report = kn::hochster_cohomology(K, h);
    if (cache) cache->flush();
    return report;
}

void append_report_text(std::ostringstream& text, const kn::CohomologyReport& report) {
    text << "betti: " << betti_text(report.betti()) << "\n";
    for (std::size_t k = 0; k < report.by_degree.size(); ++k)
        if (!report.by_degree[k].torsion.empty()) {
            text << "H^" << k << " torsion: [";
            const auto& t = report.by_degree[k].torsion;
            for (std::size_t i = 0; i < t.size(); ++i) text << (i ? "," : "") << t[i];
            text << "]\n";
        }
    text << "bigraded:";
    if (report.bigraded.empty()) text << " (none)";
    text << "\n";
    for (const auto& e : report.bigraded)
        text << "  b^{-" << e.i << "," << e.j2 << "} = " << e.rank << "\n";
}

std::optional<bool> completeness_of(const LoadedInput& in, const Options& opt) {
    if (in.fan) return in.fan->is_complete(opt.seed);
    return in.polytope->normal_fan().is_complete(opt.seed);
}

int cmd_betti(const Options& opt) {
    const LoadedInput in = load(opt);
    const kn::SimplicialComplex K = complex_of(in);
    const kn::CohomologyReport report = run_hochster(opt, K);
    Json j = kn::io::report_json(report, false);
    std::ostringstream text;
    append_report_text(text, report);
    const std::optional<bool> complete = completeness_of(in, opt);
    if (complete && *complete) {
        const bool pd = kn::poincare_duality_check(
            report, K.vertex_count(), in.fan ? in.fan->n() : in.polytope->n());
        j["poincare_duality"] = pd;
        text << "poincare_duality: " << (pd ? "true" : "false") << "\n";
    }
    emit(opt, j, text.str());
    return 0;
}

int cmd_ring(const Options& opt, const std::vector<int>& degrees) {
    const LoadedInput in = load(opt);
    const kn::SimplicialComplex K = complex_of(in);
    kn::CohomologyReport report = run_hochster(opt, K);
    kn::CohomologyRing ring(K);
    ring.attach_generators(report);

    Json j = kn::io::report_json(report, true, degrees);
    std::ostringstream text;
    append_report_text(text, report);
    text << "generators:\n";
    std::vector<const kn::GeneratorInfo*> listed;
    for (const auto& g : report.generators) {
        if (!degrees.empty() &&
            std::find(degrees.begin(), degrees.end(), g.degree) == degrees.end())
            continue;
        listed.push_back(&g);
        text << "  deg " << g.degree << ": " << kn::cochain_text(g.rep);
        if (g.order != 0) text << "  (order " << g.order << ")";
        text << "\n";
    }

    // pairwise product table when two degrees are requested
    if (degrees.size() >= 2) {
        std::vector<const kn::GeneratorInfo*> left, right;
        for (const auto& g : report.generators) {
            if (g.degree == degrees[0]) left.push_back(&g);
            if (g.degree == degrees[1]) right.push_back(&g);
        }
        Json table = Json::array();
        text << "products (deg " << degrees[0] << " x deg " << degrees[1] << "):\n";
        for (const auto* x : left)
            for (const auto* y : right) {
                kn::CohomologyClass cx{x->rep, x->degree}, cy{y->rep, y->degree};
                const kn::CohomologyClass prod = ring.cup(cx, cy);
                Json row = Json::object();
                row["x"] = kn::cochain_text(x->rep);
                row["y"] = kn::cochain_text(y->rep);
                row["product"] = kn::cochain_text(prod.rep);
                table.push_back(std::move(row));
                text << "  [" << kn::cochain_text(x->rep) << "] * [" << kn::cochain_text(y->rep)
                     << "] = " << (prod.rep.empty() ? "0" : "[" + kn::cochain_text(prod.rep) + "]")
                     << "\n";
            }
        j["products"] = std::move(table);
    }
    emit(opt, j, text.str());
    return 0;
}

int cmd_quadrics(const Options& opt, const std::vector<int>& facet_order, bool check,
                 int samples) {
    const LoadedInput in = load(opt);
    if (!in.polytope)
        throw kn::validation_error(kn::ValidationKind::NotSimple,
                                   "the quadrics command needs a polytope input");
    const kn::HPolytope& P = *in.polytope;
    std::optional<std::vector<int>> order;
    if (!facet_order.empty()) order = facet_order;
    const kn::QuadricSystem q = P.quadric_system(order);

    Json j = kn::io::quadric_json(q);
    std::ostringstream text;
    text << "C (" << q.C.rows() << "x" << q.C.cols() << "):\n";
    for (std::size_t r = 0; r < q.C.rows(); ++r) {
        text << " ";
        for (std::size_t k = 0; k < q.C.cols(); ++k) text << " " << q.C(r, k);
        text << "\n";
    }
    text << "permutation:";
    for (int p : q.permutation) text << " " << p;
    text << "\nmoment_target: (";
    const kn::IntVector target = q.moment_target();
    for (std::size_t i = 0; i < target.size(); ++i) text << (i ? "," : "") << target[i];
    text << ")\nequations:\n";
    for (std::size_t r = 0; r < q.C.rows(); ++r) text << "  " << q.equation_text(r) << "\n";

    if (check) {
        const auto pts = P.sample_on_Z(samples, opt.seed, q);
        double max_resid = 0.0;
        int full_rank = 0;
        for (const auto& pt : pts) {
            for (double r : pt.residuals) max_resid = std::max(max_resid, std::abs(r));
            if (kn::jacobian_rank_check(pt, q, opt.tol, opt.sv_cut)) ++full_rank;
        }
        Json c = Json::object();
        c["samples"] = samples;
        c["max_residual"] = max_resid;
        c["max_residual_ok"] = max_resid < opt.tol;
        c["jacobian_full_rank"] = full_rank;
        j["check"] = std::move(c);
        text << "check: max residual " << max_resid << (max_resid < opt.tol ? " < " : " >= ")
             << opt.tol << ", rank " << q.C.rows() << "/" << q.C.rows() << " at " << full_rank
             << "/" << samples << " points\n";
    }
    emit(opt, j, text.str());
    return 0;
}

int cmd_massey(const Options& opt, const std::vector<std::string>& cocycles) {
    const LoadedInput in = load(opt);
    const kn::SimplicialComplex K = complex_of(in);
    kn::CohomologyRing ring(K);

    std::vector<kn::CohomologyClass> cls;
    for (const std::string& s : cocycles) {
        kn::Cochain c;
        try {
            c = kn::parse_cochain(K, s);
        } catch (const kn::validation_error& e) {
            std::cerr << "error: '" << s << "': " << e.what() << "\n";
            return 4;
        }
        const auto deg = kn::cochain_degree(c);
        if (!deg) {
            std::cerr << "error: '" << s << "' is zero or not degree-homogeneous\n";
            return 4;
        }
        if (!ring.is_cocycle(c)) {
            std::cerr << "error: '" << s << "' is not a cocycle\n";
            return 4;
        }
        cls.push_back(kn::CohomologyClass{std::move(c), *deg});
    }

    const auto res = ring.massey(cls[0], cls[1], cls[2]);
    Json j = Json::object();
    std::ostringstream text;
    j["defined"] = res.defined;
    if (!res.defined) {
        j["failing_pair"] = res.failing_pair == 1 ? "ab" : "bc";
        text << "defined: false (pairwise product " << (res.failing_pair == 1 ? "ab" : "bc")
             << " is nonzero in cohomology)\n";
    } else {
        j["degree"] = res.representative.degree;
        j["representative"] = kn::cochain_text(res.representative.rep);
        j["trivial"] = res.trivial;
        j["witness_e"] = kn::cochain_text(res.witness_e);
        j["witness_f"] = kn::cochain_text(res.witness_f);
        text << "defined: true\nrepresentative: " << kn::cochain_text(res.representative.rep)
             << "\ntrivial: " << (res.trivial ? "true" : "false")
             << "\nwitness e: " << kn::cochain_text(res.witness_e)
             << "\nwitness f: " << kn::cochain_text(res.witness_f) << "\n";
    }
    emit(opt, j, text.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"toric Kempf-Ness set toolkit: quadric presentations and integer cohomology "
                 "of moment-angle complexes"};
    app.require_subcommand(1);

    app.add_option("--input", opt.input, "input JSON file")->required();
    app.add_option("--kind", opt.kind, "input kind: fan | polytope")
        ->check(CLI::IsMember({"fan", "polytope"}));
    app.add_option("--format", opt.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--tol", opt.tol, "floating-point residual tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--sv-cut", opt.sv_cut, "relative singular-value cutoff")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for all pseudo-random draws");
    app.add_option("--jobs", opt.jobs, "worker threads for the subset sweep");

    auto* validate = app.add_subcommand("validate", "validate the input and print its invariants");
    auto* betti = app.add_subcommand("betti", "Betti vector, torsion, bigraded table");
    auto* ring = app.add_subcommand("ring", "cohomology generators and products");
    std::vector<int> degrees;
    ring->add_option("--degree", degrees, "restrict generator listing to these degrees");
    auto* quadrics = app.add_subcommand("quadrics", "quadric presentation of the lifted polytope");
    std::vector<int> facet_order;
    bool check = false;
    int samples = 1000;
    quadrics->add_option("--facet-order", facet_order, "explicit facet permutation")->delimiter(',');
    quadrics->add_flag("--check", check, "sample points and verify residuals and Jacobian rank");
    quadrics->add_option("--samples", samples, "number of sampled points for --check");
    auto* massey = app.add_subcommand("massey", "triple Massey product of three cocycles");
    std::vector<std::string> cocycles;
    massey->add_option("cocycles", cocycles, "three cocycle expressions, e.g. u_1v_4")
        ->expected(3);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // flag errors are input errors; --help is success
    }

    try {
        if (validate->parsed()) return cmd_validate(opt);
        if (betti->parsed()) return cmd_betti(opt);
        if (ring->parsed()) return cmd_ring(opt, degrees);
        if (quadrics->parsed()) return cmd_quadrics(opt, facet_order, check, samples);
        if (massey->parsed()) return cmd_massey(opt, cocycles);
    } catch (const kn::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == kn::ValidationKind::NotSimple ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
