#include "kn/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "kn/errors.hpp"

namespace kn::io {

namespace {

long long to_ll(const Int& x) {
    if (x > std::numeric_limits<long long>::max() || x < std::numeric_limits<long long>::min())
        throw validation_error(ValidationKind::BadInput, "integer too large for JSON emission");
    return x.convert_to<long long>();
}

Json parse_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw validation_error(ValidationKind::BadInput, "malformed JSON");
    return j;
}

/// Runs a parse body, converting JSON access errors into input errors.
template <typename F>
auto guarded(F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const Json::exception& e) {
        throw validation_error(ValidationKind::BadInput, std::string("bad input: ") + e.what());
    }
}

std::vector<std::vector<int>> int_lists(const Json& j, const char* field) {
    if (!j.is_array())
        throw validation_error(ValidationKind::BadInput, std::string(field) + " must be an array");
    std::vector<std::vector<int>> out;
    for (const auto& row : j) {
        if (!row.is_array())
            throw validation_error(ValidationKind::BadInput,
                                   std::string(field) + " entries must be arrays");
        std::vector<int> r;
        for (const auto& x : row) {
            if (!x.is_number_integer())
                throw validation_error(ValidationKind::BadInput,
                                       std::string(field) + " entries must be integers");
            r.push_back(x.get<int>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

const Json& require(const Json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw validation_error(ValidationKind::BadInput, std::string("missing field ") + field);
    return *it;
}

} // namespace

Fan parse_fan_json(const std::string& text) {
    return guarded([&] {
    const Json j = parse_text(text);
    if (!j.is_object()) throw validation_error(ValidationKind::BadInput, "fan file must be an object");
    const int n = require(j, "n").get<int>();
    std::vector<IntVector> rays;
    for (const auto& row : int_lists(require(j, "rays"), "rays")) {
        IntVector r;
        for (int x : row) r.push_back(Int(x));
        rays.push_back(std::move(r));
    }
    const auto cones = int_lists(require(j, "maximal_cones"), "maximal_cones");
    return Fan::validate(n, std::move(rays), cones);
    });
}

HPolytope parse_polytope_json(const std::string& text) {
    return guarded([&] {
    const Json j = parse_text(text);
    if (!j.is_object())
        throw validation_error(ValidationKind::BadInput, "polytope file must be an object");
    const int n = require(j, "n").get<int>();
    const auto rows = int_lists(require(j, "A"), "A");
    const Json& bj = require(j, "b");
    if (!bj.is_array())
        throw validation_error(ValidationKind::BadInput, "b must be an array");
    IntegerMatrix A(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw validation_error(ValidationKind::BadInput, "rows of A must have length n");
        for (int jx = 0; jx < n; ++jx) A(i, jx) = rows[i][jx];
    }
    IntVector b;
    for (const auto& x : bj) {
        if (!x.is_number_integer())
            throw validation_error(ValidationKind::BadInput, "b entries must be integers");
        b.push_back(Int(x.get<long long>()));
    }
    return HPolytope::from_inequalities(std::move(A), std::move(b));
    });
}

SimplicialComplex parse_complex_json(const std::string& text) {
    return guarded([&] {
    const Json j = parse_text(text);
    if (!j.is_object())
        throw validation_error(ValidationKind::BadInput, "complex file must be an object");
    const int m = require(j, "m").get<int>();
    const auto faces = int_lists(require(j, "maximal_faces"), "maximal_faces");
    return SimplicialComplex::from_maximal_faces(m, faces);
    });
}

Json complex_json(const SimplicialComplex& K) {
    Json j = Json::object();
    j["m"] = K.vertex_count();
    Json faces = Json::array();
    for (Bitset f : K.maximal_faces()) faces.push_back(set_to_vertices(f));
    j["maximal_faces"] = std::move(faces);
    return j;
}

Json abelian_group_json(const AbelianGroup& g) {
    Json j = Json::object();
    j["free_rank"] = g.free_rank;
    Json t = Json::array();
    for (const Int& x : g.torsion) t.push_back(to_ll(x));
    j["torsion"] = std::move(t);
    return j;
}

Json report_json(const CohomologyReport& report, bool include_generators,
                 const std::vector<int>& degree_filter) {
    Json j = Json::object();
    j["betti"] = report.betti();
    Json groups = Json::array();
    for (std::size_t k = 0; k < report.by_degree.size(); ++k) {
        if (report.by_degree[k].is_trivial() && k != 0) continue;
        Json g = Json::object();
        g["degree"] = k;
        g["free_rank"] = report.by_degree[k].free_rank;
        Json t = Json::array();
        for (const Int& x : report.by_degree[k].torsion) t.push_back(to_ll(x));
        g["torsion"] = std::move(t);
        groups.push_back(std::move(g));
    }
    j["groups"] = std::move(groups);
    Json big = Json::array();
    for (const auto& e : report.bigraded) {
        Json b = Json::object();
        b["i"] = e.i;
        b["2j"] = e.j2;
        b["rank"] = e.rank;
        big.push_back(std::move(b));
    }
    j["bigraded"] = std::move(big);
    if (include_generators) {
        Json gens = Json::array();
        for (const auto& g : report.generators) {
            if (!degree_filter.empty() &&
                std::find(degree_filter.begin(), degree_filter.end(), g.degree) ==
                    degree_filter.end())
                continue;
            Json e = Json::object();
            e["degree"] = g.degree;
            e["cocycle"] = cochain_text(g.rep);
            e["multidegree"] = set_to_vertices(g.multidegree);
            if (g.order != 0) e["order"] = to_ll(g.order);
            gens.push_back(std::move(e));
        }
        j["generators"] = std::move(gens);
    }
    return j;
}

Json quadric_json(const QuadricSystem& q) {
    Json j = Json::object();
    Json c = Json::array();
    for (std::size_t r = 0; r < q.C.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t k = 0; k < q.C.cols(); ++k) row.push_back(to_ll(q.C(r, k)));
        c.push_back(std::move(row));
    }
    j["C"] = std::move(c);
    Json b = Json::array();
    for (const Int& x : q.b) b.push_back(to_ll(x));
    j["b"] = std::move(b);
    j["permutation"] = q.permutation;
    j["template_form"] = q.template_form;
    Json target = Json::array();
    for (const Int& x : q.moment_target()) target.push_back(to_ll(x));
    j["moment_target"] = std::move(target);
    Json eqs = Json::array();
    for (std::size_t r = 0; r < q.C.rows(); ++r) eqs.push_back(q.equation_text(r));
    j["equations"] = std::move(eqs);
    return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string complex_hash(const SimplicialComplex& K) {
    const std::string s = K.canonical_string();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

FileSubcomplexCache::FileSubcomplexCache(std::string directory, const SimplicialComplex& K) {
    std::filesystem::create_directories(directory);
    path_ = (std::filesystem::path(directory) / ("cx-" + complex_hash(K) + ".json")).string();
    std::ifstream in(path_);
    if (!in) return;
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("entries")) return;
    for (const auto& [key, table] : j["entries"].items()) {
        CohomologyTable t;
        try {
            const Bitset I = std::stoull(key);
            for (const auto& [deg, grp] : table.items()) {
                AbelianGroup g;
                g.free_rank = grp.at("free_rank").get<std::size_t>();
                for (const auto& x : grp.at("torsion")) g.torsion.push_back(Int(x.get<long long>()));
                t.set(std::stoi(deg), std::move(g));
            }
            entries_[I] = std::move(t);
        } catch (...) {
            entries_.clear();
            return; // corrupt cache files are ignored wholesale
        }
    }
}

FileSubcomplexCache::~FileSubcomplexCache() {
    try {
        flush();
    } catch (...) {
    }
}

std::optional<CohomologyTable> FileSubcomplexCache::lookup(Bitset I) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(I);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void FileSubcomplexCache::store(Bitset I, const CohomologyTable& t) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (entries_.emplace(I, t).second) dirty_ = true;
}

void FileSubcomplexCache::flush() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!dirty_) return;
    Json j = Json::object();
    Json entries = Json::object();
    for (const auto& [I, table] : entries_) {
        Json t = Json::object();
        for (const auto& [deg, g] : table.groups) {
            Json grp = Json::object();
            grp["free_rank"] = g.free_rank;
            Json tor = Json::array();
            for (const Int& x : g.torsion) tor.push_back(to_ll(x));
            grp["torsion"] = std::move(tor);
            t[std::to_string(deg)] = std::move(grp);
        }
        entries[std::to_string(I)] = std::move(t);
    }
    j["entries"] = std::move(entries);
    const std::string tmp = path_ + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << dump_canonical(j);
    }
    std::filesystem::rename(tmp, path_);
    dirty_ = false;
}

} // namespace kn::io
