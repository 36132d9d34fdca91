/**
 * JSON interchange for fans, polytopes, complexes, and reports, plus the
 * file-backed cache of subcomplex cohomology tables.
 *
 * Emission always uses ordered keys and canonical integer rendering so that
 * identical inputs produce byte-identical files.
 */

#ifndef KN_IO_HPP
#define KN_IO_HPP

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "kn/cohomology.hpp"
#include "kn/fan.hpp"
#include "kn/polytope.hpp"
#include "kn/simplicial.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace kn::io {

using Json = nlohmann::ordered_json;

/// {"n": int, "rays": [[int,...],...], "maximal_cones": [[int,...],...]}
Fan parse_fan_json(const std::string& text);

/// {"n": int, "A": [[int,...],...], "b": [int,...]}
HPolytope parse_polytope_json(const std::string& text);

/// {"m": int, "maximal_faces": [[int,...],...]}
SimplicialComplex parse_complex_json(const std::string& text);
Json complex_json(const SimplicialComplex& K);

Json abelian_group_json(const AbelianGroup& g);

/// Report schema: betti, groups, bigraded, and optionally generators.
Json report_json(const CohomologyReport& report, bool include_generators,
                 const std::vector<int>& degree_filter = {});

Json quadric_json(const QuadricSystem& q);

/// Canonical serialization of any Json value (2-space indent, '\n' EOL).
std::string dump_canonical(const Json& j);

/// FNV-1a hash of the canonical complex serialization, as fixed-width hex.
std::string complex_hash(const SimplicialComplex& K);

/**
 * File-backed reduced-cohomology cache, one JSON file per complex keyed by
 * its canonical hash.  Entries accumulate in memory and are written back
 * atomically (temp file + rename) by flush()/destructor.  Thread-safe.
 */
class FileSubcomplexCache : public SubcomplexCache {
  public:
    FileSubcomplexCache(std::string directory, const SimplicialComplex& K);
    ~FileSubcomplexCache() override;

    std::optional<CohomologyTable> lookup(Bitset I) override;
    void store(Bitset I, const CohomologyTable& t) override;
    void flush();

  private:
    std::string path_;
    std::mutex mutex_;
    std::map<Bitset, CohomologyTable> entries_;
    bool dirty_ = false;
};

} // namespace kn::io

#endif // KN_IO_HPP
