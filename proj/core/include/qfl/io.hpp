#pragma once

#include "qfl/counterexample.hpp"
#include "qfl/monad.hpp"
#include "qfl/semifilter.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qfl::io {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);

// Rationals are written as "n/d"; integers are also accepted on input.
Rational rational_from_json(const Json& j, std::string_view what);
Json to_json(const Rational& r);

// Quantale files:
//   {"kind": "tnorm", "name": ..., "preset": "godel" | "product" | "lukasiewicz"}
//   {"kind": "tnorm", "name": ..., "blocks": [{"lo": "1/4", "hi": "1/2", "kind": "LUKASIEWICZ"}]}
//   {"kind": "finite", "preset": "boolean" | "godel3" | "mv3" | "chain5"}
//   {"kind": "chain", "name": ..., "elements": [...], "unit": ..., "tensor": [[...]]}
//   {"kind": "chain", "name": ..., "elements": [...], "tnorm": {blocks or preset}}
//   {"kind": "lattice", "name": ..., "elements": [...], "unit": ..., "join": ..., "meet": ..., "tensor": ...}
// Table entries are element labels.
using QuantaleDef = std::variant<TNorm, FiniteQuantale>;

QuantaleDef quantale_from_json(const Json& j);
QuantaleDef load_quantale(const std::filesystem::path& path);
std::string quantale_name(const QuantaleDef& def);

Json to_json(const TNorm& t, std::string_view name);
Json to_json(const FiniteQuantale& q);

Json qfunction_to_json(const FiniteQuantale& q, const QFunction<Elem>& f);
QFunction<Elem> qfunction_from_json(const FiniteQuantale& q, const Json& j, std::size_t domain);

// {"domain": n, "carrier": name, "entries": [[[values...], value], ...]} in
// canonical order; on input "basis": [[values...], ...] is accepted instead,
// meaning Lambda of that basis.
Json to_json(const SemifilterTable& t);
SemifilterTable semifilter_from_json(const Json& j, const SpacePtr& space);

struct ExplicitMap {
    std::string name;
    std::size_t domain = 0;
    std::size_t codomain = 0;
    std::vector<Json> values;
};

struct Scenario {
    std::filesystem::path source;
    QuantaleDef quantale;
    Variant variant = Variant::Plain;
    LawConfig laws;
    NaturalityConfig naturality;
    bool run_naturality = true;
    std::vector<ExplicitMap> maps;
    std::optional<std::string> oracle;
    std::size_t oracle_max_size = 3;
    std::optional<CatalogConfig> witness_catalog;
};

// Relative quantale paths resolve against the scenario file's directory.
Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

CatalogConfig catalog_from_json(const Json& j);

}  // namespace qfl::io
