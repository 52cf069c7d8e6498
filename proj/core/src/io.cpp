#include "qfl/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace qfl::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

const Json& field(const Json& j, const char* key, std::string_view where) {
    if (!j.is_object() || !j.contains(key)) fail(std::string(where) + ": missing \"" + key + "\"");
    return j.at(key);
}

std::string string_field(const Json& j, const char* key, std::string_view where) {
    const Json& v = field(j, key, where);
    if (!v.is_string()) fail(std::string(where) + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
}

std::size_t size_value(const Json& v, std::string_view what) {
    if (!v.is_number_unsigned()) fail(std::string(what) + " must be a non-negative integer");
    return v.get<std::size_t>();
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, std::string_view where) {
    if (!j.is_object()) fail(std::string(where) + " must be an object");
    for (const auto& [k, v] : j.items()) {
        (void)v;
        if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; }))
            fail(std::string(where) + ": unknown key \"" + k + "\"");
    }
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(path.string() + ": " + e.what());
    }
}

Rational rational_from_json(const Json& j, std::string_view what) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            fail(std::string(what) + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(Integer(j.get<long long>()));
    fail(std::string(what) + " must be a rational string \"n/d\" or an integer");
}

Json to_json(const Rational& r) { return qfl::to_string(r); }

namespace {

TNorm tnorm_from_json(const Json& j) {
    if (j.contains("preset")) {
        const std::string preset = string_field(j, "preset", "t-norm");
        if (preset == "godel") return TNorm::godel();
        if (preset == "product") return TNorm::product();
        if (preset == "lukasiewicz") return TNorm::lukasiewicz();
        fail("unknown t-norm preset \"" + preset + "\"");
    }
    const Json& blocks = field(j, "blocks", "t-norm");
    if (!blocks.is_array()) fail("t-norm: \"blocks\" must be an array");
    std::vector<Block> out;
    for (const Json& b : blocks) {
        only_keys(b, {"lo", "hi", "kind"}, "block");
        BlockKind kind;
        try {
            kind = parse_block_kind(string_field(b, "kind", "block"));
        } catch (const Error& e) {
            fail(e.what());
        }
        out.push_back({rational_from_json(field(b, "lo", "block"), "block lo"),
                       rational_from_json(field(b, "hi", "block"), "block hi"), kind});
    }
    return TNorm::build(std::move(out));
}

std::vector<Rational> labels_from_json(const Json& j) {
    const Json& e = field(j, "elements", "quantale");
    if (!e.is_array()) fail("quantale: \"elements\" must be an array");
    std::vector<Rational> out;
    for (const Json& v : e) out.push_back(rational_from_json(v, "element"));
    return out;
}

std::size_t label_index(const std::vector<Rational>& labels, const Json& v, std::string_view what) {
    const Rational r = rational_from_json(v, what);
    auto it = std::find(labels.begin(), labels.end(), r);
    if (it == labels.end()) fail(std::string(what) + ": " + pretty(r) + " is not an element of the carrier");
    return static_cast<std::size_t>(it - labels.begin());
}

std::vector<std::vector<std::size_t>> table_from_json(const std::vector<Rational>& labels, const Json& j,
                                                      const char* key) {
    const Json& t = field(j, key, "quantale");
    if (!t.is_array() || t.size() != labels.size()) fail(std::string("quantale: \"") + key + "\" must be a square table");
    std::vector<std::vector<std::size_t>> out;
    for (const Json& row : t) {
        if (!row.is_array() || row.size() != labels.size())
            fail(std::string("quantale: \"") + key + "\" must be a square table");
        std::vector<std::size_t> r;
        for (const Json& v : row) r.push_back(label_index(labels, v, key));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

QuantaleDef quantale_from_json(const Json& j) {
    if (!j.is_object()) fail("quantale definition must be an object");
    const std::string kind = string_field(j, "kind", "quantale");
    const std::string name = j.contains("name") ? string_field(j, "name", "quantale") : kind;
    if (kind == "tnorm") {
        only_keys(j, {"kind", "name", "preset", "blocks"}, "t-norm");
        return tnorm_from_json(j);
    }
    if (kind == "finite") {
        only_keys(j, {"kind", "name", "preset"}, "finite quantale");
        const std::string preset = string_field(j, "preset", "finite quantale");
        for (FiniteQuantale& q : FiniteQuantale::shipped_chains())
            if (q.name() == preset) return q;
        fail("unknown finite quantale preset \"" + preset + "\"");
    }
    if (kind == "chain") {
        only_keys(j, {"kind", "name", "elements", "unit", "tensor", "tnorm"}, "chain");
        const std::vector<Rational> labels = labels_from_json(j);
        if (j.contains("tnorm")) return FiniteQuantale::from_tnorm(name, tnorm_from_json(j.at("tnorm")), labels);
        return FiniteQuantale::chain(name, labels, table_from_json(labels, j, "tensor"),
                                     label_index(labels, field(j, "unit", "chain"), "unit"));
    }
    if (kind == "lattice") {
        only_keys(j, {"kind", "name", "elements", "unit", "tensor", "join", "meet"}, "lattice");
        const std::vector<Rational> labels = labels_from_json(j);
        return FiniteQuantale::lattice(name, labels, table_from_json(labels, j, "join"),
                                       table_from_json(labels, j, "meet"), table_from_json(labels, j, "tensor"),
                                       label_index(labels, field(j, "unit", "lattice"), "unit"));
    }
    fail("unknown quantale kind \"" + kind + "\"");
}

QuantaleDef load_quantale(const std::filesystem::path& path) { return quantale_from_json(read_json_file(path)); }

std::string quantale_name(const QuantaleDef& def) {
    if (const auto* q = std::get_if<FiniteQuantale>(&def)) return q->name();
    return describe(std::get<TNorm>(def));
}

Json to_json(const TNorm& t, std::string_view name) {
    Json j;
    j["kind"] = "tnorm";
    j["name"] = name;
    Json blocks = Json::array();
    for (const Block& b : t.blocks())
        blocks.push_back({{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}, {"kind", qfl::to_string(b.kind)}});
    j["blocks"] = blocks;
    return j;
}

Json to_json(const FiniteQuantale& q) {
    Json j;
    j["kind"] = q.is_chain() ? "chain" : "lattice";
    j["name"] = q.name();
    Json labels = Json::array();
    for (Elem a : q.elements()) labels.push_back(to_json(q.label(a)));
    j["elements"] = labels;
    j["unit"] = to_json(q.label(q.unit()));
    auto table = [&](auto op) {
        Json t = Json::array();
        for (Elem a : q.elements()) {
            Json row = Json::array();
            for (Elem b : q.elements()) row.push_back(to_json(q.label(op(a, b))));
            t.push_back(row);
        }
        return t;
    };
    if (!q.is_chain()) {
        j["join"] = table([&](Elem a, Elem b) { return q.join(a, b); });
        j["meet"] = table([&](Elem a, Elem b) { return q.meet(a, b); });
    }
    j["tensor"] = table([&](Elem a, Elem b) { return q.tensor(a, b); });
    return j;
}

Json qfunction_to_json(const FiniteQuantale& q, const QFunction<Elem>& f) {
    Json j = Json::array();
    for (Elem v : f) j.push_back(to_json(q.label(v)));
    return j;
}

QFunction<Elem> qfunction_from_json(const FiniteQuantale& q, const Json& j, std::size_t domain) {
    if (!j.is_array() || j.size() != domain)
        fail("function must list " + std::to_string(domain) + " values");
    QFunction<Elem> out;
    for (const Json& v : j) {
        const Rational r = rational_from_json(v, "function value");
        const auto e = q.find(r);
        if (!e) fail("value " + pretty(r) + " is not in the carrier of " + q.name());
        out.push_back(*e);
    }
    return out;
}

Json to_json(const SemifilterTable& t) {
    Json j;
    j["domain"] = t.domain_size();
    j["carrier"] = t.quantale().name();
    Json entries = Json::array();
    for (Code c = 0; c < t.values().size(); ++c)
        entries.push_back(Json::array({qfunction_to_json(t.quantale(), t.space().function(c)),
                                       to_json(t.quantale().label(t(c)))}));
    j["entries"] = entries;
    return j;
}

SemifilterTable semifilter_from_json(const Json& j, const SpacePtr& space) {
    only_keys(j, {"domain", "carrier", "entries", "basis"}, "semifilter");
    const FiniteQuantale& q = space->quantale();
    if (size_value(field(j, "domain", "semifilter"), "domain") != space->domain_size())
        fail("semifilter domain does not match: expected " + std::to_string(space->domain_size()));
    if (j.contains("carrier") && string_field(j, "carrier", "semifilter") != q.name())
        fail("semifilter carrier \"" + j.at("carrier").get<std::string>() + "\" does not match " + q.name());
    if (j.contains("basis") == j.contains("entries")) fail("semifilter needs exactly one of \"entries\" or \"basis\"");
    if (j.contains("basis")) {
        std::vector<Code> codes;
        for (const Json& f : j.at("basis")) codes.push_back(space->code(qfunction_from_json(q, f, space->domain_size())));
        // The upper set of the basis, meet-closed together with k_X.
        std::vector<QFunction<Elem>> raw;
        for (Code c : codes) raw.push_back(space->function(c));
        return lambda_of(space, PrefilterBasis<FiniteQuantale>::normalize(q, space->domain_size(), raw));
    }
    const Json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != space->size())
        fail("semifilter must list all " + std::to_string(space->size()) + " functions");
    std::vector<Elem> values(space->size());
    std::vector<char> seen(space->size(), 0);
    for (const Json& e : entries) {
        if (!e.is_array() || e.size() != 2) fail("semifilter entry must be [function, value]");
        const Code c = space->code(qfunction_from_json(q, e[0], space->domain_size()));
        if (seen[c]) fail("semifilter lists a function twice");
        seen[c] = 1;
        const Rational r = rational_from_json(e[1], "semifilter value");
        const auto v = q.find(r);
        if (!v) fail("value " + pretty(r) + " is not in the carrier of " + q.name());
        values[c] = *v;
    }
    return SemifilterTable(space, std::move(values));
}

CatalogConfig catalog_from_json(const Json& j) {
    only_keys(j, {"indicator_starts", "constants", "depth", "max_size"}, "witness_catalog");
    CatalogConfig c;
    if (j.contains("indicator_starts")) {
        c.indicator_starts.clear();
        for (const Json& v : j.at("indicator_starts")) c.indicator_starts.push_back(size_value(v, "indicator start"));
    }
    if (j.contains("constants"))
        for (const Json& v : j.at("constants")) c.extra_constants.push_back(rational_from_json(v, "catalog constant"));
    if (j.contains("depth")) c.depth = size_value(j.at("depth"), "catalog depth");
    if (j.contains("max_size")) c.max_size = size_value(j.at("max_size"), "catalog max_size");
    return c;
}

Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir) {
    only_keys(j,
              {"name", "quantale", "variant", "sets", "maps", "seeds", "budgets", "naturality", "oracle",
               "witness_catalog"},
              "scenario");
    Scenario s;
    const Json& qj = field(j, "quantale", "scenario");
    if (qj.is_string()) {
        std::filesystem::path p = qj.get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        s.quantale = load_quantale(p);
    } else {
        s.quantale = quantale_from_json(qj);
    }
    if (j.contains("variant")) s.variant = parse_variant(string_field(j, "variant", "scenario"));
    s.laws.variant = s.variant;
    if (j.contains("sets")) {
        const Json& sets = j.at("sets");
        only_keys(sets, {"max_size"}, "sets");
        if (sets.contains("max_size")) {
            s.laws.max_set_size = size_value(sets.at("max_size"), "sets.max_size");
            s.naturality.max_set_size = s.laws.max_set_size;
        }
    }
    if (j.contains("seeds")) {
        const Json& seeds = j.at("seeds");
        only_keys(seeds, {"laws", "naturality"}, "seeds");
        if (seeds.contains("laws")) s.laws.seed = seeds.at("laws").get<std::uint64_t>();
        if (seeds.contains("naturality")) s.naturality.seed = seeds.at("naturality").get<std::uint64_t>();
    }
    if (j.contains("budgets")) {
        const Json& b = j.at("budgets");
        only_keys(b, {"scenarios", "work", "naturality_samples", "max_basis"}, "budgets");
        if (b.contains("scenarios")) s.laws.scenarios = size_value(b.at("scenarios"), "budgets.scenarios");
        if (b.contains("work")) s.laws.work_budget = size_value(b.at("work"), "budgets.work");
        if (b.contains("naturality_samples"))
            s.naturality.samples = size_value(b.at("naturality_samples"), "budgets.naturality_samples");
        if (b.contains("max_basis")) {
            s.laws.max_basis = size_value(b.at("max_basis"), "budgets.max_basis");
            s.naturality.max_basis = s.laws.max_basis;
        }
    }
    if (j.contains("naturality")) s.run_naturality = j.at("naturality").get<bool>();
    if (j.contains("maps")) {
        for (const Json& m : j.at("maps")) {
            only_keys(m, {"name", "domain", "codomain", "values"}, "map");
            ExplicitMap em;
            em.name = m.contains("name") ? string_field(m, "name", "map") : "map";
            em.domain = size_value(field(m, "domain", "map"), "map domain");
            em.codomain = size_value(field(m, "codomain", "map"), "map codomain");
            const Json& values = field(m, "values", "map");
            if (!values.is_array() || values.size() != em.domain)
                fail("map \"" + em.name + "\" must list one semifilter per domain point");
            for (const Json& v : values) em.values.push_back(v);
            s.maps.push_back(std::move(em));
        }
    }
    if (j.contains("oracle")) {
        const Json& o = j.at("oracle");
        if (o.is_string()) {
            s.oracle = o.get<std::string>();
        } else {
            only_keys(o, {"kind", "max_size"}, "oracle");
            s.oracle = string_field(o, "kind", "oracle");
            if (o.contains("max_size")) s.oracle_max_size = size_value(o.at("max_size"), "oracle.max_size");
        }
        if (*s.oracle != "classical") fail("unknown oracle \"" + *s.oracle + "\"");
    }
    if (j.contains("witness_catalog")) s.witness_catalog = catalog_from_json(j.at("witness_catalog"));
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    Scenario s = scenario_from_json(read_json_file(path), path.parent_path());
    s.source = path;
    return s;
}

}  // namespace qfl::io
