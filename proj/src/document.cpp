#include "wf/document.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wf/fixtures.hpp"

namespace wf {

using nlohmann::json;

namespace {

unsigned mask_from_key(const std::string& key, int directions) {
    if (int(key.size()) != directions)
        throw DocumentError("node key '" + key + "' does not match the direction count");
    unsigned mask = 0;
    for (int i = 0; i < directions; ++i) {
        if (key[std::size_t(i)] == '1')
            mask |= (1u << i);
        else if (key[std::size_t(i)] != '0')
            throw DocumentError("node key '" + key + "' must be a bit string");
    }
    if (mask == 0) throw DocumentError("node key '" + key + "' names the empty subset");
    return mask;
}

std::string key_from_mask(unsigned mask, int directions) {
    std::string key(std::size_t(directions), '0');
    for (int i = 0; i < directions; ++i)
        if (mask & (1u << i)) key[std::size_t(i)] = '1';
    return key;
}

const json& require(const json& j, const std::string& field) {
    if (!j.contains(field)) throw DocumentError("missing field '" + field + "'");
    return j.at(field);
}

std::vector<std::vector<int>> simplex_list(const json& j, const std::string& field) {
    if (!j.is_array()) throw DocumentError("field '" + field + "' must be an array of simplices");
    std::vector<std::vector<int>> out;
    for (auto& s : j) {
        if (!s.is_array()) throw DocumentError("simplices in '" + field + "' must be arrays");
        std::vector<int> simplex;
        for (auto& v : s) {
            if (!v.is_number_integer()) throw DocumentError("vertex indices must be integers");
            simplex.push_back(v.get<int>());
        }
        out.push_back(std::move(simplex));
    }
    return out;
}

SimplicialMapData vertex_map(const json& j) {
    if (!j.is_array()) throw DocumentError("vertex_map must be an array");
    SimplicialMapData f;
    for (auto& v : j) {
        if (!v.is_number_integer()) throw DocumentError("vertex_map entries must be integers");
        f.vertex_map.push_back(v.get<int>());
    }
    return f;
}

BitMatrix matrix_from_json(const json& j) {
    std::size_t rows = require(j, "rows").get<std::size_t>();
    std::size_t cols = require(j, "cols").get<std::size_t>();
    json data = require(j, "data");
    if (!data.is_array() || data.size() != rows * cols)
        throw DocumentError("matrix data must hold rows*cols entries");
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c)
            if (data.at(i * cols + c).get<int>()) m.set(i, c);
    return m;
}

json matrix_to_json(const BitMatrix& m) {
    json data = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t c = 0; c < m.cols(); ++c) data.push_back(m.get(i, c) ? 1 : 0);
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

InputDocument parse_one(const json& j) {
    std::string kind = require(j, "kind").get<std::string>();
    std::string name = j.value("name", std::string("unnamed"));
    if (kind == "good_compactification") {
        int vertices = require(j, "vertices").get<int>();
        auto maximal = simplex_list(require(j, "maximal_simplices"), "maximal_simplices");
        std::vector<std::string> names;
        std::vector<std::vector<std::vector<int>>> divisors;
        if (j.contains("divisors")) {
            const json& divs = j.at("divisors");
            if (!divs.is_object()) throw DocumentError("'divisors' must be an object");
            for (auto it = divs.begin(); it != divs.end(); ++it) {
                names.push_back(it.key());
                divisors.push_back(simplex_list(it.value(), "divisors:" + it.key()));
            }
        }
        GoodCompDocument doc;
        doc.name = name;
        try {
            doc.data = GoodCompData::build(SimplicialComplex::from_maximal(vertices, maximal),
                                           names, divisors);
        } catch (const std::invalid_argument& e) {
            throw DocumentError(std::string("document '") + name + "': " + e.what());
        }
        return doc;
    }
    if (kind == "hyperresolution") {
        HyperresolutionDocument doc;
        doc.name = name;
        doc.directions = require(j, "directions").get<int>();
        if (doc.directions < 1 || doc.directions > 8)
            throw DocumentError("directions must lie between 1 and 8");
        const json& nodes = require(j, "nodes");
        if (!nodes.is_object()) throw DocumentError("'nodes' must be an object");
        for (auto it = nodes.begin(); it != nodes.end(); ++it)
            doc.node_refs[mask_from_key(it.key(), doc.directions)] = it.value().get<std::string>();
        for (auto& a : require(j, "arrows")) {
            unsigned from = mask_from_key(require(a, "from").get<std::string>(), doc.directions);
            unsigned to = mask_from_key(require(a, "to").get<std::string>(), doc.directions);
            doc.arrows[{from, to}] = vertex_map(require(a, "vertex_map"));
        }
        return doc;
    }
    if (kind == "blowup_square") {
        BlowupSquareDocument doc;
        doc.name = name;
        doc.variant = require(j, "variant").get<std::string>();
        if (doc.variant == "matrices") {
            BlowupSquareData b;
            b.codim = require(j, "codimension").get<int>();
            for (auto& [space, dims] : require(j, "dims").items()) {
                std::vector<std::size_t> d;
                for (auto& x : dims) d.push_back(x.get<std::size_t>());
                b.dims[space] = d;
            }
            for (auto& [mname, entries] : require(j, "maps").items()) {
                for (auto& e : entries) {
                    int k = require(e, "k").get<int>();
                    b.maps[mname][k] = matrix_from_json(e);
                }
            }
            doc.matrices = std::move(b);
        } else if (doc.variant == "transverse" || doc.variant == "contained") {
            for (auto& [key, value] : require(j, "nodes").items())
                doc.node_refs[key] = value.get<std::string>();
            for (auto& [key, value] : require(j, "arrows").items())
                doc.arrows[key] = vertex_map(value);
        } else {
            throw DocumentError("unknown blowup_square variant '" + doc.variant + "'");
        }
        return doc;
    }
    if (kind == "torus_query") {
        TorusQueryDocument doc;
        doc.name = name;
        doc.rank = require(j, "rank").get<int>();
        if (doc.rank < 1 || doc.rank > 16) throw DocumentError("rank must lie between 1 and 16");
        if (j.contains("script"))
            for (auto& line : j.at("script")) doc.script.push_back(line.get<std::string>());
        return doc;
    }
    throw DocumentError("unknown document kind '" + kind + "'");
}

}  // namespace

const GoodCompDocument* DocumentSet::find_good_comp(const std::string& name) const {
    for (auto& doc : documents) {
        if (auto* g = std::get_if<GoodCompDocument>(&doc)) {
            if (g->name == name) return g;
        }
    }
    return nullptr;
}

GoodCompData DocumentSet::resolve(const std::string& name) const {
    if (const GoodCompDocument* g = find_good_comp(name)) return g->data;
    try {
        return fixtures::by_name(name);
    } catch (const std::invalid_argument&) {
        throw DocumentError("reference '" + name + "' resolves to no document or fixture");
    }
}

DocumentSet parse_documents(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError(std::string("invalid document: ") + e.what());
    }
    DocumentSet set;
    try {
        if (j.is_object() && j.contains("documents")) {
            for (auto& d : j.at("documents")) set.documents.push_back(parse_one(d));
        } else if (j.is_array()) {
            for (auto& d : j) set.documents.push_back(parse_one(d));
        } else {
            set.documents.push_back(parse_one(j));
        }
    } catch (const json::exception& e) {
        throw DocumentError(std::string("invalid document: ") + e.what());
    }
    return set;
}

DocumentSet load_documents(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DocumentError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_documents(buf.str());
}

std::string good_comp_to_json(const std::string& name, const GoodCompData& g) {
    json doc;
    doc["kind"] = "good_compactification";
    doc["name"] = name;
    doc["vertices"] = g.K.n_vertices();
    json maximal = json::array();
    for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid) {
        if (g.K.cofaces(gid).size() != 1) continue;
        auto [d, i] = g.K.from_global(gid);
        maximal.push_back(g.K.simplex(d, i));
    }
    doc["maximal_simplices"] = maximal;
    json divisors = json::object();
    for (int b = 0; b < g.divisor_count(); ++b) {
        json list = json::array();
        // maximal simplices of the divisor
        for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid) {
            if (!g.divisor_member[std::size_t(b)][gid]) continue;
            bool maximal_in_divisor = true;
            for (auto cf : g.K.cofaces(gid))
                if (cf != gid && g.divisor_member[std::size_t(b)][cf]) maximal_in_divisor = false;
            if (!maximal_in_divisor) continue;
            auto [d, i] = g.K.from_global(gid);
            list.push_back(g.K.simplex(d, i));
        }
        divisors[g.divisor_names[std::size_t(b)]] = list;
    }
    doc["divisors"] = divisors;
    return doc.dump(2) + "\n";
}

std::string hyperresolution_to_json(const std::string& name, const HyperresolutionInput& h,
                                    const std::map<unsigned, std::string>& refs) {
    json doc;
    doc["kind"] = "hyperresolution";
    doc["name"] = name;
    doc["directions"] = h.directions;
    json nodes = json::object();
    for (auto& [mask, ref] : refs) nodes[key_from_mask(mask, h.directions)] = ref;
    doc["nodes"] = nodes;
    json arrows = json::array();
    for (auto& [key, f] : h.arrows) {
        json a;
        a["from"] = key_from_mask(key.first, h.directions);
        a["to"] = key_from_mask(key.second, h.directions);
        a["vertex_map"] = f.vertex_map;
        arrows.push_back(a);
    }
    doc["arrows"] = arrows;
    return doc.dump(2) + "\n";
}

std::string blowup_square_matrices_to_json(const std::string& name, const BlowupSquareData& b) {
    json doc;
    doc["kind"] = "blowup_square";
    doc["name"] = name;
    doc["variant"] = "matrices";
    doc["codimension"] = b.codim;
    json dims = json::object();
    for (auto& [space, d] : b.dims) dims[space] = d;
    doc["dims"] = dims;
    json maps = json::object();
    for (auto& [mname, entries] : b.maps) {
        json list = json::array();
        for (auto& [k, m] : entries) {
            json e = matrix_to_json(m);
            e["k"] = k;
            list.push_back(e);
        }
        maps[mname] = list;
    }
    doc["maps"] = maps;
    return doc.dump(2) + "\n";
}

HyperresolutionInput materialize(const HyperresolutionDocument& doc, const DocumentSet& set) {
    HyperresolutionInput h;
    h.directions = doc.directions;
    for (auto& [mask, ref] : doc.node_refs) h.nodes[mask] = set.resolve(ref);
    h.arrows = doc.arrows;
    return h;
}

std::string ReportDocument::to_json() const {
    json doc;
    doc["kind"] = "report";
    doc["command"] = command;
    doc["input"] = input;
    json checklist = json::array();
    for (auto& c : checks)
        checklist.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    doc["checks"] = checklist;
    if (!homology.empty()) doc["homology"] = homology;
    if (weight_table) {
        json table = json::object();
        for (int k = weight_table->kmin; k <= weight_table->kmax; ++k) {
            json row = json::array();
            for (int p = weight_table->pmin; p <= 0; ++p)
                row.push_back(json::array({p, weight_table->w(k, p)}));
            table[std::to_string(k)] = row;
        }
        doc["weight_table"] = table;
    }
    if (!pages.empty()) {
        json pj = json::object();
        for (auto& [label, entries] : pages) {
            json list = json::array();
            for (auto& [p, q, dim, rank] : entries)
                list.push_back(json::array({p, q, dim, rank}));
            pj[label] = list;
        }
        doc["pages"] = pj;
    }
    for (auto& [key, value] : extra) doc[key] = value;
    doc["pass"] = ok();
    return doc.dump(2) + "\n";
}

std::string ReportDocument::to_table() const {
    std::ostringstream os;
    os << "command: " << command << "\ninput: " << input << "\n";
    for (auto& [key, value] : extra) os << key << ": " << value << "\n";
    if (!homology.empty()) {
        os << "homology:";
        for (auto d : homology) os << " " << d;
        os << "\n";
    }
    if (weight_table) {
        os << "weight table (rows: degree k; columns: level p, cumulative dims)\n";
        for (int k = weight_table->kmin; k <= weight_table->kmax; ++k) {
            os << "  k=" << k << ":";
            for (int p = weight_table->pmin; p <= 0; ++p)
                os << "  W[" << p << "]=" << weight_table->w(k, p);
            os << "\n";
        }
    }
    for (auto& [label, entries] : pages) {
        os << "page " << label << " (p, q, dim, d-rank)\n";
        for (auto& [p, q, dim, rank] : entries)
            os << "  (" << p << "," << q << "): " << dim << " " << rank << "\n";
    }
    for (auto& c : checks)
        os << (c.pass ? "pass " : "FAIL ") << c.name << (c.detail.empty() ? "" : " [" + c.detail + "]")
           << "\n";
    os << (ok() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string ReportDocument::to_csv() const {
    std::ostringstream os;
    for (auto& c : checks)
        os << "check," << c.name << "," << (c.pass ? 1 : 0) << "," << c.detail << "\n";
    for (std::size_t k = 0; k < homology.size(); ++k) os << "homology," << k << "," << homology[k] << "\n";
    if (weight_table) {
        for (int k = weight_table->kmin; k <= weight_table->kmax; ++k)
            for (int p = weight_table->pmin; p <= 0; ++p)
                os << "weight," << k << "," << p << "," << weight_table->w(k, p) << "\n";
    }
    for (auto& [label, entries] : pages)
        for (auto& [p, q, dim, rank] : entries)
            os << "page," << label << "," << p << "," << q << "," << dim << "," << rank << "\n";
    return os.str();
}

std::string ReportDocument::render(const std::string& format) const {
    if (format == "structured") return to_json();
    if (format == "csv") return to_csv();
    return to_table();
}

}  // namespace wf
