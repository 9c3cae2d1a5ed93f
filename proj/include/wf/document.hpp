#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wf/cechgysin.hpp"
#include "wf/simp.hpp"
#include "wf/weight.hpp"

namespace wf {

struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GoodCompDocument {
    std::string name;
    GoodCompData data;
};

struct HyperresolutionDocument {
    std::string name;
    int directions = 0;
    std::map<unsigned, std::string> node_refs;
    std::map<std::pair<unsigned, unsigned>, SimplicialMapData> arrows;
};

struct BlowupSquareDocument {
    std::string name;
    std::string variant;  // transverse | contained | matrices
    std::map<std::string, std::string> node_refs;  // W, Wt, Y, Yt
    std::map<std::string, SimplicialMapData> arrows;  // b, a, q, s
    std::optional<BlowupSquareData> matrices;
};

struct TorusQueryDocument {
    std::string name;
    int rank = 0;
    std::vector<std::string> script;
};

using InputDocument =
    std::variant<GoodCompDocument, HyperresolutionDocument, BlowupSquareDocument, TorusQueryDocument>;

struct DocumentSet {
    std::vector<InputDocument> documents;

    const GoodCompDocument* find_good_comp(const std::string& name) const;
    // resolves among loaded documents first, then the built-in corpus
    GoodCompData resolve(const std::string& name) const;
};

// Parses a file holding one document or {"documents": [...]}.  Throws
// DocumentError with a field diagnostic on schema violations.
DocumentSet parse_documents(const std::string& text);
DocumentSet load_documents(const std::string& path);

std::string good_comp_to_json(const std::string& name, const GoodCompData& g);
std::string hyperresolution_to_json(const std::string& name, const HyperresolutionInput& h,
                                    const std::map<unsigned, std::string>& refs);
std::string blowup_square_matrices_to_json(const std::string& name, const BlowupSquareData& b);

HyperresolutionInput materialize(const HyperresolutionDocument& doc, const DocumentSet& set);

// Report documents: deterministic JSON plus text renderings.
struct ReportDocument {
    std::string command;
    std::string input;
    std::vector<CheckItem> checks;
    std::vector<std::size_t> homology;
    std::optional<WeightTable> weight_table;
    std::vector<std::pair<std::string, std::vector<std::tuple<int, int, std::size_t, std::size_t>>>>
        pages;  // (label, entries (p,q,dim,d_rank))
    std::vector<std::pair<std::string, std::string>> extra;  // ordered key/value notes

    bool ok() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string to_json() const;
    std::string to_table() const;
    std::string to_csv() const;
    std::string render(const std::string& format) const;
};

}  // namespace wf
