#include "wf/clirun.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wf/document.hpp"
#include "wf/fixtures.hpp"
#include "wf/torus.hpp"

namespace wf {

namespace {

struct CommonOpts {
    std::string input;
    std::string format = "table";
    std::string compare;
    int subdivide = 0;
    bool emit_pages = false;
};

// explicit subdivisions, then bounded retries when the crossing counts fail
GoodCompData prepare(GoodCompData g, int subdivide, ReportDocument& rep) {
    for (int i = 0; i < subdivide; ++i) g = barycentric_subdivide(g).g;
    int retries = 0;
    while (!nc_check(g).ok() && retries < 2) {
        g = barycentric_subdivide(g).g;
        ++retries;
    }
    if (retries > 0)
        rep.extra.push_back({"auto_subdivisions", std::to_string(retries)});
    return g;
}

GoodCompData first_good_comp(const DocumentSet& set, const std::string& name_hint) {
    if (!name_hint.empty()) {
        for (auto& doc : set.documents)
            if (auto* g = std::get_if<GoodCompDocument>(&doc))
                if (g->name == name_hint) return g->data;
        return set.resolve(name_hint);
    }
    for (auto& doc : set.documents)
        if (auto* g = std::get_if<GoodCompDocument>(&doc)) return g->data;
    throw DocumentError("no good_compactification document in the input");
}

void append_table_pages(ReportDocument& rep, const std::string& label, const SpectralSequence& ss) {
    for (int r = 1; r <= ss.max_page; ++r)
        rep.pages.push_back({label + ":r=" + std::to_string(r), ss.page(r)});
}

int finish(const ReportDocument& rep, const CommonOpts& opt, std::ostream& out) {
    out << rep.render(opt.format);
    return rep.ok() ? 0 : 1;
}

int cmd_validate(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "validate";
    rep.input = opt.input;
    bool any = false;
    for (auto& doc : set.documents) {
        if (auto* g = std::get_if<GoodCompDocument>(&doc)) {
            any = true;
            GoodCompData data = prepare(g->data, opt.subdivide, rep);
            Report val = validate_good_comp(data);
            Report nc = nc_check(data);
            for (auto& item : val.items)
                rep.checks.push_back({g->name + ":" + item.name, item.pass, item.detail});
            for (auto& item : nc.items)
                rep.checks.push_back({g->name + ":" + item.name, item.pass, item.detail});
        }
    }
    if (!any) throw DocumentError("no good_compactification document to validate");
    return finish(rep, opt, out);
}

int cmd_corner(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "corner";
    rep.input = opt.input;
    GoodCompData g = prepare(first_good_comp(set, ""), opt.subdivide, rep);
    CutComplex cut = build_cut_complex(g);
    FilteredComplex fc = corner_filtration(cut);
    rep.homology = homology(cut.cx).dims();
    std::ostringstream cells;
    for (int k = 0; k <= cut.cx.max_degree; ++k) cells << (k ? " " : "") << cut.cx.dim(k);
    rep.extra.push_back({"cells_per_degree", cells.str()});
    Report val = validate_filtration(fc);
    rep.checks.insert(rep.checks.end(), val.items.begin(), val.items.end());
    Report pi = pi_pushforward_exactness(cut, fc);
    rep.checks.insert(rep.checks.end(), pi.items.begin(), pi.items.end());
    Report local = local_model_report(cut, fc);
    rep.checks.insert(rep.checks.end(), local.items.begin(), local.items.end());
    if (opt.emit_pages) append_table_pages(rep, "corner", spectral_sequence(fc));
    return finish(rep, opt, out);
}

int cmd_weight(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "weight";
    rep.input = opt.input;
    GoodCompData g = prepare(first_good_comp(set, ""), opt.subdivide, rep);
    WeightComplexResult wc = weight_complex(g);
    rep.checks.insert(rep.checks.end(), wc.report.items.begin(), wc.report.items.end());
    if (wc.report.ok()) {
        rep.homology = wc.hf.table.h_dims;
        rep.weight_table = wc.hf.table;
        if (opt.emit_pages) append_table_pages(rep, "weight", wc.pages);
        if (!opt.compare.empty()) {
            DocumentSet other = load_documents(opt.compare);
            ReportDocument scratch;
            GoodCompData g2 = prepare(first_good_comp(other, ""), opt.subdivide, scratch);
            WeightComplexResult wc2 = weight_complex(g2);
            rep.checks.push_back(
                {"tables-agree", wc2.report.ok() && wc2.hf.table == wc.hf.table, opt.compare});
        }
    }
    return finish(rep, opt, out);
}

int cmd_pages(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "pages";
    rep.input = opt.input;
    GoodCompData g = prepare(first_good_comp(set, ""), opt.subdivide, rep);
    CutComplex cut = build_cut_complex(g);
    FilteredComplex fc = corner_filtration(cut);
    SpectralSequence corner_ss = spectral_sequence(fc);
    append_table_pages(rep, "corner", corner_ss);
    FilteredComplex wfc = decalage(fc);
    SpectralSequence weight_ss = spectral_sequence(wfc);
    append_table_pages(rep, "weight", weight_ss);
    rep.extra.push_back({"corner_stable_page", std::to_string(corner_ss.stable_page)});
    rep.extra.push_back({"weight_stable_page", std::to_string(weight_ss.stable_page)});
    rep.checks.push_back({"pages-computed", true, ""});
    return finish(rep, opt, out);
}

int cmd_gysin(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "gysin";
    rep.input = opt.input;
    GoodCompData g = prepare(first_good_comp(set, ""), opt.subdivide, rep);
    GysinComplex gys = gysin_complex(g);
    std::vector<std::tuple<int, int, std::size_t, std::size_t>> entries;
    for (int p = 0; p <= g.dim(); ++p)
        for (int k = 0; k <= g.dim(); ++k)
            if (gys.dim(p, k) || gys.d_rank(p, k))
                entries.push_back({p, k, gys.dim(p, k), gys.d_rank(p, k)});
    rep.pages.push_back({"gysin", entries});
    rep.homology = gys.homology_dims(g.dim());
    Report agree = gysin_corner_report(g);
    rep.checks.insert(rep.checks.end(), agree.items.begin(), agree.items.end());
    return finish(rep, opt, out);
}

int cmd_cech(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "cech";
    rep.input = opt.input;
    GoodCompData g = prepare(first_good_comp(set, ""), opt.subdivide, rep);
    CechComplexes cc = cech_complexes(g);
    rep.homology = homology(cc.cohomological.cx).dims();
    auto hbm = homology(cc.homological.cx).dims();
    std::ostringstream os;
    for (std::size_t i = 0; i < hbm.size(); ++i) os << (i ? " " : "") << hbm[i];
    rep.extra.push_back({"closed_support_homology", os.str()});
    Report v1 = validate_filtration(cc.cohomological);
    Report v2 = validate_filtration(cc.homological);
    for (auto& item : v1.items) rep.checks.push_back({"cohomological:" + item.name, item.pass, item.detail});
    for (auto& item : v2.items) rep.checks.push_back({"homological:" + item.name, item.pass, item.detail});
    return finish(rep, opt, out);
}

int cmd_duality(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "duality";
    rep.input = opt.input;
    GoodCompData g = prepare(first_good_comp(set, ""), opt.subdivide, rep);
    DualityResult res = duality_report(g, true);
    rep.checks = res.report.items;
    rep.weight_table = res.classical;
    std::vector<std::tuple<int, int, std::size_t, std::size_t>> bm;
    for (int l = res.borel_moore.kmin; l <= res.borel_moore.kmax; ++l)
        for (int p = res.borel_moore.pmin; p <= 0; ++p)
            bm.push_back({l, p, res.borel_moore.w(l, p), 0});
    rep.pages.push_back({"closed-support-table (l, p, dim)", bm});
    return finish(rep, opt, out);
}

int cmd_assemble(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "assemble";
    rep.input = opt.input;
    const HyperresolutionDocument* hd = nullptr;
    for (auto& doc : set.documents)
        if (auto* h = std::get_if<HyperresolutionDocument>(&doc)) hd = h;
    if (!hd) throw DocumentError("no hyperresolution document in the input");
    HyperresolutionInput h = materialize(*hd, set);
    AssembleResult res = assemble(h);
    rep.checks = res.report.items;
    if (res.report.ok()) {
        rep.homology = res.hf.table.h_dims;
        rep.weight_table = res.hf.table;
    }
    return finish(rep, opt, out);
}

int cmd_blowup_check(const CommonOpts& opt, std::ostream& out) {
    DocumentSet set = load_documents(opt.input);
    ReportDocument rep;
    rep.command = "blowup-check";
    rep.input = opt.input;
    const BlowupSquareDocument* bd = nullptr;
    for (auto& doc : set.documents)
        if (auto* b = std::get_if<BlowupSquareDocument>(&doc)) bd = b;
    if (!bd) throw DocumentError("no blowup_square document in the input");
    rep.extra.push_back({"variant", bd->variant});
    Report res;
    if (bd->variant == "matrices") {
        res = blowup_square_checks(*bd->matrices);
    } else if (bd->variant == "transverse") {
        BlowupTransverseInput in;
        auto ref = [&](const char* key) {
            auto it = bd->node_refs.find(key);
            if (it == bd->node_refs.end())
                throw DocumentError(std::string("transverse square needs node '") + key + "'");
            return set.resolve(it->second);
        };
        auto arrow = [&](const char* key) {
            auto it = bd->arrows.find(key);
            if (it == bd->arrows.end())
                throw DocumentError(std::string("transverse square needs arrow '") + key + "'");
            return it->second;
        };
        in.w = ref("W");
        in.wt = ref("Wt");
        in.y = ref("Y");
        in.yt = ref("Yt");
        in.b = arrow("b");
        in.a = arrow("a");
        in.q = arrow("q");
        in.s = arrow("s");
        res = blowup_transverse_check(in);
    } else {
        auto itw = bd->node_refs.find("W");
        auto itwt = bd->node_refs.find("Wt");
        auto itb = bd->arrows.find("b");
        if (itw == bd->node_refs.end() || itwt == bd->node_refs.end() || itb == bd->arrows.end())
            throw DocumentError("contained square needs nodes W, Wt and arrow b");
        res = blowup_contained_check(set.resolve(itwt->second), set.resolve(itw->second), itb->second);
    }
    rep.checks = res.items;
    return finish(rep, opt, out);
}

int cmd_independence(const CommonOpts& opt, const std::string& second, std::ostream& out) {
    DocumentSet seta = load_documents(opt.input);
    DocumentSet setb = load_documents(second);
    ReportDocument rep;
    rep.command = "independence";
    rep.input = opt.input + " vs " + second;
    GoodCompData a = prepare(first_good_comp(seta, ""), opt.subdivide, rep);
    GoodCompData b = prepare(first_good_comp(setb, ""), opt.subdivide, rep);
    Report res = independence_check(a, b);
    rep.checks = res.items;
    WeightComplexResult wc = weight_complex(a);
    if (wc.report.ok()) rep.weight_table = wc.hf.table;
    return finish(rep, opt, out);
}

int cmd_torus(const CommonOpts& opt, int rank_flag, std::ostream& out) {
    int rank = rank_flag;
    std::vector<std::string> script;
    if (!opt.input.empty()) {
        DocumentSet set = load_documents(opt.input);
        const TorusQueryDocument* td = nullptr;
        for (auto& doc : set.documents)
            if (auto* t = std::get_if<TorusQueryDocument>(&doc)) td = t;
        if (!td) throw DocumentError("no torus_query document in the input");
        rank = td->rank;
        script = td->script;
    }
    if (rank <= 0) throw DocumentError("torus: a positive rank is required");
    std::map<std::string, AlgebraElement> env;
    auto get = [&](const std::string& name) -> AlgebraElement& {
        auto it = env.find(name);
        if (it == env.end()) throw DocumentError("torus: unknown element '" + name + "'");
        return it->second;
    };
    bool failed = false;
    for (auto& line : script) {
        std::istringstream is(line);
        std::string op;
        is >> op;
        try {
            if (op == "elem") {
                std::string name, eq, rest;
                is >> name >> eq;
                std::getline(is, rest);
                env[name] = element_from_string(rank, rest.empty() ? "0" : rest);
                out << name << " = " << element_to_string(env[name]) << "\n";
            } else if (op == "add" || op == "mul") {
                std::string name, a, b;
                is >> name >> a >> b;
                env[name] = op == "add" ? algebra_add(get(a), get(b)) : algebra_mul(get(a), get(b));
                out << name << " = " << element_to_string(env[name]) << "\n";
            } else if (op == "aug") {
                std::string a;
                is >> a;
                out << "aug " << a << " = " << (augmentation(get(a)) ? 1 : 0) << "\n";
            } else if (op == "grade") {
                int p;
                std::string a;
                is >> p >> a;
                BitVector co = graded_coordinates(get(a), p);
                auto subs = subsets_of_size(rank, p);
                out << "grade " << p << " " << a << " =";
                bool any = false;
                for (std::size_t i = 0; i < subs.size(); ++i) {
                    if (!co.get(i)) continue;
                    any = true;
                    out << " {";
                    bool first = true;
                    for (int b = 0; b < rank; ++b)
                        if (subs[i] & (1u << b)) {
                            out << (first ? "" : ",") << b;
                            first = false;
                        }
                    out << "}";
                }
                if (!any) out << " 0";
                out << "\n";
            } else if (op == "idealdim") {
                int p;
                is >> p;
                out << "idealdim " << p << " = " << ideal_power_basis(rank, p).dim() << "\n";
            } else if (op == "print") {
                std::string a;
                is >> a;
                out << a << " = " << element_to_string(get(a)) << "\n";
            } else if (!op.empty()) {
                out << "error: unknown op '" << op << "'\n";
                failed = true;
            }
        } catch (const std::exception& e) {
            out << "error: " << e.what() << "\n";
            failed = true;
        }
    }
    return failed ? 1 : 0;
}

int cmd_fixtures(const std::string& which, const std::string& out_dir, std::ostream& out) {
    namespace fs = std::filesystem;
    std::vector<std::pair<std::string, std::string>> files;
    auto add_good = [&files](const std::string& name) {
        files.push_back({name + ".json", good_comp_to_json(name, fixtures::by_name(name))});
    };
    auto add_bundle = [&files](const std::string& name, const std::string& body) {
        files.push_back({name + ".json", body});
    };

    auto wanted = [&which](const std::string& name) { return which == "all" || which == name; };

    for (auto& name : fixtures::corpus_names())
        if (wanted(name)) add_good(name);

    if (wanted("lemniscate")) {
        HyperresolutionInput h = fixtures::lemniscate();
        std::map<unsigned, std::string> refs = {{1u, "circle"}, {2u, "point"}, {3u, "lem-pair"}};
        std::string nodes = good_comp_to_json("lem-pair", fixtures::two_points());
        std::string hyper = hyperresolution_to_json("lemniscate", h, refs);
        add_bundle("lemniscate", std::string("{\"documents\": [") + nodes + "," + hyper + "]}");
    }
    if (wanted("lemniscate-rstar")) {
        HyperresolutionInput h = fixtures::lemniscate_rstar();
        std::map<unsigned, std::string> refs = {{1u, "s1xrstar"}, {2u, "rstar"}, {3u, "rstar-pair"}};
        std::string nodes = good_comp_to_json("rstar-pair", h.nodes.at(3u));
        std::string hyper = hyperresolution_to_json("lemniscate-rstar", h, refs);
        add_bundle("lemniscate-rstar", std::string("{\"documents\": [") + nodes + "," + hyper + "]}");
    }
    if (wanted("blowup-sphere-square"))
        add_bundle("blowup-sphere-square", blowup_square_matrices_to_json(
                                               "blowup-sphere-square", fixtures::sphere_blowup_square()));
    if (wanted("torus-query"))
        add_bundle("torus-query",
                   "{\"kind\": \"torus_query\", \"name\": \"torus-query\", \"rank\": 3,\n"
                   " \"script\": [\"elem a = 100+000\", \"elem b = 010+000\", \"mul c a b\",\n"
                   "  \"grade 2 c\", \"aug c\", \"idealdim 1\", \"idealdim 2\", \"idealdim 3\"]}\n");
    if (wanted("blowup-transverse")) {
        BlowupTransverseInput in = fixtures::blowup_transverse();
        std::ostringstream body;
        body << "{\"documents\": [" << good_comp_to_json("sphere-eq", in.w) << ","
             << good_comp_to_json("rp2-eq", in.wt) << "," << good_comp_to_json("center", in.y) << ","
             << good_comp_to_json("exceptional", in.yt) << ",";
        body << "{\"kind\": \"blowup_square\", \"name\": \"blowup-transverse\", "
                "\"variant\": \"transverse\", \"nodes\": {\"W\": \"sphere-eq\", \"Wt\": \"rp2-eq\", "
                "\"Y\": \"center\", \"Yt\": \"exceptional\"}, \"arrows\": {";
        auto vm = [](const SimplicialMapData& f) {
            std::ostringstream os;
            os << "[";
            for (std::size_t i = 0; i < f.vertex_map.size(); ++i)
                os << (i ? "," : "") << f.vertex_map[i];
            os << "]";
            return os.str();
        };
        body << "\"b\": " << vm(in.b) << ", \"a\": " << vm(in.a) << ", \"q\": " << vm(in.q)
             << ", \"s\": " << vm(in.s) << "}}]}";
        add_bundle("blowup-transverse", body.str());
    }
    if (wanted("blowup-contained")) {
        fixtures::ContainedInput in = fixtures::blowup_contained();
        std::ostringstream body;
        body << "{\"documents\": [" << good_comp_to_json("plane-blown", in.after) << ","
             << good_comp_to_json("plane-base", in.before) << ",";
        body << "{\"kind\": \"blowup_square\", \"name\": \"blowup-contained\", "
                "\"variant\": \"contained\", \"nodes\": {\"W\": \"plane-base\", \"Wt\": "
                "\"plane-blown\"}, \"arrows\": {\"b\": [";
        for (std::size_t i = 0; i < in.b.vertex_map.size(); ++i)
            body << (i ? "," : "") << in.b.vertex_map[i];
        body << "]}}]}";
        add_bundle("blowup-contained", body.str());
    }

    if (files.empty()) throw DocumentError("unknown fixture name: " + which);
    for (auto& [name, content] : files) {
        fs::path path = fs::path(out_dir) / name;
        std::ofstream f(path);
        if (!f) throw DocumentError("cannot write " + path.string());
        f << content;
        out << "wrote " << path.string() << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"weight filtration engine for triangulated real varieties"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string second, fixture_name = "all", out_dir = ".";
    int rank = 0;

    auto add_common = [&opt](CLI::App* cmd, bool needs_input = true) {
        if (needs_input) cmd->add_option("input", opt.input, "input document file")->required();
        cmd->add_option("--format", opt.format, "table|csv|structured")
            ->check(CLI::IsMember({"table", "csv", "structured"}));
        cmd->add_option("--subdivide", opt.subdivide, "explicit barycentric subdivisions (0-2)")
            ->check(CLI::Range(0, 2));
        cmd->add_flag("--emit-pages", opt.emit_pages, "include page dumps");
        cmd->add_option("--compare", opt.compare, "second input for table comparison");
    };

    auto* validate = app.add_subcommand("validate", "validate documents and crossing counts");
    add_common(validate);
    auto* corner = app.add_subcommand("corner", "cut complex and its level filtration");
    add_common(corner);
    auto* weight = app.add_subcommand("weight", "weight table of a good compactification");
    add_common(weight);
    auto* pages = app.add_subcommand("pages", "spectral sequence page dumps");
    add_common(pages);
    auto* gysin = app.add_subcommand("gysin", "stratum homology complex and ranks");
    add_common(gysin);
    auto* cech = app.add_subcommand("cech", "total complexes of the strata");
    add_common(cech);
    auto* duality = app.add_subcommand("duality", "pairing between the two filtrations");
    add_common(duality);
    auto* assemble_cmd = app.add_subcommand("assemble", "assemble a cube of compactifications");
    add_common(assemble_cmd);
    auto* blowup = app.add_subcommand("blowup-check", "blowup square checks");
    add_common(blowup);
    auto* indep = app.add_subcommand("independence", "compare two presentations");
    add_common(indep);
    indep->add_option("second", second, "second input document file")->required();
    auto* torus_cmd = app.add_subcommand("torus", "group algebra inspection");
    torus_cmd->add_option("input", opt.input, "torus_query document");
    torus_cmd->add_option("--rank", rank, "rank when no document is given");
    auto* fixtures_cmd = app.add_subcommand("fixtures", "write the fixture corpus");
    fixtures_cmd->add_option("name", fixture_name, "fixture name or 'all'");
    fixtures_cmd->add_option("--out", out_dir, "output directory");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt, out);
        if (corner->parsed()) return cmd_corner(opt, out);
        if (weight->parsed()) return cmd_weight(opt, out);
        if (pages->parsed()) return cmd_pages(opt, out);
        if (gysin->parsed()) return cmd_gysin(opt, out);
        if (cech->parsed()) return cmd_cech(opt, out);
        if (duality->parsed()) return cmd_duality(opt, out);
        if (assemble_cmd->parsed()) return cmd_assemble(opt, out);
        if (blowup->parsed()) return cmd_blowup_check(opt, out);
        if (indep->parsed()) return cmd_independence(opt, second, out);
        if (torus_cmd->parsed()) return cmd_torus(opt, rank, out);
        if (fixtures_cmd->parsed()) return cmd_fixtures(fixture_name, out_dir, out);
    } catch (const DocumentError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace wf
