#include "wf/simp.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wf {

namespace {

std::vector<std::vector<int>> nonempty_subsets(const std::vector<int>& s) {
    std::vector<std::vector<int>> out;
    std::size_t n = s.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) sub.push_back(s[i]);
        out.push_back(std::move(sub));
    }
    return out;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal(int n_vertices,
                                                  const std::vector<std::vector<int>>& maximal) {
    SimplicialComplex k;
    k.n_vertices_ = n_vertices;
    std::set<std::vector<int>> seen;
    for (auto s : maximal) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplex has a repeated vertex");
        for (int v : s)
            if (v < 0 || v >= n_vertices) throw std::invalid_argument("vertex index out of range");
        if (s.empty()) continue;
        for (auto& sub : nonempty_subsets(s)) seen.insert(sub);
    }
    for (auto& s : seen) {
        int d = int(s.size()) - 1;
        if (d >= int(k.by_dim_.size())) k.by_dim_.resize(std::size_t(d + 1));
        k.by_dim_[std::size_t(d)].push_back(s);
    }
    for (auto& level : k.by_dim_) std::sort(level.begin(), level.end());
    k.offset_.resize(k.by_dim_.size(), 0);
    std::size_t run = 0;
    for (std::size_t d = 0; d < k.by_dim_.size(); ++d) {
        k.offset_[d] = run;
        for (std::size_t i = 0; i < k.by_dim_[d].size(); ++i)
            k.index_[k.by_dim_[d][i]] = {int(d), i};
        run += k.by_dim_[d].size();
    }
    k.n_simplices_ = run;
    return k;
}

std::size_t SimplicialComplex::total_count() const { return n_simplices_; }

std::optional<std::pair<int, std::size_t>> SimplicialComplex::find(const std::vector<int>& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::pair<int, std::size_t> SimplicialComplex::from_global(std::size_t gid) const {
    for (std::size_t d = by_dim_.size(); d-- > 0;) {
        if (gid >= offset_[d]) return {int(d), gid - offset_[d]};
    }
    throw std::invalid_argument("from_global: bad id");
}

BitMatrix SimplicialComplex::boundary_matrix(int d) const {
    BitMatrix m(count(d - 1), count(d));
    if (d <= 0 || d > dim()) return m;
    for (std::size_t i = 0; i < count(d); ++i) {
        const auto& s = simplex(d, i);
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> face;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != drop) face.push_back(s[t]);
            auto pos = find(face);
            if (!pos) throw std::logic_error("complex not face-closed");
            m.set(pos->second, i);
        }
    }
    return m;
}

ChainComplex SimplicialComplex::chain_complex() const {
    ChainComplex c;
    c.min_degree = 0;
    c.max_degree = dim();
    if (empty()) {
        c.max_degree = -1;
        return c;
    }
    for (int d = 0; d <= dim(); ++d) {
        c.dims.push_back(count(d));
        std::vector<std::string> l;
        for (std::size_t i = 0; i < count(d); ++i) l.push_back(simplex_label(simplex(d, i)));
        c.labels.push_back(std::move(l));
    }
    for (int d = 0; d <= dim(); ++d) c.boundary.push_back(boundary_matrix(d));
    return c;
}

void SimplicialComplex::build_cofaces() const {
    cofaces_.assign(n_simplices_, {});
    for (std::size_t gid = 0; gid < n_simplices_; ++gid) {
        auto [d, i] = from_global(gid);
        for (auto& sub : nonempty_subsets(simplex(d, i))) {
            auto pos = find(sub);
            cofaces_[global_id(pos->first, pos->second)].push_back(gid);
        }
    }
}

const std::vector<std::size_t>& SimplicialComplex::cofaces(std::size_t gid) const {
    if (cofaces_.empty() && n_simplices_ > 0) build_cofaces();
    return cofaces_[gid];
}

SimplicialComplex SimplicialComplex::link(const std::vector<int>& s) const {
    auto pos = find(s);
    if (!pos) throw std::invalid_argument("link: simplex not in complex");
    std::vector<std::vector<int>> gens;
    for (auto cf : cofaces(global_id(pos->first, pos->second))) {
        auto [d, i] = from_global(cf);
        const auto& t = simplex(d, i);
        std::vector<int> rest;
        std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(rest));
        if (!rest.empty()) gens.push_back(std::move(rest));
    }
    return from_maximal(n_vertices_, gens);
}

std::vector<std::size_t> SimplicialComplex::homology_dims() const {
    if (empty()) return {};
    return homology(chain_complex()).dims();
}

bool SimplicialComplex::is_z2_sphere(int d) const {
    if (d < 0) return empty() || n_simplices_ == 0;
    if (empty()) return false;
    auto h = homology_dims();
    for (int k = 0; k < int(h.size()); ++k) {
        std::size_t expect = 0;
        if (k == 0) expect += 1;
        if (k == d) expect += 1;
        if (h[std::size_t(k)] != expect) return false;
    }
    return int(h.size()) > d;
}

std::vector<std::vector<std::size_t>> SimplicialComplex::components() const {
    UnionFind uf(n_simplices_);
    for (std::size_t gid = 0; gid < n_simplices_; ++gid) {
        auto [d, i] = from_global(gid);
        if (d == 0) continue;
        const auto& s = simplex(d, i);
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> face;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != drop) face.push_back(s[t]);
            auto pos = find(face);
            uf.unite(gid, global_id(pos->first, pos->second));
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t gid = 0; gid < n_simplices_; ++gid) groups[uf.find(gid)].push_back(gid);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    return out;
}

std::string SimplicialComplex::simplex_label(const std::vector<int>& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << ".";
        os << s[i];
    }
    return os.str();
}

GoodCompData GoodCompData::build(SimplicialComplex k, std::vector<std::string> names,
                                 const std::vector<std::vector<std::vector<int>>>& divisor_maximal) {
    GoodCompData g;
    g.K = std::move(k);
    g.divisor_names = std::move(names);
    if (g.divisor_names.size() != divisor_maximal.size())
        throw std::invalid_argument("divisor name/simplex list count mismatch");
    for (auto& max_list : divisor_maximal) {
        std::vector<char> member(g.K.n_simplices(), 0);
        for (auto s : max_list) {
            std::sort(s.begin(), s.end());
            auto pos = g.K.find(s);
            if (!pos)
                throw std::invalid_argument("divisor simplex not in the complex: " +
                                            SimplicialComplex::simplex_label(s));
            for (auto& sub : nonempty_subsets(s)) {
                auto p2 = g.K.find(sub);
                member[g.K.global_id(p2->first, p2->second)] = 1;
            }
        }
        g.divisor_member.push_back(std::move(member));
    }
    return g;
}

unsigned GoodCompData::j_mask(std::size_t gid) const {
    unsigned m = 0;
    for (std::size_t i = 0; i < divisor_member.size(); ++i)
        if (divisor_member[i][gid]) m |= (1u << i);
    return m;
}

std::vector<std::size_t> GoodCompData::stratum(unsigned mask) const {
    std::vector<std::size_t> out;
    for (std::size_t gid = 0; gid < K.n_simplices(); ++gid)
        if ((j_mask(gid) & mask) == mask) out.push_back(gid);
    return out;
}

std::vector<unsigned> GoodCompData::strata_masks() const {
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < (1u << divisor_count()); ++mask)
        if (!stratum(mask).empty()) out.push_back(mask);
    return out;
}

SimplicialComplex GoodCompData::stratum_complex(unsigned mask) const {
    std::vector<std::vector<int>> gens;
    for (auto gid : stratum(mask)) {
        auto [d, i] = K.from_global(gid);
        gens.push_back(K.simplex(d, i));
    }
    return SimplicialComplex::from_maximal(K.n_vertices(), gens);
}

Report validate_good_comp(const GoodCompData& g) {
    Report rep;
    int n = g.dim();

    bool full_ok = true;
    std::string full_at;
    for (int i = 0; i < g.divisor_count(); ++i) {
        std::vector<char> in_div(std::size_t(g.K.n_vertices()), 0);
        for (std::size_t v = 0; v < g.K.count(0); ++v) {
            std::size_t gid = g.K.global_id(0, v);
            if (g.divisor_member[std::size_t(i)][gid]) in_div[std::size_t(g.K.simplex(0, v)[0])] = 1;
        }
        for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid) {
            auto [d, idx] = g.K.from_global(gid);
            bool all_in = true;
            for (int v : g.K.simplex(d, idx))
                if (!in_div[std::size_t(v)]) all_in = false;
            if (all_in && !g.divisor_member[std::size_t(i)][gid]) {
                full_ok = false;
                full_at = g.divisor_names[std::size_t(i)] + ":" +
                          SimplicialComplex::simplex_label(g.K.simplex(d, idx));
            }
        }
    }
    rep.add("divisors-full-subcomplexes", full_ok, full_at);

    bool pure_ok = true, link_ok = true;
    std::string pure_at, link_at;
    for (unsigned mask : g.strata_masks()) {
        int p = __builtin_popcount(mask);
        int expect_dim = n - p;
        SimplicialComplex kj = g.stratum_complex(mask);
        if (expect_dim < 0) {
            pure_ok = false;
            pure_at = "stratum mask " + std::to_string(mask) + " nonempty below dimension 0";
            continue;
        }
        // purity: every simplex is a face of one of top dimension
        if (kj.dim() != expect_dim) {
            pure_ok = false;
            pure_at = "stratum mask " + std::to_string(mask) + " has dimension " +
                      std::to_string(kj.dim()) + " expected " + std::to_string(expect_dim);
        }
        for (int d = 0; d <= kj.dim(); ++d) {
            for (std::size_t i = 0; i < kj.count(d); ++i) {
                bool has_top = false;
                for (auto cf : kj.cofaces(kj.global_id(d, i))) {
                    auto [cd, ci] = kj.from_global(cf);
                    (void)ci;
                    if (cd == expect_dim) has_top = true;
                }
                if (!has_top) {
                    pure_ok = false;
                    pure_at = "stratum mask " + std::to_string(mask) + " simplex " +
                              SimplicialComplex::simplex_label(kj.simplex(d, i));
                }
                SimplicialComplex lk = kj.link(kj.simplex(d, i));
                if (!lk.is_z2_sphere(expect_dim - d - 1)) {
                    link_ok = false;
                    link_at = "stratum mask " + std::to_string(mask) + " simplex " +
                              SimplicialComplex::simplex_label(kj.simplex(d, i));
                }
            }
        }
    }
    rep.add("strata-pure", pure_ok, pure_at);
    rep.add("strata-manifold-links", link_ok, link_at);
    return rep;
}

StarPartition star_partition(const GoodCompData& g, std::size_t gid, unsigned ignore_mask) {
    StarPartition sp;
    for (auto cf : g.K.cofaces(gid)) {
        if ((g.j_mask(cf) & ~ignore_mask) == 0) sp.nodes.push_back(cf);
    }
    UnionFind uf(sp.nodes.size());
    for (std::size_t a = 0; a < sp.nodes.size(); ++a) {
        auto [da, ia] = g.K.from_global(sp.nodes[a]);
        const auto& sa = g.K.simplex(da, ia);
        for (std::size_t b = a + 1; b < sp.nodes.size(); ++b) {
            auto [db, ib] = g.K.from_global(sp.nodes[b]);
            const auto& sb = g.K.simplex(db, ib);
            bool inc = std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()) ||
                       std::includes(sa.begin(), sa.end(), sb.begin(), sb.end());
            if (inc) uf.unite(a, b);
        }
    }
    sp.component.assign(sp.nodes.size(), -1);
    int next = 0;
    std::map<std::size_t, int> root_label;
    for (std::size_t a = 0; a < sp.nodes.size(); ++a) {
        std::size_t r = uf.find(a);
        auto it = root_label.find(r);
        if (it == root_label.end()) {
            root_label[r] = next++;
        }
        sp.component[a] = root_label[r];
    }
    sp.n_components = next;
    return sp;
}

int StarPartition::component_of(std::size_t gid) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), gid);
    if (it == nodes.end() || *it != gid) return -1;
    return component[std::size_t(it - nodes.begin())];
}

Report nc_check(const GoodCompData& g) {
    Report rep;
    bool ok = true;
    std::string at;
    for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid) {
        unsigned jm = g.j_mask(gid);
        StarPartition sp = star_partition(g, gid, 0);
        std::size_t expect = std::size_t(1) << __builtin_popcount(jm);
        if (std::size_t(sp.n_components) != expect) {
            ok = false;
            auto [d, i] = g.K.from_global(gid);
            at = SimplicialComplex::simplex_label(g.K.simplex(d, i)) + " has " +
                 std::to_string(sp.n_components) + " local components, expected " +
                 std::to_string(expect);
            break;
        }
    }
    rep.add("normal-crossing-counts", ok, at);
    return rep;
}

namespace {

// full flags of a simplex inside a complex, ending at the simplex
void full_flags_below(const SimplicialComplex& k, const std::vector<int>& s,
                      std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    auto pos = k.find(s);
    std::size_t gid = k.global_id(pos->first, pos->second);
    cur.push_back(gid);
    if (s.size() == 1) {
        std::vector<std::size_t> flag(cur.rbegin(), cur.rend());
        out.push_back(std::move(flag));
    } else {
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<int> face;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != drop) face.push_back(s[t]);
            full_flags_below(k, face, cur, out);
        }
    }
    cur.pop_back();
}

std::vector<std::vector<std::size_t>> subdivision_maximal(const SimplicialComplex& k,
                                                          const std::vector<std::size_t>& gids) {
    // maximal members of the family
    std::vector<char> in_set(k.n_simplices(), 0);
    for (auto gid : gids) in_set[gid] = 1;
    std::vector<std::vector<std::size_t>> out;
    for (auto gid : gids) {
        bool maximal = true;
        for (auto cf : k.cofaces(gid))
            if (cf != gid && in_set[cf]) maximal = false;
        if (!maximal) continue;
        auto [d, i] = k.from_global(gid);
        std::vector<std::size_t> cur;
        full_flags_below(k, k.simplex(d, i), cur, out);
    }
    return out;
}

}  // namespace

SubdivisionResult barycentric_subdivide(const GoodCompData& g) {
    SubdivisionResult out;
    std::vector<std::size_t> all;
    for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid) all.push_back(gid);
    std::vector<std::vector<int>> maximal;
    for (auto& flag : subdivision_maximal(g.K, all)) {
        std::vector<int> s;
        for (auto gid : flag) s.push_back(int(gid));
        maximal.push_back(std::move(s));
    }
    SimplicialComplex sd = SimplicialComplex::from_maximal(int(g.K.n_simplices()), maximal);
    std::vector<std::vector<std::vector<int>>> div_max;
    for (int i = 0; i < g.divisor_count(); ++i) {
        std::vector<std::size_t> members;
        for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid)
            if (g.divisor_member[std::size_t(i)][gid]) members.push_back(gid);
        std::vector<std::vector<int>> dmax;
        for (auto& flag : subdivision_maximal(g.K, members)) {
            std::vector<int> s;
            for (auto gid : flag) s.push_back(int(gid));
            dmax.push_back(std::move(s));
        }
        div_max.push_back(std::move(dmax));
    }
    out.g = GoodCompData::build(std::move(sd), g.divisor_names, div_max);
    for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid) out.vertex_simplex.push_back(gid);
    return out;
}

SimplicialComplex complement_retract(const GoodCompData& g) {
    SubdivisionResult sd = barycentric_subdivide(g);
    const SimplicialComplex& k = sd.g.K;
    std::vector<std::vector<int>> gens;
    for (std::size_t gid = 0; gid < k.n_simplices(); ++gid) {
        auto [d, i] = k.from_global(gid);
        const auto& s = k.simplex(d, i);
        bool clean = true;
        for (int v : s)
            if (g.in_divisor(std::size_t(v))) clean = false;
        if (clean) gens.push_back(s);
    }
    return SimplicialComplex::from_maximal(k.n_vertices(), gens);
}

DualCellComplex dual_cell_complex(const GoodCompData& g) {
    DualCellComplex out;
    int n = g.dim();
    auto masks = g.strata_masks();
    int nmax = 0;
    for (auto m : masks) nmax = std::max(nmax, __builtin_popcount(m));

    out.basis.resize(std::size_t(n + 1));
    for (unsigned mask : masks) {
        int p = __builtin_popcount(mask);
        for (auto gid : g.stratum(mask)) {
            auto [d, i] = g.K.from_global(gid);
            (void)i;
            int k = (n - p) - d;
            if (k < 0 || k > n) throw std::logic_error("dual cell degree out of range");
            out.basis[std::size_t(k)].push_back({mask, gid});
        }
    }
    for (int k = 0; k <= n; ++k) {
        std::sort(out.basis[std::size_t(k)].begin(), out.basis[std::size_t(k)].end());
        for (std::size_t pos = 0; pos < out.basis[std::size_t(k)].size(); ++pos)
            out.where[out.basis[std::size_t(k)][pos]] = {k, pos};
    }

    ChainComplex c;
    c.min_degree = 0;
    c.max_degree = n;
    for (int k = 0; k <= n; ++k) {
        c.dims.push_back(out.basis[std::size_t(k)].size());
        std::vector<std::string> lab;
        for (auto& [mask, gid] : out.basis[std::size_t(k)]) {
            auto [d, i] = g.K.from_global(gid);
            lab.push_back("J" + std::to_string(mask) + "|" +
                          SimplicialComplex::simplex_label(g.K.simplex(d, i)));
        }
        c.labels.push_back(std::move(lab));
    }
    for (int k = 0; k <= n; ++k) {
        BitMatrix m(c.dim(k - 1), c.dim(k));
        for (std::size_t col = 0; col < out.basis[std::size_t(k)].size(); ++col) {
            auto [mask, gid] = out.basis[std::size_t(k)][col];
            auto [d, i] = g.K.from_global(gid);
            // cellular boundary: cofacets of the simplex within the stratum
            for (auto cf : g.K.cofaces(gid)) {
                auto [cd, ci] = g.K.from_global(cf);
                (void)ci;
                if (cd != d + 1) continue;
                if ((g.j_mask(cf) & mask) != mask) continue;
                auto it = out.where.find({mask, cf});
                if (it == out.where.end()) throw std::logic_error("missing cofacet dual cell");
                m.row(std::size_t(it->second.second)).flip(col);
            }
            // deeper strata through the same simplex
            unsigned extra = g.j_mask(gid) & ~mask;
            for (int b = 0; b < g.divisor_count(); ++b) {
                if (!(extra & (1u << b))) continue;
                auto it = out.where.find({mask | (1u << b), gid});
                if (it == out.where.end()) throw std::logic_error("missing deeper dual cell");
                m.row(std::size_t(it->second.second)).flip(col);
            }
        }
        c.boundary.push_back(std::move(m));
    }
    if (auto bad = c.validate())
        throw std::logic_error("dual cell complex: boundary square nonzero at degree " +
                               std::to_string(*bad));

    out.fc.cx = std::move(c);
    out.fc.origin = FiltrationOrigin::dual_cell;
    out.fc.geom_dim = n;
    out.fc.pmin = -nmax;
    out.fc.pmax = 0;
    for (int k = 0; k <= n; ++k) {
        std::vector<Subspace> row;
        std::size_t dk = out.fc.cx.dim(k);
        for (int p = out.fc.pmin; p <= out.fc.pmax; ++p) {
            std::vector<BitVector> gens;
            for (std::size_t pos = 0; pos < out.basis[std::size_t(k)].size(); ++pos) {
                if (__builtin_popcount(out.basis[std::size_t(k)][pos].first) >= -p)
                    gens.push_back(BitVector::unit(dk, pos));
            }
            row.push_back(Subspace::span(dk, gens));
        }
        out.fc.level.push_back(std::move(row));
    }
    return out;
}

ComplexityResult divisor_complexity(const GoodCompData& g) {
    ComplexityResult out;
    // components of each divisor in ambient simplex ids
    struct Comp {
        std::string divisor;
        std::vector<char> member;  // per global id
    };
    std::vector<Comp> comps;
    for (int i = 0; i < g.divisor_count(); ++i) {
        std::vector<std::size_t> members;
        for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid)
            if (g.divisor_member[std::size_t(i)][gid]) members.push_back(gid);
        if (members.empty()) continue;
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t t = 0; t < members.size(); ++t) pos[members[t]] = t;
        UnionFind uf(members.size());
        for (auto gid : members) {
            auto [d, idx] = g.K.from_global(gid);
            const auto& s = g.K.simplex(d, idx);
            if (d == 0) continue;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> face;
                for (std::size_t t = 0; t < s.size(); ++t)
                    if (t != drop) face.push_back(s[t]);
                auto p2 = g.K.find(face);
                uf.unite(pos[gid], pos[g.K.global_id(p2->first, p2->second)]);
            }
        }
        std::map<std::size_t, std::vector<std::size_t>> groups;
        for (std::size_t t = 0; t < members.size(); ++t) groups[uf.find(t)].push_back(members[t]);
        int cnum = 0;
        for (auto& [root, mem] : groups) {
            Comp comp;
            comp.divisor = g.divisor_names[std::size_t(i)] + "#" + std::to_string(cnum++);
            comp.member.assign(g.K.n_simplices(), 0);
            for (auto gid : mem) comp.member[gid] = 1;
            comps.push_back(std::move(comp));
        }
    }
    if (comps.size() > 12) throw std::invalid_argument("divisor_complexity: too many components");
    std::size_t nc = comps.size();
    if (nc == 0) {
        out.complexity = 0;
        return out;
    }
    // intersection graph
    std::vector<std::vector<char>> adj(nc, std::vector<char>(nc, 0));
    for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t b = a + 1; b < nc; ++b) {
            bool meet = false;
            for (std::size_t gid = 0; gid < g.K.n_simplices(); ++gid)
                if (comps[a].member[gid] && comps[b].member[gid]) meet = true;
            adj[a][b] = adj[b][a] = meet ? 1 : 0;
        }
    // chromatic number by exhaustive backtracking
    std::vector<int> color(nc, -1);
    for (int k = 1; k <= int(nc); ++k) {
        std::fill(color.begin(), color.end(), -1);
        struct Try {
            const std::vector<std::vector<char>>& adj;
            std::vector<int>& color;
            int k;
            bool go(std::size_t v) {
                if (v == color.size()) return true;
                for (int c = 0; c < k; ++c) {
                    bool ok = true;
                    for (std::size_t u = 0; u < v; ++u)
                        if (adj[v][u] && color[u] == c) ok = false;
                    if (!ok) continue;
                    color[v] = c;
                    if (go(v + 1)) return true;
                    color[v] = -1;
                }
                return false;
            }
        } t{adj, color, k};
        if (t.go(0)) {
            out.complexity = k;
            for (std::size_t v = 0; v < nc; ++v) out.witness.push_back({comps[v].divisor, color[v]});
            return out;
        }
    }
    throw std::logic_error("divisor_complexity: coloring search failed");
}

namespace {

// staircase triangulations of products of two simplices
void staircases(const std::vector<int>& sa, const std::vector<int>& sb, int nb,
                std::vector<std::vector<int>>& out) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> paths;
    std::vector<std::pair<std::size_t, std::size_t>> cur = {{0, 0}};
    struct Walk {
        std::size_t sa_top, sb_top;
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& paths;
        void go(std::vector<std::pair<std::size_t, std::size_t>>& cur) {
            auto [x, y] = cur.back();
            if (x == sa_top && y == sb_top) {
                paths.push_back(cur);
                return;
            }
            if (x < sa_top) {
                cur.push_back({x + 1, y});
                go(cur);
                cur.pop_back();
            }
            if (y < sb_top) {
                cur.push_back({x, y + 1});
                go(cur);
                cur.pop_back();
            }
        }
    } walk{sa.size() - 1, sb.size() - 1, paths};
    walk.go(cur);
    for (auto& path : paths) {
        std::vector<int> simplex;
        for (auto& [x, y] : path) simplex.push_back(sa[x] * nb + sb[y]);
        out.push_back(std::move(simplex));
    }
}

std::vector<std::vector<int>> maximal_of(const SimplicialComplex& k) {
    std::vector<std::vector<int>> out;
    for (std::size_t gid = 0; gid < k.n_simplices(); ++gid) {
        if (k.cofaces(gid).size() == 1) {
            auto [d, i] = k.from_global(gid);
            out.push_back(k.simplex(d, i));
        }
    }
    return out;
}

}  // namespace

GoodCompData product_complex(const GoodCompData& a, const GoodCompData& b) {
    int nb = b.K.n_vertices();
    std::vector<std::vector<int>> maximal;
    auto amax = maximal_of(a.K);
    auto bmax = maximal_of(b.K);
    for (auto& sa : amax)
        for (auto& sb : bmax) staircases(sa, sb, nb, maximal);
    SimplicialComplex prod =
        SimplicialComplex::from_maximal(a.K.n_vertices() * nb, maximal);

    std::vector<std::string> names;
    std::vector<std::vector<std::vector<int>>> div_max;
    for (int i = 0; i < a.divisor_count(); ++i) {
        names.push_back("a." + a.divisor_names[std::size_t(i)]);
        std::vector<std::vector<int>> dm;
        auto dmax = maximal_of(a.stratum_complex(1u << i));
        for (auto& sa : dmax)
            for (auto& sb : bmax) staircases(sa, sb, nb, dm);
        div_max.push_back(std::move(dm));
    }
    for (int i = 0; i < b.divisor_count(); ++i) {
        names.push_back("b." + b.divisor_names[std::size_t(i)]);
        std::vector<std::vector<int>> dm;
        auto dmax = maximal_of(b.stratum_complex(1u << i));
        for (auto& sa : amax)
            for (auto& sb : dmax) staircases(sa, sb, nb, dm);
        div_max.push_back(std::move(dm));
    }
    return GoodCompData::build(std::move(prod), std::move(names), div_max);
}

}  // namespace wf
