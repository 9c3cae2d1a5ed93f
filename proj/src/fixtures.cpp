#include "wf/fixtures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace wf::fixtures {

namespace {

GoodCompData make(int n_vertices, const std::vector<std::vector<int>>& maximal,
                  std::vector<std::string> names = {},
                  std::vector<std::vector<std::vector<int>>> divisors = {}) {
    return GoodCompData::build(SimplicialComplex::from_maximal(n_vertices, maximal),
                               std::move(names), divisors);
}

}  // namespace

GoodCompData point() { return make(1, {{0}}); }

GoodCompData circle() {
    return make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

GoodCompData two_points() { return make(2, {{0}, {1}}); }

GoodCompData circle3() { return make(3, {{0, 1}, {1, 2}, {0, 2}}); }

GoodCompData sphere() {
    // north 0, south 1, equator 2..7
    std::vector<std::vector<int>> tri;
    for (int i = 0; i < 6; ++i) {
        int a = 2 + i, b = 2 + (i + 1) % 6;
        tri.push_back({0, a, b});
        tri.push_back({1, a, b});
    }
    return make(8, tri);
}

namespace {

// Moebius band over a hexagon boundary, mapping-cylinder triangulation of the
// double cover; quads flipped per the flags keep chosen edges off the core.
std::vector<std::vector<int>> moebius_band(const std::vector<int>& hexagon,
                                           const std::vector<int>& core,
                                           const std::vector<bool>& flip) {
    std::vector<std::vector<int>> tri;
    for (int j = 0; j < 6; ++j) {
        int lj = hexagon[std::size_t(j)];
        int lj1 = hexagon[std::size_t((j + 1) % 6)];
        int tj = core[std::size_t(j % 3)];
        int tj1 = core[std::size_t((j + 1) % 3)];
        if (flip[std::size_t(j)]) {
            tri.push_back({lj, lj1, tj1});
            tri.push_back({lj, tj, tj1});
        } else {
            tri.push_back({lj, lj1, tj});
            tri.push_back({lj1, tj, tj1});
        }
    }
    return tri;
}

std::vector<std::vector<int>> rp2_triangles() {
    // south 0, rim 1..6, core 7..9: a sphere fan plus a band over the rim
    std::vector<std::vector<int>> tri;
    for (int i = 0; i < 6; ++i) tri.push_back({0, 1 + i, 1 + (i + 1) % 6});
    std::vector<int> hexagon = {1, 2, 3, 4, 5, 6};
    std::vector<int> core = {7, 8, 9};
    auto band = moebius_band(hexagon, core, std::vector<bool>(6, false));
    tri.insert(tri.end(), band.begin(), band.end());
    return tri;
}

}  // namespace

GoodCompData projective_plane() { return make(10, rp2_triangles()); }

GoodCompData r2_rp2() {
    return make(10, rp2_triangles(), {"line"}, {{{7, 8}, {8, 9}, {7, 9}}});
}

GoodCompData torus_grid(int cols, int rows, const std::vector<int>& vcols,
                        const std::vector<int>& hrows) {
    auto v = [&](int c, int r) { return ((c % cols + cols) % cols) * rows + ((r % rows + rows) % rows); };
    std::vector<std::vector<int>> tri;
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) {
            tri.push_back({v(c, r), v(c + 1, r), v(c + 1, r + 1)});
            tri.push_back({v(c, r), v(c, r + 1), v(c + 1, r + 1)});
        }
    }
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<int>>> divisors;
    for (int c : vcols) {
        names.push_back("v" + std::to_string(c));
        std::vector<std::vector<int>> edges;
        for (int r = 0; r < rows; ++r) edges.push_back({v(c, r), v(c, r + 1)});
        divisors.push_back(std::move(edges));
    }
    for (int r : hrows) {
        names.push_back("h" + std::to_string(r));
        std::vector<std::vector<int>> edges;
        for (int c = 0; c < cols; ++c) edges.push_back({v(c, r), v(c + 1, r)});
        divisors.push_back(std::move(edges));
    }
    return make(cols * rows, tri, std::move(names), std::move(divisors));
}

GoodCompData torus() { return torus_grid(4, 4, {}, {}); }
GoodCompData p1xr() { return torus_grid(4, 4, {}, {0}); }
GoodCompData s1xrstar() { return torus_grid(4, 4, {}, {0, 2}); }
GoodCompData rstar2_torus() { return torus_grid(4, 4, {0, 2}, {0, 2}); }
GoodCompData xline3() { return torus_grid(8, 4, {0, 2, 4, 6}, {0}); }

GoodCompData rstar() {
    return make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {"d0", "dinf"}, {{{0}}, {{2}}});
}

GoodCompData rline() {
    return make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {"dinf"}, {{{0}}});
}

GoodCompData r2minus0() {
    // two Moebius bands glued along a hexagon: rim 0..5, cores 6..8 and 9..11
    std::vector<int> hexagon = {0, 1, 2, 3, 4, 5};
    auto band1 = moebius_band(hexagon, {6, 7, 8}, std::vector<bool>(6, false));
    auto band2 = moebius_band(hexagon, {9, 10, 11}, std::vector<bool>(6, false));
    std::vector<std::vector<int>> tri = band1;
    tri.insert(tri.end(), band2.begin(), band2.end());
    return make(12, tri, {"exceptional", "line"},
                {{{6, 7}, {7, 8}, {6, 8}}, {{9, 10}, {10, 11}, {9, 11}}});
}

GoodCompData klein2() {
    // the projective plane of r2_rp2 blown up at core vertex 7; rim of the
    // removed star is (1, 2, 8, 5, 4, 9), new core 10..12, quads 1 and 4
    // flipped so that only the transform edges touch the crossing vertex 12
    std::vector<std::vector<int>> tri;
    for (int i = 0; i < 6; ++i) tri.push_back({0, 1 + i, 1 + (i + 1) % 6});  // south fan
    // untouched part of the old band
    tri.push_back({2, 3, 8});
    tri.push_back({3, 4, 9});
    tri.push_back({5, 6, 8});
    tri.push_back({6, 1, 9});
    tri.push_back({3, 8, 9});
    tri.push_back({6, 8, 9});
    std::vector<int> hexagon = {1, 2, 8, 5, 4, 9};
    std::vector<bool> flip(6, false);
    flip[1] = flip[4] = true;
    auto band = moebius_band(hexagon, {10, 11, 12}, flip);
    tri.insert(tri.end(), band.begin(), band.end());
    return make(13, tri, {"exceptional", "line"},
                {{{10, 11}, {11, 12}, {10, 12}}, {{8, 9}, {8, 12}, {9, 12}}});
}

GoodCompData rstar2_p2() {
    // the projective plane as the antipodal quotient of the subdivided
    // octahedron, with the three coordinate lines as divisors
    SimplicialComplex oct = SimplicialComplex::from_maximal(
        6, {{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}});
    GoodCompData bare_oct = GoodCompData::build(oct, {}, {});
    SubdivisionResult sd = barycentric_subdivide(bare_oct);
    const SimplicialComplex& k = sd.g.K;

    auto antipode_vertex = [&](std::size_t gid) {
        auto [d, i] = oct.from_global(gid);
        std::vector<int> img;
        for (int v : oct.simplex(d, i)) img.push_back(v ^ 1);
        std::sort(img.begin(), img.end());
        auto pos = oct.find(img);
        return oct.global_id(pos->first, pos->second);
    };
    std::map<std::size_t, int> quotient_id;
    int next = 0;
    for (std::size_t gid = 0; gid < oct.n_simplices(); ++gid) {
        std::size_t rep = std::min(gid, antipode_vertex(gid));
        if (quotient_id.count(rep) == 0) quotient_id[rep] = next++;
    }
    auto qv = [&](int sd_vertex) {
        std::size_t gid = std::size_t(sd_vertex);
        return quotient_id.at(std::min(gid, antipode_vertex(gid)));
    };
    std::vector<std::vector<int>> maximal;
    for (std::size_t t = 0; t < k.count(2); ++t) {
        std::vector<int> img;
        for (int v : k.simplex(2, t)) img.push_back(qv(v));
        maximal.push_back(img);
    }

    // lines: subdivided coordinate squares
    std::vector<std::string> names = {"lx", "ly", "lz"};
    std::vector<std::vector<std::vector<int>>> divisors;
    for (int axis = 0; axis < 3; ++axis) {
        // square on the two other coordinate pairs
        int p1 = (axis + 1) % 3, p2 = (axis + 2) % 3;
        int a = 2 * p1, b = 2 * p2;
        std::vector<std::pair<int, int>> square_edges = {
            {a, b}, {b, a ^ 1}, {a ^ 1, b ^ 1}, {b ^ 1, a}};
        std::vector<std::vector<int>> edges;
        for (auto& [x, y] : square_edges) {
            std::vector<int> e = {x, y};
            std::sort(e.begin(), e.end());
            auto mid = oct.find(e);
            std::size_t mid_gid = oct.global_id(mid->first, mid->second);
            auto endx = oct.find(std::vector<int>{x});
            auto endy = oct.find(std::vector<int>{y});
            std::size_t gx = oct.global_id(endx->first, endx->second);
            std::size_t gy = oct.global_id(endy->first, endy->second);
            edges.push_back({qv(int(gx)), qv(int(mid_gid))});
            edges.push_back({qv(int(mid_gid)), qv(int(gy))});
        }
        // dedupe antipodal duplicates
        for (auto& e : edges) std::sort(e.begin(), e.end());
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        divisors.push_back(std::move(edges));
    }
    return GoodCompData::build(SimplicialComplex::from_maximal(next, maximal), names, divisors);
}

HyperresolutionInput lemniscate() {
    HyperresolutionInput h;
    h.directions = 2;
    h.nodes[1u] = circle();      // the normalization
    h.nodes[2u] = point();       // the node point
    h.nodes[3u] = two_points();  // its preimage
    h.arrows[{3u, 1u}] = SimplicialMapData{{0, 2}};
    h.arrows[{3u, 2u}] = SimplicialMapData{{0, 0}};
    return h;
}

HyperresolutionInput lemniscate_rstar() {
    HyperresolutionInput h;
    h.directions = 2;
    h.nodes[1u] = torus_grid(4, 4, {}, {0, 2});  // circle x punctured line
    h.nodes[2u] = rstar();
    // two disjoint copies of the punctured line's compactification
    h.nodes[3u] = make(8, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7}},
                       {"d0", "dinf"}, {{{0}, {4}}, {{2}, {6}}});
    h.arrows[{3u, 1u}] = SimplicialMapData{{0, 1, 2, 3, 8, 9, 10, 11}};
    h.arrows[{3u, 2u}] = SimplicialMapData{{0, 1, 2, 3, 0, 1, 2, 3}};
    return h;
}

namespace {

std::vector<std::vector<int>> rp2e_triangles() {
    // the sphere with the north star replaced by a band: south 1, rim 2..7,
    // core 8..10 (vertex 0 unused)
    std::vector<std::vector<int>> tri;
    for (int i = 0; i < 6; ++i) tri.push_back({1, 2 + i, 2 + (i + 1) % 6});
    std::vector<int> hexagon = {2, 3, 4, 5, 6, 7};
    auto band = moebius_band(hexagon, {8, 9, 10}, std::vector<bool>(6, false));
    tri.insert(tri.end(), band.begin(), band.end());
    return tri;
}

std::vector<std::vector<int>> equator_edges() {
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < 6; ++i) {
        std::vector<int> e = {2 + i, 2 + (i + 1) % 6};
        std::sort(e.begin(), e.end());
        edges.push_back(e);
    }
    return edges;
}

}  // namespace

BlowupTransverseInput blowup_transverse() {
    BlowupTransverseInput in;
    {
        std::vector<std::vector<int>> tri;
        for (int i = 0; i < 6; ++i) {
            int a = 2 + i, b = 2 + (i + 1) % 6;
            tri.push_back({0, a, b});
            tri.push_back({1, a, b});
        }
        in.w = make(8, tri, {"equator"}, {equator_edges()});
    }
    in.wt = make(11, rp2e_triangles(), {"equator"}, {equator_edges()});
    in.y = point();
    in.yt = circle3();
    in.b = SimplicialMapData{{0, 1, 2, 3, 4, 5, 6, 7, 0, 0, 0}};
    in.a = SimplicialMapData{{0}};
    in.q = SimplicialMapData{{0, 0, 0}};
    in.s = SimplicialMapData{{8, 9, 10}};
    return in;
}

ContainedInput blowup_contained() {
    ContainedInput in;
    in.after = klein2();
    in.before = r2_rp2();
    in.b = SimplicialMapData{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 7, 7, 7}};
    return in;
}

BlowupSquareData sphere_blowup_square() {
    SimplicialComplex e = circle3().K;
    SimplicialComplex c = point().K;
    SimplicialComplex mt = SimplicialComplex::from_maximal(11, rp2e_triangles());
    SimplicialComplex m = sphere().K;
    SimplicialMapData q{{0, 0, 0}};
    SimplicialMapData s{{8, 9, 10}};
    SimplicialMapData p{{0, 1, 2, 3, 4, 5, 6, 7, 0, 0, 0}};
    SimplicialMapData r{{0}};
    return blowup_square_from_triangulations(e, c, mt, m, q, s, p, r);
}

std::vector<std::string> corpus_names() {
    return {"point",  "circle",      "sphere", "projective-plane", "torus",
            "p1xr",   "s1xrstar",    "rstar2-torus", "xline3",     "rstar",
            "rline",  "r2-rp2",      "r2minus0",     "rstar2-p2",  "klein2"};
}

GoodCompData by_name(const std::string& name) {
    if (name == "point") return point();
    if (name == "circle") return circle();
    if (name == "two-points") return two_points();
    if (name == "circle3") return circle3();
    if (name == "sphere") return sphere();
    if (name == "projective-plane") return projective_plane();
    if (name == "torus") return torus();
    if (name == "p1xr") return p1xr();
    if (name == "s1xrstar") return s1xrstar();
    if (name == "rstar2-torus") return rstar2_torus();
    if (name == "xline3") return xline3();
    if (name == "rstar") return rstar();
    if (name == "rline") return rline();
    if (name == "r2-rp2") return r2_rp2();
    if (name == "r2minus0") return r2minus0();
    if (name == "rstar2-p2") return rstar2_p2();
    if (name == "klein2") return klein2();
    throw std::invalid_argument("unknown fixture: " + name);
}

}  // namespace wf::fixtures
