#include "wf/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace wf {

const std::string& ChainComplex::label(int k, std::size_t i) const {
    static const std::string empty;
    if (k < min_degree || k > max_degree) return empty;
    auto& l = labels[std::size_t(k - min_degree)];
    if (i >= l.size()) return empty;
    return l[i];
}

std::optional<int> ChainComplex::validate() const {
    for (int k = min_degree + 1; k <= max_degree; ++k) {
        if (!d(k - 1).mul(d(k)).is_zero()) return k;
    }
    for (int k = min_degree; k <= max_degree; ++k) {
        const BitMatrix& m = boundary[std::size_t(k - min_degree)];
        if (m.cols() != dim(k) || m.rows() != dim(k - 1)) return k;
    }
    return std::nullopt;
}

ComplexBuilder::ComplexBuilder(int min_degree, int max_degree) : min_(min_degree), max_(max_degree) {
    if (max_ >= min_) {
        labels_.resize(std::size_t(max_ - min_ + 1));
        incid_.resize(std::size_t(max_ - min_ + 1));
    }
}

std::size_t ComplexBuilder::add_cell(int degree, std::string label) {
    if (degree < min_ || degree > max_) throw std::invalid_argument("add_cell: degree out of range");
    auto& l = labels_[std::size_t(degree - min_)];
    l.push_back(std::move(label));
    return l.size() - 1;
}

void ComplexBuilder::add_boundary(int degree, std::size_t cell, std::size_t face) {
    if (degree <= min_ || degree > max_) throw std::invalid_argument("add_boundary: degree out of range");
    incid_[std::size_t(degree - min_)].push_back({cell, face});
}

std::size_t ComplexBuilder::dim(int degree) const {
    if (degree < min_ || degree > max_) return 0;
    return labels_[std::size_t(degree - min_)].size();
}

ChainComplex ComplexBuilder::build() const {
    ChainComplex c;
    c.min_degree = min_;
    c.max_degree = max_;
    if (max_ < min_) return c;
    c.labels = labels_;
    for (int k = min_; k <= max_; ++k) {
        c.dims.push_back(labels_[std::size_t(k - min_)].size());
    }
    for (int k = min_; k <= max_; ++k) {
        std::size_t lo = k == min_ ? 0 : c.dims[std::size_t(k - 1 - min_)];
        BitMatrix m(lo, c.dims[std::size_t(k - min_)]);
        for (auto& [cell, face] : incid_[std::size_t(k - min_)]) m.row(face).flip(cell);
        c.boundary.push_back(std::move(m));
    }
    return c;
}

HomologyData homology(const ChainComplex& c) {
    if (auto bad = c.validate())
        throw std::invalid_argument("homology: boundary square nonzero at degree " + std::to_string(*bad));
    HomologyData h;
    h.min_degree = c.min_degree;
    h.max_degree = c.max_degree;
    for (int k = c.min_degree; k <= c.max_degree; ++k) {
        Subspace cycles = Subspace::kernel(c.d(k));
        Subspace bdries = Subspace::column_space(c.d(k + 1));
        h.classes.emplace_back(std::move(cycles), std::move(bdries));
    }
    return h;
}

bool is_acyclic(const ChainComplex& c) {
    HomologyData h = homology(c);
    for (auto& q : h.classes)
        if (q.dim() != 0) return false;
    return true;
}

ChainComplex dualize(const ChainComplex& c) {
    ChainComplex d;
    d.min_degree = c.min_degree;
    d.max_degree = c.max_degree;
    if (c.empty()) return d;
    int s = c.min_degree + c.max_degree;
    for (int k = d.min_degree; k <= d.max_degree; ++k) d.dims.push_back(c.dim(s - k));
    for (int k = d.min_degree; k <= d.max_degree; ++k) {
        // d_k : dual(C_{s-k}) -> dual(C_{s-k+1}) is the transpose of the
        // input boundary C_{s-k+1} -> C_{s-k}.
        d.boundary.push_back(c.d(s - k + 1).transpose());
    }
    d.labels.resize(d.dims.size());
    return d;
}

ChainMap identity_map(const ChainComplex& c) {
    ChainMap f;
    for (int k = c.min_degree; k <= c.max_degree; ++k) f.maps[k] = BitMatrix::identity(c.dim(k));
    return f;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& src,
                 const ChainComplex& mid, const ChainComplex& dst) {
    ChainMap h;
    int lo = std::min(src.min_degree, dst.min_degree);
    int hi = std::max(src.max_degree, dst.max_degree);
    for (int k = lo; k <= hi; ++k) h.maps[k] = g.at(k, mid, dst).mul(f.at(k, src, mid));
    return h;
}

std::optional<std::string> chain_map_defect(const ChainMap& f, const ChainComplex& src,
                                            const ChainComplex& dst) {
    int lo = std::min(src.min_degree, dst.min_degree);
    int hi = std::max(src.max_degree, dst.max_degree);
    for (int k = lo; k <= hi; ++k) {
        BitMatrix a = f.at(k - 1, src, dst).mul(src.d(k));
        BitMatrix b = dst.d(k).mul(f.at(k, src, dst));
        if (!(a == b)) return "chain map fails to commute with boundary at degree " + std::to_string(k);
    }
    return std::nullopt;
}

BitMatrix induced_on_homology(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst,
                              const HomologyData& hs, const HomologyData& hd, int k) {
    std::size_t ds = hs.dim(k), dd = hd.dim(k);
    BitMatrix m(dd, ds);
    if (ds == 0 || dd == 0) return m;
    BitMatrix fk = f.at(k, src, dst);
    for (std::size_t j = 0; j < ds; ++j) {
        BitVector img = fk.apply(hs.at(k).reps()[j]);
        BitVector co = hd.at(k).coords(img);
        for (std::size_t i = 0; i < dd; ++i)
            if (co.get(i)) m.set(i, j);
    }
    return m;
}

bool is_quasi_iso(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst) {
    HomologyData hs = homology(src), hd = homology(dst);
    int lo = std::min(src.min_degree, dst.min_degree);
    int hi = std::max(src.max_degree, dst.max_degree);
    for (int k = lo; k <= hi; ++k) {
        if (hs.dim(k) != hd.dim(k)) return false;
        BitMatrix m = induced_on_homology(f, src, dst, hs, hd, k);
        if (m.rank() != hs.dim(k)) return false;
    }
    return true;
}

ChainComplex mapping_cone(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst) {
    if (auto msg = chain_map_defect(f, src, dst)) throw std::invalid_argument("mapping_cone: " + *msg);
    ChainComplex c;
    c.min_degree = std::min(src.min_degree + 1, dst.min_degree);
    c.max_degree = std::max(src.max_degree + 1, dst.max_degree);
    if (c.max_degree < c.min_degree) return c;
    for (int k = c.min_degree; k <= c.max_degree; ++k) c.dims.push_back(src.dim(k - 1) + dst.dim(k));
    for (int k = c.min_degree; k <= c.max_degree; ++k) {
        std::size_t rows = k == c.min_degree ? 0 : c.dims[std::size_t(k - 1 - c.min_degree)];
        BitMatrix m(rows, c.dims[std::size_t(k - c.min_degree)]);
        if (rows) {
            // block layout: [src_{k-1} | dst_k] -> [src_{k-2} | dst_{k-1}]
            BitMatrix da = src.d(k - 1);
            BitMatrix db = dst.d(k);
            BitMatrix fk = f.at(k - 1, src, dst);
            std::size_t ra = src.dim(k - 2);
            std::size_t ca = src.dim(k - 1);
            for (std::size_t i = 0; i < da.rows(); ++i)
                for (std::size_t j = 0; j < da.cols(); ++j)
                    if (da.get(i, j)) m.set(i, j);
            for (std::size_t i = 0; i < fk.rows(); ++i)
                for (std::size_t j = 0; j < fk.cols(); ++j)
                    if (fk.get(i, j)) m.set(ra + i, j);
            for (std::size_t i = 0; i < db.rows(); ++i)
                for (std::size_t j = 0; j < db.cols(); ++j)
                    if (db.get(i, j)) m.set(ra + i, ca + j);
        }
        c.boundary.push_back(std::move(m));
    }
    c.labels.resize(c.dims.size());
    return c;
}

const ChainComplex& CubeDiagram::node(unsigned mask) const {
    auto it = nodes.find(mask);
    if (it == nodes.end()) {
        static const ChainComplex zero;
        return zero;
    }
    return it->second;
}

std::optional<std::string> cube_defect(const CubeDiagram& d) {
    unsigned full = (1u << d.directions) - 1;
    for (unsigned mask = 1; mask <= full; ++mask) {
        for (int a = 0; a < d.directions; ++a) {
            if (!(mask & (1u << a))) continue;
            unsigned m1 = mask & ~(1u << a);
            if (m1 == 0) continue;
            auto it1 = d.arrows.find({mask, m1});
            if (it1 == d.arrows.end() && !d.node(mask).empty() && !d.node(m1).empty())
                return "missing arrow";
            for (int b = a + 1; b < d.directions; ++b) {
                if (!(mask & (1u << b))) continue;
                unsigned mb = mask & ~(1u << b);
                unsigned m2 = m1 & ~(1u << b);
                if (m2 == 0) continue;
                auto f1 = d.arrows.find({mask, m1});
                auto f2 = d.arrows.find({m1, m2});
                auto g1 = d.arrows.find({mask, mb});
                auto g2 = d.arrows.find({mb, m2});
                if (f1 == d.arrows.end() || f2 == d.arrows.end() || g1 == d.arrows.end() ||
                    g2 == d.arrows.end())
                    continue;
                ChainMap p = compose(f2->second, f1->second, d.node(mask), d.node(m1), d.node(m2));
                ChainMap q = compose(g2->second, g1->second, d.node(mask), d.node(mb), d.node(m2));
                for (auto& [k, mat] : p.maps) {
                    if (!(mat == q.at(k, d.node(mask), d.node(m2))))
                        return "diagram does not commute between subsets";
                }
            }
        }
    }
    return std::nullopt;
}

std::size_t TotalLayout::offset(int total_deg, unsigned mask, int internal_deg) const {
    auto& bl = blocks[std::size_t(total_deg - min_degree)];
    for (auto& [m, l, off, dim] : bl) {
        if (m == mask && l == internal_deg) return off;
    }
    throw std::invalid_argument("TotalLayout::offset: no such block");
}

TotalComplex total_complex(const CubeDiagram& d) {
    if (auto msg = cube_defect(d)) throw std::invalid_argument("total_complex: " + *msg);
    unsigned full = (1u << d.directions) - 1;
    int lo = 0, hi = -1;
    bool any = false;
    for (unsigned mask = 1; mask <= full; ++mask) {
        const ChainComplex& n = d.node(mask);
        if (n.empty()) continue;
        int q = __builtin_popcount(mask) - 1;
        if (!any) {
            lo = n.min_degree + q;
            hi = n.max_degree + q;
            any = true;
        } else {
            lo = std::min(lo, n.min_degree + q);
            hi = std::max(hi, n.max_degree + q);
        }
    }
    TotalComplex out;
    out.complex.min_degree = lo;
    out.complex.max_degree = hi;
    out.layout.min_degree = lo;
    out.layout.max_degree = hi;
    if (!any) {
        out.complex.max_degree = out.complex.min_degree - 1;
        out.layout.max_degree = out.layout.min_degree - 1;
        return out;
    }
    out.layout.blocks.resize(std::size_t(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
        std::size_t off = 0;
        for (unsigned mask = 1; mask <= full; ++mask) {
            const ChainComplex& n = d.node(mask);
            if (n.empty()) continue;
            int q = __builtin_popcount(mask) - 1;
            int l = k - q;
            std::size_t dm = n.dim(l);
            if (dm == 0) continue;
            out.layout.blocks[std::size_t(k - lo)].push_back({mask, l, off, dm});
            off += dm;
        }
        out.complex.dims.push_back(off);
    }
    out.complex.labels.resize(out.complex.dims.size());
    for (int k = lo; k <= hi; ++k) {
        std::size_t rows = k == lo ? 0 : out.complex.dims[std::size_t(k - 1 - lo)];
        BitMatrix m(rows, out.complex.dims[std::size_t(k - lo)]);
        if (rows) {
            for (auto& [mask, l, off, dm] : out.layout.blocks[std::size_t(k - lo)]) {
                const ChainComplex& n = d.node(mask);
                // internal boundary: same node, degree l-1
                if (n.dim(l - 1) > 0) {
                    std::size_t off2 = out.layout.offset(k - 1, mask, l - 1);
                    BitMatrix b = n.d(l);
                    for (std::size_t i = 0; i < b.rows(); ++i)
                        for (std::size_t j = 0; j < b.cols(); ++j)
                            if (b.get(i, j)) m.set(off2 + i, off + j);
                }
                // diagram arrows to facets: degree l, cardinality drops by one
                for (int a = 0; a < d.directions; ++a) {
                    if (!(mask & (1u << a))) continue;
                    unsigned m1 = mask & ~(1u << a);
                    if (m1 == 0) continue;
                    const ChainComplex& n1 = d.node(m1);
                    if (n1.dim(l) == 0) continue;
                    auto it = d.arrows.find({mask, m1});
                    if (it == d.arrows.end()) continue;
                    BitMatrix f = it->second.at(l, n, n1);
                    std::size_t off2 = out.layout.offset(k - 1, m1, l);
                    for (std::size_t i = 0; i < f.rows(); ++i)
                        for (std::size_t j = 0; j < f.cols(); ++j)
                            if (f.get(i, j)) m.set(off2 + i, off + j);
                }
            }
        }
        out.complex.boundary.push_back(std::move(m));
    }
    if (auto bad = out.complex.validate())
        throw std::logic_error("total_complex: square-zero failure at degree " + std::to_string(*bad));
    return out;
}

}  // namespace wf
