#include "amoebalink/tropical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace amoebalink {

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

namespace {

using i128 = __int128;

long long narrow(i128 v, const char* what) {
    if (v > static_cast<i128>(9'000'000'000'000'000'000LL) ||
        v < -static_cast<i128>(9'000'000'000'000'000'000LL))
        throw Error(std::string("tropical: integer overflow in ") + what);
    return static_cast<long long>(v);
}

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rat make_rat(i128 n, i128 d, const char* what) {
    if (d == 0) throw Error("tropical: division by zero");
    if (d < 0) {
        d = -d;
        n = -n;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rat r;
    r.num = narrow(n, what);
    r.den = narrow(d, what);
    if (r.den == 0) r.den = 1;
    return r;
}

}  // namespace

Rat::Rat(long long n, long long d) { *this = make_rat(n, d, "construction"); }

Rat Rat::operator+(const Rat& o) const {
    return make_rat(static_cast<i128>(num) * o.den + static_cast<i128>(o.num) * den,
                    static_cast<i128>(den) * o.den, "addition");
}
Rat Rat::operator-(const Rat& o) const {
    return make_rat(static_cast<i128>(num) * o.den - static_cast<i128>(o.num) * den,
                    static_cast<i128>(den) * o.den, "subtraction");
}
Rat Rat::operator*(const Rat& o) const {
    return make_rat(static_cast<i128>(num) * o.num, static_cast<i128>(den) * o.den,
                    "multiplication");
}
Rat Rat::operator/(const Rat& o) const {
    if (o.num == 0) throw Error("tropical: division by zero");
    return make_rat(static_cast<i128>(num) * o.den, static_cast<i128>(den) * o.num, "division");
}
int Rat::cmp(const Rat& o) const {
    i128 lhs = static_cast<i128>(num) * o.den;
    i128 rhs = static_cast<i128>(o.num) * den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

Rat Rat::from_double(double v) {
    double scaled = std::round(v * 1e6);
    if (!(std::abs(scaled) < 9e17)) throw Error("tropical: value out of range");
    return Rat(static_cast<long long>(scaled), 1'000'000LL);
}

// ---------------------------------------------------------------------------
// TropicalPolynomial
// ---------------------------------------------------------------------------

TropicalPolynomial::TropicalPolynomial(std::vector<TropTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw Error("tropical: no terms");
    std::sort(terms_.begin(), terms_.end(),
              [](const TropTerm& a, const TropTerm& b) { return a.e < b.e; });
    for (size_t k = 1; k < terms_.size(); ++k)
        if (terms_[k].e == terms_[k - 1].e) throw Error("tropical: duplicate exponent");

    long long lcm = 1;
    for (const TropTerm& t : terms_) {
        long long g = std::gcd(lcm, t.value.den);
        i128 next = static_cast<i128>(lcm) / g * t.value.den;
        if (next > 1'000'000'000LL) throw Error("tropical: coefficient denominators too large");
        lcm = static_cast<long long>(next);
    }
    scale_ = lcm;
    lifts_.reserve(terms_.size());
    for (const TropTerm& t : terms_)
        lifts_.push_back(narrow(static_cast<i128>(t.value.num) * (lcm / t.value.den), "lift"));
}

TropicalPolynomial TropicalPolynomial::parse(const std::string& text) {
    std::vector<TropTerm> terms;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        long long i, j;
        double v;
        if (!(ls >> i)) continue;  // blank line
        if (!(ls >> j >> v))
            throw Error("tropical: bad input line " + std::to_string(lineno) + ": " + line);
        terms.push_back({{static_cast<int>(i), static_cast<int>(j)}, Rat::from_double(v)});
    }
    return TropicalPolynomial(std::move(terms));
}

TropEval trop_eval(const TropicalPolynomial& tp, double x1, double x2) {
    constexpr double kTieTol = 1e-9;
    TropEval out;
    double best = -1e308;
    for (const TropTerm& t : tp.terms())
        best = std::max(best, t.value.to_double() + t.e.i * x1 + t.e.j * x2);
    out.value = best;
    for (const TropTerm& t : tp.terms()) {
        double v = t.value.to_double() + t.e.i * x1 + t.e.j * x2;
        if (v >= best - kTieTol) out.argmax.push_back(t.e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Regular subdivision (upper faces of the integer lift)
// ---------------------------------------------------------------------------

namespace {

long long cross2(Exp o, Exp a, Exp b) {
    return static_cast<long long>(a.i - o.i) * (b.j - o.j) -
           static_cast<long long>(a.j - o.j) * (b.i - o.i);
}

// Affine dimension of the exponent set: 0, 1 or 2.
int support_dimension(const std::vector<TropTerm>& terms) {
    if (terms.size() < 2) return 0;
    size_t k = 1;
    while (k < terms.size() && terms[k].e == terms[0].e) ++k;
    if (k == terms.size()) return 0;
    for (size_t m = k + 1; m < terms.size(); ++m)
        if (cross2(terms[0].e, terms[k].e, terms[m].e) != 0) return 2;
    return 1;
}

struct LiftPt {
    Exp e;
    long long v;  // integer lift (value * scale)
};

// Sign of the triple product <(B-A) x (C-A), P-A> with integer lifts.
int orient3(const LiftPt& A, const LiftPt& B, const LiftPt& C, const LiftPt& P) {
    i128 dx1 = B.e.i - A.e.i, dy1 = B.e.j - A.e.j, dv1 = B.v - A.v;
    i128 dx2 = C.e.i - A.e.i, dy2 = C.e.j - A.e.j, dv2 = C.v - A.v;
    i128 dx3 = P.e.i - A.e.i, dy3 = P.e.j - A.e.j, dv3 = P.v - A.v;
    i128 det = dx1 * (dy2 * dv3 - dy3 * dv2) - dy1 * (dx2 * dv3 - dx3 * dv2) +
               dv1 * (dx2 * dy3 - dx3 * dy2);
    return det < 0 ? -1 : (det > 0 ? 1 : 0);
}

std::vector<SubdivCell> upper_cells_2d(const std::vector<LiftPt>& pts) {
    const size_t n = pts.size();
    std::set<std::vector<int>> seen;
    std::vector<SubdivCell> cells;
    for (size_t a = 0; a < n; ++a) {
        for (size_t b = a + 1; b < n; ++b) {
            for (size_t c = b + 1; c < n; ++c) {
                long long nz = cross2(pts[a].e, pts[b].e, pts[c].e);
                if (nz == 0) continue;
                size_t bb = b, cc = c;
                if (nz < 0) std::swap(bb, cc);  // normal now has positive z
                std::vector<int> members;
                bool upper = true;
                for (size_t p = 0; p < n && upper; ++p) {
                    int s = orient3(pts[a], pts[bb], pts[cc], pts[p]);
                    if (s > 0)
                        upper = false;  // a lifted point above the plane
                    else if (s == 0)
                        members.push_back(static_cast<int>(p));
                }
                if (!upper) continue;
                std::sort(members.begin(), members.end());
                if (!seen.insert(members).second) continue;
                SubdivCell cell;
                cell.members = members;
                std::vector<Exp> es;
                es.reserve(members.size());
                for (int m : members) es.push_back(pts[m].e);
                cell.vertices = convex_hull(std::move(es));
                cells.push_back(std::move(cell));
            }
        }
    }
    // deterministic order: by lexicographically smallest vertex
    std::sort(cells.begin(), cells.end(), [](const SubdivCell& x, const SubdivCell& y) {
        return x.vertices < y.vertices;
    });
    return cells;
}

std::vector<SubdivCell> upper_cells_1d(const std::vector<LiftPt>& pts) {
    // primitive direction of the support line
    Exp base = pts[0].e;
    long long gx = 0, gy = 0;
    for (const LiftPt& p : pts) {
        if (p.e == base) continue;
        gx = p.e.i - base.i;
        gy = p.e.j - base.j;
        break;
    }
    long long g = std::gcd(std::llabs(gx), std::llabs(gy));
    gx /= g;
    gy /= g;

    struct Param {
        long long k;
        long long v;
        int idx;
    };
    std::vector<Param> ps;
    ps.reserve(pts.size());
    for (size_t p = 0; p < pts.size(); ++p) {
        long long k = (gx != 0) ? (pts[p].e.i - base.i) / gx : (pts[p].e.j - base.j) / gy;
        ps.push_back({k, pts[p].v, static_cast<int>(p)});
    }
    std::sort(ps.begin(), ps.end(), [](const Param& a, const Param& b) { return a.k < b.k; });

    // strict upper concave chain over (k, v); breakpoints split the segment
    std::vector<Param> chain;
    for (const Param& p : ps) {
        while (chain.size() >= 2) {
            const Param& q1 = chain[chain.size() - 2];
            const Param& q2 = chain[chain.size() - 1];
            i128 lhs = static_cast<i128>(q2.v - q1.v) * (p.k - q1.k);
            i128 rhs = static_cast<i128>(p.v - q1.v) * (q2.k - q1.k);
            if (lhs <= rhs)
                chain.pop_back();  // q2 below or on the segment q1 -> p
            else
                break;
        }
        chain.push_back(p);
    }

    std::vector<SubdivCell> cells;
    for (size_t s = 0; s + 1 < chain.size(); ++s) {
        SubdivCell cell;
        Exp ea = pts[chain[s].idx].e;
        Exp eb = pts[chain[s + 1].idx].e;
        cell.vertices = {std::min(ea, eb), std::max(ea, eb)};
        // members: every support point on the closed segment and on the chain line
        for (const Param& p : ps) {
            if (p.k < std::min(chain[s].k, chain[s + 1].k) ||
                p.k > std::max(chain[s].k, chain[s + 1].k))
                continue;
            i128 lhs = static_cast<i128>(p.v - chain[s].v) * (chain[s + 1].k - chain[s].k);
            i128 rhs = static_cast<i128>(chain[s + 1].v - chain[s].v) * (p.k - chain[s].k);
            if (lhs == rhs) cell.members.push_back(p.idx);
        }
        std::sort(cell.members.begin(), cell.members.end());
        cells.push_back(std::move(cell));
    }
    std::sort(cells.begin(), cells.end(), [](const SubdivCell& x, const SubdivCell& y) {
        return x.vertices < y.vertices;
    });
    return cells;
}

std::vector<SubdivEdge> collect_edges(const std::vector<SubdivCell>& cells, int dimension) {
    std::map<std::pair<Exp, Exp>, std::vector<int>> adj;
    for (size_t c = 0; c < cells.size(); ++c) {
        const auto& vs = cells[c].vertices;
        if (dimension == 1) {
            adj[{vs[0], vs[1]}].push_back(static_cast<int>(c));
            continue;
        }
        for (size_t k = 0; k < vs.size(); ++k) {
            Exp a = vs[k];
            Exp b = vs[(k + 1) % vs.size()];
            adj[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(c));
        }
    }
    std::vector<SubdivEdge> edges;
    edges.reserve(adj.size());
    for (auto& [key, cs] : adj) edges.push_back({key.first, key.second, std::move(cs)});
    return edges;
}

}  // namespace

DualSubdivision dual_subdivision(const TropicalPolynomial& tp) {
    DualSubdivision out;
    std::vector<LiftPt> pts;
    pts.reserve(tp.terms().size());
    for (size_t k = 0; k < tp.terms().size(); ++k)
        pts.push_back({tp.terms()[k].e, tp.lifts()[k]});

    int dim = support_dimension(tp.terms());
    out.dimension = dim;
    if (dim == 0) {
        SubdivCell cell;
        cell.vertices = {pts[0].e};
        cell.members = {0};
        out.cells.push_back(std::move(cell));
        return out;
    }
    out.cells = (dim == 2) ? upper_cells_2d(pts) : upper_cells_1d(pts);
    out.edges = collect_edges(out.cells, dim);
    return out;
}

// ---------------------------------------------------------------------------
// Corner locus
// ---------------------------------------------------------------------------

namespace {

void primitive(long long& x, long long& y) {
    long long g = std::gcd(std::llabs(x), std::llabs(y));
    if (g > 1) {
        x /= g;
        y /= g;
    }
}

// Dual vertex of a 2-cell: the point where all supporting terms tie.
RatPt cell_dual_vertex(const TropicalPolynomial& tp, const SubdivCell& cell) {
    // two independent tie equations <e0 - ek, x> = (lift_k - lift_0)/scale
    const auto& terms = tp.terms();
    const auto& lifts = tp.lifts();
    int m0 = cell.members[0];
    long long a11 = 0, a12 = 0, a21 = 0, a22 = 0, b1 = 0, b2 = 0;
    bool have1 = false, have2 = false;
    for (size_t k = 1; k < cell.members.size() && !(have1 && have2); ++k) {
        int mk = cell.members[k];
        long long di = terms[m0].e.i - terms[mk].e.i;
        long long dj = terms[m0].e.j - terms[mk].e.j;
        long long rhs = lifts[mk] - lifts[m0];
        if (!have1) {
            a11 = di;
            a12 = dj;
            b1 = rhs;
            have1 = true;
            continue;
        }
        if (a11 * dj - a12 * di != 0) {
            a21 = di;
            a22 = dj;
            b2 = rhs;
            have2 = true;
        }
    }
    if (!have2) throw Error("tropical: degenerate cell");
    long long det = a11 * a22 - a12 * a21;
    Rat scale(tp.scale());
    RatPt v;
    v.x = Rat(a22 * b1 - a12 * b2, det) / scale;
    v.y = Rat(a11 * b2 - a21 * b1, det) / scale;
    return v;
}

int sign_rat(const Rat& r) { return r.num < 0 ? -1 : (r.num > 0 ? 1 : 0); }

}  // namespace

TropicalCurve corner_locus(const TropicalPolynomial& tp) {
    if (tp.terms().size() < 2) throw Error("corner_locus: need at least two terms");
    DualSubdivision sub = dual_subdivision(tp);
    if (sub.dimension == 0) throw Error("corner_locus: support is a single point");

    TropicalCurve curve;
    const auto& terms = tp.terms();
    const auto& lifts = tp.lifts();

    if (sub.dimension == 1) {
        // every cell is dual to a full line through its tie locus
        for (const SubdivCell& cell : sub.cells) {
            int ma = -1, mb = -1;  // members at the cell's endpoints
            for (int m : cell.members) {
                if (terms[m].e == cell.vertices[0]) ma = m;
                if (terms[m].e == cell.vertices[1]) mb = m;
            }
            long long di = terms[ma].e.i - terms[mb].e.i;
            long long dj = terms[ma].e.j - terms[mb].e.j;
            Rat rhs = Rat(lifts[mb] - lifts[ma]) / Rat(tp.scale());
            Rat norm2(di * di + dj * dj);
            TropCurveEdge e;
            e.kind = TropEdgeKind::Line;
            e.base.x = Rat(di) * rhs / norm2;
            e.base.y = Rat(dj) * rhs / norm2;
            long long px = -dj, py = di;
            primitive(px, py);
            e.dir[0] = static_cast<int>(px);
            e.dir[1] = static_cast<int>(py);
            e.weight = integer_length({terms[ma].e, terms[mb].e});
            e.dual_a = cell.vertices[0];
            e.dual_b = cell.vertices[1];
            curve.edges.push_back(e);
        }
        return curve;
    }

    curve.vertices.reserve(sub.cells.size());
    for (const SubdivCell& cell : sub.cells) curve.vertices.push_back(cell_dual_vertex(tp, cell));

    for (const SubdivEdge& se : sub.edges) {
        TropCurveEdge e;
        e.dual_a = se.a;
        e.dual_b = se.b;
        e.weight = integer_length({se.a, se.b});
        long long di = se.a.i - se.b.i;
        long long dj = se.a.j - se.b.j;
        long long px = -dj, py = di;
        primitive(px, py);

        if (se.cells.size() == 2) {
            e.kind = TropEdgeKind::Bounded;
            e.v0 = se.cells[0];
            e.v1 = se.cells[1];
            const RatPt& p0 = curve.vertices[e.v0];
            const RatPt& p1 = curve.vertices[e.v1];
            Rat dx = p1.x - p0.x;
            Rat dy = p1.y - p0.y;
            // orient the primitive direction from v0 toward v1
            int s = sign_rat(dx) != 0 ? sign_rat(dx) * (px < 0 ? -1 : (px > 0 ? 1 : 0))
                                      : sign_rat(dy) * (py < 0 ? -1 : (py > 0 ? 1 : 0));
            if (s == 0) throw Error("tropical: coincident dual vertices");
            if (s < 0) {
                px = -px;
                py = -py;
            }
            e.base = p0;
        } else {
            e.kind = TropEdgeKind::Ray;
            e.v0 = se.cells[0];
            e.base = curve.vertices[e.v0];
            // outward = the cell polygon's outer normal along this boundary edge
            const auto& vs = sub.cells[e.v0].vertices;
            size_t n = vs.size();
            long long ox = 0, oy = 0;
            for (size_t k = 0; k < n; ++k) {
                Exp a = vs[k], b = vs[(k + 1) % n];
                if ((a == se.a && b == se.b) || (a == se.b && b == se.a)) {
                    ox = static_cast<long long>(b.j) - a.j;   // rotate edge by -90 deg
                    oy = static_cast<long long>(a.i) - b.i;
                    break;
                }
            }
            if (ox == 0 && oy == 0) throw Error("tropical: boundary edge not on its cell");
            primitive(ox, oy);
            px = ox;
            py = oy;
        }
        e.dir[0] = static_cast<int>(px);
        e.dir[1] = static_cast<int>(py);
        curve.edges.push_back(e);
    }
    return curve;
}

bool balanced(const TropicalCurve& curve) {
    for (size_t v = 0; v < curve.vertices.size(); ++v) {
        long long sx = 0, sy = 0;
        for (const TropCurveEdge& e : curve.edges) {
            if (e.kind == TropEdgeKind::Line) continue;
            if (e.v0 == static_cast<int>(v)) {
                sx += e.weight * e.dir[0];
                sy += e.weight * e.dir[1];
            } else if (e.kind == TropEdgeKind::Bounded && e.v1 == static_cast<int>(v)) {
                sx -= e.weight * e.dir[0];
                sy -= e.weight * e.dir[1];
            }
        }
        if (sx != 0 || sy != 0) return false;
    }
    return true;
}

DualityReport check_duality(const TropicalCurve& curve, const DualSubdivision& subdiv) {
    DualityReport rep;
    std::map<std::pair<Exp, Exp>, int> remaining;
    for (const SubdivEdge& se : subdiv.edges) ++remaining[{se.a, se.b}];
    if (subdiv.edges.empty() && !curve.edges.empty())
        throw Error("check_duality: subdivision has no edges");

    size_t matched = 0;
    for (size_t k = 0; k < curve.edges.size(); ++k) {
        const TropCurveEdge& e = curve.edges[k];
        EdgeCheck chk;
        chk.edge_index = k;
        long long di = e.dual_a.i - e.dual_b.i;
        long long dj = e.dual_a.j - e.dual_b.j;
        chk.direction_ok = (di * e.dir[0] + dj * e.dir[1]) == 0 && !(e.dir[0] == 0 && e.dir[1] == 0);
        chk.weight_ok = e.weight == integer_length({e.dual_a, e.dual_b});
        auto key = std::make_pair(std::min(e.dual_a, e.dual_b), std::max(e.dual_a, e.dual_b));
        auto it = remaining.find(key);
        if (it != remaining.end() && it->second > 0) {
            chk.dual_found = true;
            --it->second;
            ++matched;
        }
        rep.edges.push_back(chk);
    }
    rep.counts_bijective =
        matched == curve.edges.size() && curve.edges.size() == subdiv.edges.size();
    size_t two_cells = 0;
    if (subdiv.dimension == 2) two_cells = subdiv.cells.size();
    rep.vertices_match_cells = curve.vertices.size() == two_cells;
    rep.balanced_ok = balanced(curve);

    rep.pass = rep.counts_bijective && rep.vertices_match_cells && rep.balanced_ok;
    size_t bad = 0;
    for (const EdgeCheck& c : rep.edges)
        if (!c.pass()) {
            rep.pass = false;
            ++bad;
        }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "%s: %zu edges checked, %zu failed, counts %s, balancing %s",
                  rep.pass ? "PASS" : "FAIL", rep.edges.size(), bad,
                  rep.counts_bijective ? "bijective" : "MISMATCH",
                  rep.balanced_ok ? "ok" : "VIOLATED");
    rep.summary = buf;
    return rep;
}

std::string curve_to_text(const TropicalCurve& curve) {
    std::ostringstream out;
    char buf[128];
    out << "{\n  \"vertices\": [";
    for (size_t v = 0; v < curve.vertices.size(); ++v) {
        std::snprintf(buf, sizeof(buf), "%s[%.17g, %.17g]", v ? ", " : "",
                      curve.vertices[v].x.to_double(), curve.vertices[v].y.to_double());
        out << buf;
    }
    out << "],\n  \"edges\": [\n";
    for (size_t k = 0; k < curve.edges.size(); ++k) {
        const TropCurveEdge& e = curve.edges[k];
        const char* kind = e.kind == TropEdgeKind::Bounded ? "bounded"
                           : e.kind == TropEdgeKind::Ray   ? "ray"
                                                           : "line";
        out << "    {\"kind\": \"" << kind << "\", \"v\": [" << e.v0 << ", " << e.v1
            << "], \"dir\": [" << e.dir[0] << ", " << e.dir[1] << "], \"weight\": " << e.weight
            << ", \"dual\": [[" << e.dual_a.i << ", " << e.dual_a.j << "], [" << e.dual_b.i
            << ", " << e.dual_b.j << "]]}";
        out << (k + 1 < curve.edges.size() ? ",\n" : "\n");
    }
    out << "  ]\n}\n";
    return out.str();
}

}  // namespace amoebalink
