#include "bitwist/surgery.hpp"

#include <algorithm>
#include <stdexcept>

namespace bitwist {

Framing Framing::parse(const std::string& s) {
    if (s == "inf" || s == "infinity") return infinity();
    return Framing(mpq_class(s));
}

const mpq_class& Framing::rational() const {
    if (inf_) throw std::logic_error("infinite framing has no rational value");
    return q_;
}

Framing Framing::reciprocal() const {
    if (inf_) return Framing(mpq_class(0));
    if (q_ == 0) return infinity();
    return Framing(mpq_class(1) / q_);
}

Framing Framing::plus(const mpq_class& r) const {
    if (inf_) return *this;
    return Framing(q_ + r);
}

std::string Framing::str() const {
    if (inf_) return "inf";
    return q_.get_str();
}

bool Framing::operator==(const Framing& o) const {
    if (inf_ != o.inf_) return false;
    return inf_ || q_ == o.q_;
}

int FramedLink::index_of(const std::string& id) const {
    for (size_t i = 0; i < components.size(); ++i)
        if (components[i].id == id) return static_cast<int>(i);
    return -1;
}

const LinkComponent& FramedLink::component(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw std::out_of_range("unknown link component " + id);
    return components[i];
}

long long FramedLink::lk(const std::string& a, const std::string& b) const {
    return linking[index_of(a)][index_of(b)];
}

ValidationReport validate_link(const FramedLink& l) {
    ValidationReport r;
    size_t n = l.components.size();
    std::set<std::string> ids;
    for (const auto& c : l.components)
        if (!ids.insert(c.id).second) r.fail("duplicate component id " + c.id);
    if (l.linking.size() != n) r.fail("linking matrix size mismatch");
    for (const auto& row : l.linking)
        if (row.size() != n) r.fail("linking matrix not square");
    if (!r.ok) return r;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (l.linking[i][j] != l.linking[j][i]) {
                r.fail("linking matrix not symmetric");
                return r;
            }
    for (const auto& [k, j] : l.meridians) {
        int ki = l.index_of(k), ji = l.index_of(j);
        if (ki < 0 || ji < 0) {
            r.fail("meridian relation references unknown component");
            continue;
        }
        if (std::abs(l.linking[ki][ji]) != 1)
            r.fail("meridian " + k + " of " + j + " must have linking +-1");
        for (size_t o = 0; o < n; ++o)
            if (o != static_cast<size_t>(ji) && o != static_cast<size_t>(ki) &&
                l.linking[ki][o] != 0)
                r.fail("meridian " + k + " links a third component");
    }
    return r;
}

FramedLink rolfsen_twist(const FramedLink& l, const std::string& j, long long n) {
    int ji = l.index_of(j);
    if (ji < 0) throw std::invalid_argument("unknown component " + j);
    if (!l.components[ji].unknotted)
        throw std::invalid_argument("Rolfsen precondition: component " + j + " not marked unknotted");
    FramedLink out = l;
    // Framing of j: r -> 1/(n + 1/r).
    Framing r = l.components[ji].framing;
    out.components[ji].framing = r.reciprocal().plus(mpq_class(n)).reciprocal();
    int nc = static_cast<int>(l.components.size());
    for (int k = 0; k < nc; ++k) {
        if (k == ji) continue;
        long long lk = l.linking[ji][k];
        out.components[k].framing = l.components[k].framing.plus(mpq_class(n * lk * lk));
        // The twist can knot components passing the disk more than once.
        if (std::abs(lk) > 1) out.components[k].unknotted = false;
    }
    for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b) {
            if (a == b || a == ji || b == ji) continue;
            out.linking[a][b] += n * l.linking[ji][a] * l.linking[ji][b];
        }
    // Meridian relations survive only where the twist region is structurally
    // disjoint, or when it is their own J.
    out.meridians.clear();
    for (const auto& [k, jj] : l.meridians) {
        if (jj == j || k == j) {
            out.meridians.insert({k, jj});
            continue;
        }
        if (l.lk(j, k) == 0 && l.lk(j, jj) == 0) out.meridians.insert({k, jj});
    }
    return out;
}

FramedLink slam_dunk(const FramedLink& l, const std::string& k) {
    int ki = l.index_of(k);
    if (ki < 0) throw std::invalid_argument("unknown component " + k);
    std::string j;
    for (const auto& [mk, mj] : l.meridians)
        if (mk == k) j = mj;
    if (j.empty())
        throw std::invalid_argument("slam-dunk precondition: no meridian relation for " + k);
    int ji = l.index_of(j);
    if (!l.components[ji].framing.is_integer())
        throw std::invalid_argument("slam-dunk precondition: framing of " + j + " is not an integer");

    FramedLink out;
    Framing r = l.components[ki].framing;
    Framing nf = r.reciprocal().is_infinite()
                     ? Framing::infinity()
                     : l.components[ji].framing.plus(-r.reciprocal().rational());
    int nc = static_cast<int>(l.components.size());
    std::vector<int> keep;
    for (int i = 0; i < nc; ++i)
        if (i != ki) keep.push_back(i);
    for (int i : keep) {
        out.components.push_back(l.components[i]);
        if (i == ji) out.components.back().framing = nf;
    }
    out.linking.assign(keep.size(), std::vector<long long>(keep.size(), 0));
    for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = 0; b < keep.size(); ++b) out.linking[a][b] = l.linking[keep[a]][keep[b]];
    for (const auto& [mk, mj] : l.meridians)
        if (mk != k && mj != k) out.meridians.insert({mk, mj});
    return out;
}

FramedLink delete_infinite_components(const FramedLink& l) {
    FramedLink out;
    std::vector<int> keep;
    for (size_t i = 0; i < l.components.size(); ++i)
        if (!l.components[i].framing.is_infinite()) keep.push_back(static_cast<int>(i));
    for (int i : keep) out.components.push_back(l.components[i]);
    out.linking.assign(keep.size(), std::vector<long long>(keep.size(), 0));
    for (size_t a = 0; a < keep.size(); ++a)
        for (size_t b = 0; b < keep.size(); ++b) out.linking[a][b] = l.linking[keep[a]][keep[b]];
    std::set<std::string> kept;
    for (int i : keep) kept.insert(l.components[i].id);
    for (const auto& [mk, mj] : l.meridians)
        if (kept.count(mk) && kept.count(mj)) out.meridians.insert({mk, mj});
    return out;
}

FramedLink simplify_link(FramedLink l) {
    bool progress = true;
    while (progress) {
        progress = false;
        FramedLink dropped = delete_infinite_components(l);
        if (dropped.components.size() != l.components.size()) {
            l = std::move(dropped);
            progress = true;
            continue;
        }
        // Slam-dunk some meridian whose carrier has an integer framing.
        for (const auto& [k, j] : l.meridians) {
            if (!l.component(j).framing.is_integer()) continue;
            l = slam_dunk(l, k);
            progress = true;
            break;
        }
        if (progress) continue;
        // Kill a +-1-framed unknotted component by a Rolfsen twist.
        for (const auto& c : l.components) {
            if (!c.unknotted || c.framing.is_infinite()) continue;
            if (c.framing.rational() != 1 && c.framing.rational() != -1) continue;
            long long n = c.framing.rational() == 1 ? -1 : 1;
            l = rolfsen_twist(l, c.id, n);
            progress = true;
            break;
        }
    }
    return l;
}

AbelianInvariants h1_from_link(const FramedLink& l) {
    int n = static_cast<int>(l.components.size());
    for (const auto& c : l.components)
        if (c.framing.is_infinite())
            throw std::invalid_argument("infinite framing on " + c.id +
                                        ": delete infinity-framed components first");
    IntMatrix a(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; ++i) {
        const mpq_class& f = l.components[i].framing.rational();
        a[i][i] = f.get_num();
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            a[i][j] = f.get_den() * mpz_class(l.linking[i][j]);
        }
    }
    return abelian_invariants_of_matrix(a, n);
}

FramedLink bilink_framings(const FramedLink& l, const std::map<std::string, long long>& blackboard,
                           const MultiplierFunction& mul) {
    FramedLink out = l;
    for (auto& c : out.components) {
        if (c.kind == LinkComponent::Face) {
            c.framing = Framing::of(0);
        } else if (c.kind == LinkComponent::Edge) {
            auto it = blackboard.find(c.id);
            if (it == blackboard.end())
                throw std::invalid_argument("missing blackboard framing for " + c.id);
            auto mit = mul.by_representative.find(c.cycle);
            if (mit == mul.by_representative.end())
                throw std::invalid_argument("component " + c.id + " has no multiplier for cycle '" +
                                            c.cycle + "'");
            c.framing = Framing(mpq_class(it->second) + mpq_class(1, mit->second));
        }
    }
    return out;
}

// --- reflection face-pairings -------------------------------------------------

namespace {

// Edge coverage in the northern disk: equator edges once, interior twice with
// opposite directions.
std::map<std::string, int> disk_coverage(const ReflectionDiagram& d, ValidationReport* r) {
    std::map<std::string, int> pos, neg;
    for (const auto& f : d.faces)
        for (const auto& s : f.boundary) (s.dir > 0 ? pos : neg)[s.edge]++;
    std::map<std::string, int> cover;
    for (const auto& e : d.edges) {
        int p = pos.count(e.id) ? pos[e.id] : 0;
        int n = neg.count(e.id) ? neg[e.id] : 0;
        cover[e.id] = p + n;
        if (p + n == 0 || p + n > 2) {
            if (r) r->fail("edge " + e.id + " covered " + std::to_string(p + n) + " times");
        } else if (p + n == 2 && (p != 1 || n != 1)) {
            if (r) r->fail("interior edge " + e.id + " traversed twice in the same direction");
        }
    }
    return cover;
}

}  // namespace

ValidationReport validate_diagram(const ReflectionDiagram& d) {
    ValidationReport r;
    std::set<std::string> vs(d.vertices.begin(), d.vertices.end());
    if (vs.size() != d.vertices.size()) r.fail("duplicate vertex ids");
    std::set<std::string> es;
    for (const auto& e : d.edges) {
        if (!es.insert(e.id).second) r.fail("duplicate edge id " + e.id);
        if (!vs.count(e.tail) || !vs.count(e.head)) r.fail("edge " + e.id + " has unknown ends");
    }
    if (!r.ok) return r;
    auto cover = disk_coverage(d, &r);
    for (const auto& e : d.edges) {
        if (!d.labels.count(e.id)) r.fail("edge " + e.id + " has no label");
        else if (d.labels.at(e.id) == 0) {
            if (cover[e.id] != 1) r.fail("zero label on interior edge " + e.id);
            if (e.tail == e.head) r.fail("zero label on loop edge " + e.id);
        }
    }
    if (d.faces.empty()) r.fail("diagram has no faces");
    return r;
}

ReflectionBall double_diagram(const ReflectionDiagram& d0) {
    ValidationReport r = validate_diagram(d0);
    if (!r.ok) throw std::invalid_argument("invalid reflection diagram: " + r.violations.front());

    // Collapse zero-labeled equator edges.
    ReflectionDiagram d = d0;
    bool collapsed = true;
    while (collapsed) {
        collapsed = false;
        for (const auto& e : d.edges) {
            if (d.labels.at(e.id) != 0) continue;
            if (e.tail == e.head) throw std::invalid_argument("cannot collapse loop " + e.id);
            std::string keep = e.tail, drop = e.head, dead = e.id;
            for (auto& f : d.faces) {
                std::vector<EdgeSide> nb;
                for (const auto& s : f.boundary)
                    if (s.edge != dead) nb.push_back(s);
                f.boundary = std::move(nb);
            }
            for (auto& ee : d.edges) {
                if (ee.tail == drop) ee.tail = keep;
                if (ee.head == drop) ee.head = keep;
            }
            d.vertices.erase(std::remove(d.vertices.begin(), d.vertices.end(), drop),
                             d.vertices.end());
            d.edges.erase(std::remove_if(d.edges.begin(), d.edges.end(),
                                         [&](const EdgeRec& x) { return x.id == dead; }),
                          d.edges.end());
            d.labels.erase(dead);
            collapsed = true;
            break;
        }
    }
    for (const auto& f : d.faces)
        if (f.boundary.empty()) throw std::invalid_argument("face collapsed away entirely");

    auto cover = disk_coverage(d, nullptr);

    ReflectionBall out;
    FacetedBall& b = out.pairing.base;
    b.vertices = d.vertices;
    std::set<std::string> interior_vertices(d.vertices.begin(), d.vertices.end());
    for (const auto& e : d.edges) {
        b.edges.push_back(e);
        if (cover[e.id] == 1) {
            out.equator_edges.insert(e.id);
            // Equator endpoints stay shared.
        }
    }
    for (const auto& e : d.edges)
        if (cover[e.id] == 1) {
            interior_vertices.erase(e.tail);
            interior_vertices.erase(e.head);
        }
    auto mirror_vertex = [&](const std::string& v) {
        return interior_vertices.count(v) ? v + ".s" : v;
    };
    for (const auto& v : interior_vertices) b.vertices.push_back(v + ".s");
    for (const auto& e : d.edges) {
        if (cover[e.id] == 1) continue;
        b.edges.push_back({e.id + ".s", mirror_vertex(e.tail), mirror_vertex(e.head)});
    }
    auto mirror_edge = [&](const std::string& id) {
        return out.equator_edges.count(id) ? id : id + ".s";
    };
    for (const auto& f : d.faces) {
        b.faces.push_back(f);
        FaceRec m{f.id + ".s", {}};
        for (auto it = f.boundary.rbegin(); it != f.boundary.rend(); ++it)
            m.boundary.push_back({mirror_edge(it->edge), -it->dir});
        b.faces.push_back(std::move(m));
    }
    ValidationReport br = validate_sphere(b);
    if (!br.ok) throw std::logic_error("doubled diagram is not a sphere: " + br.violations.front());

    // Reflection pairing: slot i of f maps to slot L-1-i of the mirror, i.e.
    // offset L-1.
    for (const auto& f : d.faces) {
        int L = static_cast<int>(f.boundary.size());
        out.pairing.pairing.pairs.push_back({f.id, f.id + ".s", L - 1});
    }
    ValidationReport pr = validate_pairing(out.pairing);
    if (!pr.ok) throw std::logic_error("reflection pairing invalid: " + pr.violations.front());

    out.cycles = edge_cycles(out.pairing);
    std::map<std::string, long long> values;
    for (const auto& [e, v] : d.labels) values[e] = v;
    out.mul = attach_multipliers(out.cycles, values);
    return out;
}

ReflectionDiagram scallop(const std::vector<long long>& multipliers) {
    int k = static_cast<int>(multipliers.size());
    if (k < 1) throw std::invalid_argument("scallop needs at least one face");
    ReflectionDiagram d;
    if (k == 1) {
        d.vertices = {"v"};
        d.edges.push_back({"e1", "v", "v"});
        d.faces.push_back({"f1", {{"e1", +1}}});
        d.labels["e1"] = multipliers[0];
        return d;
    }
    d.vertices.push_back("v");
    for (int i = 1; i < k; ++i) d.vertices.push_back("u" + std::to_string(i));
    auto u = [&](int i) { return "u" + std::to_string(i); };
    d.edges.push_back({"e1", "v", u(1)});
    for (int i = 2; i < k; ++i) d.edges.push_back({"e" + std::to_string(i), u(i - 1), u(i)});
    d.edges.push_back({"e" + std::to_string(k), u(k - 1), "v"});
    for (int i = 1; i < k; ++i) d.edges.push_back({"s" + std::to_string(i), "v", u(i)});
    d.faces.push_back({"f1", {{"e1", +1}, {"s1", -1}}});
    for (int i = 2; i < k; ++i)
        d.faces.push_back({"f" + std::to_string(i),
                           {{"s" + std::to_string(i - 1), +1},
                            {"e" + std::to_string(i), +1},
                            {"s" + std::to_string(i), -1}}});
    d.faces.push_back({"f" + std::to_string(k), {{"s" + std::to_string(k - 1), +1},
                                                 {"e" + std::to_string(k), +1}}});
    for (int i = 1; i <= k; ++i) d.labels["e" + std::to_string(i)] = multipliers[i - 1];
    for (int i = 1; i < k; ++i) d.labels["s" + std::to_string(i)] = 1;
    return d;
}

FramedLink reflection_link(const ReflectionDiagram& d0, int sigma) {
    if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +-1");
    ReflectionBall rb = double_diagram(d0);

    // Rebuild the collapsed northern diagram from the doubled ball: northern
    // faces are those without the ".s" suffix.
    FramedLink l;
    std::vector<std::string> faces, edges;
    std::set<std::string> northern_edges;
    for (const auto& f : rb.pairing.base.faces) {
        if (f.id.size() > 2 && f.id.substr(f.id.size() - 2) == ".s") continue;
        faces.push_back(f.id);
        for (const auto& s : f.boundary) northern_edges.insert(s.edge);
    }
    for (const auto& e : northern_edges)
        if (e.size() <= 2 || e.substr(e.size() - 2) != ".s") edges.push_back(e);
    std::sort(edges.begin(), edges.end());

    for (const auto& f : faces) {
        LinkComponent c;
        c.id = "F:" + f;
        c.kind = LinkComponent::Face;
        c.framing = Framing::of(0);
        c.unknotted = true;
        l.components.push_back(c);
    }
    for (const auto& e : edges) {
        LinkComponent c;
        c.id = "E:" + e;
        c.kind = LinkComponent::Edge;
        c.cycle = rb.cycles.cycles[rb.cycles.cycle_of_edge.at(e)].representative;
        long long m = rb.mul.by_representative.at(c.cycle);
        c.framing = Framing(mpq_class(sigma, m));
        c.unknotted = true;
        l.components.push_back(c);
    }
    int n = static_cast<int>(l.components.size());
    l.linking.assign(n, std::vector<long long>(n, 0));
    for (const auto& e : edges) {
        int ei = l.index_of("E:" + e);
        // An edge component links the face components whose northern boundary
        // contains the edge (once per incidence).
        for (const auto& fid : faces) {
            const FaceRec& f = rb.pairing.base.face(fid);
            int count = 0;
            for (const auto& s : f.boundary)
                if (s.edge == e) ++count;
            if (count > 0) {
                int fi = l.index_of("F:" + fid);
                l.linking[ei][fi] = l.linking[fi][ei] = count;
            }
        }
        if (rb.equator_edges.count(e)) {
            // The cycle of an equator edge is just itself: its component is a
            // meridian of its face component.
            for (const auto& fid : faces) {
                const FaceRec& f = rb.pairing.base.face(fid);
                for (const auto& s : f.boundary)
                    if (s.edge == e) l.meridians.insert({"E:" + e, "F:" + fid});
            }
        }
    }
    ValidationReport lr = validate_link(l);
    if (!lr.ok) throw std::logic_error("reflection link invalid: " + lr.violations.front());
    return l;
}

// --- lens spaces ---------------------------------------------------------------

LensParams lens_from_multipliers(const std::vector<long long>& m) {
    int k = static_cast<int>(m.size());
    if (k < 1) throw std::invalid_argument("empty multiplier list");
    if (m.front() <= 0 || m.back() <= 0)
        throw std::invalid_argument("m1 and mk must be positive");
    for (int i = 1; i + 1 < k; ++i)
        if (m[i] < 0) throw std::invalid_argument("interior multipliers must be >= 0");

    LensParams out;
    out.m = m;
    if (k == 1) {
        out.a = {m[0]};
    } else {
        out.a.push_back(m.front() + 1);
        for (int i = 1; i + 1 < k; ++i) out.a.push_back(m[i] + 2);
        out.a.push_back(m.back() + 1);
    }
    mpq_class x(out.a.back());
    for (int i = k - 2; i >= 0; --i) x = mpq_class(out.a[i]) - 1 / x;
    x.canonicalize();
    out.p = x.get_num();
    out.q = x.get_den();
    return out;
}

LensParams multipliers_from_lens(const mpz_class& p, const mpz_class& q) {
    if (p < q || q < 1) throw std::invalid_argument("need p >= q >= 1");
    if (gcd(p, q) != 1) throw std::invalid_argument("p and q must be coprime");
    LensParams out;
    out.p = p;
    out.q = q;
    mpq_class x(p, q);
    x.canonicalize();
    while (true) {
        mpz_class a;
        mpz_cdiv_q(a.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
        out.a.push_back(a.get_si());
        if (x == mpq_class(a)) break;
        x = 1 / (mpq_class(a) - x);
        x.canonicalize();
    }
    int k = static_cast<int>(out.a.size());
    if (k == 1) {
        out.m = {out.a[0]};
    } else {
        out.m.push_back(out.a.front() - 1);
        for (int i = 1; i + 1 < k; ++i) out.m.push_back(out.a[i] - 2);
        out.m.push_back(out.a.back() - 1);
    }
    return out;
}

// --- connected sums ------------------------------------------------------------

namespace {

FacetedBall prefix_ball(const FacetedBall& b, const std::string& pre) {
    FacetedBall out;
    for (const auto& v : b.vertices) out.vertices.push_back(pre + v);
    for (const auto& e : b.edges) out.edges.push_back({pre + e.id, pre + e.tail, pre + e.head});
    for (const auto& f : b.faces) {
        FaceRec nf{pre + f.id, {}};
        for (const auto& s : f.boundary) nf.boundary.push_back({pre + s.edge, s.dir});
        out.faces.push_back(std::move(nf));
    }
    return out;
}

// Replace edge e by a parallel pair bounding a digon: the dir=+1 occurrence
// becomes e.a, the dir=-1 occurrence e.b; both run tail->head.
void digonize(FacetedBall& b, const std::string& e) {
    const EdgeRec rec = b.edge(e);
    for (auto& f : b.faces)
        for (auto& s : f.boundary)
            if (s.edge == e) s.edge = s.dir > 0 ? e + ".a" : e + ".b";
    b.edges.erase(std::remove_if(b.edges.begin(), b.edges.end(),
                                 [&](const EdgeRec& x) { return x.id == e; }),
                  b.edges.end());
    b.edges.push_back({e + ".a", rec.tail, rec.head});
    b.edges.push_back({e + ".b", rec.tail, rec.head});
    b.invalidate_index();
}

}  // namespace

PairedBall connected_sum(const FacePairing& p1, const MultiplierFunction& m1, const std::string& e1,
                         const FacePairing& p2, const MultiplierFunction& m2, const std::string& e2) {
    EdgeCycleSet c1 = edge_cycles(p1), c2 = edge_cycles(p2);
    long long v1 = m1.of_cycle(c1, e1);
    long long v2 = m2.of_cycle(c2, e2);
    if (v1 != v2)
        throw std::invalid_argument("multiplier mismatch: mul[" + e1 + "]=" + std::to_string(v1) +
                                    ", mul[" + e2 + "]=" + std::to_string(v2));
    const EdgeRec& r1 = p1.base.edge(e1);
    const EdgeRec& r2 = p2.base.edge(e2);
    if (r1.tail == r1.head && r2.tail == r2.head)
        throw std::invalid_argument("both edges are loops");

    FacetedBall a = prefix_ball(p1.base, "A.");
    FacetedBall b = prefix_ball(p2.base, "B.");
    std::string ea = "A." + e1, eb = "B." + e2;
    digonize(a, ea);
    digonize(b, eb);

    // Glue the digons orientation-reversingly: A-side e.b with B-side e.a and
    // A-side e.a with B-side e.b, aligned tail-to-tail.
    std::map<std::string, std::string> vmap{{b.edge(eb + ".a").tail, a.edge(ea + ".a").tail},
                                            {b.edge(eb + ".a").head, a.edge(ea + ".a").head}};
    std::map<std::string, std::string> emap{{eb + ".a", ea + ".b"}, {eb + ".b", ea + ".a"}};

    PairedBall out;
    FacetedBall& res = out.pairing.base;
    res = a;
    for (const auto& v : b.vertices)
        if (!vmap.count(v)) res.vertices.push_back(v);
    for (const auto& e : b.edges) {
        if (emap.count(e.id)) continue;
        auto mv = [&](const std::string& v) { return vmap.count(v) ? vmap.at(v) : v; };
        res.edges.push_back({e.id, mv(e.tail), mv(e.head)});
    }
    for (const auto& f : b.faces) {
        FaceRec nf{f.id, {}};
        for (const auto& s : f.boundary)
            nf.boundary.push_back({emap.count(s.edge) ? emap.at(s.edge) : s.edge, s.dir});
        res.faces.push_back(std::move(nf));
    }
    res.invalidate_index();
    ValidationReport vr = validate_sphere(res);
    if (!vr.ok) throw std::logic_error("connected sum is not a sphere: " + vr.violations.front());

    for (const auto& pr : p1.pairing.pairs)
        out.pairing.pairing.pairs.push_back({"A." + pr.from, "A." + pr.to, pr.offset});
    for (const auto& pr : p2.pairing.pairs)
        out.pairing.pairing.pairs.push_back({"B." + pr.from, "B." + pr.to, pr.offset});
    ValidationReport pvr = validate_pairing(out.pairing);
    if (!pvr.ok) throw std::logic_error("connected sum pairing invalid: " + pvr.violations.front());

    out.cycles = edge_cycles(out.pairing);
    // Per-edge values: inherited from the summands; the amalgamated pair of
    // digon edges carries the shared value.
    std::map<std::string, long long> values;
    auto fill = [&](const FacePairing& p, const MultiplierFunction& m, const EdgeCycleSet& cs,
                    const std::string& pre) {
        for (const auto& e : p.base.edges) {
            std::string ne = pre + e.id;
            if (res.edge_index(ne) < 0) continue;
            values[ne] = m.by_representative.at(cs.cycles[cs.cycle_of_edge.at(e.id)].representative);
        }
    };
    fill(p1, m1, c1, "A.");
    fill(p2, m2, c2, "B.");
    values[ea + ".a"] = v1;
    values[ea + ".b"] = v1;
    out.mul = attach_multipliers(out.cycles, values);
    return out;
}

ReframeResult attach_scallops(const FacePairing& p, const std::map<std::string, mpq_class>& alpha) {
    ReframeResult out;
    out.pairing = p;
    out.cycles = edge_cycles(p);

    // Every cycle needs a coefficient.
    std::map<std::string, mpq_class> by_rep;
    for (const auto& [edge, a] : alpha) {
        auto it = out.cycles.cycle_of_edge.find(edge);
        if (it == out.cycles.cycle_of_edge.end())
            throw std::invalid_argument("unknown edge in alpha map: " + edge);
        std::string rep = out.cycles.cycles[it->second].representative;
        mpq_class v = a;
        v.canonicalize();
        if (v == 0)
            throw std::invalid_argument(
                "alpha = 0 not supported (the edge component would get framing infinity and the "
                "ball would degenerate)");
        auto [pos, fresh] = by_rep.insert({rep, v});
        if (!fresh && pos->second != v)
            throw std::invalid_argument("conflicting alpha values on one cycle");
    }
    for (const auto& cy : out.cycles.cycles)
        if (!by_rep.count(cy.representative))
            throw std::invalid_argument("missing alpha for cycle of " + cy.representative);

    // Resolve each cycle: reciprocal alphas set the multiplier directly, the
    // rest get a scallop attached.
    std::map<std::string, long long> values;  // per-edge in the current base
    struct Pending {
        std::string rep;
        mpq_class alpha;
        std::vector<long long> scallop_mult;
        long long attached = 0;
    };
    std::vector<Pending> pending;
    for (const auto& cy : out.cycles.cycles) {
        const mpq_class& a = by_rep.at(cy.representative);
        ReframeStep step;
        step.cycle = cy.representative;
        step.alpha = a;
        if (abs(a.get_num()) == 1) {
            // alpha = 1/n: mul = n.
            long long n = (a.get_num() > 0 ? 1 : -1) * a.get_den().get_si();
            step.reciprocal_case = true;
            step.attached_multiplier = n;
            step.identity_holds = true;  // b + 1/n - 1/n... nothing attached
            for (const auto& hop : cy.trace) values[hop.edge] = n;
            out.steps.push_back(step);
            continue;
        }
        bool negative = a < 0;
        mpq_class x = negative ? mpq_class(1 - a) : mpq_class(1 + a);
        x.canonicalize();
        LensParams lp = multipliers_from_lens(x.get_num(), x.get_den());
        long long attached = negative ? +1 : -1;
        // b + mul^-1 -+ x = b + alpha, with the sign of x matching the case.
        mpq_class mul_inv(1, attached);
        mul_inv.canonicalize();
        mpq_class check = mul_inv + (negative ? -x : x);
        step.attached_multiplier = attached;
        step.scallop_multipliers = lp.m;
        step.identity_holds = (check == a);
        if (!step.identity_holds)
            throw std::logic_error("reframing slam-dunk identity failed for cycle " +
                                   cy.representative);
        for (const auto& hop : cy.trace) values[hop.edge] = attached;
        pending.push_back({cy.representative, a, lp.m, attached});
        out.steps.push_back(step);
    }

    FacePairing base = p;
    MultiplierFunction mul = attach_multipliers(out.cycles, values);
    // Names of the pending attachment edges drift as connected sums prefix
    // the ids; track them explicitly.
    std::map<std::string, std::string> current_name;
    for (const auto& task : pending) current_name[task.rep] = task.rep;
    for (const auto& task : pending) {
        // Extended scallop: a leading digon labeled with the attached
        // multiplier, then the expansion multipliers.
        std::vector<long long> ext;
        ext.push_back(task.attached);
        for (long long v : task.scallop_mult) ext.push_back(v);
        ReflectionBall sc = double_diagram(scallop(ext));
        std::string base_edge = current_name.at(task.rep);
        PairedBall sum = connected_sum(base, mul, base_edge, sc.pairing, sc.mul, "e1");
        base = sum.pairing;
        mul = sum.mul;
        for (auto& [rep, name] : current_name) name = "A." + name;
    }
    out.pairing = base;
    out.cycles = edge_cycles(base);
    out.mul = mul;
    return out;
}

}  // namespace bitwist
