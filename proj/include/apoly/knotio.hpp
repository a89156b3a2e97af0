#pragma once
// Knot diagram input: DT codes (with planar realization search), PD codes,
// and braid-word closures; Wirtinger presentations with preferred-longitude
// words; Tietze simplification; Fox-calculus invariants used to validate
// diagram data (determinant, Alexander polynomial, 3-coloring count).
//
// Conventions (documented in the README):
//  * Arcs of an n-crossing diagram are numbered 0..n-1; Wirtinger generator
//    k+1 is the meridian of arc k. Generator 1 is the distinguished meridian
//    (the arc through walk-time 1).
//  * A positive crossing is right-handed: the under strand passes from the
//    right of the over strand to its left, seen along the over direction.
//  * DT codes pair odd walk times 1,3,..,2n-1 with signed even times; a
//    positive entry means the odd passage goes under.
//  * The longitude is the product of over-strand conjugators collected while
//    walking the knot, composed right-to-left (w_n ... w_1), times
//    meridian^(-writhe) so it nullhomologizes in the complement.
//  * Group words are integer vectors: letter +g / -g is generator g or its
//    inverse, 1-indexed.

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "apoly/polyops.hpp"

namespace apoly {

struct Crossing {
    int under_in = 0;   // arc ending at this underpass
    int under_out = 0;  // arc starting here
    int over = 0;       // arc passing over
    int sign = 0;       // +1 right-handed, -1 left-handed
    int under_time = 0; // walk time of the underpass (orders the longitude)
};

struct KnotDiagram {
    int n = 0;  // crossings (= arcs); 0 means the unknot
    std::vector<Crossing> crossings;
    int writhe() const {
        int w = 0;
        for (auto& c : crossings) w += c.sign;
        return w;
    }
};

using Word = std::vector<int>;

struct KnotPresentation {
    int ngens = 0;
    std::vector<Word> relators;
    Word longitude;
    int writhe = 0;  // of the source diagram (0 after simplification-only ops)
};

// ---------------------------------------------------------------------------
// group-word helpers

inline Word free_reduce(const Word& w) {
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

inline Word cyclic_reduce(Word w) {
    w = free_reduce(w);
    while (w.size() >= 2 && w.front() == -w.back()) {
        w.erase(w.begin());
        w.pop_back();
    }
    return w;
}

inline Word invert_word(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

// replace generator g by the word repl (and g^-1 by its inverse)
inline Word substitute_word(const Word& w, int g, const Word& repl) {
    Word out;
    Word inv = invert_word(repl);
    for (int x : w) {
        if (x == g)
            out.insert(out.end(), repl.begin(), repl.end());
        else if (x == -g)
            out.insert(out.end(), inv.begin(), inv.end());
        else
            out.push_back(x);
    }
    return free_reduce(out);
}

inline int exponent_sum(const Word& w, int g = 0) {
    int s = 0;
    for (int x : w) {
        if (g == 0)
            s += (x > 0) ? 1 : -1;
        else if (x == g)
            ++s;
        else if (x == -g)
            --s;
    }
    return s;
}

// ---------------------------------------------------------------------------
// DT codes

namespace dt_detail {

struct DtInfo {
    int n = 0;
    std::vector<int> under_time, over_time;      // per crossing
    std::vector<int> crossing_of_time;           // time 1..2n -> crossing
};

inline DtInfo index_times(const std::vector<int>& code) {
    DtInfo info;
    int n = (int)code.size();
    info.n = n;
    std::vector<int> evens;
    for (int v : code) {
        if (v == 0 || std::abs(v) % 2 != 0) throw MalformedCode("DT entries must be signed even integers");
        evens.push_back(std::abs(v));
    }
    std::sort(evens.begin(), evens.end());
    for (int i = 0; i < n; ++i)
        if (evens[i] != 2 * (i + 1))
            throw MalformedCode("DT entries must be a signed permutation of 2..2n");
    info.under_time.resize(n);
    info.over_time.resize(n);
    info.crossing_of_time.assign(2 * n + 1, -1);
    for (int i = 0; i < n; ++i) {
        int odd_t = 2 * i + 1, even_t = std::abs(code[i]);
        info.crossing_of_time[odd_t] = i;
        info.crossing_of_time[even_t] = i;
        if (code[i] > 0) {  // positive entry: odd passage goes under
            info.under_time[i] = odd_t;
            info.over_time[i] = even_t;
        } else {
            info.under_time[i] = even_t;
            info.over_time[i] = odd_t;
        }
    }
    return info;
}

// Count faces of the rotation system induced by a crossing-sign assignment.
// Darts at crossing i: 4i+{0:under-in, 1:over-in, 2:under-out, 3:over-out}.
inline int face_count(const DtInfo& info, const std::vector<int>& signs) {
    int n = info.n;
    std::vector<int> alpha(4 * n), rot(4 * n);
    constexpr int UI = 0, OI = 1, UO = 2, OO = 3;
    for (int t = 1; t <= 2 * n; ++t) {
        int t2 = t % (2 * n) + 1;
        int i1 = info.crossing_of_time[t], i2 = info.crossing_of_time[t2];
        int d1 = 4 * i1 + (info.under_time[i1] == t ? UO : OO);
        int d2 = 4 * i2 + (info.under_time[i2] == t2 ? UI : OI);
        alpha[d1] = d2;
        alpha[d2] = d1;
    }
    for (int i = 0; i < n; ++i) {
        const int ccw[4] = {UI, OI, UO, OO};
        const int cw[4] = {UI, OO, UO, OI};
        const int* cyc = signs[i] > 0 ? ccw : cw;
        for (int k = 0; k < 4; ++k) rot[4 * i + cyc[k]] = 4 * i + cyc[(k + 1) % 4];
    }
    std::vector<bool> seen(4 * n, false);
    int faces = 0;
    for (int d0 = 0; d0 < 4 * n; ++d0) {
        if (seen[d0]) continue;
        ++faces;
        int d = d0;
        while (!seen[d]) {
            seen[d] = true;
            d = rot[alpha[d]];
        }
    }
    return faces;
}

}  // namespace dt_detail

// Parse a DT code into a realized diagram. The planar sign assignment is
// chosen deterministically: the lexicographically greatest realizable vector
// with +1 ordered before -1 (i.e. the first planar assignment found when
// flipping trailing crossings to -1 last).
inline KnotDiagram parse_dt(const std::vector<int>& code) {
    if (code.empty()) return KnotDiagram{};  // unknot
    if (code.size() == 1) throw MalformedCode("a one-crossing DT code is not a knot diagram");
    auto info = dt_detail::index_times(code);
    int n = info.n;
    if (n > 26) throw MalformedCode("DT realization search limited to 26 crossings");
    std::vector<int> signs(n, 1);
    bool found = false;
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        for (int i = 0; i < n; ++i) signs[i] = (mask >> (n - 1 - i)) & 1 ? -1 : 1;
        if (dt_detail::face_count(info, signs) == n + 2) {
            found = true;
            break;
        }
    }
    if (!found) throw Unrealizable("DT code admits no planar embedding");

    // arcs: cut the walk 1..2n at the under-times; arc j spans
    // (uts[j-1], uts[j]] cyclically, so arc 0 contains time 1.
    std::vector<int> uts = info.under_time;
    std::sort(uts.begin(), uts.end());
    auto arc_containing = [&](int t) {
        for (int j = 0; j < n; ++j) {
            int a = uts[(j + n - 1) % n], b = uts[j];
            if (a < b ? (a < t && t <= b) : (t > a || t <= b)) return j;
        }
        throw ApolyError("internal: walk time outside every arc");
    };
    KnotDiagram dia;
    dia.n = n;
    for (int i = 0; i < n; ++i) {
        Crossing c;
        c.under_time = info.under_time[i];
        int j = int(std::find(uts.begin(), uts.end(), c.under_time) - uts.begin());
        c.under_in = j;
        c.under_out = (j + 1) % n;
        c.over = arc_containing(info.over_time[i]);
        c.sign = signs[i];
        dia.crossings.push_back(c);
    }
    return dia;
}

// ---------------------------------------------------------------------------
// PD codes

// Parse "X[a,b,c,d] ..." (optionally wrapped in PD[...]). Entry X[a,b,c,d]
// lists the four arc labels counterclockwise starting at the incoming under
// strand; labels run 1..2n consecutively along the orientation.
inline KnotDiagram parse_pd(const std::string& text) {
    std::vector<std::array<int, 4>> xs;
    std::size_t pos = 0;
    while ((pos = text.find('X', pos)) != std::string::npos) {
        std::size_t lb = text.find('[', pos);
        std::size_t rb = text.find(']', pos);
        if (lb == std::string::npos || rb == std::string::npos || rb < lb)
            throw MalformedCode("PD entry is not of the form X[a,b,c,d]");
        std::array<int, 4> q{};
        std::string inner = text.substr(lb + 1, rb - lb - 1);
        int k = 0;
        std::size_t p = 0;
        while (k < 4) {
            std::size_t comma = inner.find(',', p);
            std::string tok = inner.substr(p, comma == std::string::npos ? std::string::npos : comma - p);
            try {
                q[k] = std::stoi(tok);
            } catch (...) {
                throw MalformedCode("PD arc label is not an integer: " + tok);
            }
            ++k;
            if (comma == std::string::npos) break;
            p = comma + 1;
        }
        if (k != 4) throw MalformedCode("PD entry needs exactly four arc labels");
        xs.push_back(q);
        pos = rb + 1;
    }
    if (xs.empty()) return KnotDiagram{};  // unknot
    if (xs.size() == 1) throw MalformedCode("a one-crossing PD code is not a knot diagram");
    int n = (int)xs.size(), m = 2 * n;
    std::vector<int> seen(m + 1, 0);
    for (auto& q : xs)
        for (int a : q) {
            if (a < 1 || a > m) throw InconsistentArcs("PD arc label out of range 1..2n");
            ++seen[a];
        }
    for (int a = 1; a <= m; ++a)
        if (seen[a] != 2) throw InconsistentArcs("PD arc label must appear exactly twice");

    // orientation of the over strand by the successor rule on labels
    auto succ = [&](int a, int b) { return b == (a % m) + 1; };
    std::vector<int> over_in(n), over_out(n), sign(n);
    std::vector<int> next_edge(m + 1, 0);  // successor along the knot
    for (int i = 0; i < n; ++i) {
        auto [a, b, c, d] = xs[i];
        if (!succ(a, c) && !succ(c, a))
            throw InconsistentArcs("PD under strand labels are not consecutive");
        if (!succ(a, c)) throw InconsistentArcs("PD under strand must enter at the first label");
        if (succ(b, d)) {
            over_in[i] = b;
            over_out[i] = d;
            sign[i] = -1;  // over runs b->d: left-handed
        } else if (succ(d, b)) {
            over_in[i] = d;
            over_out[i] = b;
            sign[i] = +1;  // over runs d->b: right-handed
        } else {
            throw InconsistentArcs("PD over strand labels are not consecutive");
        }
        next_edge[a] = c;
        next_edge[over_in[i]] = over_out[i];
    }
    // single component check: edge successor must be one 2n-cycle
    {
        int e = 1, steps = 0;
        do {
            e = next_edge[e];
            ++steps;
        } while (e != 1 && steps <= m);
        if (steps != m) throw LinkNotKnot("PD code describes a link with several components");
    }
    // Wirtinger arcs: maximal edge runs not interrupted by an underpass.
    // Edge e starts an arc iff e is some crossing's under_out (= c). Arcs are
    // numbered along the walk, rotated so the arc containing edge 1 is arc 0
    // (matching the DT convention that generator 1 is the walk-start arc).
    std::vector<bool> starts(m + 1, false);
    int start_count = 0;
    for (auto& q : xs) {
        if (!starts[q[2]]) ++start_count;
        starts[q[2]] = true;
    }
    if (start_count != n) throw InconsistentArcs("PD underpass edges are not distinct");
    std::vector<int> arc_of_edge(m + 1, -1);
    {
        std::vector<int> order;
        int e = 1;
        for (int i = 0; i < m; ++i) {
            order.push_back(e);
            e = next_edge[e];
        }
        int cur = -1;
        for (int eid : order) {
            if (starts[eid]) ++cur;
            arc_of_edge[eid] = cur;  // -1 until the first start; fixed below
        }
        for (int eid : order)
            if (arc_of_edge[eid] == -1) arc_of_edge[eid] = n - 1;  // wraps to last arc
        int base = arc_of_edge[1];
        for (int eid = 1; eid <= m; ++eid) arc_of_edge[eid] = (arc_of_edge[eid] - base + n) % n;
    }
    // walk times for the longitude order: position of each under-in edge
    std::vector<int> time_of_edge(m + 1, 0);
    {
        int e = 1;
        for (int t = 1; t <= m; ++t) {
            time_of_edge[e] = t;
            e = next_edge[e];
        }
    }
    KnotDiagram dia;
    dia.n = n;
    for (int i = 0; i < n; ++i) {
        auto [a, b, c, d] = xs[i];
        Crossing cr;
        cr.under_in = arc_of_edge[a];
        cr.under_out = arc_of_edge[c];
        cr.over = arc_of_edge[over_in[i]];
        if (arc_of_edge[over_in[i]] != arc_of_edge[over_out[i]])
            throw InconsistentArcs("PD over strand crosses an underpass");
        cr.sign = sign[i];
        cr.under_time = time_of_edge[a];
        dia.crossings.push_back(cr);
    }
    return dia;
}

// ---------------------------------------------------------------------------
// braid closures

namespace braid_detail {

// Node of the tangle graph: crossing ports (c>=0, port 0..3) or boundary
// pseudo-slots: (-1,k) = top slot k, (-2,k) = bottom slot k.
using Node = std::pair<int, int>;

inline std::map<Node, Node> closure_connectivity(int strands, const std::vector<int>& word) {
    std::vector<std::pair<Node, Node>> edges;
    std::vector<Node> cur;
    for (int k = 0; k < strands; ++k) cur.push_back({-1, k});
    for (int idx = 0; idx < (int)word.size(); ++idx) {
        int i = std::abs(word[idx]) - 1;
        if (i + 1 >= strands) throw MalformedCode("braid letter exceeds strand count");
        edges.push_back({cur[i], {idx, 0}});
        edges.push_back({cur[i + 1], {idx, 1}});
        cur[i] = {idx, 2};
        cur[i + 1] = {idx, 3};
    }
    for (int k = 0; k < strands; ++k) edges.push_back({cur[k], {-2, k}});
    for (int k = 0; k < strands; ++k) edges.push_back({{-2, k}, {-1, k}});  // closure caps
    std::map<Node, std::vector<Node>> adj;
    for (auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& [node, nb] : adj) {
        bool pseudo = node.first < 0;
        if (pseudo && nb.size() != 2) throw MalformedCode("braid wiring error");
        if (!pseudo && nb.size() != 1) throw MalformedCode("braid wiring error");
    }
    std::map<Node, Node> conn;
    for (auto& [node, nb] : adj) {
        if (node.first < 0) continue;
        Node from = node, at = nb[0];
        while (at.first < 0) {
            auto& two = adj[at];
            Node nxt = (two[0] == from) ? two[1] : two[0];
            from = at;
            at = nxt;
        }
        conn[node] = at;
    }
    return conn;
}

// Walk the closed-up diagram and produce its DT code. Ports: 0=NW in,
// 1=NE in, 2=SW out, 3=SE out; strands route NW<->SE and NE<->SW. A positive
// braid letter puts the NW->SE strand on top.
inline std::vector<int> closure_dt(const std::vector<int>& word,
                                   const std::map<Node, Node>& conn) {
    int n = (int)word.size();
    auto through = [](int p) { return p == 0 ? 3 : p == 3 ? 0 : p == 1 ? 2 : 1; };
    Node start{0, 0};
    Node cur = start;
    std::vector<std::pair<int, bool>> passages;  // (crossing, over?)
    for (int step = 0; step < 2 * n; ++step) {
        auto [c, p] = cur;
        bool on_main = (p == 0 || p == 3);
        bool is_over = (word[c] > 0) == on_main;
        passages.push_back({c, is_over});
        cur = conn.at({c, through(p)});
    }
    if (cur != start) throw LinkNotKnot("braid closure is not a single circle");
    std::map<int, std::vector<std::pair<int, bool>>> where;
    for (int t = 0; t < 2 * n; ++t) where[passages[t].first].push_back({t + 1, passages[t].second});
    for (auto& [c, vis] : where) {
        if (vis.size() != 2 || vis[0].second == vis[1].second ||
            (vis[0].first % 2) == (vis[1].first % 2))
            throw LinkNotKnot("braid closure is not a single circle");
    }
    if ((int)where.size() != n) throw LinkNotKnot("braid closure is not a single circle");
    std::vector<int> dt;
    for (int odd = 1; odd < 2 * n; odd += 2) {
        auto [c, over] = passages[odd - 1];
        int ev = (where[c][0].first == odd) ? where[c][1].first : where[c][0].first;
        dt.push_back(over ? -ev : ev);
    }
    return dt;
}

}  // namespace braid_detail

// Closure of a braid word (letters +-i = generator sigma_i). The number of
// strands is max|letter|+1. Empty word closes to the unknot.
inline KnotDiagram parse_braid(const std::vector<int>& word) {
    if (word.empty()) return KnotDiagram{};
    int strands = 1;
    for (int l : word) {
        if (l == 0) throw MalformedCode("braid letters are nonzero integers");
        strands = std::max(strands, std::abs(l) + 1);
    }
    // a strand no letter acts on closes to a split circle
    for (int k = 0; k < strands; ++k) {
        bool touched = false;
        for (int l : word)
            if (std::abs(l) == k || std::abs(l) == k + 1) touched = true;
        if (!touched) throw LinkNotKnot("braid closure has a split unknotted component");
    }
    auto conn = braid_detail::closure_connectivity(strands, word);
    auto dt = braid_detail::closure_dt(word, conn);
    if (dt.size() == 1) return KnotDiagram{};  // single kink: the unknot
    return parse_dt(dt);
}

// ---------------------------------------------------------------------------
// Wirtinger presentation

// Relator per crossing: x_out = x_over^s x_in x_over^-s, stored as the word
// x_out^-1 x_over^s x_in x_over^-s. Longitude: over-strand conjugators
// composed right-to-left in walk order, then meridian^(-writhe).
inline KnotPresentation wirtinger(const KnotDiagram& dia) {
    KnotPresentation pres;
    if (dia.n == 0) {
        pres.ngens = 1;  // unknot: one meridian, no relations, trivial longitude
        return pres;
    }
    pres.ngens = dia.n;
    for (auto& c : dia.crossings) {
        int e = c.sign;
        int g_out = c.under_out + 1, g_in = c.under_in + 1, g_ov = c.over + 1;
        pres.relators.push_back({-g_out, e * g_ov, g_in, -e * g_ov});
    }
    std::vector<const Crossing*> order;
    for (auto& c : dia.crossings) order.push_back(&c);
    std::sort(order.begin(), order.end(),
              [](const Crossing* a, const Crossing* b) { return a->under_time > b->under_time; });
    int w = 0;
    for (auto* c : order) pres.longitude.push_back(c->sign * (c->over + 1));
    w = dia.writhe();
    for (int i = 0; i < std::abs(w); ++i) pres.longitude.push_back(w > 0 ? -1 : 1);
    pres.writhe = w;
    return pres;
}

namespace tietze_detail {

struct State {
    std::vector<Word> rels;
    Word lon;
    std::vector<int> gens;  // sorted ascending, always contains the meridian 1
};

inline long total_length(const State& s) {
    long n = 0;
    for (auto& r : s.rels) n += (long)r.size();
    return n;
}

// fewer generators first, then shorter relators, then a shorter longitude
inline bool better(const State& a, const State& b) {
    if (a.gens.size() != b.gens.size()) return a.gens.size() < b.gens.size();
    long la = total_length(a), lb = total_length(b);
    if (la != lb) return la < lb;
    return a.lon.size() < b.lon.size();
}

inline std::uint64_t state_hash(const State& s) {
    std::string buf;
    for (auto& r : s.rels) {
        for (int x : r) buf += std::to_string(x) + ",";
        buf += ";";
    }
    buf += "|";
    for (int x : s.lon) buf += std::to_string(x) + ",";
    return fnv1a(buf);
}

// Eliminate generator g using relator ri, in which it occurs exactly once.
inline State eliminate_gen(const State& s, int ri, int g) {
    Word r = s.rels[ri];
    std::size_t i = 0;
    while (std::abs(r[i]) != g) ++i;
    std::rotate(r.begin(), r.begin() + (long)i, r.end());  // r = g^e * tail
    int e = r[0] > 0 ? 1 : -1;
    Word repl = invert_word(Word(r.begin() + 1, r.end()));  // g^e = tail^-1
    if (e == -1) repl = invert_word(repl);
    State out;
    for (int rj = 0; rj < (int)s.rels.size(); ++rj) {
        if (rj == ri) continue;
        Word w = cyclic_reduce(substitute_word(s.rels[rj], g, repl));
        if (!w.empty()) out.rels.push_back(std::move(w));
    }
    out.lon = free_reduce(substitute_word(s.lon, g, repl));
    for (int x : s.gens)
        if (x != g) out.gens.push_back(x);
    return out;
}

// Bounded depth-first search over elimination orders. The move list is
// sorted by the greedy substitution cost so good branches are explored
// first; `nodes` caps the total number of expansions.
inline void search(const State& s, State& best, std::set<std::uint64_t>& seen, int& nodes) {
    if (better(s, best)) best = s;
    if (nodes <= 0) return;
    struct Move {
        int ri, g;
        long cost;
    };
    std::vector<Move> moves;
    for (int ri = 0; ri < (int)s.rels.size(); ++ri) {
        for (int g : s.gens) {
            if (g == 1) continue;  // never eliminate the meridian
            int occ = 0;
            for (int x : s.rels[ri])
                if (std::abs(x) == g) ++occ;
            if (occ != 1) continue;
            long uses = 0;
            for (int rj = 0; rj < (int)s.rels.size(); ++rj)
                if (rj != ri)
                    for (int x : s.rels[rj])
                        if (std::abs(x) == g) ++uses;
            for (int x : s.lon)
                if (std::abs(x) == g) ++uses;
            moves.push_back({ri, g, long(s.rels[ri].size() - 1) * uses});
        }
    }
    std::stable_sort(moves.begin(), moves.end(),
                     [](const Move& a, const Move& b) { return a.cost < b.cost; });
    for (auto& m : moves) {
        if (nodes <= 0) return;
        State next = eliminate_gen(s, m.ri, m.g);
        if (!seen.insert(state_hash(next)).second) continue;
        --nodes;
        search(next, best, seen, nodes);
    }
}

}  // namespace tietze_detail

// Tietze simplification: eliminate generators (never the meridian, generator
// 1) that occur exactly once in some relator. A bounded backtracking search
// over elimination orders picks the result with the fewest generators, then
// the smallest total relator length. Generators are renumbered 1..k.
inline KnotPresentation tietze_simplify(const KnotPresentation& in) {
    tietze_detail::State start;
    for (auto& r : in.relators) {
        Word c = cyclic_reduce(r);
        if (!c.empty()) start.rels.push_back(c);
    }
    start.lon = free_reduce(in.longitude);
    for (int g = 1; g <= in.ngens; ++g) start.gens.push_back(g);

    tietze_detail::State best = start;
    std::set<std::uint64_t> seen{tietze_detail::state_hash(start)};
    int nodes = 4000;
    tietze_detail::search(start, best, seen, nodes);

    std::map<int, int> remap;
    int next_id = 1;
    for (int g : best.gens) remap[g] = next_id++;  // meridian stays generator 1
    KnotPresentation out;
    out.ngens = (int)best.gens.size();
    out.writhe = in.writhe;
    for (auto& r : best.rels) {
        Word m;
        for (int x : r) m.push_back((x > 0 ? 1 : -1) * remap[std::abs(x)]);
        out.relators.push_back(std::move(m));
    }
    for (int x : best.lon) out.longitude.push_back((x > 0 ? 1 : -1) * remap[std::abs(x)]);
    return out;
}

// Presentation of the (p,q) Dehn filling: adds the relator mu^p lambda^q.
inline KnotPresentation filled_presentation(const KnotPresentation& pres, int p, int q) {
    if (std::gcd(std::abs(p), std::abs(q)) != 1)
        throw NonCoprime("filling slope p/q must have coprime entries");
    KnotPresentation out = pres;
    Word fill;
    for (int i = 0; i < std::abs(p); ++i) fill.push_back(p > 0 ? 1 : -1);
    Word lw = q > 0 ? pres.longitude : invert_word(pres.longitude);
    for (int i = 0; i < std::abs(q); ++i) fill.insert(fill.end(), lw.begin(), lw.end());
    fill = free_reduce(fill);
    if (!fill.empty()) out.relators.push_back(fill);
    return out;
}

// ---------------------------------------------------------------------------
// Fox calculus invariants

// Alexander polynomial from the Fox Jacobian of the presentation (any
// presentation of deficiency >= 1 with meridian abelianizing to t works).
// Returns ascending integer coefficients, normalized to positive constant
// term and no trailing low-order zeros; empty means the determinant vanished.
inline std::vector<long> alexander_coefficients(const KnotPresentation& pres) {
    int n = pres.ngens;
    if (n <= 1) return {1};  // unknot
    if ((int)pres.relators.size() < n - 1)
        throw ApolyError("presentation has too few relators for the Alexander matrix");
    std::vector<std::string> tv{"t"};
    // Fox derivative rows over Z[t,1/t], tracked with an exponent offset per row
    std::vector<std::vector<SparsePoly>> rows;
    for (int ri = 0; ri < n - 1; ++ri) {
        const Word& r = pres.relators[ri];
        std::vector<std::map<int, Coef>> entry(n);  // exponent -> coeff
        int pref = 0;  // abelianized prefix = t^pref
        for (int x : r) {
            int j = std::abs(x) - 1;
            if (x > 0) {
                entry[j][pref] += 1;
                pref += 1;
            } else {
                pref -= 1;
                entry[j][pref] -= 1;
            }
        }
        int shift = 0;
        for (auto& e : entry)
            for (auto& [k, c] : e)
                if (c != 0) shift = std::min(shift, k);
        std::vector<SparsePoly> row;
        for (int j = 0; j < n - 1; ++j) {  // drop the last generator's column
            SparsePoly p(tv);
            for (auto& [k, c] : entry[j])
                if (c != 0) p += SparsePoly::monomial(tv, {k - shift}, c);
            row.push_back(p);
        }
        rows.push_back(std::move(row));
    }
    SparsePoly det = det_bareiss(std::move(rows));
    if (det.is_zero()) return {};
    std::vector<long> cs(det.degree("t") + 1, 0);
    for (auto& t : det.terms()) {
        if (t.c.get_den() != 1) throw ApolyError("internal: non-integer Alexander coefficient");
        cs[t.e[0]] = (long)t.c.get_num().get_si();
    }
    while (!cs.empty() && cs.front() == 0) cs.erase(cs.begin());
    if (!cs.empty() && cs.front() < 0)
        for (auto& c : cs) c = -c;
    return cs;
}

// |Alexander(-1)| — the knot determinant.
inline long knot_determinant(const KnotPresentation& pres) {
    auto cs = alexander_coefficients(pres);
    long d = 0, s = 1;
    for (long c : cs) {
        d += s * c;
        s = -s;
    }
    return std::labs(d);
}

// Number of Fox 3-colorings (9 for the trefoil, 3 for any knot with
// determinant coprime to 3). Always a power of 3 and at least 3.
inline long tricoloring_count(const KnotDiagram& dia) {
    int n = dia.n;
    if (n == 0) return 3;
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        auto& c = dia.crossings[i];
        m[i][c.under_in] = (m[i][c.under_in] + 1) % 3;
        m[i][c.under_out] = (m[i][c.under_out] + 1) % 3;
        m[i][c.over] = (m[i][c.over] + 1) % 3;
    }
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (m[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        int inv = (m[rank][col] == 1) ? 1 : 2;  // inverse mod 3
        for (int j = 0; j < n; ++j) m[rank][j] = (m[rank][j] * inv) % 3;
        for (int r = 0; r < n; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            int f = m[r][col];
            for (int j = 0; j < n; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % 3 + 3) % 3;
        }
        ++rank;
    }
    long count = 1;
    for (int i = 0; i < n - rank; ++i) count *= 3;
    return count;
}

// Structural sanity checks every knot presentation must pass: relators and
// longitude abelianize correctly (total exponent 0; longitude even before
// the writhe correction is exactly -writhe on the meridian... both vanish).
inline bool presentation_well_formed(const KnotPresentation& pres) {
    for (auto& r : pres.relators)
        if (exponent_sum(r) != 0) return false;
    if (!pres.longitude.empty() && exponent_sum(pres.longitude) != 0) return false;
    for (auto& r : pres.relators)
        for (int x : r)
            if (x == 0 || std::abs(x) > pres.ngens) return false;
    for (int x : pres.longitude)
        if (x == 0 || std::abs(x) > pres.ngens) return false;
    return true;
}

// ---------------------------------------------------------------------------
// named-knot table

struct NamedKnot {
    std::string name;
    std::vector<int> dt;
};

// Reads "name dt1 dt2 ..." per line; '#' starts a comment.
inline std::vector<NamedKnot> load_knot_table(std::istream& is) {
    std::vector<NamedKnot> out;
    std::string line;
    while (std::getline(is, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        NamedKnot k;
        if (!(ls >> k.name)) continue;
        int v;
        while (ls >> v) k.dt.push_back(v);
        if (k.dt.empty()) throw MalformedCode("knot table line without DT entries: " + k.name);
        out.push_back(std::move(k));
    }
    return out;
}

}  // namespace apoly
