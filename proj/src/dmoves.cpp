#include "scg/dmoves.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace scg {

// Periodicity guard: a genuinely periodic non-constant tail may only be
// touched if its cyclic word is provably null-homotopic.
void check_move_guards(const ZMap& g) {
    for (const TailSpec* t : {&g.left, &g.right}) {
        if (t->kind != TailKind::Periodic) continue;
        std::vector<Vertex> loop(t->word);
        loop.push_back(t->word[0]);
        std::vector<Vertex> flat(loop.size(), t->word[0]);
        FiniteHomotopyOptions opt;
        opt.padding = static_cast<long long>(t->word.size());
        opt.max_states = 200'000;
        Verdict v = homotopic_finite(make_path(g.space, loop), make_path(g.space, flat), opt);
        if (!v.proved())
            throw Error(ErrorCode::GuardUnproved,
                        "tail wraps a cycle that was not proved null-homotopic");
    }
}

ZMap delete_point(const ZMap& f, long long z0) {
    long long newlo = std::min(f.window.lo, z0) - 1;
    long long newhi = std::max(f.window.hi() - 1, z0);
    std::vector<Vertex> values;
    for (long long z = newlo; z <= newhi; ++z) values.push_back(eval(f, z < z0 ? z : z + 1));
    ZMap g = make_zmap(f.space, newlo, std::move(values), rebase_left_tail(f, newlo - 1),
                       translate_tail(rebase_right_tail(f, newhi + 2), -1));
    check_move_guards(g);
    return g;
}

ZMap add_point(const ZMap& f, long long z0, Vertex x0) {
    long long newlo = std::min(f.window.lo, z0) - 1;
    long long newhi = std::max(f.window.hi() + 1, z0);
    std::vector<Vertex> values;
    for (long long z = newlo; z <= newhi; ++z)
        values.push_back(z < z0 ? eval(f, z) : z == z0 ? x0 : eval(f, z - 1));
    ZMap g = make_zmap(f.space, newlo, std::move(values), rebase_left_tail(f, newlo - 1),
                       translate_tail(rebase_right_tail(f, newhi), 1));
    check_move_guards(g);
    return g;
}

ZMap apply_dmove(const ZMap& f, const DMove& m) {
    return m.kind == DMove::Delete ? delete_point(f, m.z) : add_point(f, m.z, m.x);
}

ZMap apply_dmoves(ZMap f, const std::vector<DMove>& moves) {
    for (const DMove& m : moves) f = apply_dmove(f, m);
    return f;
}

namespace {

std::string zkey(const ZMap& f) {
    std::string k = std::to_string(f.window.lo) + "|";
    for (Vertex v : f.window.values) k += std::to_string(v) + ",";
    for (const TailSpec* t : {&f.left, &f.right}) {
        k += "|" + std::to_string(static_cast<int>(t->kind)) + ":";
        k += std::to_string(t->value) + ";";
        for (Vertex v : t->word) k += std::to_string(v) + ",";
        k += std::to_string(t->slope) + "/" + std::to_string(t->offset) + "/";
        for (long long c : t->correction) k += std::to_string(c) + ",";
    }
    return k;
}

std::vector<Vertex> add_candidates(const ZMap& f, long long z) {
    Vertex a = eval(f, z - 1), b = eval(f, z);
    std::vector<Vertex> out;
    if (f.space.is_finite()) {
        for (Vertex v : f.space.graph().vertices)
            if (f.space.controlled(a, v) && f.space.controlled(v, b)) out.push_back(v);
        return out;
    }
    long long n = f.space.scale() ? *f.space.scale() : 2;
    for (long long v = std::min(a, b) - n; v <= std::max(a, b) + n; ++v)
        if (f.space.controlled(a, v) && f.space.controlled(v, b)) out.push_back(v);
    return out;
}

struct SearchNode {
    ZMap map;
    std::string parent; // empty for roots
    DMove move;
};

std::vector<DMove> forward_chain(const std::unordered_map<std::string, SearchNode>& side,
                                 const std::string& key) {
    std::vector<DMove> moves;
    std::string cur = key;
    while (!side.at(cur).parent.empty()) {
        moves.push_back(side.at(cur).move);
        cur = side.at(cur).parent;
    }
    std::reverse(moves.begin(), moves.end());
    return moves;
}

std::vector<DMove> backward_chain(const std::unordered_map<std::string, SearchNode>& side,
                                  const std::string& key) {
    // inverse moves leading from the state at `key` back to the side's root
    std::vector<DMove> moves;
    std::string cur = key;
    while (!side.at(cur).parent.empty()) {
        const SearchNode& node = side.at(cur);
        const ZMap& parent_map = side.at(node.parent).map;
        if (node.move.kind == DMove::Add)
            moves.push_back({DMove::Delete, node.move.z, 0});
        else
            moves.push_back({DMove::Add, node.move.z, eval(parent_map, node.move.z)});
        cur = node.parent;
    }
    return moves;
}

} // namespace

SimdResult simd_equiv(const ZMap& f, const ZMap& g, std::size_t bound) {
    if (f.space != g.space) throw Error(ErrorCode::SpaceMismatch, "simd_equiv");
    // each move only rotates/translates the tail patterns, so the
    // shift-eventual-equality class of either tail is an invariant
    if (!eventually_equal(f, g) || !eventually_equal(reverse(f), reverse(g)))
        return {{VerdictKind::Refuted, std::nullopt, "tail classes differ"}, {}};

    std::unordered_map<std::string, SearchNode> from_f, from_g;
    std::deque<std::string> qf, qg;
    std::string kf = zkey(f), kg = zkey(g);
    from_f.emplace(kf, SearchNode{f, "", {}});
    from_g.emplace(kg, SearchNode{g, "", {}});
    if (kf == kg) return {{VerdictKind::Proved, std::nullopt, "identical"}, {}};
    qf.push_back(kf);
    qg.push_back(kg);

    auto expand = [&](std::unordered_map<std::string, SearchNode>& mine,
                      std::unordered_map<std::string, SearchNode>& other,
                      std::deque<std::string>& queue) -> std::optional<std::string> {
        std::size_t layer = queue.size();
        for (std::size_t step = 0; step < layer; ++step) {
            std::string curk = queue.front();
            queue.pop_front();
            ZMap cur = mine.at(curk).map;
            std::vector<std::pair<DMove, ZMap>> nexts;
            for (long long z = cur.window.lo - 2; z <= cur.window.hi() + 2; ++z) {
                try {
                    nexts.push_back({{DMove::Delete, z, 0}, delete_point(cur, z)});
                } catch (const Error&) {
                }
                for (Vertex x : add_candidates(cur, z)) {
                    try {
                        nexts.push_back({{DMove::Add, z, x}, add_point(cur, z, x)});
                    } catch (const Error&) {
                    }
                }
            }
            for (auto& [move, nxt] : nexts) {
                std::string k = zkey(nxt);
                if (mine.count(k)) continue;
                mine.emplace(k, SearchNode{nxt, curk, move});
                queue.push_back(k);
                if (other.count(k)) return k;
            }
            if (mine.size() + other.size() > bound) return std::nullopt;
        }
        return std::nullopt;
    };

    while (!qf.empty() && !qg.empty()) {
        if (from_f.size() + from_g.size() > bound)
            return {{VerdictKind::Unknown, std::nullopt, "move-search bound reached"}, {}};
        auto& small_q = qf.size() <= qg.size() ? qf : qg;
        bool f_side = &small_q == &qf;
        auto meet = f_side ? expand(from_f, from_g, qf) : expand(from_g, from_f, qg);
        if (meet) {
            std::vector<DMove> moves = forward_chain(from_f, *meet);
            auto back = backward_chain(from_g, *meet);
            moves.insert(moves.end(), back.begin(), back.end());
            return {{VerdictKind::Proved, std::nullopt, "move chain found"}, std::move(moves)};
        }
        if (from_f.size() + from_g.size() > bound)
            return {{VerdictKind::Unknown, std::nullopt, "move-search bound reached"}, {}};
    }
    return {{VerdictKind::Unknown, std::nullopt, "frontier exhausted within move range"}, {}};
}

std::vector<DMove> homotopy_to_dmoves(const ZMap& f, const ZMap& g,
                                      const HomotopyCertificate& cert, long long zlo) {
    if (cert.rows.empty()) throw Error(ErrorCode::CertificateInvalid, "no rows");
    std::size_t n = cert.rows[0].size();
    long long zhi = zlo + static_cast<long long>(n) - 1;
    for (const auto& row : cert.rows) {
        if (row.size() != n) throw Error(ErrorCode::CertificateInvalid, "ragged rows");
        if (row.front() != cert.rows[0].front() || row.back() != cert.rows[0].back())
            throw Error(ErrorCode::CertificateInvalid, "endpoints drift");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (cert.rows.front()[i] != eval(f, zlo + static_cast<long long>(i)))
            throw Error(ErrorCode::CertificateInvalid, "first row is not the source window");
        if (cert.rows.back()[i] != eval(g, zlo + static_cast<long long>(i)))
            throw Error(ErrorCode::CertificateInvalid, "last row is not the target window");
    }
    if (!ray_equal_from(f, g, zhi) || !ray_equal_upto(f, g, zlo))
        throw Error(ErrorCode::CertificateInvalid, "maps differ outside the certified strip");
    for (std::size_t r = 1; r < cert.rows.size(); ++r)
        if (!step_ok(FinitePath{f.space, cert.rows[r - 1]}, FinitePath{f.space, cert.rows[r]}))
            throw Error(ErrorCode::CertificateInvalid, "row step fails the control condition");

    std::vector<DMove> out;
    ZMap cur = f;
    for (std::size_t r = 1; r < cert.rows.size(); ++r) {
        const auto& prev = cert.rows[r - 1];
        const auto& next = cert.rows[r];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (prev[i] == next[i]) continue;
            long long z = zlo + static_cast<long long>(i);
            // insert the new value, then drop the displaced old one
            out.push_back({DMove::Add, z, next[i]});
            cur = add_point(cur, z, next[i]);
            out.push_back({DMove::Delete, z + 1, 0});
            cur = delete_point(cur, z + 1);
        }
    }
    if (!function_equal(cur, g))
        throw Error(ErrorCode::CertificateInvalid, "replay does not reach the target");
    return out;
}

} // namespace scg
