#pragma once

// Exhaustive ground truth for small n, independent of the filter/construction
// theory: an exact-cover search over triples (base, exponent, residue class).
// Each base takes exactly one exponent; exponents and residue classes must
// each be used exactly once.
//
// Pruning rules (individually toggleable; disabling them changes cost, never
// verdicts):
//   (a) zero-power domain filter: a base below n whose power hits 0 mod n can
//       never take that exponent (base n already owns residue 0);
//   (b) coverage cut (Hall condition): the unassigned bases must admit a
//       perfect matching to the unused exponents and, separately, to the
//       uncovered residue classes; checked per node via augmenting paths
//       over bitmask adjacency;
//   (c) square budget: non-square residue classes can only come from odd
//       exponents, so the unused non-squares can never exceed the unused odd
//       exponents (existence mode only);
//   dominance: exponents whose residue column is identical for every base are
//       interchangeable, so only the smallest available member of each class
//       is branched on (existence mode only);
//   lookahead: each remaining (base, exponent) candidate is applied
//       tentatively; if that makes a Hall matching infeasible the candidate is
//       deleted for the whole subtree.  Deletions only ever drop provably
//       dead branches, so this is safe for counting as well.
//
// Counting mode disables (c) and dominance and enumerates the full solution
// count.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "crsexp/modarith.hpp"
#include "crsexp/residue.hpp"

namespace crsexp::oracle {

using modarith::i64;
using modarith::u64;

enum class Verdict { witness_found, exhaustively_refuted, inconclusive };

struct SearchStats {
    u64 nodes = 0;
    i64 max_depth = 0;
    double elapsed_secs = 0.0;
    bool node_budget_hit = false;
    bool time_budget_hit = false;

    bool budget_exhausted() const { return node_budget_hit || time_budget_hit; }
};

struct SearchConfig {
    u64 node_budget = 0;           // 0 = unbounded
    double time_budget_secs = 0.0; // 0 = unbounded
    int parallel_width = 1;
    bool prune_zero_power = true;
    bool prune_coverage = true;
    bool prune_square_budget = true;
    bool prune_dominance = true;
    bool prune_lookahead = true;
};

struct SearchOutcome {
    i64 n = 0;
    Verdict verdict = Verdict::inconclusive;
    std::optional<residue::Witness> witness;  // present and verified iff witness_found
    SearchStats stats;
};

struct CountOutcome {
    i64 n = 0;
    bool inconclusive = false;
    u64 count = 0;  // meaningful iff !inconclusive
    SearchStats stats;
};

namespace detail {

class BitSet {
 public:
    BitSet() = default;
    explicit BitSet(i64 nbits)
        : nbits_(nbits), w_(static_cast<std::size_t>((nbits + 63) / 64), 0) {}

    void set(i64 i) { w_[static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63); }
    void clear(i64 i) { w_[static_cast<std::size_t>(i >> 6)] &= ~(1ULL << (i & 63)); }
    bool test(i64 i) const { return (w_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1ULL; }
    void zero() { std::fill(w_.begin(), w_.end(), 0); }

    i64 size() const { return nbits_; }
    std::size_t words() const { return w_.size(); }
    u64 word(std::size_t k) const { return w_[k]; }
    u64& word(std::size_t k) { return w_[k]; }

    i64 count() const {
        i64 c = 0;
        for (u64 x : w_) c += std::popcount(x);
        return c;
    }

 private:
    i64 nbits_ = 0;
    std::vector<u64> w_;
};

struct Engine {
    i64 n = 0;
    const residue::PowerTable* tab = nullptr;
    SearchConfig cfg;
    bool counting = false;

    std::vector<BitSet> dom;      // dom[i-1]: exponent bits (bit e-1) allowed for base i
    std::vector<BitSet> dyn_dom;  // dom minus lookahead deletions (trail-restored)
    std::vector<std::pair<i64, i64>> trail;  // (base, exponent) deletions to undo
    bool lookahead = false;
    std::vector<BitSet> exp_hitting;  // [(i-1)*n + r]: exponents taking base i to residue r
    std::vector<BitSet> shave_exp, shave_res;  // masked adjacency scratch
    BitSet all_exp;               // bits 0..n-1
    BitSet all_res;
    BitSet square_mask;           // residue classes that are squares mod n
    BitSet odd_exp_mask;          // bits of odd exponents
    std::vector<i64> eq_rep;      // exponent -> smallest exponent with identical residue column
    std::vector<u64> rep_seen_stamp;  // per representative, stamped per node during filtering

    BitSet used_exp, used_res;
    std::vector<i64> assign_exp;  // per base, 0 = unassigned
    i64 num_assigned = 0;

    std::vector<std::vector<i64>> cand;  // per-depth candidate buffers
    BitSet exp_union, res_union;         // per-node scratch (consumed before descending)
    std::vector<BitSet> exp_avail;       // per-base usable exponents (per-node scratch)
    std::vector<BitSet> res_avail;       // per-base reachable uncovered residues
    std::vector<i64> match_owner;        // column -> base owning it in the current matching
    std::vector<i64> match_bases;        // unassigned bases, scarcest domain first
    std::vector<std::pair<i64, i64>> match_pairs;
    BitSet match_visited;

    u64 node_budget = 0;  // 0 = unbounded
    std::chrono::steady_clock::time_point deadline{};
    bool has_deadline = false;

    u64 nodes = 0;
    i64 max_depth = 0;
    bool node_abort = false;
    bool time_abort = false;
    u64 stamp_counter = 0;

    bool found = false;
    std::vector<i64> witness_sigma;
    u64 solutions = 0;

    bool aborted() const { return node_abort || time_abort; }

    void init(i64 n_, const residue::PowerTable& t, const SearchConfig& c, bool count_mode) {
        n = n_;
        tab = &t;
        cfg = c;
        counting = count_mode;
        if (counting) {  // existence-only rules are unsound for exact counts
            cfg.prune_square_budget = false;
            cfg.prune_dominance = false;
        }

        dom.assign(static_cast<std::size_t>(n), BitSet(n));
        all_exp = BitSet(n);
        all_res = BitSet(n);
        for (i64 b = 0; b < n; ++b) { all_exp.set(b); all_res.set(b); }
        for (i64 i = 1; i <= n; ++i) {
            BitSet& d = dom[static_cast<std::size_t>(i - 1)];
            for (i64 e = 1; e <= n; ++e) {
                if (cfg.prune_zero_power && i < n && tab->at(i, e) == 0) continue;
                d.set(e - 1);
            }
        }

        square_mask = BitSet(n);
        for (i64 z = 0; z < n; ++z)
            square_mask.set(static_cast<i64>(modarith::mul_mod(
                static_cast<u64>(z), static_cast<u64>(z), static_cast<u64>(n))));
        odd_exp_mask = BitSet(n);
        for (i64 e = 1; e <= n; e += 2) odd_exp_mask.set(e - 1);

        eq_rep.assign(static_cast<std::size_t>(n + 1), 0);
        for (i64 e = 1; e <= n; ++e) eq_rep[static_cast<std::size_t>(e)] = e;
        if (cfg.prune_dominance) {
            // group exponents by identical residue columns (hash, then exact compare)
            std::vector<u64> h(static_cast<std::size_t>(n + 1), 1469598103934665603ULL);
            for (i64 e = 1; e <= n; ++e)
                for (i64 i = 1; i <= n; ++i) {
                    h[static_cast<std::size_t>(e)] ^= tab->at(i, e);
                    h[static_cast<std::size_t>(e)] *= 1099511628211ULL;
                }
            auto same_column = [&](i64 e1, i64 e2) {
                for (i64 i = 1; i <= n; ++i)
                    if (tab->at(i, e1) != tab->at(i, e2)) return false;
                return true;
            };
            for (i64 e = 2; e <= n; ++e)
                for (i64 f = 1; f < e; ++f)
                    if (eq_rep[static_cast<std::size_t>(f)] == f &&
                        h[static_cast<std::size_t>(f)] == h[static_cast<std::size_t>(e)] &&
                        same_column(f, e)) {
                        eq_rep[static_cast<std::size_t>(e)] = f;
                        break;
                    }
        }
        rep_seen_stamp.assign(static_cast<std::size_t>(n + 1), 0);

        dyn_dom = dom;
        trail.clear();
        lookahead = cfg.prune_lookahead && n <= 128;  // quadratic bitset table
        if (lookahead) {
            exp_hitting.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                               BitSet(n));
            for (i64 i = 1; i <= n; ++i)
                for (i64 e = 1; e <= n; ++e)
                    exp_hitting[static_cast<std::size_t>((i - 1) * n + tab->at(i, e))].set(e - 1);
            shave_exp.assign(static_cast<std::size_t>(n), BitSet(n));
            shave_res.assign(static_cast<std::size_t>(n), BitSet(n));
        }

        used_exp = BitSet(n);
        used_res = BitSet(n);
        assign_exp.assign(static_cast<std::size_t>(n + 1), 0);
        num_assigned = 0;

        cand.assign(static_cast<std::size_t>(n + 1), {});
        for (auto& v : cand) v.reserve(static_cast<std::size_t>(n));
        exp_union = BitSet(n);
        res_union = BitSet(n);
        exp_avail.assign(static_cast<std::size_t>(n), BitSet(n));
        res_avail.assign(static_cast<std::size_t>(n), BitSet(n));
        match_owner.assign(static_cast<std::size_t>(n), -1);
        match_bases.reserve(static_cast<std::size_t>(n));
        match_pairs.reserve(static_cast<std::size_t>(n));
        match_visited = BitSet(n);
    }

    // Kuhn augmenting path: can `base` claim a column in `adj` given the
    // current matching?  Columns already visited this pass are skipped.
    bool augment(i64 base, const std::vector<BitSet>& adj) {
        const BitSet& row = adj[static_cast<std::size_t>(base - 1)];
        for (std::size_t k = 0; k < row.words(); ++k) {
            u64 w = row.word(k) & ~match_visited.word(k);
            while (w != 0) {
                const int b = std::countr_zero(w);
                w &= w - 1;
                const i64 col = static_cast<i64>(k * 64 + static_cast<std::size_t>(b));
                match_visited.set(col);
                const i64 owner = match_owner[static_cast<std::size_t>(col)];
                if (owner < 0 || augment(owner, adj)) {
                    match_owner[static_cast<std::size_t>(col)] = base;
                    return true;
                }
            }
        }
        return false;
    }

    // True iff every unassigned base (minus `excl`) can be matched to a
    // distinct column.
    bool perfect_matching(const std::vector<BitSet>& adj, i64 excl = 0) {
        std::fill(match_owner.begin(), match_owner.end(), -1);
        for (i64 base : match_bases) {
            if (base == excl) continue;
            match_visited.zero();
            if (!augment(base, adj)) return false;
        }
        return true;
    }

    void restore_trail(std::size_t mark) {
        while (trail.size() > mark) {
            const auto [b, e] = trail.back();
            trail.pop_back();
            dyn_dom[static_cast<std::size_t>(b - 1)].set(e - 1);
        }
    }

    // Would assigning exponent e (residue r) to base b leave each remaining
    // base a workable domain and both Hall matchings feasible?  The residue
    // adjacency is a superset approximation (only r itself is masked), which
    // can only make the test more permissive, never unsound.
    bool tentative_feasible(i64 b, i64 e, i64 r) {
        const std::size_t ew = static_cast<std::size_t>((e - 1) >> 6);
        const u64 ebit = 1ULL << ((e - 1) & 63);
        const std::size_t rw = static_cast<std::size_t>(r >> 6);
        const u64 rbit = 1ULL << (r & 63);
        for (i64 j : match_bases) {
            if (j == b) continue;
            const std::size_t ji = static_cast<std::size_t>(j - 1);
            const BitSet& hit = exp_hitting[ji * static_cast<std::size_t>(n) +
                                            static_cast<std::size_t>(r)];
            BitSet& we = shave_exp[ji];
            BitSet& wr = shave_res[ji];
            u64 any_e = 0, any_r = 0;
            for (std::size_t k = 0; k < we.words(); ++k) {
                u64 x = exp_avail[ji].word(k) & ~hit.word(k);
                if (k == ew) x &= ~ebit;
                we.word(k) = x;
                any_e |= x;
                u64 y = res_avail[ji].word(k);
                if (k == rw) y &= ~rbit;
                wr.word(k) = y;
                any_r |= y;
            }
            if (any_e == 0 || any_r == 0) return false;
        }
        return perfect_matching(shave_exp, b) && perfect_matching(shave_res, b);
    }

    // One-step lookahead over every remaining candidate; deletes (via trail)
    // the ones whose tentative application is already infeasible.  Returns
    // true when anything was deleted (caller rescans).
    bool shave() {
        bool removed = false;
        for (i64 b : match_bases) {
            const std::size_t bi = static_cast<std::size_t>(b - 1);
            BitSet& row = exp_avail[bi];
            for (std::size_t k = 0; k < row.words(); ++k) {
                u64 w = row.word(k);
                while (w != 0) {
                    const int t = std::countr_zero(w);
                    w &= w - 1;
                    const i64 e = static_cast<i64>(k * 64 + static_cast<std::size_t>(t)) + 1;
                    const i64 r = tab->at(b, e);
                    if (tentative_feasible(b, e, r)) continue;
                    dyn_dom[bi].clear(e - 1);
                    row.clear(e - 1);
                    trail.emplace_back(b, e);
                    removed = true;
                }
            }
        }
        return removed;
    }

    void apply(i64 base, i64 e) {
        used_exp.set(e - 1);
        used_res.set(tab->at(base, e));
        assign_exp[static_cast<std::size_t>(base)] = e;
        ++num_assigned;
    }

    void undo(i64 base, i64 e) {
        used_exp.clear(e - 1);
        used_res.clear(tab->at(base, e));
        assign_exp[static_cast<std::size_t>(base)] = 0;
        --num_assigned;
    }

    bool budget_ok() {
        if (node_budget != 0 && nodes > node_budget) { node_abort = true; return false; }
        if (has_deadline && (nodes & 1023) == 0 &&
            std::chrono::steady_clock::now() > deadline) {
            time_abort = true;
            return false;
        }
        return true;
    }

    // Picks the unassigned base with the fewest available exponents and fills
    // cand[depth] with them ascending (dominance-filtered in existence mode).
    // Returns false when the node is already dead (wipeout or a prune fires).
    bool select(i64 depth) {
        const bool cov = cfg.prune_coverage;
        const bool track = cov || lookahead;
        i64 best = -1;
        i64 best_cnt = n + 1;
        for (;;) {
            best = -1;
            best_cnt = n + 1;
            if (track) {
                exp_union.zero();
                res_union.zero();
                match_pairs.clear();
            }
            for (i64 i = 1; i <= n; ++i) {
                if (assign_exp[static_cast<std::size_t>(i)] != 0) continue;
                const BitSet& d = dyn_dom[static_cast<std::size_t>(i - 1)];
                BitSet* erow = nullptr;
                BitSet* rrow = nullptr;
                if (track) {
                    erow = &exp_avail[static_cast<std::size_t>(i - 1)];
                    rrow = &res_avail[static_cast<std::size_t>(i - 1)];
                    erow->zero();
                    rrow->zero();
                }
                i64 cnt = 0;
                for (std::size_t k = 0; k < d.words(); ++k) {
                    u64 w = d.word(k) & ~used_exp.word(k);
                    while (w != 0) {
                        const int b = std::countr_zero(w);
                        w &= w - 1;
                        const i64 e = static_cast<i64>(k * 64 + static_cast<std::size_t>(b)) + 1;
                        const i64 c = tab->at(i, e);
                        if (used_res.test(c)) continue;
                        ++cnt;
                        if (track) {
                            exp_union.set(e - 1);
                            res_union.set(c);
                            erow->set(e - 1);
                            rrow->set(c);
                        }
                    }
                }
                if (cnt == 0) return false;  // wipeout
                if (track) match_pairs.emplace_back(cnt, i);
                if (cnt < best_cnt) { best_cnt = cnt; best = i; }
            }
            if (track) {
                // cheap union test first; the matchings below strictly subsume
                // it but usually cost more
                for (std::size_t k = 0; k < used_exp.words(); ++k) {
                    if ((all_exp.word(k) & ~used_exp.word(k) & ~exp_union.word(k)) != 0)
                        return false;
                    if ((all_res.word(k) & ~used_res.word(k) & ~res_union.word(k)) != 0)
                        return false;
                }
                std::sort(match_pairs.begin(), match_pairs.end());
                match_bases.clear();
                for (const auto& [cnt, base] : match_pairs) match_bases.push_back(base);
                if (cov) {
                    if (!perfect_matching(exp_avail)) return false;
                    if (!perfect_matching(res_avail)) return false;
                }
            }
            if (!lookahead || num_assigned >= n - 3) break;  // endgame: plain search is cheaper
            if (!shave()) break;
        }
        if (cfg.prune_square_budget) {
            i64 nonsquares = 0, odd_free = 0;
            for (std::size_t k = 0; k < used_res.words(); ++k) {
                nonsquares += std::popcount(all_res.word(k) & ~used_res.word(k) & ~square_mask.word(k));
                odd_free += std::popcount(all_exp.word(k) & ~used_exp.word(k) & odd_exp_mask.word(k));
            }
            if (nonsquares > odd_free) return false;
        }

        auto& out = cand[static_cast<std::size_t>(depth)];
        out.clear();
        ++stamp_counter;
        const BitSet& d = dyn_dom[static_cast<std::size_t>(best - 1)];
        for (std::size_t k = 0; k < d.words(); ++k) {
            u64 w = d.word(k) & ~used_exp.word(k);
            while (w != 0) {
                const int b = std::countr_zero(w);
                w &= w - 1;
                const i64 e = static_cast<i64>(k * 64 + static_cast<std::size_t>(b)) + 1;
                if (used_res.test(tab->at(best, e))) continue;
                if (cfg.prune_dominance) {
                    const i64 rep = eq_rep[static_cast<std::size_t>(e)];
                    if (rep_seen_stamp[static_cast<std::size_t>(rep)] == stamp_counter) continue;
                    rep_seen_stamp[static_cast<std::size_t>(rep)] = stamp_counter;
                }
                out.push_back(e);
            }
        }
        cand_base = best;
        return true;
    }

    i64 cand_base = 0;

    // Returns true when existence mode found a witness (unwinds immediately).
    bool dfs(i64 depth) {
        if (num_assigned == n) {
            if (counting) { ++solutions; return false; }
            found = true;
            witness_sigma.assign(assign_exp.begin() + 1, assign_exp.end());
            return true;
        }
        const std::size_t mark = trail.size();  // lookahead deletions are node-local
        if (!select(depth)) {
            restore_trail(mark);
            return false;
        }
        const i64 base = cand_base;
        // deeper recursion uses cand[depth+1..]; this depth's buffer stays intact
        const auto& es = cand[static_cast<std::size_t>(depth)];
        for (i64 e : es) {
            ++nodes;
            if (!budget_ok()) break;
            if (depth + 1 > max_depth) max_depth = depth + 1;
            apply(base, e);
            const bool hit = dfs(depth + 1);
            undo(base, e);
            if (hit) {
                restore_trail(mark);
                return true;
            }
            if (aborted()) break;
        }
        restore_trail(mark);
        return false;
    }
};

struct BranchResult {
    bool found = false;
    std::vector<i64> sigma;
    bool complete = false;  // branch fully explored (not aborted)
    u64 nodes = 0;
    i64 max_depth = 0;
    u64 solutions = 0;
    bool node_abort = false;
    bool time_abort = false;
};

struct RunResult {
    Verdict verdict = Verdict::inconclusive;
    std::vector<i64> sigma;
    u64 solutions = 0;
    SearchStats stats;
};

inline RunResult run_search(i64 n, const residue::PowerTable& tab, const SearchConfig& cfg,
                            bool counting) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult rr;

    Engine proto;
    proto.init(n, tab, cfg, counting);
    const bool has_deadline = cfg.time_budget_secs > 0;
    const auto deadline =
        t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(cfg.time_budget_secs));

    const int width = std::max(1, cfg.parallel_width);
    if (width == 1) {
        proto.node_budget = cfg.node_budget;
        proto.has_deadline = has_deadline;
        proto.deadline = deadline;
        const bool hit = proto.dfs(0);
        rr.stats.nodes = proto.nodes;
        rr.stats.max_depth = proto.max_depth;
        rr.stats.node_budget_hit = proto.node_abort;
        rr.stats.time_budget_hit = proto.time_abort;
        if (counting) {
            rr.solutions = proto.solutions;
            rr.verdict = proto.aborted() ? Verdict::inconclusive
                         : (proto.solutions > 0 ? Verdict::witness_found
                                                : Verdict::exhaustively_refuted);
        } else if (hit) {
            rr.verdict = Verdict::witness_found;
            rr.sigma = proto.witness_sigma;
        } else {
            rr.verdict = proto.aborted() ? Verdict::inconclusive : Verdict::exhaustively_refuted;
        }
        rr.stats.elapsed_secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rr;
    }

    // Parallel mode: expand the root node once, then hand each root candidate
    // to a worker pool.  Every branch runs to its own completion so the merge
    // is deterministic regardless of scheduling.
    if (!proto.select(0)) {
        // root node already dead: zero solutions, fully explored
        rr.verdict = Verdict::exhaustively_refuted;
        rr.stats.elapsed_secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rr;
    }
    const i64 root_base = proto.cand_base;
    const std::vector<i64> root_cands = proto.cand[0];
    const std::size_t branches = root_cands.size();
    std::vector<BranchResult> results(branches);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= branches) return;
            Engine eng;
            eng.init(n, tab, cfg, counting);
            if (cfg.node_budget != 0) {
                const u64 share = cfg.node_budget / branches;
                const u64 extra = (b < cfg.node_budget % branches) ? 1 : 0;
                eng.node_budget = std::max<u64>(1, share + extra);
            }
            eng.has_deadline = has_deadline;
            eng.deadline = deadline;
            eng.nodes = 1;  // the root assignment itself
            eng.max_depth = 1;
            eng.apply(root_base, root_cands[b]);
            const bool hit = eng.dfs(1);
            BranchResult& br = results[b];
            br.nodes = eng.nodes;
            br.max_depth = eng.max_depth;
            br.solutions = eng.solutions;
            br.node_abort = eng.node_abort;
            br.time_abort = eng.time_abort;
            br.complete = !eng.aborted();
            if (!counting && hit) {
                br.found = true;
                br.sigma = eng.witness_sigma;
            }
        }
    };
    {
        std::vector<std::thread> pool;
        const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(width), branches);
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    bool all_complete = true;
    bool any_found = false;
    for (const auto& br : results) {
        rr.stats.nodes += br.nodes;
        rr.stats.max_depth = std::max(rr.stats.max_depth, br.max_depth);
        rr.stats.node_budget_hit = rr.stats.node_budget_hit || br.node_abort;
        rr.stats.time_budget_hit = rr.stats.time_budget_hit || br.time_abort;
        rr.solutions += br.solutions;
        all_complete = all_complete && br.complete;
        if (br.found && (!any_found || br.sigma < rr.sigma)) {
            any_found = true;
            rr.sigma = br.sigma;
        }
    }
    if (counting) {
        rr.verdict = !all_complete ? Verdict::inconclusive
                     : (rr.solutions > 0 ? Verdict::witness_found : Verdict::exhaustively_refuted);
    } else if (any_found) {
        rr.verdict = Verdict::witness_found;
    } else {
        rr.verdict = all_complete ? Verdict::exhaustively_refuted : Verdict::inconclusive;
    }
    rr.stats.elapsed_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rr;
}

}  // namespace detail

// Decide whether n admits a witness, exhaustively (within budgets).
inline SearchOutcome decide(i64 n, const SearchConfig& cfg = {}) {
    if (n < 2) throw std::invalid_argument("decide: n must be >= 2");
    const residue::PowerTable tab = residue::power_table(n);  // throws TableCapExceeded when too big
    const auto rr = detail::run_search(n, tab, cfg, false);
    SearchOutcome out;
    out.n = n;
    out.verdict = rr.verdict;
    out.stats = rr.stats;
    if (rr.verdict == Verdict::witness_found) {
        residue::Witness w(n, rr.sigma);
        if (!residue::verify_witness(w).ok())
            throw std::logic_error("decide: search produced a non-verifying witness");
        out.witness = std::move(w);
    }
    return out;
}

// Exact number of witnesses for n (complete enumeration), or Inconclusive on
// budget exhaustion.
inline CountOutcome count_witnesses(i64 n, const SearchConfig& cfg = {}) {
    if (n < 2) throw std::invalid_argument("count_witnesses: n must be >= 2");
    const residue::PowerTable tab = residue::power_table(n);
    const auto rr = detail::run_search(n, tab, cfg, true);
    CountOutcome out;
    out.n = n;
    out.stats = rr.stats;
    out.inconclusive = (rr.verdict == Verdict::inconclusive);
    out.count = rr.solutions;
    return out;
}

}  // namespace crsexp::oracle
