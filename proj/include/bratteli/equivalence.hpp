#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bratteli/symbol.hpp"

namespace bratteli {

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

/// Unique rational solution of X * c = t for invertible square c,
/// accepted only if integral, non-negative and admissible.
inline std::optional<EMatrix> solve_square(const EMatrix& c, const EMatrix& t) {
    const std::size_t n = c.rows();
    // Solve c^T * Y = t^T for Y = X^T by Gaussian elimination over Q.
    std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(n + t.rows()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rat(c(j, i));
        for (std::size_t k = 0; k < t.rows(); ++k) aug[i][n + k] = Rat(t(k, i));
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && aug[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;  // singular
        std::swap(aug[piv], aug[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || aug[i][col] == 0) continue;
            Rat f = aug[i][col] / aug[col][col];
            for (std::size_t j = col; j < aug[i].size(); ++j) aug[i][j] -= f * aug[col][j];
        }
    }
    EMatrix x(t.rows(), n);
    for (std::size_t k = 0; k < t.rows(); ++k)
        for (std::size_t i = 0; i < n; ++i) {
            Rat v = aug[i][n + k] / aug[i][i];
            if (v.get_den() != 1 || v < 0) return std::nullopt;
            x(k, i) = v.get_num();
        }
    return admissible(x) ? std::make_optional(x) : std::nullopt;
}

inline void row_solutions(const EMatrix& c, const EMatrix& t, std::size_t row,
                          const Int& entry_bound, std::size_t limit,
                          std::vector<std::vector<Int>>& out) {
    const std::size_t unknowns = c.rows(), width = c.cols();
    std::vector<Int> bounds(unknowns);
    for (std::size_t j = 0; j < unknowns; ++j) {
        Int b = entry_bound;
        for (std::size_t l = 0; l < width; ++l)
            if (c(j, l) > 0) {
                Int cap = t(row, l) / c(j, l);
                if (cap < b) b = cap;
            }
        bounds[j] = b;
    }
    std::vector<Int> x(unknowns, Int(0));
    std::vector<Int> acc(width, Int(0));
    auto dfs = [&](auto&& self, std::size_t j) -> void {
        if (out.size() >= limit) return;
        if (j == unknowns) {
            for (std::size_t l = 0; l < width; ++l)
                if (acc[l] != t(row, l)) return;
            out.push_back(x);
            return;
        }
        for (Int v(0); v <= bounds[j]; ++v) {
            x[j] = v;
            bool ok = true;
            for (std::size_t l = 0; l < width && ok; ++l) {
                acc[l] += v * c(j, l);
                ok = acc[l] <= t(row, l);
            }
            // entries only grow, so an overshoot kills all larger v too
            if (ok) self(self, j + 1);
            for (std::size_t l = 0; l < width; ++l) acc[l] -= v * c(j, l);
            if (!ok) break;
            if (out.size() >= limit) return;
        }
        x[j] = 0;
    };
    dfs(dfs, 0);
}

}  // namespace detail

/// All admissible non-negative integer X with X * c_prev = target, in
/// lexicographic order, at most `limit` of them. For invertible square
/// c_prev the solution is unique; otherwise rows are enumerated with
/// entries capped by `entry_bound` and the target entries.
inline std::vector<EMatrix> enumerate_intertwiners(const EMatrix& c_prev, const EMatrix& target,
                                                   const Int& entry_bound, std::size_t limit = 64) {
    std::vector<EMatrix> out;
    if (c_prev.cols() != target.cols() || limit == 0) return out;
    if (c_prev.is_square() && rank_over_rationals(c_prev) == c_prev.rows()) {
        if (auto x = detail::solve_square(c_prev, target)) out.push_back(*x);
        return out;
    }
    std::vector<std::vector<std::vector<Int>>> per_row(target.rows());
    for (std::size_t i = 0; i < target.rows(); ++i) {
        detail::row_solutions(c_prev, target, i, entry_bound, limit, per_row[i]);
        if (per_row[i].empty()) return out;
    }
    std::vector<std::size_t> pick(target.rows(), 0);
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        if (out.size() >= limit) return;
        if (i == target.rows()) {
            EMatrix x(target.rows(), c_prev.rows());
            for (std::size_t a = 0; a < target.rows(); ++a)
                for (std::size_t j = 0; j < c_prev.rows(); ++j) x(a, j) = per_row[a][pick[a]][j];
            if (admissible(x)) out.push_back(x);
            return;
        }
        for (pick[i] = 0; pick[i] < per_row[i].size(); ++pick[i]) {
            self(self, i + 1);
            if (out.size() >= limit) return;
        }
    };
    dfs(dfs, 0);
    return out;
}

/// First admissible solution of X * c_prev = target, or nothing.
inline std::optional<EMatrix> solve_intertwiner(const EMatrix& c_prev, const EMatrix& target,
                                                std::optional<Int> entry_bound = std::nullopt) {
    if (c_prev.cols() != target.cols())
        throw std::invalid_argument("solve_intertwiner: column counts differ");
    Int bound = entry_bound ? *entry_bound : max_entry(target);
    auto sols = enumerate_intertwiners(c_prev, target, bound, 1);
    if (sols.empty()) return std::nullopt;
    return sols.front();
}

/// Interleaving data certifying that two factor sequences generate the
/// same diagram up to telescoping: cut positions into each sequence
/// and the interleaver chain C_0, C_1, ..., reproducing both prefixes
/// when re-multiplied.
struct Witness {
    std::vector<std::size_t> r_cuts;  // strictly increasing, into the left sequence
    std::vector<std::size_t> m_cuts;  // strictly increasing, into the right sequence
    std::vector<EMatrix> interleavers;
};

enum class Verdict { EquivalentWitness, NonIsomorphic, SubAlgebraOnly, Unknown };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::EquivalentWitness: return "equivalent-witness";
        case Verdict::NonIsomorphic: return "non-isomorphic";
        case Verdict::SubAlgebraOnly: return "sub-algebra-only";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

struct Certificate {
    Verdict verdict = Verdict::Unknown;
    std::string reason;
    std::optional<Witness> witness;
    std::uint64_t replay_hash_a = 0;
    std::uint64_t replay_hash_b = 0;
};

/// The full E-matrix sequence of a spec: initial column first, then
/// factors, as positions 0, 1, 2, ...
inline std::vector<EMatrix> full_sequence(const SymbolSpec& spec, std::size_t length) {
    std::vector<EMatrix> seq;
    seq.push_back(spec.initial_column());
    auto count = spec.factor_count();
    for (std::size_t i = 0; i + 1 < length; ++i) {
        if (count && i >= *count) break;
        seq.push_back(spec.factor_at_position(i));
    }
    return seq;
}

inline EMatrix sequence_product(const std::vector<EMatrix>& seq, std::size_t first,
                                std::size_t last_exclusive) {
    return product_of(seq, first, last_exclusive);
}

/// Independent replay of a witness against the two sequences: checks
/// admissibility of every interleaver and every defining product
/// equation by exact re-multiplication.
inline bool replay_witness(const Witness& w, const std::vector<EMatrix>& a_seq,
                           const std::vector<EMatrix>& b_seq) {
    if (w.r_cuts.empty() || w.interleavers.size() != w.r_cuts.size() + w.m_cuts.size())
        return false;
    if (w.r_cuts.size() != w.m_cuts.size() + 1) return false;
    for (const EMatrix& c : w.interleavers)
        if (!admissible(c)) return false;
    for (std::size_t i = 0; i + 1 < w.r_cuts.size(); ++i)
        if (w.r_cuts[i] >= w.r_cuts[i + 1]) return false;
    for (std::size_t i = 0; i + 1 < w.m_cuts.size(); ++i)
        if (w.m_cuts[i] >= w.m_cuts[i + 1]) return false;
    if (w.r_cuts.back() > a_seq.size() || (!w.m_cuts.empty() && w.m_cuts.back() > b_seq.size()))
        return false;

    if (!(w.interleavers[0] == sequence_product(a_seq, 0, w.r_cuts[0]))) return false;
    for (std::size_t n = 1; n <= w.m_cuts.size(); ++n) {
        std::size_t m_lo = n >= 2 ? w.m_cuts[n - 2] : 0;
        EMatrix b_block = sequence_product(b_seq, m_lo, w.m_cuts[n - 1]);
        if (!(multiply(w.interleavers[2 * n - 1], w.interleavers[2 * n - 2]) == b_block))
            return false;
        EMatrix a_block = sequence_product(a_seq, w.r_cuts[n - 1], w.r_cuts[n]);
        if (!(multiply(w.interleavers[2 * n], w.interleavers[2 * n - 1]) == a_block))
            return false;
    }
    return true;
}

struct SearchBudget {
    std::size_t depth = 6;        // interleaving rounds and per-block length cap
    std::size_t enum_limit = 16;  // candidate interleavers per solve
    std::size_t node_limit = 100000;
};

namespace detail {

struct WitnessSearch {
    const std::vector<EMatrix>& a_seq;
    const std::vector<EMatrix>& b_seq;
    const SearchBudget& budget;
    bool a_finite, b_finite;
    std::size_t nodes = 0;
    std::map<std::string, bool> dead;
    Witness current;
    std::optional<Witness> found;

    // prefix products cached: prod[i] = product of entries [0, i)
    std::vector<EMatrix> a_pre, b_pre;

    WitnessSearch(const std::vector<EMatrix>& a, const std::vector<EMatrix>& b,
                  const SearchBudget& bu, bool af, bool bf)
        : a_seq(a), b_seq(b), budget(bu), a_finite(af), b_finite(bf) {}

    EMatrix block(const std::vector<EMatrix>& seq, std::size_t lo, std::size_t hi) const {
        return sequence_product(seq, lo, hi);
    }

    bool exhausted_success(std::size_t ia, std::size_t ib, std::size_t round) const {
        if (round == 0) return false;
        bool a_done = !a_finite || ia == a_seq.size();
        bool b_done = !b_finite || ib == b_seq.size();
        return round >= budget.depth || (a_finite && b_finite && a_done && b_done);
    }

    bool search(std::size_t ia, std::size_t ib, const EMatrix& c_prev, std::size_t round) {
        if (exhausted_success(ia, ib, round)) {
            found = current;
            return true;
        }
        if (++nodes > budget.node_limit) return false;
        std::string key = std::to_string(round) + ":" + std::to_string(ia) + ":" +
                          std::to_string(ib) + ":" + c_prev.str();
        if (auto it = dead.find(key); it != dead.end()) return false;

        for (std::size_t mb = 1; mb <= budget.depth && ib + mb <= b_seq.size(); ++mb) {
            EMatrix b_block = block(b_seq, ib, ib + mb);
            if (b_block.cols() != c_prev.cols()) continue;
            for (const EMatrix& c_odd :
                 enumerate_intertwiners(c_prev, b_block, max_entry(b_block), budget.enum_limit)) {
                current.m_cuts.push_back(ib + mb);
                current.interleavers.push_back(c_odd);
                for (std::size_t ma = 1; ma <= budget.depth && ia + ma <= a_seq.size(); ++ma) {
                    EMatrix a_block = block(a_seq, ia, ia + ma);
                    if (a_block.cols() != c_odd.cols()) continue;
                    for (const EMatrix& c_even : enumerate_intertwiners(
                             c_odd, a_block, max_entry(a_block), budget.enum_limit)) {
                        current.r_cuts.push_back(ia + ma);
                        current.interleavers.push_back(c_even);
                        if (search(ia + ma, ib + mb, c_even, round + 1)) return true;
                        current.r_cuts.pop_back();
                        current.interleavers.pop_back();
                    }
                }
                current.m_cuts.pop_back();
                current.interleavers.pop_back();
            }
        }
        dead[key] = true;
        return false;
    }
};

}  // namespace detail

/// Bounded search for a telescoping witness per the interleaving
/// relation. A positive answer always carries a witness that replays
/// exactly; exhausting the budget yields Unknown, never a negative.
inline Certificate find_telescoping_witness(const SymbolSpec& a, const SymbolSpec& b,
                                            const SearchBudget& budget = {}) {
    const std::size_t max_len = budget.depth * (budget.depth + 1) + 1;
    std::vector<EMatrix> a_seq = full_sequence(a, max_len);
    std::vector<EMatrix> b_seq = full_sequence(b, max_len);
    bool a_finite = a.factor_count().has_value() && a_seq.size() < max_len;
    bool b_finite = b.factor_count().has_value() && b_seq.size() < max_len;

    Certificate cert;
    detail::WitnessSearch ws(a_seq, b_seq, budget, a_finite, b_finite);
    for (std::size_t r1 = 1; r1 <= std::min(budget.depth, a_seq.size()); ++r1) {
        ws.current = Witness{};
        ws.current.r_cuts.push_back(r1);
        ws.current.interleavers.push_back(ws.block(a_seq, 0, r1));
        if (!admissible(ws.current.interleavers[0])) continue;
        if (ws.search(r1, 0, ws.current.interleavers[0], 0)) break;
    }
    if (ws.found && replay_witness(*ws.found, a_seq, b_seq)) {
        cert.verdict = Verdict::EquivalentWitness;
        cert.reason = "interleaving witness found and replayed";
        cert.witness = ws.found;
        cert.replay_hash_a = fnv1a(sequence_product(a_seq, 0, ws.found->r_cuts.back()).str());
        cert.replay_hash_b =
            fnv1a(sequence_product(b_seq, 0, ws.found->m_cuts.back()).str());
    } else {
        cert.verdict = Verdict::Unknown;
        cert.reason = ws.nodes > budget.node_limit ? "search budget exhausted"
                                                   : "no witness within depth";
    }
    return cert;
}

/// Commutative triangular families used by the sub-product condition.
class TriangularFamily {
public:
    enum class Kind { UnitLower, Full, Explicit };

    /// {T(n,1) : n >= 1}
    static TriangularFamily unit_lower() { return TriangularFamily(Kind::UnitLower); }
    /// {T(a,b) : a >= b >= 1}, enumerated row by row like the extended
    /// double-product family
    static TriangularFamily full() { return TriangularFamily(Kind::Full); }
    static TriangularFamily explicit_family(std::vector<std::pair<Int, Int>> elems) {
        TriangularFamily f(Kind::Explicit);
        f.elems_ = std::move(elems);
        return f;
    }

    Kind kind() const { return kind_; }

    std::pair<Int, Int> element(std::size_t idx) const {  // 1-based
        if (idx == 0) throw std::invalid_argument("TriangularFamily: 1-based indices");
        switch (kind_) {
            case Kind::UnitLower: return {Int(static_cast<long>(idx)), Int(1)};
            case Kind::Full: {
                std::size_t k = idx - 1, n = 1;
                while (k >= n) {
                    k -= n;
                    ++n;
                }
                return {Int(static_cast<long>(n)), Int(static_cast<long>(k + 1))};
            }
            case Kind::Explicit:
                if (idx > elems_.size())
                    throw std::out_of_range("TriangularFamily: index past explicit list");
                return elems_[idx - 1];
        }
        throw std::logic_error("unreachable");
    }

    /// Membership; for explicit families only the first `enum_bound`
    /// elements are considered.
    bool contains(const Int& a, const Int& b, std::size_t enum_bound) const {
        switch (kind_) {
            case Kind::UnitLower: return a >= 1 && b == 1;
            case Kind::Full: return a >= b && b >= 1;
            case Kind::Explicit:
                for (std::size_t i = 0; i < std::min(enum_bound, elems_.size()); ++i)
                    if (elems_[i].first == a && elems_[i].second == b) return true;
                return false;
        }
        return false;
    }

private:
    explicit TriangularFamily(Kind k) : kind_(k) {}
    Kind kind_;
    std::vector<std::pair<Int, Int>> elems_;
};

struct SigmaBounds {
    std::size_t test_elements = 20;  // P
    std::size_t member_search = 20;  // R, membership enumeration for explicit families
    std::size_t prefix_length = 20;  // S
};

struct SigmaStep {
    std::size_t p = 0;
    std::size_t s = 0;
    Int cofactor_a, cofactor_b;  // the derived complementary element
};

struct SigmaResult {
    bool holds = false;
    std::size_t checked_up_to = 0;  // P when holds
    std::size_t failed_p = 0;       // first failing test element otherwise
    std::vector<SigmaStep> steps;
};

/// Sub-product condition on a commutative triangular family: for every
/// test element A_p (p <= P) some prefix of the chosen B-sequence
/// factors as A_p times another family member. On T-parameters the
/// equation reduces to exact divisibility of the two integer products;
/// the complementary element is derived by division and membership-
/// checked rather than searched, since its size is unbounded.
inline SigmaResult sigma_check(const TriangularFamily& family,
                               const std::vector<std::pair<Int, Int>>& b_prefix,
                               const SigmaBounds& bounds = {}) {
    for (const auto& [a, b] : b_prefix)
        if (!family.contains(a, b, bounds.member_search))
            throw std::invalid_argument("sigma_check: B-factor outside the semigroup");

    SigmaResult res;
    for (std::size_t p = 1; p <= bounds.test_elements; ++p) {
        auto [ap, bp] = family.element(p);
        bool ok = false;
        Int prod_a(1), prod_b(1);
        for (std::size_t s = 1; s <= std::min(bounds.prefix_length, b_prefix.size()); ++s) {
            prod_a *= b_prefix[s - 1].first;
            prod_b *= b_prefix[s - 1].second;
            if (prod_a % ap != 0 || prod_b % bp != 0) continue;
            Int qa = prod_a / ap, qb = prod_b / bp;
            if (qa < 1 || qb < 1) continue;
            if (!family.contains(qa, qb, bounds.member_search)) continue;
            res.steps.push_back(SigmaStep{p, s, qa, qb});
            ok = true;
            break;
        }
        if (!ok) {
            res.holds = false;
            res.failed_p = p;
            return res;
        }
    }
    res.holds = true;
    res.checked_up_to = bounds.test_elements;
    return res;
}

namespace detail {

struct SquareProfile {
    bool applicable = false;
    std::size_t size = 0;
    std::size_t sampled = 0;
};

inline SquareProfile square_profile(const SymbolSpec& spec, std::size_t depth) {
    SquareProfile sp;
    auto count = spec.factor_count();
    std::size_t n = count ? std::min(*count, depth) : depth;
    if (n == 0) return sp;
    const EMatrix col = spec.initial_column();
    for (std::size_t i = 0; i < col.rows(); ++i)
        if (col(i, 0) < 1) return sp;
    for (std::size_t i = 0; i < n; ++i) {
        EMatrix f = spec.factor_at_position(i);
        if (!f.is_square()) return sp;
        if (i == 0)
            sp.size = f.rows();
        else if (f.rows() != sp.size)
            return sp;
        if (rank_over_rationals(f) != sp.size) return sp;  // singular factor
    }
    sp.applicable = true;
    sp.sampled = n;
    return sp;
}

}  // namespace detail

/// Size/rank certificate: two symbols whose factors are square,
/// nonsingular and of different fixed sizes generate non-isomorphic
/// limits. Anything short of that yields Unknown.
inline Certificate nonisomorphism_certificate(const SymbolSpec& a, const SymbolSpec& b,
                                              std::size_t depth = 16) {
    Certificate cert;
    auto pa = detail::square_profile(a, depth);
    auto pb = detail::square_profile(b, depth);
    cert.replay_hash_a = fnv1a(partial_product(a, std::min<std::size_t>(depth, 4)).column.str());
    cert.replay_hash_b = fnv1a(partial_product(b, std::min<std::size_t>(depth, 4)).column.str());
    if (!pa.applicable || !pb.applicable) {
        cert.reason = "certificate inapplicable: factors not square/nonsingular of fixed size";
        return cert;
    }
    if (pa.size != pb.size) {
        cert.verdict = Verdict::NonIsomorphic;
        cert.reason = "summand counts " + std::to_string(pa.size) + " vs " +
                      std::to_string(pb.size) + " with nonsingular factors sampled to depth " +
                      std::to_string(std::min(pa.sampled, pb.sampled));
    } else {
        cert.reason = "equal summand counts; size certificate gives no obstruction";
    }
    return cert;
}

/// Unitary-equivalence obstruction from declared dimension tails: the
/// tails must be fixed points of dimension propagation through the
/// sampled factors (else the declaration is rejected); differing
/// multisets of finite entries rule out a unitary carrying one
/// represented algebra onto the other.
inline Certificate unitary_equivalence_check(const SymbolSpec& a, const DimVector& tail_a,
                                             const SymbolSpec& b, const DimVector& tail_b,
                                             std::size_t depth = 16) {
    auto validate = [&](const SymbolSpec& s, const DimVector& tail) {
        auto count = s.factor_count();
        std::size_t n = count ? std::min(*count, depth) : depth;
        for (std::size_t i = 0; i < n; ++i) {
            EMatrix f = s.factor_at_position(i);
            if (tail.size() != f.rows() || !(propagate_dim(f, tail) == tail))
                throw std::invalid_argument(
                    "unitary_equivalence_check: declared dimension tail is not consistent");
        }
    };
    validate(a, tail_a);
    validate(b, tail_b);

    auto finite_parts = [](const DimVector& v) {
        std::vector<Int> fin;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_infinite()) fin.push_back(v[i].value());
        std::sort(fin.begin(), fin.end());
        return fin;
    };

    Certificate cert;
    cert.replay_hash_a = fnv1a(tail_a.str());
    cert.replay_hash_b = fnv1a(tail_b.str());
    std::vector<Int> fa = finite_parts(tail_a), fb = finite_parts(tail_b);
    if (fa != fb) {
        cert.verdict = Verdict::NonIsomorphic;
        std::string sa, sb;
        for (const Int& v : fa) sa += (sa.empty() ? "" : ",") + v.get_str();
        for (const Int& v : fb) sb += (sb.empty() ? "" : ",") + v.get_str();
        cert.reason = "finite dimension entries {" + sa + "} vs {" + sb +
                      "} persist under propagation to depth " + std::to_string(depth) +
                      "; no unitary equivalence as represented";
    } else {
        cert.reason = "dimension tails carry the same finite entries; no obstruction found";
    }
    return cert;
}

/// Supernatural invariant of a purely scalar (1x1-factor) symbol,
/// including the initial column; nothing for symbols with larger
/// factors.
inline std::optional<SupernaturalNumber> scalar_supernatural(const SymbolSpec& spec,
                                                             std::size_t window = 256) {
    using Kind = SymbolSpec::Kind;
    switch (spec.kind()) {
        case Kind::UHF: return spec.supernatural();
        case Kind::Explicit: {
            if (spec.initial_column().rows() != 1) return std::nullopt;
            for (const EMatrix& f : spec.factor_list())
                if (f.rows() != 1 || f.cols() != 1) return std::nullopt;
            SupernaturalNumber s = SupernaturalNumber::from_integer(spec.initial_column()(0, 0));
            if (!spec.periodic()) {
                for (const EMatrix& f : spec.factor_list())
                    s *= SupernaturalNumber::from_integer(f(0, 0));
                return s;
            }
            Int period(1);
            for (const EMatrix& f : spec.factor_list()) period *= f(0, 0);
            for (const auto& [p, m] : SupernaturalNumber::from_integer(period).factors())
                s.set(p, ExtNat::infinity());
            return s;
        }
        case Kind::Tensor: {
            auto sa = scalar_supernatural(spec.left(), window);
            auto sb = scalar_supernatural(spec.right(), window);
            if (!sa || !sb) return std::nullopt;
            return *sa * *sb;
        }
        case Kind::ScalarAmplify: {
            auto inner = scalar_supernatural(spec.left(), window);
            if (!inner) return std::nullopt;
            return *inner * SupernaturalNumber::from_integer(spec.amplification());
        }
        default: return std::nullopt;
    }
}

/// Combined certificate route: size/rank obstruction, then the scalar
/// supernatural invariant (equality, proper divisibility = sub-algebra,
/// or mismatch), then the bounded witness search.
inline Certificate certify(const SymbolSpec& a, const SymbolSpec& b,
                           const SearchBudget& budget = {}) {
    Certificate size_cert = nonisomorphism_certificate(a, b, budget.depth * 2);
    if (size_cert.verdict == Verdict::NonIsomorphic) return size_cert;

    auto sa = scalar_supernatural(a);
    auto sb = scalar_supernatural(b);
    if (sa && sb && !(*sa == *sb)) {
        Certificate cert;
        cert.replay_hash_a = fnv1a(sa->str());
        cert.replay_hash_b = fnv1a(sb->str());
        if (sa->divides(*sb)) {
            cert.verdict = Verdict::SubAlgebraOnly;
            cert.reason = "supernatural " + sa->str() + " properly divides " + sb->str() +
                          ": left limit embeds as a proper sub-algebra";
        } else if (sb->divides(*sa)) {
            cert.verdict = Verdict::SubAlgebraOnly;
            cert.reason = "supernatural " + sb->str() + " properly divides " + sa->str() +
                          ": right limit embeds as a proper sub-algebra";
        } else {
            cert.verdict = Verdict::NonIsomorphic;
            cert.reason = "supernatural invariants differ: " + sa->str() + " vs " + sb->str();
        }
        return cert;
    }
    return find_telescoping_witness(a, b, budget);
}

}  // namespace bratteli
