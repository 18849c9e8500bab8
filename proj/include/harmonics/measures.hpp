#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "harmonics/groups.hpp"
#include "harmonics/types.hpp"

#include "json.hpp"

namespace harmonics {

enum class MeasureKind { Probability, Signed };
enum class ConvolutionSide { Left, Right };

/// Caps support blowup of convolution powers. `discarded_mass` is the running
/// total over every truncation performed against this budget; it never
/// decreases and stays 0 while supports fit.
struct TruncationBudget {
    std::size_t max_support = 2'000'000;
    Rational discarded_mass = Rational(0);
};

/// Number of worker threads measure/simulation code may use. Outputs are
/// bit-identical for every setting; chunk boundaries are fixed independently
/// of it. Set once at startup (the CLI wires --jobs here).
inline int& parallel_jobs() {
    static int jobs = 1;
    return jobs;
}

// ---------------------------------------------------------------------------
// SparseMeasure
// ---------------------------------------------------------------------------

/// Finitely supported measure with exact rational weights, stored as a flat
/// vector of atoms sorted by element. `deficit` bounds the total-variation
/// distance to the un-truncated measure this one approximates (0 on exact
/// runs); it propagates through convolution so downstream reports can carry
/// sound error radii.
class SparseMeasure {
public:
    using Atom = std::pair<GroupElement, Rational>;

    SparseMeasure(GroupId group, MeasureKind kind)
        : group_(std::move(group)), kind_(kind) {}

    static SparseMeasure dirac(const GroupElement& e) {
        SparseMeasure m(e.group(), MeasureKind::Probability);
        m.atoms_.emplace_back(e, Rational(1));
        return m;
    }

    /// Sorts, accumulates duplicate elements, drops zero weights, validates.
    static SparseMeasure from_atoms(GroupId group, std::vector<Atom> atoms, MeasureKind kind) {
        for (const auto& [e, w] : atoms)
            if (e.group() != group)
                throw GroupMismatchError("atom element from a different group");
        std::sort(atoms.begin(), atoms.end(), AtomLess{});
        std::vector<Atom> merged;
        merged.reserve(atoms.size());
        for (auto& a : atoms) {
            if (!merged.empty() && merged.back().first == a.first)
                merged.back().second += a.second;
            else
                merged.push_back(std::move(a));
        }
        std::erase_if(merged, [](const Atom& a) { return a.second == 0; });
        SparseMeasure m(std::move(group), kind);
        m.atoms_ = std::move(merged);
        m.validate();
        return m;
    }

    /// Atoms must already be sorted by element, unique, zero-free.
    static SparseMeasure from_sorted(GroupId group, std::vector<Atom> atoms, MeasureKind kind,
                                     Rational deficit = Rational(0)) {
        SparseMeasure m(std::move(group), kind);
        m.atoms_ = std::move(atoms);
        m.deficit_ = std::move(deficit);
        assert(std::is_sorted(m.atoms_.begin(), m.atoms_.end(), AtomLess{}));
        return m;
    }

    const GroupId& group() const { return group_; }
    MeasureKind kind() const { return kind_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t support_size() const { return atoms_.size(); }
    const Rational& deficit() const { return deficit_; }

    Rational weight_of(const GroupElement& e) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), e,
                                   [](const Atom& a, const GroupElement& k) {
                                       return compare(a.first, k) < 0;
                                   });
        if (it != atoms_.end() && it->first == e) return it->second;
        return Rational(0);
    }

    Rational total_mass() const {
        Rational s(0);
        for (const auto& [e, w] : atoms_) s += w;
        return s;
    }

    /// Probability: weights > 0 and weights + deficit sum to exactly 1.
    void validate() const {
        if (kind_ == MeasureKind::Probability) {
            Rational s(0);
            for (const auto& [e, w] : atoms_) {
                if (w <= 0) throw ValidationError("probability atom with non-positive weight");
                s += w;
            }
            if (s + deficit_ != 1)
                throw ValidationError("probability weights must sum to 1 (got " +
                                      rational_to_string(s) + " + deficit " +
                                      rational_to_string(deficit_) + ")");
        }
    }

    struct AtomLess {
        bool operator()(const Atom& a, const Atom& b) const {
            return compare(a.first, b.first) < 0;
        }
    };

private:
    GroupId group_;
    MeasureKind kind_;
    std::vector<Atom> atoms_;
    Rational deficit_ = Rational(0);

    friend SparseMeasure convolve_impl(const SparseMeasure*, SparseMeasure*,
                                       const SparseMeasure&, TruncationBudget&);
};

inline Rational tv_norm(const SparseMeasure& m) {
    Rational s(0);
    for (const auto& [e, w] : m.atoms()) s += rational_abs(w);
    return s;
}

/// ||a - b|| by a single merge pass; nothing is materialized.
inline Rational tv_distance(const SparseMeasure& a, const SparseMeasure& b) {
    if (a.group() != b.group()) throw GroupMismatchError("tv_distance: group mismatch");
    Rational s(0);
    const auto& x = a.atoms();
    const auto& y = b.atoms();
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        int c = compare(x[i].first, y[j].first);
        if (c < 0)
            s += rational_abs(x[i++].second);
        else if (c > 0)
            s += rational_abs(y[j++].second);
        else {
            s += rational_abs(x[i].second - y[j].second);
            ++i, ++j;
        }
    }
    for (; i < x.size(); ++i) s += rational_abs(x[i].second);
    for (; j < y.size(); ++j) s += rational_abs(y[j].second);
    return s;
}

// ---------------------------------------------------------------------------
// Convolution
// ---------------------------------------------------------------------------

namespace detail {

using AtomVec = std::vector<SparseMeasure::Atom>;

inline AtomVec merge_accumulate(AtomVec&& a, AtomVec&& b) {
    AtomVec out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = compare(a[i].first, b[j].first);
        if (c < 0)
            out.push_back(std::move(a[i++]));
        else if (c > 0)
            out.push_back(std::move(b[j++]));
        else {
            Rational w = a[i].second + b[j].second;
            if (w != 0) out.emplace_back(std::move(a[i].first), std::move(w));
            ++i, ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
    for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
    a.clear();
    a.shrink_to_fit();
    b.clear();
    b.shrink_to_fit();
    return out;
}

// Right-translate every lhs atom by s and scale by q; sorted output.
// Right multiplication is injective, so the run needs no accumulation.
// Parallel chunking uses a fixed chunk count, so results do not depend on the
// thread count.
inline AtomVec transformed_run(const AtomVec& lhs, const GroupElement& s, const Rational& q) {
    AtomVec run(lhs.size(), SparseMeasure::Atom{s, Rational(0)});
    constexpr std::size_t kChunks = 8;
    int jobs = parallel_jobs();
    auto fill = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            run[i].first = multiply(lhs[i].first, s);
            run[i].second = lhs[i].second * q;
        }
    };
    if (jobs > 1 && lhs.size() >= 1u << 16) {
        std::vector<std::thread> pool;
        for (std::size_t c = 0; c < kChunks; ++c) {
            std::size_t lo = lhs.size() * c / kChunks;
            std::size_t hi = lhs.size() * (c + 1) / kChunks;
            pool.emplace_back(fill, lo, hi);
        }
        for (auto& t : pool) t.join();
    } else {
        fill(0, lhs.size());
    }
    std::sort(run.begin(), run.end(), SparseMeasure::AtomLess{});
    return run;
}

// Drops the smallest-|mass| atoms (ties broken by serialized-element text)
// until the support fits the budget; returns the dropped mass.
inline Rational truncate_to_budget(AtomVec& atoms, std::size_t max_support) {
    if (atoms.size() <= max_support) return Rational(0);
    struct Key {
        Rational mass;
        std::string text;
        std::size_t idx;
    };
    std::vector<Key> keys;
    keys.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
        keys.push_back(Key{rational_abs(atoms[i].second), to_text(atoms[i].first), i});
    std::size_t n_drop = atoms.size() - max_support;
    auto lt = [](const Key& a, const Key& b) {
        if (a.mass != b.mass) return a.mass < b.mass;
        return a.text < b.text;
    };
    std::nth_element(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(n_drop - 1),
                     keys.end(), lt);
    std::vector<char> drop(atoms.size(), 0);
    Rational lost(0);
    for (std::size_t i = 0; i < n_drop; ++i) {
        drop[keys[i].idx] = 1;
        lost += keys[i].mass;
    }
    AtomVec kept;
    kept.reserve(max_support);
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(atoms[i]));
    atoms = std::move(kept);
    return lost;
}

}  // namespace detail

/// (lhs * rhs)(A) = sum over gh in A of lhs(g) rhs(h), exact rationals.
/// When `steal` is non-null its storage is released after the last transform
/// pass, which halves the peak footprint of long power chains.
inline SparseMeasure convolve_impl(const SparseMeasure* lhs_ptr, SparseMeasure* steal,
                                   const SparseMeasure& rhs, TruncationBudget& budget) {
    const SparseMeasure& lhs = steal ? *steal : *lhs_ptr;
    if (lhs.group() != rhs.group())
        throw GroupMismatchError("convolve: measures on different groups");
    MeasureKind kind = (lhs.kind() == MeasureKind::Probability &&
                        rhs.kind() == MeasureKind::Probability)
                           ? MeasureKind::Probability
                           : MeasureKind::Signed;
    Rational deficit = lhs.deficit() + rhs.deficit();
    GroupId group = lhs.group();

    detail::AtomVec acc;
    const auto& ratoms = rhs.atoms();
    for (std::size_t k = 0; k < ratoms.size(); ++k) {
        detail::AtomVec run = detail::transformed_run(lhs.atoms(), ratoms[k].first,
                                                      ratoms[k].second);
        if (steal && k + 1 == ratoms.size()) *steal = SparseMeasure(group, kind);
        acc = detail::merge_accumulate(std::move(acc), std::move(run));
    }
    Rational lost = detail::truncate_to_budget(acc, budget.max_support);
    if (lost != 0) {
        budget.discarded_mass += lost;
        deficit += lost;
    }
    return SparseMeasure::from_sorted(std::move(group), std::move(acc), kind,
                                      std::move(deficit));
}

inline SparseMeasure convolve(const SparseMeasure& lhs, const SparseMeasure& rhs,
                              TruncationBudget& budget) {
    return convolve_impl(&lhs, nullptr, rhs, budget);
}

inline SparseMeasure convolve(SparseMeasure&& lhs, const SparseMeasure& rhs,
                              TruncationBudget& budget) {
    return convolve_impl(nullptr, &lhs, rhs, budget);
}

/// mu^{*t} by iterated convolution (not repeated squaring: the convergence
/// criteria consume every intermediate power, and iteration keeps the
/// truncation bookkeeping linear).
inline SparseMeasure convolution_power(const SparseMeasure& mu, int t, TruncationBudget& budget) {
    if (t < 0) throw ValidationError("convolution power needs t >= 0");
    if (mu.kind() != MeasureKind::Probability)
        throw ValidationError("convolution_power expects a probability measure");
    SparseMeasure p = SparseMeasure::dirac(identity(mu.group()));
    for (int i = 0; i < t; ++i) p = convolve(std::move(p), mu, budget);
    return p;
}

/// Walks mu^{*0}, mu^{*1}, ... incrementally.
class PowerSequence {
public:
    PowerSequence(SparseMeasure base, TruncationBudget& budget)
        : base_(std::move(base)), budget_(&budget),
          current_(SparseMeasure::dirac(identity(base_.group()))) {}

    const SparseMeasure& current() const { return current_; }
    int exponent() const { return exponent_; }

    void advance() {
        current_ = convolve(std::move(current_), base_, *budget_);
        ++exponent_;
    }

private:
    SparseMeasure base_;
    TruncationBudget* budget_;
    SparseMeasure current_;
    int exponent_ = 0;
};

// ---------------------------------------------------------------------------
// Signed-measure algebra (used by the Cesàro accumulations)
// ---------------------------------------------------------------------------

inline SparseMeasure measure_scale(const SparseMeasure& m, const Rational& c) {
    if (c == 0) return SparseMeasure(m.group(), MeasureKind::Signed);
    std::vector<SparseMeasure::Atom> atoms = m.atoms();
    for (auto& [e, w] : atoms) w *= c;
    return SparseMeasure::from_sorted(m.group(), std::move(atoms), MeasureKind::Signed,
                                      m.deficit() * rational_abs(c));
}

inline SparseMeasure measure_add(const SparseMeasure& a, const SparseMeasure& b) {
    if (a.group() != b.group()) throw GroupMismatchError("measure_add: group mismatch");
    std::vector<SparseMeasure::Atom> x = a.atoms(), y = b.atoms();
    return SparseMeasure::from_sorted(a.group(),
                                      detail::merge_accumulate(std::move(x), std::move(y)),
                                      MeasureKind::Signed, a.deficit() + b.deficit());
}

inline SparseMeasure measure_sub(const SparseMeasure& a, const SparseMeasure& b) {
    return measure_add(a, measure_scale(b, Rational(-1)));
}

// ---------------------------------------------------------------------------
// Laziness and convex combinations of powers
// ---------------------------------------------------------------------------

/// t*mu + (1-t)*delta_e.
inline SparseMeasure lazy(const SparseMeasure& mu, const Rational& t) {
    if (mu.kind() != MeasureKind::Probability)
        throw ValidationError("lazy expects a probability measure");
    if (!(t > 0 && t < 1)) throw ValidationError("lazy parameter must be in (0,1)");
    std::vector<SparseMeasure::Atom> atoms = mu.atoms();
    for (auto& [e, w] : atoms) w *= t;
    std::vector<SparseMeasure::Atom> e_atom{{identity(mu.group()), 1 - t}};
    auto merged = detail::merge_accumulate(std::move(atoms), std::move(e_atom));
    return SparseMeasure::from_sorted(mu.group(), std::move(merged), MeasureKind::Probability,
                                      mu.deficit() * t);
}

/// sum over (n, alpha_n) of alpha_n * mu^{*n}; the weights must be a finite
/// probability vector over distinct exponents.
inline SparseMeasure convex_combination(const SparseMeasure& mu,
                                        std::vector<std::pair<int, Rational>> weights,
                                        TruncationBudget& budget) {
    if (mu.kind() != MeasureKind::Probability)
        throw ValidationError("convex_combination expects a probability measure");
    std::sort(weights.begin(), weights.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Rational total(0);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto& [n, alpha] = weights[i];
        if (n < 0) throw ValidationError("convex_combination: negative exponent");
        if (alpha < 0) throw ValidationError("convex_combination: negative weight");
        if (i > 0 && weights[i - 1].first == n)
            throw ValidationError("convex_combination: duplicate exponent");
        total += alpha;
    }
    if (total != 1) throw ValidationError("convex_combination weights must sum to 1");

    SparseMeasure acc(mu.group(), MeasureKind::Signed);
    PowerSequence powers(mu, budget);
    for (const auto& [n, alpha] : weights) {
        while (powers.exponent() < n) powers.advance();
        if (alpha != 0) acc = measure_add(acc, measure_scale(powers.current(), alpha));
    }
    return SparseMeasure::from_sorted(mu.group(), std::vector(acc.atoms()),
                                      MeasureKind::Probability, acc.deficit());
}

// ---------------------------------------------------------------------------
// Pointwise translation gaps
// ---------------------------------------------------------------------------
// For a single-atom theta = delta_s these evaluate the convolution criteria
// without materializing any convolution:
//   ||mu*delta_s - delta_s*mu|| = sum_g |mu(g) - mu(s^-1 g s)|
//   ||delta_s*mu - mu||         = sum_g |mu(g) - mu(s g)|
//   ||mu*delta_s - mu||         = sum_g |mu(g) - mu(g s)|

namespace detail {

template <class MapFn, class InvFn>
Rational pointwise_gap(const SparseMeasure& mu, MapFn&& phi, InvFn&& phi_inv) {
    Rational total(0);
    for (const auto& [g, w] : mu.atoms()) {
        total += rational_abs(w - mu.weight_of(phi(g)));
        if (mu.weight_of(phi_inv(g)) == 0) total += rational_abs(w);
    }
    return total;
}

}  // namespace detail

inline Rational conjugation_commutator_gap(const SparseMeasure& mu, const GroupElement& s) {
    GroupElement si = inverse(s);
    return detail::pointwise_gap(
        mu, [&](const GroupElement& g) { return multiply(multiply(si, g), s); },
        [&](const GroupElement& g) { return multiply(multiply(s, g), si); });
}

inline Rational shift_invariance_gap(const SparseMeasure& mu, const GroupElement& s,
                                     ConvolutionSide side) {
    GroupElement si = inverse(s);
    if (side == ConvolutionSide::Left)
        return detail::pointwise_gap(
            mu, [&](const GroupElement& g) { return multiply(s, g); },
            [&](const GroupElement& g) { return multiply(si, g); });
    return detail::pointwise_gap(
        mu, [&](const GroupElement& g) { return multiply(g, s); },
        [&](const GroupElement& g) { return multiply(g, si); });
}

// ---------------------------------------------------------------------------
// Support dominance (absolute-continuity surrogate on discrete groups)
// ---------------------------------------------------------------------------

enum class DominanceVerdict { Dominated, Undecided };

struct DominanceResult {
    DominanceVerdict verdict = DominanceVerdict::Undecided;
    std::optional<GroupElement> witness;  // lexicographically first unreached atom
    int horizon = 0;
    int max_n_needed = 0;      // when dominated: largest power needed
    bool support_truncated = false;
};

/// Checks supp(theta) against the union of supp(mu^{*n}) for n <= n_max by
/// breadth-first search over product paths. Absolute continuity w.r.t. the
/// geometric mixture of powers reduces to this support inclusion on discrete
/// groups. A miss at the horizon is reported as Undecided, never as a
/// negative.
inline DominanceResult dominance_check(const SparseMeasure& theta, const SparseMeasure& mu,
                                       int n_max, std::size_t support_cap = 2'000'000) {
    if (theta.group() != mu.group())
        throw GroupMismatchError("dominance_check: group mismatch");
    if (theta.kind() != MeasureKind::Probability || mu.kind() != MeasureKind::Probability)
        throw ValidationError("dominance_check expects probability measures");

    std::vector<GroupElement> targets;
    for (const auto& [e, w] : theta.atoms()) targets.push_back(e);
    std::vector<char> found(targets.size(), 0);

    DominanceResult res;
    res.horizon = n_max;

    std::vector<GroupElement> steps;
    for (const auto& [e, w] : mu.atoms()) steps.push_back(e);

    std::vector<GroupElement> visited{identity(mu.group())};
    std::vector<GroupElement> frontier = visited;

    auto mark_found = [&](int level) {
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (found[i]) continue;
            if (std::binary_search(frontier.begin(), frontier.end(), targets[i],
                                   ElementLess{})) {
                found[i] = 1;
                res.max_n_needed = std::max(res.max_n_needed, level);
            }
        }
    };
    mark_found(0);

    for (int n = 1; n <= n_max; ++n) {
        if (std::all_of(found.begin(), found.end(), [](char c) { return c != 0; })) break;
        std::vector<GroupElement> next;
        next.reserve(frontier.size() * steps.size());
        for (const auto& f : frontier)
            for (const auto& s : steps) next.push_back(multiply(f, s));
        std::sort(next.begin(), next.end(), ElementLess{});
        next.erase(std::unique(next.begin(), next.end()), next.end());
        std::vector<GroupElement> fresh;
        std::set_difference(next.begin(), next.end(), visited.begin(), visited.end(),
                            std::back_inserter(fresh), ElementLess{});
        if (visited.size() + fresh.size() > support_cap) {
            std::size_t keep = support_cap > visited.size() ? support_cap - visited.size() : 0;
            fresh.resize(keep);
            res.support_truncated = true;
        }
        std::vector<GroupElement> merged;
        merged.reserve(visited.size() + fresh.size());
        std::merge(visited.begin(), visited.end(), fresh.begin(), fresh.end(),
                   std::back_inserter(merged), ElementLess{});
        visited = std::move(merged);
        frontier = std::move(fresh);
        mark_found(n);
        if (frontier.empty()) break;
    }

    auto first_missing = targets.end();
    std::string first_missing_text;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (found[i]) continue;
        std::string t = to_text(targets[i]);
        if (first_missing == targets.end() || t < first_missing_text) {
            first_missing = targets.begin() + static_cast<std::ptrdiff_t>(i);
            first_missing_text = t;
        }
    }
    if (first_missing == targets.end()) {
        res.verdict = DominanceVerdict::Dominated;
    } else {
        res.verdict = DominanceVerdict::Undecided;
        res.witness = *first_missing;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Harmonicity on a ball
// ---------------------------------------------------------------------------

template <class Scalar>
struct HarmonicityResult {
    bool harmonic_on_ball = false;
    Scalar max_defect{};
    std::optional<GroupElement> worst_point;
    std::vector<std::pair<GroupElement, std::string>> failures;  // per-point eval errors
};

/// Checks |h(g) - sum_gamma h(g gamma) mu(gamma)| <= tol over the ball.
/// With a Rational-valued h and tol == 0 the check is exact.
template <class H>
auto is_harmonic(H&& h, const SparseMeasure& mu, const WordBall& ball,
                 const std::invoke_result_t<H&, const GroupElement&>& tol) {
    using Scalar = std::invoke_result_t<H&, const GroupElement&>;
    if (ball.group != mu.group())
        throw GroupMismatchError("is_harmonic: ball and measure on different groups");
    HarmonicityResult<Scalar> res;
    res.max_defect = Scalar(0);
    for (const auto& g : ball.elements) {
        Scalar defect;
        try {
            Scalar avg(0);
            for (const auto& [gamma, w] : mu.atoms()) {
                if constexpr (std::is_same_v<Scalar, Rational>)
                    avg += h(multiply(g, gamma)) * w;
                else
                    avg += h(multiply(g, gamma)) * to_double(w);
            }
            Scalar diff = h(g) - avg;
            defect = diff < Scalar(0) ? Scalar(-diff) : diff;
        } catch (const std::exception& ex) {
            res.failures.emplace_back(g, ex.what());
            continue;
        }
        if (defect > res.max_defect) {
            res.max_defect = defect;
            res.worst_point = g;
        }
    }
    res.harmonic_on_ball = res.failures.empty() && res.max_defect <= tol;
    return res;
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------
// Group: {"kind":"lattice","d":2} | {"kind":"lamplighter"} |
//        {"kind":"free","rank":2} | {"kind":"heisenberg"} |
//        {"kind":"product","left":...,"right":...}
// Measure: {"group":..., "kind":"probability"|"signed",
//           "atoms":[["elem-text","p/q"],...]}

inline nlohmann::json group_id_to_json(const GroupId& g) {
    nlohmann::json j;
    switch (g.kind()) {
        case GroupKind::Lattice:
            j["kind"] = "lattice";
            j["d"] = g.dimension();
            break;
        case GroupKind::Lamplighter: j["kind"] = "lamplighter"; break;
        case GroupKind::FreeGroup:
            j["kind"] = "free";
            j["rank"] = g.rank();
            break;
        case GroupKind::Heisenberg: j["kind"] = "heisenberg"; break;
        case GroupKind::Product:
            j["kind"] = "product";
            j["left"] = group_id_to_json(g.left());
            j["right"] = group_id_to_json(g.right());
            break;
    }
    return j;
}

inline GroupId group_id_from_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "lattice") return GroupId::lattice(j.at("d").get<int>());
    if (kind == "lamplighter") return GroupId::lamplighter();
    if (kind == "free") return GroupId::free_group(j.at("rank").get<int>());
    if (kind == "heisenberg") return GroupId::heisenberg();
    if (kind == "product")
        return GroupId::product(group_id_from_json(j.at("left")),
                                group_id_from_json(j.at("right")));
    throw ParseError("unknown group kind: " + kind);
}

inline nlohmann::json measure_to_json(const SparseMeasure& m) {
    nlohmann::json j;
    j["group"] = group_id_to_json(m.group());
    j["kind"] = m.kind() == MeasureKind::Probability ? "probability" : "signed";
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& [e, w] : m.atoms())
        atoms.push_back(nlohmann::json::array({to_text(e), rational_to_string(w)}));
    j["atoms"] = atoms;
    return j;
}

inline SparseMeasure measure_from_json(const nlohmann::json& j) {
    GroupId g = group_id_from_json(j.at("group"));
    MeasureKind kind = MeasureKind::Probability;
    if (j.contains("kind"))
        kind = j.at("kind").get<std::string>() == "signed" ? MeasureKind::Signed
                                                           : MeasureKind::Probability;
    std::vector<SparseMeasure::Atom> atoms;
    for (const auto& a : j.at("atoms")) {
        if (!a.is_array() || a.size() != 2) throw ParseError("measure atom must be [text, weight]");
        atoms.emplace_back(parse_element(g, a[0].get<std::string>()),
                           parse_rational(a[1].get<std::string>()));
    }
    return SparseMeasure::from_atoms(g, std::move(atoms), kind);
}

}  // namespace harmonics
