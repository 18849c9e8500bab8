#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harmonics/groups.hpp"
#include "harmonics/measures.hpp"
#include "harmonics/report.hpp"

namespace harmonics {

/// A (mu, theta) pair driven to a finite horizon under a shared budget.
struct CriterionRun {
    SparseMeasure mu;
    SparseMeasure theta;
    int t_max = 30;
    TruncationBudget budget;

    void validate() const {
        if (t_max < 1) throw ValidationError("t_max must be >= 1");
        if (mu.group() != theta.group())
            throw GroupMismatchError("criterion run: mu and theta on different groups");
        if (mu.kind() != MeasureKind::Probability || theta.kind() != MeasureKind::Probability)
            throw ValidationError("criterion run expects probability measures");
        mu.validate();
        theta.validate();
    }
};

namespace detail {

inline bool is_unit_dirac(const SparseMeasure& m) {
    return m.atoms().size() == 1 && m.atoms()[0].second == 1 && m.deficit() == 0;
}

}  // namespace detail

/// values[t] = ||mu^{*t} * theta - theta * mu^{*t}||, t = 0..t_max.
/// Single-atom thetas are evaluated by the pointwise conjugation identity
/// (no convolution materialized); the general path convolves both sides.
inline ConvergenceReport commutator_sequence(CriterionRun& run) {
    run.validate();
    ConvergenceReport rep;
    rep.label = "commutator";
    PowerSequence powers(run.mu, run.budget);
    bool streaming = detail::is_unit_dirac(run.theta);
    const GroupElement* s = streaming ? &run.theta.atoms()[0].first : nullptr;
    for (int t = 0; t <= run.t_max; ++t) {
        if (t > 0) powers.advance();
        const SparseMeasure& p = powers.current();
        if (streaming) {
            rep.push(t, conjugation_commutator_gap(p, *s), Rational(2) * p.deficit());
        } else {
            SparseMeasure a = convolve(p, run.theta, run.budget);
            SparseMeasure b = convolve(run.theta, p, run.budget);
            rep.push(t, tv_distance(a, b), a.deficit() + b.deficit());
        }
    }
    return rep;
}

struct DerriennicOptions {
    ConvolutionSide side = ConvolutionSide::Left;
    bool lazify = true;              // run against (1/2)(mu + delta_e)
    Rational lazy_weight = Rational(1, 2);
};

/// values[t] = ||theta * base^{*t} - base^{*t}|| (Left) or the right-convolved
/// variant, where base is mu or its lazy version. On exact runs the sequence
/// is non-increasing (convolving by a probability measure contracts TV);
/// violation of that would be an engine bug and throws.
inline ConvergenceReport derriennic_sequence(CriterionRun& run,
                                             const DerriennicOptions& opts = {}) {
    run.validate();
    ConvergenceReport rep;
    rep.label = std::string("derriennic-") +
                (opts.side == ConvolutionSide::Left ? "left" : "right") +
                (opts.lazify ? "-lazy" : "-raw");
    SparseMeasure base = opts.lazify ? lazy(run.mu, opts.lazy_weight) : run.mu;
    PowerSequence powers(base, run.budget);
    bool streaming = detail::is_unit_dirac(run.theta);
    const GroupElement* s = streaming ? &run.theta.atoms()[0].first : nullptr;
    for (int t = 0; t <= run.t_max; ++t) {
        if (t > 0) powers.advance();
        const SparseMeasure& p = powers.current();
        Rational value, radius;
        if (streaming) {
            value = shift_invariance_gap(p, *s, opts.side);
            radius = Rational(2) * p.deficit();
        } else {
            SparseMeasure c = opts.side == ConvolutionSide::Left
                                  ? convolve(run.theta, p, run.budget)
                                  : convolve(p, run.theta, run.budget);
            value = tv_distance(c, p);
            radius = c.deficit() + p.deficit();
        }
        if (!rep.values.empty() && radius == 0 && rep.error_radius.back() == 0 &&
            value > rep.values.back())
            throw Error("internal: TV contraction monotonicity violated");
        rep.push(t, std::move(value), std::move(radius));
    }
    return rep;
}

/// values[n] = (1/n) || sum_{i=1..n} (theta * mu^{*i} - mu^{*i}) ||, exact
/// partial sums of signed measures. Each exact run also verifies the triangle
/// bound against the running average of ||theta * mu^{*i} - mu^{*i}||.
inline ConvergenceReport cesaro_sequence(CriterionRun& run) {
    run.validate();
    ConvergenceReport rep;
    rep.label = "cesaro";
    PowerSequence powers(run.mu, run.budget);
    SparseMeasure acc(run.mu.group(), MeasureKind::Signed);
    Rational companion_sum(0);
    for (int n = 1; n <= run.t_max; ++n) {
        powers.advance();
        const SparseMeasure& p = powers.current();
        SparseMeasure tp = convolve(run.theta, p, run.budget);
        companion_sum += tv_distance(tp, p);
        acc = measure_add(acc, measure_sub(tp, p));
        Rational value = tv_norm(acc) / n;
        Rational radius = acc.deficit() / n;
        if (radius == 0 && value > companion_sum / n)
            throw Error("internal: Cesaro triangle bound violated");
        rep.push(n, std::move(value), std::move(radius));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Centre translation check
// ---------------------------------------------------------------------------

template <class Scalar>
struct CenterTranslationResult {
    Scalar max_gap{};
    std::optional<GroupElement> worst_point;
    Scalar harmonicity_defect{};  // boundary caveat: checked on the ball only
};

/// max over g in the ball of |h(zg) - h(g)| for a central z. For a bounded,
/// everywhere-harmonic h this must vanish at reachable z; the unbounded
/// counterexamples (exponentials on Z) produce visibly non-zero gaps.
template <class H>
auto center_translation_check(H&& h, const SparseMeasure& mu, const GroupElement& z,
                              const WordBall& ball) {
    using Scalar = std::invoke_result_t<H&, const GroupElement&>;
    if (z.group() != mu.group() || ball.group != mu.group())
        throw GroupMismatchError("center_translation_check: group mismatch");
    if (!commutes_with_generators(z))
        throw ValidationError("center_translation_check: z is not central");
    CenterTranslationResult<Scalar> res;
    res.max_gap = Scalar(0);
    for (const auto& g : ball.elements) {
        Scalar diff = h(multiply(z, g)) - h(g);
        if (diff < Scalar(0)) diff = -diff;
        if (diff > res.max_gap) {
            res.max_gap = diff;
            res.worst_point = g;
        }
    }
    res.harmonicity_defect = is_harmonic(h, mu, ball, Scalar(0)).max_defect;
    return res;
}

// ---------------------------------------------------------------------------
// TFAE bundle
// ---------------------------------------------------------------------------

inline std::optional<bool> verdict_to_inclusion(VerdictHint v) {
    switch (v) {
        case VerdictHint::ExactZeroTail:
        case VerdictHint::DecreasingTrend: return true;
        case VerdictHint::NoDecrease: return false;
        case VerdictHint::Inconclusive: return std::nullopt;
    }
    return std::nullopt;
}

/// Bundles the available renderings of "H(mu) included in H(theta)":
/// (2) the lazy total-variation criterion, (3) the weak* criterion when a
/// free-group cylinder run supplied one, (1) finite-chain ground truth when
/// available. Pairwise verdicts are compared, never merged.
struct TfaeReport {
    VerdictHint derriennic_hint = VerdictHint::Inconclusive;
    std::optional<bool> derriennic_ok;
    std::optional<VerdictHint> weakstar_hint;
    std::optional<bool> weakstar_ok;
    std::optional<bool> ground_truth;  // finite chains only
    std::vector<std::string> comparisons;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["derriennic_hint"] = to_string(derriennic_hint);
        if (derriennic_ok) j["derriennic_ok"] = *derriennic_ok;
        if (weakstar_hint) j["weakstar_hint"] = to_string(*weakstar_hint);
        if (weakstar_ok) j["weakstar_ok"] = *weakstar_ok;
        if (ground_truth) j["ground_truth"] = *ground_truth;
        j["comparisons"] = comparisons;
        return j;
    }
};

inline TfaeReport tfae_report(CriterionRun& run, const DerriennicOptions& opts = {},
                              std::optional<VerdictHint> weakstar_hint = std::nullopt,
                              std::optional<bool> ground_truth = std::nullopt) {
    TfaeReport rep;
    ConvergenceReport d = derriennic_sequence(run, opts);
    rep.derriennic_hint = d.verdict();
    rep.derriennic_ok = verdict_to_inclusion(rep.derriennic_hint);
    rep.weakstar_hint = weakstar_hint;
    if (weakstar_hint) rep.weakstar_ok = verdict_to_inclusion(*weakstar_hint);
    rep.ground_truth = ground_truth;

    auto compare = [&](const char* name, std::optional<bool> a, std::optional<bool> b) {
        if (!a || !b) return;
        rep.comparisons.push_back(std::string(name) + (*a == *b ? ": AGREE" : ": DISAGREE"));
    };
    compare("(1)-(2)", rep.ground_truth, rep.derriennic_ok);
    compare("(1)-(3)", rep.ground_truth, rep.weakstar_ok);
    compare("(2)-(3)", rep.derriennic_ok, rep.weakstar_ok);
    return rep;
}

}  // namespace harmonics
