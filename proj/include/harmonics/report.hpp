#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "harmonics/types.hpp"

#include "json.hpp"

namespace harmonics {

enum class VerdictHint { ExactZeroTail, DecreasingTrend, NoDecrease, Inconclusive };

inline const char* to_string(VerdictHint v) {
    switch (v) {
        case VerdictHint::ExactZeroTail: return "ExactZeroTail";
        case VerdictHint::DecreasingTrend: return "DecreasingTrend";
        case VerdictHint::NoDecrease: return "NoDecrease";
        case VerdictHint::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// A scalar sequence indexed by time, with a truncation-derived interval
/// radius per entry: the exact value of entry i lies within
/// [values[i] - error_radius[i], values[i] + error_radius[i]].
struct ConvergenceReport {
    std::string label;
    std::vector<int> times;
    std::vector<Rational> values;
    std::vector<Rational> error_radius;

    void push(int t, Rational value, Rational radius) {
        times.push_back(t);
        values.push_back(std::move(value));
        error_radius.push_back(std::move(radius));
    }

    std::size_t size() const { return times.size(); }

    /// Trend verdict over the final window of length ceil(n/3)+1.
    /// Never asserts a limit:
    ///  - ExactZeroTail: the report ends in exact zeros (radius 0) — conclusive
    ///    for monotone sequences;
    ///  - DecreasingTrend: certainly non-increasing across the window with a
    ///    certain net strict decrease (plateaus from step-parity are allowed);
    ///  - NoDecrease: certainly no net decrease over the window;
    ///  - Inconclusive: truncation radii or the data defeat the comparisons.
    VerdictHint verdict() const {
        std::size_t n = size();
        if (n == 0) return VerdictHint::Inconclusive;
        auto exact_zero = [&](std::size_t i) {
            return values[i] == 0 && error_radius[i] == 0;
        };
        std::size_t zero_tail = 0;
        while (zero_tail < n && exact_zero(n - 1 - zero_tail)) ++zero_tail;
        if (zero_tail >= std::min<std::size_t>(2, n)) return VerdictHint::ExactZeroTail;
        if (n < 2) return VerdictHint::Inconclusive;

        std::size_t w = (n + 2) / 3 + 1;
        if (w > n) w = n;
        std::size_t first = n - w;

        auto certainly_leq = [&](std::size_t i, std::size_t j) {
            return values[j] + error_radius[j] <= values[i] - error_radius[i];
        };
        auto certainly_less = [&](std::size_t i, std::size_t j) {
            return values[j] + error_radius[j] < values[i] - error_radius[i];
        };
        bool monotone = true;
        for (std::size_t i = first; i + 1 < n; ++i)
            if (!certainly_leq(i, i + 1)) monotone = false;
        if (monotone && certainly_less(first, n - 1)) return VerdictHint::DecreasingTrend;
        if (values[n - 1] - error_radius[n - 1] >= values[first] + error_radius[first])
            return VerdictHint::NoDecrease;
        return VerdictHint::Inconclusive;
    }

    void write_csv(std::ostream& os) const {
        os << "t,value,error_radius\n";
        for (std::size_t i = 0; i < size(); ++i)
            os << times[i] << "," << format_decimal(values[i]) << ","
               << format_decimal(error_radius[i]) << "\n";
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["label"] = label;
        j["times"] = times;
        nlohmann::json vs = nlohmann::json::array(), rs = nlohmann::json::array(),
                       vd = nlohmann::json::array();
        for (std::size_t i = 0; i < size(); ++i) {
            vs.push_back(rational_to_string(values[i]));
            rs.push_back(rational_to_string(error_radius[i]));
            vd.push_back(format_decimal(values[i]));
        }
        j["values"] = vs;
        j["error_radius"] = rs;
        j["values_decimal"] = vd;
        j["verdict_hint"] = to_string(verdict());
        return j;
    }
};

}  // namespace harmonics
