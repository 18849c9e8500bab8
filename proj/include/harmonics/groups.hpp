#pragma once

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "harmonics/types.hpp"

namespace harmonics {

// ---------------------------------------------------------------------------
// Group catalog
// ---------------------------------------------------------------------------

enum class GroupKind : std::uint8_t { Lattice, Lamplighter, FreeGroup, Heisenberg, Product };

/// Identifier of a group from the built-in catalog: Z^d, the lamplighter
/// group L(Z) = (⊕_Z Z/2Z) ⋊ Z, free groups F_k, the discrete Heisenberg
/// group, and binary products of these.
class GroupId {
public:
    static constexpr int kMaxProductDepth = 4;

    static GroupId lattice(int d) {
        if (d < 1) throw ValidationError("lattice dimension must be >= 1");
        return GroupId(GroupKind::Lattice, d);
    }
    static GroupId lamplighter() { return GroupId(GroupKind::Lamplighter, 0); }
    static GroupId free_group(int rank) {
        if (rank < 1 || rank > 26) throw ValidationError("free group rank must be in [1, 26]");
        return GroupId(GroupKind::FreeGroup, rank);
    }
    static GroupId heisenberg() { return GroupId(GroupKind::Heisenberg, 0); }
    static GroupId product(GroupId left, GroupId right) {
        GroupId g(GroupKind::Product, 0);
        g.factors_ = std::make_shared<const std::pair<GroupId, GroupId>>(
            std::move(left), std::move(right));
        if (g.product_depth() > kMaxProductDepth)
            throw ValidationError("product nesting depth exceeds sanity bound");
        return g;
    }

    GroupKind kind() const { return kind_; }
    int dimension() const { return param_; }  // Lattice
    int rank() const { return param_; }       // FreeGroup
    const GroupId& left() const { return factors_->first; }
    const GroupId& right() const { return factors_->second; }

    int product_depth() const {
        if (kind_ != GroupKind::Product) return 0;
        return 1 + std::max(left().product_depth(), right().product_depth());
    }

    int compare(const GroupId& o) const {
        if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
        if (param_ != o.param_) return param_ < o.param_ ? -1 : 1;
        if (kind_ == GroupKind::Product) {
            int c = left().compare(o.left());
            if (c != 0) return c;
            return right().compare(o.right());
        }
        return 0;
    }
    bool operator==(const GroupId& o) const { return compare(o) == 0; }
    bool operator!=(const GroupId& o) const { return compare(o) != 0; }

    std::string to_string() const {
        switch (kind_) {
            case GroupKind::Lattice: return "Z^" + std::to_string(param_);
            case GroupKind::Lamplighter: return "L(Z)";
            case GroupKind::FreeGroup: return "F_" + std::to_string(param_);
            case GroupKind::Heisenberg: return "H3(Z)";
            case GroupKind::Product:
                return "(" + left().to_string() + " x " + right().to_string() + ")";
        }
        return "?";
    }

private:
    GroupId(GroupKind k, int p) : kind_(k), param_(p) {}

    GroupKind kind_;
    int param_;
    std::shared_ptr<const std::pair<GroupId, GroupId>> factors_;
};

// ---------------------------------------------------------------------------
// Lamp configurations
// ---------------------------------------------------------------------------

/// A finite set of lit lamp positions on Z. Sets whose span fits in 64 bits
/// (the overwhelming majority during convolution) are stored as a packed
/// (base, bitmask) pair with no heap allocation; wider sets fall back to a
/// shared sorted vector.
class LampSet {
public:
    LampSet() = default;

    static LampSet from_positions(std::vector<std::int32_t> v) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw ValidationError("duplicate lamp position");
        return from_sorted(std::move(v));
    }

    bool empty() const { return mask_ == 0 && !wide_; }

    std::size_t count() const {
        if (wide_) return wide_->size();
        return static_cast<std::size_t>(std::popcount(mask_));
    }

    template <class F>
    void for_each(F&& f) const {
        if (wide_) {
            for (std::int32_t p : *wide_) f(p);
            return;
        }
        std::uint64_t m = mask_;
        while (m != 0) {
            int b = std::countr_zero(m);
            f(static_cast<std::int32_t>(base_ + b));
            m &= m - 1;
        }
    }

    std::vector<std::int32_t> positions() const {
        std::vector<std::int32_t> out;
        out.reserve(count());
        for_each([&](std::int32_t p) { out.push_back(p); });
        return out;
    }

    LampSet shifted(std::int64_t delta) const {
        if (empty()) return {};
        LampSet out;
        if (!wide_) {
            std::int64_t nb = static_cast<std::int64_t>(base_) + delta;
            if (nb < std::numeric_limits<std::int32_t>::min() ||
                nb + 63 > std::numeric_limits<std::int32_t>::max())
                throw Error("lamp position out of supported range");
            out.base_ = static_cast<std::int32_t>(nb);
            out.mask_ = mask_;
            return out;
        }
        std::vector<std::int32_t> v;
        v.reserve(wide_->size());
        for (std::int32_t p : *wide_) {
            std::int64_t np = static_cast<std::int64_t>(p) + delta;
            if (np < std::numeric_limits<std::int32_t>::min() ||
                np > std::numeric_limits<std::int32_t>::max())
                throw Error("lamp position out of supported range");
            v.push_back(static_cast<std::int32_t>(np));
        }
        return from_sorted(std::move(v));
    }

    friend LampSet sym_diff(const LampSet& a, const LampSet& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        if (!a.wide_ && !b.wide_) {
            std::int32_t lo = std::min(a.base_, b.base_);
            std::int64_t hi = std::max(a.high_pos(), b.high_pos());
            if (hi - lo <= 63) {
                std::uint64_t m =
                    (a.mask_ << (a.base_ - lo)) ^ (b.mask_ << (b.base_ - lo));
                LampSet out;
                if (m == 0) return out;
                int tz = std::countr_zero(m);
                out.base_ = static_cast<std::int32_t>(lo + tz);
                out.mask_ = m >> tz;
                return out;
            }
        }
        // General path: merge the two sorted position sequences.
        std::vector<std::int32_t> pa = a.positions();
        std::vector<std::int32_t> pb = b.positions();
        std::vector<std::int32_t> v;
        v.reserve(pa.size() + pb.size());
        std::set_symmetric_difference(pa.begin(), pa.end(), pb.begin(), pb.end(),
                                      std::back_inserter(v));
        return from_sorted(std::move(v));
    }

    /// Three-way lexicographic comparison of the ascending position sequences.
    int compare(const LampSet& o) const {
        if (empty() || o.empty()) return empty() ? (o.empty() ? 0 : -1) : 1;
        if (!wide_ && !o.wide_) {
            if (base_ != o.base_) return base_ < o.base_ ? -1 : 1;
            std::uint64_t x = mask_ ^ o.mask_;
            if (x == 0) return 0;
            int b = std::countr_zero(x);
            if (mask_ & (1ull << b))
                return (o.mask_ >> b) == 0 ? 1 : -1;  // o ran out => o is a prefix
            return (mask_ >> b) == 0 ? -1 : 1;
        }
        std::vector<std::int32_t> pa = positions();
        std::vector<std::int32_t> pb = o.positions();
        auto r = std::lexicographical_compare_three_way(pa.begin(), pa.end(), pb.begin(),
                                                        pb.end());
        return r < 0 ? -1 : (r > 0 ? 1 : 0);
    }
    bool operator==(const LampSet& o) const { return compare(o) == 0; }

private:
    static LampSet from_sorted(std::vector<std::int32_t> v) {
        LampSet out;
        if (v.empty()) return out;
        std::int64_t span = static_cast<std::int64_t>(v.back()) - v.front();
        if (span <= 63) {
            out.base_ = v.front();
            for (std::int32_t p : v) out.mask_ |= 1ull << (p - v.front());
        } else {
            out.wide_ = std::make_shared<const std::vector<std::int32_t>>(std::move(v));
        }
        return out;
    }

    std::int64_t high_pos() const {
        return static_cast<std::int64_t>(base_) + (63 - std::countl_zero(mask_));
    }

    std::int32_t base_ = 0;
    std::uint64_t mask_ = 0;
    std::shared_ptr<const std::vector<std::int32_t>> wide_;
};

// ---------------------------------------------------------------------------
// Element payloads
// ---------------------------------------------------------------------------

using LatticePoint = std::vector<std::int64_t>;

struct LamplighterElem {
    LampSet lamps;
    std::int64_t pos = 0;
};

/// Freely reduced word; letter i>0 is the i-th generator, -i its inverse.
using FreeWord = std::vector<std::int8_t>;

struct HeisenbergTriple {
    std::int64_t x = 0, y = 0, z = 0;
};

class GroupElement;

struct ProductElem {
    std::vector<GroupElement> parts;  // always exactly two
};

// ---------------------------------------------------------------------------
// GroupElement
// ---------------------------------------------------------------------------

class GroupElement {
public:
    using Payload =
        std::variant<LatticePoint, LamplighterElem, FreeWord, HeisenbergTriple, ProductElem>;

    GroupElement(GroupId group, Payload payload)
        : group_(std::move(group)), payload_(std::move(payload)) {
        if (static_cast<std::size_t>(group_.kind()) != payload_.index())
            throw ValidationError("payload does not match group kind");
    }

    const GroupId& group() const { return group_; }
    const Payload& payload() const { return payload_; }

    const LatticePoint& lattice() const { return std::get<LatticePoint>(payload_); }
    const LamplighterElem& lamplighter() const { return std::get<LamplighterElem>(payload_); }
    const FreeWord& word() const { return std::get<FreeWord>(payload_); }
    const HeisenbergTriple& heisenberg() const { return std::get<HeisenbergTriple>(payload_); }
    const GroupElement& part(int i) const { return std::get<ProductElem>(payload_).parts.at(i); }

private:
    GroupId group_;
    Payload payload_;
};

inline int compare(const GroupElement& a, const GroupElement& b);

namespace detail {

inline int cmp3(std::int64_t a, std::int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

inline int compare_payload(const GroupElement::Payload& a, const GroupElement::Payload& b) {
    if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
    switch (a.index()) {
        case 0: {
            const auto& x = std::get<LatticePoint>(a);
            const auto& y = std::get<LatticePoint>(b);
            auto r = std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(),
                                                            y.end());
            return r < 0 ? -1 : (r > 0 ? 1 : 0);
        }
        case 1: {
            const auto& x = std::get<LamplighterElem>(a);
            const auto& y = std::get<LamplighterElem>(b);
            if (int c = cmp3(x.pos, y.pos)) return c;
            return x.lamps.compare(y.lamps);
        }
        case 2: {
            const auto& x = std::get<FreeWord>(a);
            const auto& y = std::get<FreeWord>(b);
            auto r = std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(),
                                                            y.end());
            return r < 0 ? -1 : (r > 0 ? 1 : 0);
        }
        case 3: {
            const auto& x = std::get<HeisenbergTriple>(a);
            const auto& y = std::get<HeisenbergTriple>(b);
            if (int c = cmp3(x.x, y.x)) return c;
            if (int c = cmp3(x.y, y.y)) return c;
            return cmp3(x.z, y.z);
        }
        case 4: {
            const auto& x = std::get<ProductElem>(a);
            const auto& y = std::get<ProductElem>(b);
            if (int c = compare(x.parts[0], y.parts[0])) return c;
            return compare(x.parts[1], y.parts[1]);
        }
    }
    return 0;
}

}  // namespace detail

/// Deterministic total order; elements of the same group compare by payload.
inline int compare(const GroupElement& a, const GroupElement& b) {
    if (int c = a.group().compare(b.group())) return c;
    return detail::compare_payload(a.payload(), b.payload());
}

inline bool operator==(const GroupElement& a, const GroupElement& b) { return compare(a, b) == 0; }
inline bool operator!=(const GroupElement& a, const GroupElement& b) { return compare(a, b) != 0; }

struct ElementLess {
    bool operator()(const GroupElement& a, const GroupElement& b) const {
        return compare(a, b) < 0;
    }
};

// ---------------------------------------------------------------------------
// Group operations
// ---------------------------------------------------------------------------

inline GroupElement identity(const GroupId& g) {
    switch (g.kind()) {
        case GroupKind::Lattice:
            return GroupElement(g, LatticePoint(static_cast<std::size_t>(g.dimension()), 0));
        case GroupKind::Lamplighter:
            return GroupElement(g, LamplighterElem{});
        case GroupKind::FreeGroup:
            return GroupElement(g, FreeWord{});
        case GroupKind::Heisenberg:
            return GroupElement(g, HeisenbergTriple{});
        case GroupKind::Product: {
            ProductElem p;
            p.parts.reserve(2);
            p.parts.push_back(identity(g.left()));
            p.parts.push_back(identity(g.right()));
            return GroupElement(g, std::move(p));
        }
    }
    throw Error("unreachable");
}

inline bool is_identity(const GroupElement& e) {
    switch (e.group().kind()) {
        case GroupKind::Lattice:
            return std::all_of(e.lattice().begin(), e.lattice().end(),
                               [](std::int64_t v) { return v == 0; });
        case GroupKind::Lamplighter:
            return e.lamplighter().pos == 0 && e.lamplighter().lamps.empty();
        case GroupKind::FreeGroup:
            return e.word().empty();
        case GroupKind::Heisenberg:
            return e.heisenberg().x == 0 && e.heisenberg().y == 0 && e.heisenberg().z == 0;
        case GroupKind::Product:
            return is_identity(e.part(0)) && is_identity(e.part(1));
    }
    throw Error("unreachable");
}

inline GroupElement multiply(const GroupElement& a, const GroupElement& b) {
    if (a.group() != b.group())
        throw GroupMismatchError("multiply: elements from different groups");
    const GroupId& g = a.group();
    switch (g.kind()) {
        case GroupKind::Lattice: {
            LatticePoint v = a.lattice();
            const LatticePoint& w = b.lattice();
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
            return GroupElement(g, std::move(v));
        }
        case GroupKind::Lamplighter: {
            // (f, m)(f', m') = (f xor shift_m f', m + m')
            const auto& x = a.lamplighter();
            const auto& y = b.lamplighter();
            LamplighterElem out;
            out.lamps = sym_diff(x.lamps, y.lamps.shifted(x.pos));
            out.pos = x.pos + y.pos;
            return GroupElement(g, std::move(out));
        }
        case GroupKind::FreeGroup: {
            FreeWord w = a.word();
            w.reserve(w.size() + b.word().size());
            for (std::int8_t c : b.word()) {
                if (!w.empty() && w.back() == -c)
                    w.pop_back();
                else
                    w.push_back(c);
            }
            return GroupElement(g, std::move(w));
        }
        case GroupKind::Heisenberg: {
            // (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')
            const auto& u = a.heisenberg();
            const auto& v = b.heisenberg();
            return GroupElement(g, HeisenbergTriple{u.x + v.x, u.y + v.y, u.z + v.z + u.x * v.y});
        }
        case GroupKind::Product: {
            ProductElem p;
            p.parts.reserve(2);
            p.parts.push_back(multiply(a.part(0), b.part(0)));
            p.parts.push_back(multiply(a.part(1), b.part(1)));
            return GroupElement(g, std::move(p));
        }
    }
    throw Error("unreachable");
}

inline GroupElement inverse(const GroupElement& e) {
    const GroupId& g = e.group();
    switch (g.kind()) {
        case GroupKind::Lattice: {
            LatticePoint v = e.lattice();
            for (auto& c : v) c = -c;
            return GroupElement(g, std::move(v));
        }
        case GroupKind::Lamplighter: {
            const auto& x = e.lamplighter();
            return GroupElement(g, LamplighterElem{x.lamps.shifted(-x.pos), -x.pos});
        }
        case GroupKind::FreeGroup: {
            FreeWord w(e.word().rbegin(), e.word().rend());
            for (auto& c : w) c = static_cast<std::int8_t>(-c);
            return GroupElement(g, std::move(w));
        }
        case GroupKind::Heisenberg: {
            const auto& u = e.heisenberg();
            return GroupElement(g, HeisenbergTriple{-u.x, -u.y, -u.z + u.x * u.y});
        }
        case GroupKind::Product: {
            ProductElem p;
            p.parts.reserve(2);
            p.parts.push_back(inverse(e.part(0)));
            p.parts.push_back(inverse(e.part(1)));
            return GroupElement(g, std::move(p));
        }
    }
    throw Error("unreachable");
}

/// Re-canonicalizes a payload (idempotent; constructed elements are already
/// canonical, so this is mostly a test hook).
inline GroupElement canonical(const GroupElement& e) {
    switch (e.group().kind()) {
        case GroupKind::FreeGroup: {
            FreeWord w;
            for (std::int8_t c : e.word()) {
                if (!w.empty() && w.back() == -c)
                    w.pop_back();
                else
                    w.push_back(c);
            }
            return GroupElement(e.group(), std::move(w));
        }
        case GroupKind::Product: {
            ProductElem p;
            p.parts.reserve(2);
            p.parts.push_back(canonical(e.part(0)));
            p.parts.push_back(canonical(e.part(1)));
            return GroupElement(e.group(), std::move(p));
        }
        default:
            return e;
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------
// lattice "3,-5"; lamplighter "{1,4}@2"; free "abA" (case encodes inverses,
// "e" = identity); Heisenberg "(x,y,z)"; product "(left|right)".

inline std::string to_text(const GroupElement& e) {
    switch (e.group().kind()) {
        case GroupKind::Lattice: {
            std::string s;
            for (std::size_t i = 0; i < e.lattice().size(); ++i) {
                if (i) s += ',';
                s += std::to_string(e.lattice()[i]);
            }
            return s;
        }
        case GroupKind::Lamplighter: {
            std::string s = "{";
            bool first = true;
            e.lamplighter().lamps.for_each([&](std::int32_t p) {
                if (!first) s += ',';
                first = false;
                s += std::to_string(p);
            });
            s += "}@" + std::to_string(e.lamplighter().pos);
            return s;
        }
        case GroupKind::FreeGroup: {
            if (e.word().empty()) return "e";
            std::string s;
            for (std::int8_t c : e.word())
                s += static_cast<char>(c > 0 ? 'a' + (c - 1) : 'A' - (c + 1));
            return s;
        }
        case GroupKind::Heisenberg: {
            const auto& u = e.heisenberg();
            return "(" + std::to_string(u.x) + "," + std::to_string(u.y) + "," +
                   std::to_string(u.z) + ")";
        }
        case GroupKind::Product:
            return "(" + to_text(e.part(0)) + "|" + to_text(e.part(1)) + ")";
    }
    throw Error("unreachable");
}

namespace detail {

inline std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ParseError("bad integer: '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::string_view> split_top(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(' || s[i] == '{') ++depth;
        if (s[i] == ')' || s[i] == '}') --depth;
        if (s[i] == sep && depth == 0) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(s.substr(start));
    return out;
}

}  // namespace detail

inline GroupElement parse_element(const GroupId& g, std::string_view text) {
    switch (g.kind()) {
        case GroupKind::Lattice: {
            auto parts = detail::split_top(text, ',');
            if (static_cast<int>(parts.size()) != g.dimension())
                throw ParseError("lattice element needs " + std::to_string(g.dimension()) +
                                 " coordinates: '" + std::string(text) + "'");
            LatticePoint v;
            v.reserve(parts.size());
            for (auto p : parts) v.push_back(detail::parse_int(p));
            return GroupElement(g, std::move(v));
        }
        case GroupKind::Lamplighter: {
            auto at = text.rfind('@');
            if (text.size() < 3 || text.front() != '{' || at == std::string_view::npos ||
                text[at - 1] != '}')
                throw ParseError("lamplighter element must look like {1,4}@2: '" +
                                 std::string(text) + "'");
            std::string_view lamps = text.substr(1, at - 2);
            std::vector<std::int32_t> pos;
            if (!lamps.empty()) {
                for (auto p : detail::split_top(lamps, ',')) {
                    std::int64_t v = detail::parse_int(p);
                    if (v < std::numeric_limits<std::int32_t>::min() ||
                        v > std::numeric_limits<std::int32_t>::max())
                        throw ParseError("lamp position out of supported range");
                    pos.push_back(static_cast<std::int32_t>(v));
                }
            }
            LamplighterElem out;
            out.lamps = LampSet::from_positions(std::move(pos));
            out.pos = detail::parse_int(text.substr(at + 1));
            return GroupElement(g, std::move(out));
        }
        case GroupKind::FreeGroup: {
            if (text == "e") return identity(g);
            FreeWord w;
            for (char c : text) {
                int letter;
                if (c >= 'a' && c <= 'z')
                    letter = c - 'a' + 1;
                else if (c >= 'A' && c <= 'Z')
                    letter = -(c - 'A' + 1);
                else
                    throw ParseError("bad free-group letter: '" + std::string(1, c) + "'");
                if (std::abs(letter) > g.rank())
                    throw ParseError("letter outside free group rank: '" + std::string(1, c) +
                                     "'");
                if (!w.empty() && w.back() == -letter)
                    w.pop_back();
                else
                    w.push_back(static_cast<std::int8_t>(letter));
            }
            return GroupElement(g, std::move(w));
        }
        case GroupKind::Heisenberg: {
            if (text.size() < 2 || text.front() != '(' || text.back() != ')')
                throw ParseError("Heisenberg element must look like (x,y,z)");
            auto parts = detail::split_top(text.substr(1, text.size() - 2), ',');
            if (parts.size() != 3) throw ParseError("Heisenberg element needs 3 coordinates");
            return GroupElement(g, HeisenbergTriple{detail::parse_int(parts[0]),
                                                    detail::parse_int(parts[1]),
                                                    detail::parse_int(parts[2])});
        }
        case GroupKind::Product: {
            if (text.size() < 2 || text.front() != '(' || text.back() != ')')
                throw ParseError("product element must look like (left|right)");
            auto parts = detail::split_top(text.substr(1, text.size() - 2), '|');
            if (parts.size() != 2) throw ParseError("product element needs two components");
            ProductElem p;
            p.parts.reserve(2);
            p.parts.push_back(parse_element(g.left(), parts[0]));
            p.parts.push_back(parse_element(g.right(), parts[1]));
            return GroupElement(g, std::move(p));
        }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Generators, balls, centre
// ---------------------------------------------------------------------------

/// Standard generating sets, fixed per catalog group. Used for word balls and
/// centrality checks, never to define step measures.
inline std::vector<GroupElement> standard_generators(const GroupId& g) {
    std::vector<GroupElement> out;
    switch (g.kind()) {
        case GroupKind::Lattice: {
            for (int i = 0; i < g.dimension(); ++i) {
                for (int s : {1, -1}) {
                    LatticePoint v(static_cast<std::size_t>(g.dimension()), 0);
                    v[static_cast<std::size_t>(i)] = s;
                    out.emplace_back(g, std::move(v));
                }
            }
            return out;
        }
        case GroupKind::Lamplighter: {
            out.emplace_back(g, LamplighterElem{LampSet{}, 1});
            out.emplace_back(g, LamplighterElem{LampSet{}, -1});
            out.emplace_back(g, LamplighterElem{LampSet::from_positions({0}), 0});
            return out;
        }
        case GroupKind::FreeGroup: {
            for (int i = 1; i <= g.rank(); ++i) {
                out.emplace_back(g, FreeWord{static_cast<std::int8_t>(i)});
                out.emplace_back(g, FreeWord{static_cast<std::int8_t>(-i)});
            }
            return out;
        }
        case GroupKind::Heisenberg: {
            out.emplace_back(g, HeisenbergTriple{1, 0, 0});
            out.emplace_back(g, HeisenbergTriple{-1, 0, 0});
            out.emplace_back(g, HeisenbergTriple{0, 1, 0});
            out.emplace_back(g, HeisenbergTriple{0, -1, 0});
            return out;
        }
        case GroupKind::Product: {
            for (const auto& s : standard_generators(g.left())) {
                ProductElem p;
                p.parts = {s, identity(g.right())};
                out.emplace_back(g, std::move(p));
            }
            for (const auto& s : standard_generators(g.right())) {
                ProductElem p;
                p.parts = {identity(g.left()), s};
                out.emplace_back(g, std::move(p));
            }
            return out;
        }
    }
    throw Error("unreachable");
}

/// Finite window for harmonicity checks: the exact word ball of the given
/// radius w.r.t. the standard generating set, closed under inverses.
struct WordBall {
    GroupId group;
    int radius = 0;
    std::vector<GroupElement> elements;  // sorted, deterministic
};

inline constexpr int kDefaultBallRadiusCap = 12;

inline WordBall word_ball(const GroupId& g, int radius, int cap = kDefaultBallRadiusCap) {
    if (radius < 0) throw ValidationError("ball radius must be non-negative");
    if (radius > cap) throw ValidationError("ball radius exceeds configured cap");
    std::vector<GroupElement> gens = standard_generators(g);
    std::vector<GroupElement> all{identity(g)};
    std::vector<GroupElement> frontier = all;
    for (int r = 0; r < radius; ++r) {
        std::vector<GroupElement> next;
        next.reserve(frontier.size() * gens.size());
        for (const auto& e : frontier)
            for (const auto& s : gens) next.push_back(multiply(e, s));
        std::sort(next.begin(), next.end(), ElementLess{});
        next.erase(std::unique(next.begin(), next.end()), next.end());
        std::vector<GroupElement> fresh;
        std::set_difference(next.begin(), next.end(), all.begin(), all.end(),
                            std::back_inserter(fresh), ElementLess{});
        std::vector<GroupElement> merged;
        merged.reserve(all.size() + fresh.size());
        std::merge(all.begin(), all.end(), fresh.begin(), fresh.end(),
                   std::back_inserter(merged), ElementLess{});
        all = std::move(merged);
        frontier = std::move(fresh);
        if (frontier.empty()) break;
    }
    return WordBall{g, radius, std::move(all)};
}

/// Membership in the centre, from the catalog's known descriptions:
/// lattices are abelian, Z(H3) = {(0,0,z)}, free groups of rank >= 2 and the
/// lamplighter have trivial centre, products have product centres.
inline bool is_central_catalog(const GroupElement& z) {
    switch (z.group().kind()) {
        case GroupKind::Lattice: return true;
        case GroupKind::Lamplighter: return is_identity(z);
        case GroupKind::FreeGroup: return z.group().rank() == 1 ? true : is_identity(z);
        case GroupKind::Heisenberg: return z.heisenberg().x == 0 && z.heisenberg().y == 0;
        case GroupKind::Product: return is_central_catalog(z.part(0)) && is_central_catalog(z.part(1));
    }
    throw Error("unreachable");
}

/// Operational centrality test: z commutes with every standard generator.
/// Sufficient for centrality since the catalog groups are generated by them.
inline bool commutes_with_generators(const GroupElement& z) {
    for (const auto& s : standard_generators(z.group()))
        if (multiply(z, s) != multiply(s, z)) return false;
    return true;
}

/// Word length of a free-group element (trivial, but named for intent).
inline int word_length(const GroupElement& e) {
    return static_cast<int>(e.word().size());
}

}  // namespace harmonics
