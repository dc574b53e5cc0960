#include "tca/zone.hpp"

#include "tca/errors.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace tca {

// ── Valuations ──────────────────────────────────────────────────────────────

ClockValuation shifted(const ClockValuation& v, const Rational& delta) {
    if (delta < Rational(0)) {
        throw ModelError("cannot shift a valuation by a negative delay");
    }
    ClockValuation out = v;
    for (auto& [clock, value] : out) {
        value += delta;
    }
    return out;
}

ClockValuation overridden(const ClockValuation& v, const PartialReset& reset) {
    ClockValuation out = v;
    for (const auto& [clock, value] : reset) {
        if (clock == kGlobalClock) {
            throw ModelError("the global clock is never reset");
        }
        auto it = out.find(clock);
        if (it == out.end()) {
            throw ModelError("reset of undeclared clock '" + clock + "'");
        }
        it->second = value;
    }
    return out;
}

// ── Comparators and constraints ─────────────────────────────────────────────

std::optional<Comparator> comparator_from(const std::string& token) {
    if (token == "<") return Comparator::Less;
    if (token == "<=") return Comparator::LessEq;
    if (token == "=") return Comparator::Eq;
    if (token == ">=") return Comparator::GreaterEq;
    if (token == ">") return Comparator::Greater;
    return std::nullopt;
}

std::string to_string(Comparator op) {
    switch (op) {
        case Comparator::Less: return "<";
        case Comparator::LessEq: return "<=";
        case Comparator::Eq: return "=";
        case Comparator::GreaterEq: return ">=";
        case Comparator::Greater: return ">";
    }
    return "?";
}

std::string Constraint::str() const {
    std::string lhs = right.empty() ? left : left + " - " + right;
    return lhs + " " + to_string(op) + " " + constant.str();
}

bool evaluate(const Constraint& c, const ClockValuation& v) {
    auto lookup = [&](const std::string& name) -> Rational {
        auto it = v.find(name);
        if (it == v.end()) {
            throw ModelError("valuation does not cover clock '" + name + "'");
        }
        return it->second;
    };
    const Rational lhs =
        c.right.empty() ? lookup(c.left) : lookup(c.left) - lookup(c.right);
    switch (c.op) {
        case Comparator::Less: return lhs < c.constant;
        case Comparator::LessEq: return lhs <= c.constant;
        case Comparator::Eq: return lhs == c.constant;
        case Comparator::GreaterEq: return lhs >= c.constant;
        case Comparator::Greater: return lhs > c.constant;
    }
    return false;
}

bool evaluate_all(const std::vector<Constraint>& cs, const ClockValuation& v) {
    return std::all_of(cs.begin(), cs.end(), [&](const Constraint& c) { return evaluate(c, v); });
}

// ── Bound ───────────────────────────────────────────────────────────────────

Bound Bound::unbounded() { return Bound{}; }

Bound Bound::weak(Rational value) {
    Bound b;
    b.unbounded_ = false;
    b.strict_ = false;
    b.value_ = std::move(value);
    return b;
}

Bound Bound::strict(Rational value) {
    Bound b;
    b.unbounded_ = false;
    b.strict_ = true;
    b.value_ = std::move(value);
    return b;
}

bool Bound::admits(const Rational& d) const {
    if (unbounded_) return true;
    return strict_ ? d < value_ : d <= value_;
}

bool Bound::operator<(const Bound& o) const {
    if (unbounded_) return false;
    if (o.unbounded_) return true;
    if (value_ != o.value_) return value_ < o.value_;
    return strict_ && !o.strict_;
}

Bound Bound::operator+(const Bound& o) const {
    if (unbounded_ || o.unbounded_) return unbounded();
    Bound b;
    b.unbounded_ = false;
    b.strict_ = strict_ || o.strict_;
    b.value_ = value_ + o.value_;
    return b;
}

std::string Bound::str() const {
    if (unbounded_) return "inf";
    return std::string(strict_ ? "<" : "<=") + value_.str();
}

namespace {

const Bound kZeroWeak = Bound::weak(Rational(0));

/// Order key used for deterministic zone comparisons.
std::tuple<int, Rational, int> bound_key(const Bound& b) {
    if (b.is_unbounded()) return {1, Rational(0), 0};
    return {0, b.value(), b.is_strict() ? 0 : 1};
}

}  // namespace

// ── ConvexZone ──────────────────────────────────────────────────────────────

ConvexZone::ConvexZone(std::vector<std::string> clocks, bool fill_universal)
    : clocks_(std::move(clocks)) {
    const std::size_t n = dim();
    mat_.assign(n * n, Bound::unbounded());
    if (fill_universal) {
        for (std::size_t i = 0; i < n; ++i) {
            at(i, i) = kZeroWeak;
        }
        for (std::size_t j = 1; j < n; ++j) {
            at(0, j) = kZeroWeak;  // 0 - x_j <= 0, i.e. x_j >= 0
        }
    }
}

ConvexZone ConvexZone::universal(std::vector<std::string> clocks) {
    return ConvexZone(std::move(clocks), true);
}

std::size_t ConvexZone::clock_index(const std::string& name) const {
    for (std::size_t i = 0; i < clocks_.size(); ++i) {
        if (clocks_[i] == name) return i + 1;
    }
    throw ModelError("unknown clock '" + name + "' in constraint");
}

void ConvexZone::apply(std::size_t i, std::size_t j, const Bound& b) {
    at(i, j) = Bound::min(at(i, j), b);
}

ConvexZone ConvexZone::from_constraints(std::vector<std::string> clocks,
                                        const std::vector<Constraint>& constraints) {
    ConvexZone z = universal(std::move(clocks));
    for (const Constraint& c : constraints) {
        const std::size_t i = z.clock_index(c.left);
        const std::size_t j = c.right.empty() ? 0 : z.clock_index(c.right);
        switch (c.op) {
            case Comparator::Less:
                z.apply(i, j, Bound::strict(c.constant));
                break;
            case Comparator::LessEq:
                z.apply(i, j, Bound::weak(c.constant));
                break;
            case Comparator::Eq:
                z.apply(i, j, Bound::weak(c.constant));
                z.apply(j, i, Bound::weak(-c.constant));
                break;
            case Comparator::GreaterEq:
                z.apply(j, i, Bound::weak(-c.constant));
                break;
            case Comparator::Greater:
                z.apply(j, i, Bound::strict(-c.constant));
                break;
        }
    }
    z.close();
    return z;
}

void ConvexZone::close() {
    const std::size_t n = dim();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (at(i, k).is_unbounded()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Bound through = at(i, k) + at(k, j);
                if (through < at(i, j)) at(i, j) = through;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (at(i, i) < kZeroWeak) {
            empty_ = true;
            return;
        }
        at(i, i) = kZeroWeak;
    }
    empty_ = false;
}

bool ConvexZone::contains(const ClockValuation& v) const {
    if (empty_) return false;
    const std::size_t n = dim();
    std::vector<Rational> vals(n);
    vals[0] = Rational(0);
    for (std::size_t i = 1; i < n; ++i) {
        auto it = v.find(clocks_[i - 1]);
        if (it == v.end()) {
            throw ModelError("valuation does not cover clock '" + clocks_[i - 1] + "'");
        }
        vals[i] = it->second;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!at(i, j).admits(vals[i] - vals[j])) return false;
        }
    }
    return true;
}

ConvexZone ConvexZone::intersect(const ConvexZone& o) const {
    if (clocks_ != o.clocks_) {
        throw ModelError("zone intersection over mismatched clock lists");
    }
    if (empty_) return *this;
    if (o.empty_) return o;
    ConvexZone z(clocks_, false);
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n * n; ++i) {
        z.mat_[i] = Bound::min(mat_[i], o.mat_[i]);
    }
    z.close();
    return z;
}

ConvexZone ConvexZone::time_predecessor() const {
    if (empty_) return *this;
    ConvexZone z = *this;
    const std::size_t n = dim();
    for (std::size_t i = 1; i < n; ++i) {
        Bound lower = kZeroWeak;
        for (std::size_t j = 1; j < n; ++j) {
            if (z.at(j, i) < lower) lower = z.at(j, i);
        }
        z.at(0, i) = lower;
    }
    z.close();
    return z;
}

std::vector<ConvexZone> ConvexZone::complement() const {
    if (empty_) {
        return {universal(clocks_)};
    }
    std::vector<ConvexZone> out;
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Bound& b = at(i, j);
            if (b.is_unbounded()) continue;
            if (i == 0 && b == kZeroWeak) continue;  // x_j >= 0 holds on the whole universe
            // ¬(x_i - x_j ≺ m) is x_j - x_i ≺' -m with flipped strictness.
            ConvexZone half = universal(clocks_);
            half.apply(j, i, b.is_strict() ? Bound::weak(-b.value()) : Bound::strict(-b.value()));
            half.close();
            if (!half.is_empty()) out.push_back(std::move(half));
        }
    }
    return out;
}

bool ConvexZone::subset_of(const ConvexZone& o) const {
    if (clocks_ != o.clocks_) {
        throw ModelError("zone comparison over mismatched clock lists");
    }
    if (empty_) return true;
    if (o.empty_) return false;
    for (std::size_t i = 0; i < mat_.size(); ++i) {
        if (o.mat_[i] < mat_[i]) return false;
    }
    return true;
}

bool ConvexZone::operator==(const ConvexZone& o) const {
    if (clocks_ != o.clocks_) return false;
    if (empty_ || o.empty_) return empty_ == o.empty_;
    return mat_ == o.mat_;
}

bool ConvexZone::lexicographic_less(const ConvexZone& o) const {
    if (empty_ != o.empty_) return empty_ < o.empty_;
    for (std::size_t i = 0; i < mat_.size(); ++i) {
        const auto a = bound_key(mat_[i]);
        const auto b = bound_key(o.mat_[i]);
        if (a != b) return a < b;
    }
    return false;
}

std::optional<ClockValuation> ConvexZone::sample_point() const {
    if (empty_) return std::nullopt;
    ConvexZone pinned = *this;
    const std::size_t n = dim();
    const Rational half(1, 2);
    ClockValuation out;
    for (std::size_t i = 1; i < n; ++i) {
        const Bound& lower = pinned.at(0, i);  // 0 - x_i ≺ m, so x_i ≳ -m
        const Bound& upper = pinned.at(i, 0);
        Rational value = -lower.value();
        if (lower.is_strict()) {
            Rational nudge = half;
            if (!upper.is_unbounded()) {
                const Rational gap = upper.value() - value;
                const Rational half_gap = gap * half;
                if (half_gap < nudge) nudge = half_gap;
            }
            value += nudge;
        }
        pinned.apply(i, 0, Bound::weak(value));
        pinned.apply(0, i, Bound::weak(-value));
        pinned.close();
        if (pinned.is_empty()) return std::nullopt;
        out[clocks_[i - 1]] = value;
    }
    return out;
}

ConvexZone ConvexZone::rebuilt_from(
    const std::vector<std::tuple<std::size_t, std::size_t, Bound>>& entries) const {
    ConvexZone z = universal(clocks_);
    for (const auto& [i, j, b] : entries) {
        z.apply(i, j, b);
    }
    z.close();
    return z;
}

std::vector<Constraint> ConvexZone::constraints() const {
    if (empty_) {
        throw ModelError("empty zones have no generating constraint list");
    }
    using Entry = std::tuple<std::size_t, std::size_t, Bound>;
    std::vector<Entry> entries;
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const Bound& b = at(i, j);
            if (b.is_unbounded()) continue;
            if (i == 0 && b == kZeroWeak) continue;  // implied by the universe
            entries.emplace_back(i, j, b);
        }
    }

    // Greedy reduction: drop an entry whenever the remaining ones close to the
    // same zone.
    for (std::size_t k = 0; k < entries.size();) {
        std::vector<Entry> rest;
        rest.reserve(entries.size() - 1);
        for (std::size_t m = 0; m < entries.size(); ++m) {
            if (m != k) rest.push_back(entries[m]);
        }
        if (rebuilt_from(rest) == *this) {
            entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
            ++k;
        }
    }

    std::vector<Constraint> out;
    for (const auto& [i, j, b] : entries) {
        Constraint c;
        if (j == 0) {
            c.left = clocks_[i - 1];
            c.op = b.is_strict() ? Comparator::Less : Comparator::LessEq;
            c.constant = b.value();
        } else if (i == 0) {
            c.left = clocks_[j - 1];
            c.op = b.is_strict() ? Comparator::Greater : Comparator::GreaterEq;
            c.constant = -b.value();
        } else {
            c.left = clocks_[i - 1];
            c.right = clocks_[j - 1];
            c.op = b.is_strict() ? Comparator::Less : Comparator::LessEq;
            c.constant = b.value();
        }
        out.push_back(std::move(c));
    }
    return out;
}

Rational ConvexZone::max_abs_constant() const {
    Rational best(0);
    for (const Bound& b : mat_) {
        if (b.is_unbounded()) continue;
        const Rational a = b.value().abs();
        if (a > best) best = a;
    }
    return best;
}

std::string ConvexZone::str() const {
    if (empty_) return "false";
    const std::vector<Constraint> cs = constraints();
    if (cs.empty()) return "true";
    std::ostringstream os;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i > 0) os << " && ";
        os << cs[i].str();
    }
    return os.str();
}

// ── Guard ───────────────────────────────────────────────────────────────────

Guard::Guard(std::vector<std::string> clocks, std::vector<ConvexZone> zones)
    : clocks_(std::move(clocks)), zones_(std::move(zones)) {
    normalize();
}

Guard Guard::true_guard(std::vector<std::string> clocks) {
    ConvexZone u = ConvexZone::universal(clocks);
    return Guard(std::move(clocks), {std::move(u)});
}

Guard Guard::false_guard(std::vector<std::string> clocks) {
    return Guard(std::move(clocks), {});
}

Guard Guard::of_zone(ConvexZone zone) {
    std::vector<std::string> clocks = zone.clocks();
    return Guard(std::move(clocks), {std::move(zone)});
}

Guard Guard::of_zones(std::vector<std::string> clocks, std::vector<ConvexZone> zones) {
    for (const ConvexZone& z : zones) {
        if (z.clocks() != clocks) {
            throw ModelError("guard zones must share the guard's clock list");
        }
    }
    return Guard(std::move(clocks), std::move(zones));
}

void Guard::normalize() {
    std::vector<ConvexZone> kept;
    for (ConvexZone& z : zones_) {
        if (z.is_empty()) continue;
        bool subsumed = false;
        for (const ConvexZone& k : kept) {
            if (z.subset_of(k)) {
                subsumed = true;
                break;
            }
        }
        if (subsumed) continue;
        std::erase_if(kept, [&](const ConvexZone& k) { return k.subset_of(z); });
        kept.push_back(std::move(z));
    }
    zones_ = std::move(kept);
}

bool Guard::is_true() const {
    for (const ConvexZone& z : zones_) {
        if (z == ConvexZone::universal(clocks_)) return true;
    }
    return !is_false() && guard_not(*this).is_false();
}

bool Guard::contains(const ClockValuation& v) const {
    return std::any_of(zones_.begin(), zones_.end(),
                       [&](const ConvexZone& z) { return z.contains(v); });
}

bool Guard::operator==(const Guard& o) const {
    if (clocks_ != o.clocks_) return false;
    if (zones_.size() != o.zones_.size()) return false;
    auto sorted = [](std::vector<ConvexZone> zs) {
        std::sort(zs.begin(), zs.end(),
                  [](const ConvexZone& a, const ConvexZone& b) { return a.lexicographic_less(b); });
        return zs;
    };
    return sorted(zones_) == sorted(o.zones_);
}

std::string Guard::str() const {
    if (zones_.empty()) return "false";
    std::ostringstream os;
    for (std::size_t i = 0; i < zones_.size(); ++i) {
        if (i > 0) os << " || ";
        const std::string z = zones_[i].str();
        if (zones_.size() > 1 && z.find("&&") != std::string::npos) {
            os << "(" << z << ")";
        } else {
            os << z;
        }
    }
    return os.str();
}

Guard guard_and(const Guard& a, const Guard& b) {
    if (a.clocks_ != b.clocks_) {
        throw ModelError("guard conjunction over mismatched clock lists");
    }
    std::vector<ConvexZone> zones;
    zones.reserve(a.zones_.size() * b.zones_.size());
    for (const ConvexZone& za : a.zones_) {
        for (const ConvexZone& zb : b.zones_) {
            ConvexZone z = za.intersect(zb);
            if (!z.is_empty()) zones.push_back(std::move(z));
        }
    }
    return Guard(a.clocks_, std::move(zones));
}

Guard guard_or(const Guard& a, const Guard& b) {
    if (a.clocks_ != b.clocks_) {
        throw ModelError("guard disjunction over mismatched clock lists");
    }
    std::vector<ConvexZone> zones = a.zones_;
    zones.insert(zones.end(), b.zones_.begin(), b.zones_.end());
    return Guard(a.clocks_, std::move(zones));
}

Guard guard_not(const Guard& g) {
    if (g.zones_.empty()) return Guard::true_guard(g.clocks_);
    // ¬(z1 ∨ z2 ∨ …) = ¬z1 ∧ ¬z2 ∧ …, each ¬zi a union of half-spaces.
    std::vector<ConvexZone> acc = {ConvexZone::universal(g.clocks_)};
    for (const ConvexZone& z : g.zones_) {
        const std::vector<ConvexZone> comp = z.complement();
        std::vector<ConvexZone> next;
        next.reserve(acc.size() * comp.size());
        for (const ConvexZone& a : acc) {
            for (const ConvexZone& c : comp) {
                ConvexZone meet = a.intersect(c);
                if (!meet.is_empty()) next.push_back(std::move(meet));
            }
        }
        acc = std::move(next);
        if (acc.empty()) break;
    }
    return Guard(g.clocks_, std::move(acc));
}

Guard time_predecessor(const Guard& g) {
    std::vector<ConvexZone> zones;
    zones.reserve(g.zones_.size());
    for (const ConvexZone& z : g.zones_) {
        zones.push_back(z.time_predecessor());
    }
    return Guard(g.clocks_, std::move(zones));
}

bool exceeds(const ClockValuation& v, const Guard& g) {
    return !time_predecessor(g).contains(v);
}

}  // namespace tca
