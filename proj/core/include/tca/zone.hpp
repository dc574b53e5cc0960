#pragma once

#include "tca/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tca {

// ── Clocks and valuations ───────────────────────────────────────────────────

/// Name of the global clock present in every automaton. It tracks absolute
/// time, is never reset, and may not be declared or reset by input files.
inline const std::string kGlobalClock = "gamma";

/// Total assignment of nonnegative time values to clocks.
using ClockValuation = std::map<std::string, Rational>;

/// Partial reassignment applied when a transition fires. The global clock is
/// never in its domain; this artifact only ever resets clocks to zero.
using PartialReset = std::map<std::string, Rational>;

/// Advances every clock by delta. Throws ModelError on negative delta.
ClockValuation shifted(const ClockValuation& v, const Rational& delta);

/// Returns reset's value where defined and v's elsewhere. Throws ModelError
/// if the reset touches the global clock or a clock missing from v.
ClockValuation overridden(const ClockValuation& v, const PartialReset& reset);

// ── Atomic constraints ──────────────────────────────────────────────────────

enum class Comparator { Less, LessEq, Eq, GreaterEq, Greater };

std::optional<Comparator> comparator_from(const std::string& token);
std::string to_string(Comparator op);

/// One comparison "x ⋈ c" (right empty) or "x - y ⋈ c" over exact constants.
struct Constraint {
    std::string left;
    std::string right;
    Comparator op = Comparator::LessEq;
    Rational constant;

    bool operator==(const Constraint&) const = default;
    std::string str() const;
};

/// Direct evaluation of a constraint at a valuation, with no zone machinery
/// involved. Used as the independent reference in differential checks.
bool evaluate(const Constraint& c, const ClockValuation& v);
bool evaluate_all(const std::vector<Constraint>& cs, const ClockValuation& v);

// ── Bounds ──────────────────────────────────────────────────────────────────

/// Upper bound on a clock difference x - y: either finite with a strict or
/// weak comparison, or unbounded. Unbounded bounds carry no strictness.
class Bound {
public:
    static Bound unbounded();
    static Bound weak(Rational value);    // x - y <= value
    static Bound strict(Rational value);  // x - y <  value

    bool is_unbounded() const { return unbounded_; }
    bool is_strict() const { return strict_; }
    const Rational& value() const { return value_; }

    /// Does the difference d satisfy this bound?
    bool admits(const Rational& d) const;

    /// Tightness order: a < b means a admits strictly fewer differences.
    bool operator<(const Bound& o) const;
    bool operator==(const Bound& o) const = default;

    static const Bound& min(const Bound& a, const Bound& b) { return b < a ? b : a; }
    Bound operator+(const Bound& o) const;

    std::string str() const;

private:
    Bound() = default;
    bool unbounded_ = true;
    bool strict_ = false;
    Rational value_;
};

// ── Convex zones ────────────────────────────────────────────────────────────

/// Convex set of clock valuations in canonical (shortest-path-closed)
/// difference-bound form. Row/column 0 is the constant-zero reference; real
/// clocks follow in list order. Every zone is implicitly intersected with
/// c >= 0 for each clock, so zones only ever contain nonnegative valuations.
class ConvexZone {
public:
    /// All nonnegative valuations over the given clocks.
    static ConvexZone universal(std::vector<std::string> clocks);

    /// Conjunction of the constraints intersected with clock nonnegativity,
    /// in canonical form. Unknown clock names raise ModelError.
    static ConvexZone from_constraints(std::vector<std::string> clocks,
                                       const std::vector<Constraint>& constraints);

    const std::vector<std::string>& clocks() const { return clocks_; }
    std::size_t dim() const { return clocks_.size() + 1; }

    bool is_empty() const { return empty_; }
    bool contains(const ClockValuation& v) const;

    ConvexZone intersect(const ConvexZone& o) const;

    /// {v | ∃δ ≥ 0 · v+δ ∈ this}: lower bounds weaken toward zero while
    /// difference constraints and upper bounds are preserved.
    ConvexZone time_predecessor() const;

    /// Complement relative to the nonnegative universe, as a union of
    /// half-space zones with empties pruned. Empty result means this zone
    /// covers the whole universe.
    std::vector<ConvexZone> complement() const;

    bool subset_of(const ConvexZone& o) const;
    bool operator==(const ConvexZone& o) const;

    /// Deterministic total order on zones of the same clock list.
    bool lexicographic_less(const ConvexZone& o) const;

    /// Lexicographically minimal contained valuation, stepping half a unit
    /// off strict bounds. Empty zones have no sample.
    std::optional<ClockValuation> sample_point() const;

    /// Minimal constraint list regenerating this zone (for serialization and
    /// display). Must not be called on an empty zone.
    std::vector<Constraint> constraints() const;

    /// Largest absolute constant among the finite bounds.

    Rational max_abs_constant() const;

    const Bound& bound(std::size_t i, std::size_t j) const { return mat_[i * dim() + j]; }

    std::string str() const;

private:
    ConvexZone(std::vector<std::string> clocks, bool fill_universal);

    Bound& at(std::size_t i, std::size_t j) { return mat_[i * dim() + j]; }
    const Bound& at(std::size_t i, std::size_t j) const { return mat_[i * dim() + j]; }
    void close();
    void apply(std::size_t i, std::size_t j, const Bound& b);
    std::size_t clock_index(const std::string& name) const;  // 1-based; throws ModelError
    ConvexZone rebuilt_from(const std::vector<std::tuple<std::size_t, std::size_t, Bound>>& entries) const;

    std::vector<std::string> clocks_;
    std::vector<Bound> mat_;
    bool empty_ = false;
};

// ── Guards ──────────────────────────────────────────────────────────────────

/// Finite union of convex zones over a shared clock list. The empty union is
/// FALSE and the single universal zone is TRUE. Member zones are always
/// nonempty and best-effort subsumption keeps the union small.
class Guard {
public:
    static Guard true_guard(std::vector<std::string> clocks);
    static Guard false_guard(std::vector<std::string> clocks);
    static Guard of_zone(ConvexZone zone);
    static Guard of_zones(std::vector<std::string> clocks, std::vector<ConvexZone> zones);

    const std::vector<std::string>& clocks() const { return clocks_; }
    const std::vector<ConvexZone>& zones() const { return zones_; }

    /// No valuation satisfies the guard (structural: the union is empty).
    bool is_false() const { return zones_.empty(); }
    /// Every nonnegative valuation satisfies the guard.
    bool is_true() const;

    bool contains(const ClockValuation& v) const;

    /// Structural equality up to zone order.
    bool operator==(const Guard& o) const;

    std::string str() const;

    friend Guard guard_and(const Guard& a, const Guard& b);
    friend Guard guard_or(const Guard& a, const Guard& b);
    friend Guard guard_not(const Guard& g);
    friend Guard time_predecessor(const Guard& g);

private:
    Guard(std::vector<std::string> clocks, std::vector<ConvexZone> zones);
    void normalize();

    std::vector<std::string> clocks_;
    std::vector<ConvexZone> zones_;
};

/// Pointwise conjunction. Both guards must share the clock list.
Guard guard_and(const Guard& a, const Guard& b);

/// Pointwise disjunction. Both guards must share the clock list.
Guard guard_or(const Guard& a, const Guard& b);

/// Complement relative to the nonnegative universe.
Guard guard_not(const Guard& g);

/// {v | ∃δ ≥ 0 · v+δ ∈ g}, zone by zone.
Guard time_predecessor(const Guard& g);

/// The window is permanently closed at v: no nonnegative delay satisfies g.
bool exceeds(const ClockValuation& v, const Guard& g);

}  // namespace tca
