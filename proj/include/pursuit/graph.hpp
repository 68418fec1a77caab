#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pursuit {

enum class Protection : std::uint8_t { Unprotected, Protected };
enum class Orientation : std::uint8_t { Directed, Undirected };

struct Arc {
    std::uint32_t tail = 0;
    std::uint32_t head = 0;
    Protection protection = Protection::Unprotected;

    friend bool operator==(const Arc&, const Arc&) = default;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parser failure; carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A finite directed graph whose arcs each carry a protection flag.
/// Undirected graphs are stored as symmetric arc pairs with equal protection.
/// At most one arc exists per ordered (tail, head) pair; loops are allowed.
///
/// Instances are immutable once built (the add* methods are for construction
/// only); all other operations are const and safe to share across threads.
class PursuitGraph {
public:
    PursuitGraph(std::uint32_t vertexCount, Orientation orientation);

    std::uint32_t vertexCount() const { return vertexCount_; }
    Orientation orientation() const { return orientation_; }

    /// Arcs sorted by (tail, head), duplicate-free.
    const std::vector<Arc>& arcs() const { return arcs_; }

    const std::map<std::uint32_t, std::string>& roles() const { return roles_; }

    /// Directed graphs only. Re-adding an identical arc is a no-op; adding the
    /// same (tail, head) with the other protection flag throws GraphError.
    void addArc(std::uint32_t tail, std::uint32_t head, Protection protection);

    /// Undirected graphs only; inserts both symmetric arcs.
    void addEdge(std::uint32_t u, std::uint32_t v, Protection protection);

    void setRole(std::uint32_t vertex, std::string label);

    std::optional<Protection> arcBetween(std::uint32_t tail, std::uint32_t head) const;
    bool hasArc(std::uint32_t tail, std::uint32_t head) const { return arcBetween(tail, head).has_value(); }

    friend bool operator==(const PursuitGraph&, const PursuitGraph&) = default;

private:
    void insertArc(std::uint32_t tail, std::uint32_t head, Protection protection);

    std::uint32_t vertexCount_;
    Orientation orientation_;
    std::vector<Arc> arcs_;
    std::map<std::uint32_t, std::string> roles_;
};

enum class ViolationKind : std::uint8_t {
    NoOutArc,
    NoInArc,
    IndexOutOfRange,
    ProtectionAsymmetry,
};

struct Violation {
    ViolationKind kind;
    std::uint32_t vertex = 0;   // NoOutArc / NoInArc
    std::optional<Arc> arc;     // IndexOutOfRange / ProtectionAsymmetry

    friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff the graph is playable under must-move semantics.
struct Diagnostics {
    std::vector<Violation> violations;

    bool playable() const { return violations.empty(); }
};

/// Lists every vertex lacking an out-arc or in-arc (each entity must always
/// have a legal move). Also re-checks arc index ranges and, for undirected
/// graphs, protection symmetry; those cannot fire for graphs built through
/// the PursuitGraph interface.
Diagnostics validateForPlay(const PursuitGraph& graph);

/// .pg v1 text format. Throws ParseError with the offending line number.
PursuitGraph parsePursuitGraph(std::istream& in);
PursuitGraph parsePursuitGraph(std::string_view text);

/// Canonical form: arcs sorted by (tail, head), one edge line per unordered
/// pair in undirected mode, role lines sorted by vertex.
/// parse(serialize(g)) == g; serialize(parse(x)) == serialize of the
/// normalized x.
std::string serializePursuitGraph(const PursuitGraph& graph);

/// Standard graph6 (no header variant, <= 62 vertices). The result is
/// undirected with every edge unprotected and an unprotected loop added at
/// every vertex, so the usual stay-or-move game is played under the uniform
/// must-move rule.
PursuitGraph parseGraph6(std::string_view bytes);

/// Replaces each undirected edge uv by the arcs u->v and v->u with the same
/// protection. Throws GraphError if the input is already directed.
PursuitGraph doublyDirect(const PursuitGraph& graph);

}  // namespace pursuit
