#include "pursuit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>

namespace pursuit {

namespace {

bool arcKeyLess(const Arc& a, const Arc& b) {
    return a.tail != b.tail ? a.tail < b.tail : a.head < b.head;
}

const char* protectionWord(Protection p) {
    return p == Protection::Protected ? "protected" : "unprotected";
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

PursuitGraph::PursuitGraph(std::uint32_t vertexCount, Orientation orientation)
    : vertexCount_(vertexCount), orientation_(orientation) {}

void PursuitGraph::insertArc(std::uint32_t tail, std::uint32_t head, Protection protection) {
    if (tail >= vertexCount_ || head >= vertexCount_)
        throw GraphError("arc endpoint out of range: " + std::to_string(tail) + " -> " +
                         std::to_string(head) + " with " + std::to_string(vertexCount_) + " vertices");
    Arc arc{tail, head, protection};
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), arc, arcKeyLess);
    if (it != arcs_.end() && it->tail == tail && it->head == head) {
        if (it->protection != protection)
            throw GraphError("conflicting protection for duplicate arc " + std::to_string(tail) +
                             " -> " + std::to_string(head));
        return;
    }
    arcs_.insert(it, arc);
}

void PursuitGraph::addArc(std::uint32_t tail, std::uint32_t head, Protection protection) {
    if (orientation_ != Orientation::Directed)
        throw GraphError("addArc requires a directed graph; use addEdge");
    insertArc(tail, head, protection);
}

void PursuitGraph::addEdge(std::uint32_t u, std::uint32_t v, Protection protection) {
    if (orientation_ != Orientation::Undirected)
        throw GraphError("addEdge requires an undirected graph; use addArc");
    insertArc(u, v, protection);
    insertArc(v, u, protection);
}

void PursuitGraph::setRole(std::uint32_t vertex, std::string label) {
    if (vertex >= vertexCount_)
        throw GraphError("role vertex out of range: " + std::to_string(vertex));
    roles_[vertex] = std::move(label);
}

std::optional<Protection> PursuitGraph::arcBetween(std::uint32_t tail, std::uint32_t head) const {
    Arc probe{tail, head, Protection::Unprotected};
    auto it = std::lower_bound(arcs_.begin(), arcs_.end(), probe, arcKeyLess);
    if (it != arcs_.end() && it->tail == tail && it->head == head) return it->protection;
    return std::nullopt;
}

Diagnostics validateForPlay(const PursuitGraph& graph) {
    Diagnostics diagnostics;
    const std::uint32_t n = graph.vertexCount();
    std::vector<bool> hasOut(n, false), hasIn(n, false);
    for (const Arc& arc : graph.arcs()) {
        if (arc.tail >= n || arc.head >= n) {
            diagnostics.violations.push_back({ViolationKind::IndexOutOfRange, 0, arc});
            continue;
        }
        hasOut[arc.tail] = true;
        hasIn[arc.head] = true;
        if (graph.orientation() == Orientation::Undirected) {
            auto mirror = graph.arcBetween(arc.head, arc.tail);
            if (!mirror || *mirror != arc.protection)
                diagnostics.violations.push_back({ViolationKind::ProtectionAsymmetry, 0, arc});
        }
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!hasOut[v]) diagnostics.violations.push_back({ViolationKind::NoOutArc, v, std::nullopt});
        if (!hasIn[v]) diagnostics.violations.push_back({ViolationKind::NoInArc, v, std::nullopt});
    }
    return diagnostics;
}

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenizeLines(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream words(raw);
        Line line{number, {}};
        std::string word;
        while (words >> word) line.tokens.push_back(word);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

std::uint32_t parseIndex(const Line& line, const std::string& token, std::uint32_t bound,
                         const char* what) {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line.number, std::string("malformed ") + what + " '" + token + "'");
    if (value >= bound)
        throw ParseError(line.number, std::string(what) + " " + token + " out of range (vertices " +
                                          std::to_string(bound) + ")");
    return value;
}

Protection parseProtection(const Line& line, const std::string& token) {
    if (token == "protected") return Protection::Protected;
    if (token == "unprotected") return Protection::Unprotected;
    throw ParseError(line.number, "expected 'protected' or 'unprotected', got '" + token + "'");
}

}  // namespace

PursuitGraph parsePursuitGraph(std::istream& in) {
    auto lines = tokenizeLines(in);
    if (lines.size() < 3) throw ParseError(lines.empty() ? 1 : lines.back().number, "malformed header: expected 'pursuitgraph 1', 'mode', and 'vertices' lines");

    const Line& magic = lines[0];
    if (magic.tokens != std::vector<std::string>{"pursuitgraph", "1"})
        throw ParseError(magic.number, "malformed header: expected 'pursuitgraph 1'");

    const Line& modeLine = lines[1];
    if (modeLine.tokens.size() != 2 || modeLine.tokens[0] != "mode" ||
        (modeLine.tokens[1] != "directed" && modeLine.tokens[1] != "undirected"))
        throw ParseError(modeLine.number, "malformed header: expected 'mode directed' or 'mode undirected'");
    const Orientation orientation =
        modeLine.tokens[1] == "directed" ? Orientation::Directed : Orientation::Undirected;

    const Line& sizeLine = lines[2];
    std::uint32_t vertexCount = 0;
    if (sizeLine.tokens.size() != 2 || sizeLine.tokens[0] != "vertices")
        throw ParseError(sizeLine.number, "malformed header: expected 'vertices N'");
    {
        const std::string& token = sizeLine.tokens[1];
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), vertexCount);
        if (ec != std::errc() || ptr != token.data() + token.size())
            throw ParseError(sizeLine.number, "malformed vertex count '" + token + "'");
    }

    PursuitGraph graph(vertexCount, orientation);
    const std::string arcKeyword = orientation == Orientation::Directed ? "arc" : "edge";

    for (std::size_t i = 3; i < lines.size(); ++i) {
        const Line& line = lines[i];
        const std::string& keyword = line.tokens[0];
        if (keyword == arcKeyword) {
            if (line.tokens.size() != 4)
                throw ParseError(line.number, "expected '" + arcKeyword + " U V protected|unprotected'");
            std::uint32_t u = parseIndex(line, line.tokens[1], vertexCount, "vertex index");
            std::uint32_t v = parseIndex(line, line.tokens[2], vertexCount, "vertex index");
            Protection protection = parseProtection(line, line.tokens[3]);
            try {
                if (orientation == Orientation::Directed)
                    graph.addArc(u, v, protection);
                else
                    graph.addEdge(u, v, protection);
            } catch (const GraphError& e) {
                throw ParseError(line.number, e.what());
            }
        } else if (keyword == "role") {
            if (line.tokens.size() != 3) throw ParseError(line.number, "expected 'role V LABEL'");
            std::uint32_t v = parseIndex(line, line.tokens[1], vertexCount, "vertex index");
            if (graph.roles().count(v))
                throw ParseError(line.number, "duplicate role for vertex " + line.tokens[1]);
            graph.setRole(v, line.tokens[2]);
        } else {
            throw ParseError(line.number, "unknown keyword '" + keyword + "' in " +
                                              modeLine.tokens[1] + " mode");
        }
    }
    return graph;
}

PursuitGraph parsePursuitGraph(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parsePursuitGraph(in);
}

std::string serializePursuitGraph(const PursuitGraph& graph) {
    std::ostringstream out;
    const bool directed = graph.orientation() == Orientation::Directed;
    out << "pursuitgraph 1\n";
    out << "mode " << (directed ? "directed" : "undirected") << "\n";
    out << "vertices " << graph.vertexCount() << "\n";
    for (const Arc& arc : graph.arcs()) {
        if (!directed && arc.tail > arc.head) continue;  // one line per unordered pair
        out << (directed ? "arc " : "edge ") << arc.tail << ' ' << arc.head << ' '
            << protectionWord(arc.protection) << "\n";
    }
    for (const auto& [vertex, label] : graph.roles()) out << "role " << vertex << ' ' << label << "\n";
    return out.str();
}

PursuitGraph parseGraph6(std::string_view bytes) {
    while (!bytes.empty() && (bytes.back() == '\n' || bytes.back() == '\r' || bytes.back() == ' '))
        bytes.remove_suffix(1);
    if (bytes.empty()) throw ParseError(1, "malformed graph6 encoding: empty input");
    const unsigned char first = static_cast<unsigned char>(bytes[0]);
    if (first == 126) throw ParseError(1, "unsupported graph6 size (more than 62 vertices)");
    if (first < 63 || first > 63 + 62)
        throw ParseError(1, "malformed graph6 encoding: bad size byte");
    const std::uint32_t n = first - 63;

    const std::size_t bitCount = static_cast<std::size_t>(n) * (n - 1) / 2;
    const std::size_t byteCount = (bitCount + 5) / 6;
    if (bytes.size() < 1 + byteCount) throw ParseError(1, "malformed graph6 encoding: truncated stream");
    if (bytes.size() > 1 + byteCount) throw ParseError(1, "malformed graph6 encoding: trailing bytes");

    PursuitGraph graph(n, Orientation::Undirected);
    std::size_t bit = 0;
    for (std::uint32_t j = 1; j < n; ++j) {
        for (std::uint32_t i = 0; i < j; ++i, ++bit) {
            const unsigned char byte = static_cast<unsigned char>(bytes[1 + bit / 6]);
            if (byte < 63 || byte > 126)
                throw ParseError(1, "malformed graph6 encoding: byte out of range");
            if ((byte - 63) >> (5 - bit % 6) & 1) graph.addEdge(i, j, Protection::Unprotected);
        }
    }
    // Padding bits must be zero.
    for (std::size_t pad = bit; pad < byteCount * 6; ++pad) {
        const unsigned char byte = static_cast<unsigned char>(bytes[1 + pad / 6]);
        if ((byte - 63) >> (5 - pad % 6) & 1)
            throw ParseError(1, "malformed graph6 encoding: nonzero padding");
    }
    for (std::uint32_t v = 0; v < n; ++v) graph.addEdge(v, v, Protection::Unprotected);
    return graph;
}

PursuitGraph doublyDirect(const PursuitGraph& graph) {
    if (graph.orientation() != Orientation::Undirected)
        throw GraphError("doublyDirect requires an undirected graph");
    PursuitGraph directed(graph.vertexCount(), Orientation::Directed);
    for (const Arc& arc : graph.arcs()) directed.addArc(arc.tail, arc.head, arc.protection);
    for (const auto& [vertex, label] : graph.roles()) directed.setRole(vertex, label);
    return directed;
}

}  // namespace pursuit
