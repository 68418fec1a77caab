#include "pursuit/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <set>

namespace pursuit {

namespace {

std::string joinLabel(std::initializer_list<std::string> parts) {
    std::string out;
    for (const std::string& part : parts) {
        if (!out.empty()) out += '.';
        out += part;
    }
    return out;
}

}  // namespace

std::string Role::label() const {
    const auto num = [](int x) { return std::to_string(x); };
    switch (kind) {
        case RoleKind::ResetClique: return joinLabel({"reset", num(i)});
        case RoleKind::Core: return joinLabel({"core", num(i)});
        case RoleKind::Wing: return joinLabel({"wing", num(i), num(j)});
        case RoleKind::CopVertex: return joinLabel({"cop", num(v), num(i), num(j)});
        case RoleKind::RobberVertex: return joinLabel({"robber", num(v), num(i)});
        case RoleKind::CopStarter: return joinLabel({"copstarter", num(j)});
        case RoleKind::RobberStarter: return joinLabel({"robberstarter", num(i)});
        case RoleKind::CopTrack: return joinLabel({"coptrack", num(i), num(j)});
        case RoleKind::CopTrackTwin: return joinLabel({"coptracktwin", num(i), num(j)});
        case RoleKind::RobberTrack: return joinLabel({"robbertrack", num(j)});
        case RoleKind::RobberTrackTwin: return joinLabel({"robbertracktwin", num(j)});
        case RoleKind::RobberTrackEnd: return joinLabel({"robberend", num(i)});
        case RoleKind::Escape: return joinLabel({"escape", num(i)});
        case RoleKind::Omega: return "omega";
        case RoleKind::Psi: return "psi";
    }
    return {};
}

std::optional<Role> Role::parse(std::string_view label) {
    std::vector<std::string> parts;
    while (!label.empty()) {
        const std::size_t dot = label.find('.');
        parts.emplace_back(label.substr(0, dot));
        if (dot == std::string_view::npos) break;
        label.remove_prefix(dot + 1);
    }
    if (parts.empty()) return std::nullopt;
    const auto arity = [&](std::size_t n) { return parts.size() == n + 1; };
    const auto num = [&](std::size_t idx, int& out) {
        const std::string& s = parts[idx];
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    };
    Role role{RoleKind::Omega};
    const std::string& name = parts[0];
    if (name == "omega" && arity(0)) return Role{RoleKind::Omega};
    if (name == "psi" && arity(0)) return Role{RoleKind::Psi};
    if (name == "reset" && arity(1) && num(1, role.i)) return Role{RoleKind::ResetClique, -1, role.i};
    if (name == "core" && arity(1) && num(1, role.i)) return Role{RoleKind::Core, -1, role.i};
    if (name == "wing" && arity(2) && num(1, role.i) && num(2, role.j))
        return Role{RoleKind::Wing, -1, role.i, role.j};
    if (name == "cop" && arity(3) && num(1, role.v) && num(2, role.i) && num(3, role.j))
        return Role{RoleKind::CopVertex, role.v, role.i, role.j};
    if (name == "robber" && arity(2) && num(1, role.v) && num(2, role.i))
        return Role{RoleKind::RobberVertex, role.v, role.i};
    if (name == "copstarter" && arity(1) && num(1, role.j)) return Role{RoleKind::CopStarter, -1, -1, role.j};
    if (name == "robberstarter" && arity(1) && num(1, role.i))
        return Role{RoleKind::RobberStarter, -1, role.i};
    if (name == "coptrack" && arity(2) && num(1, role.i) && num(2, role.j))
        return Role{RoleKind::CopTrack, -1, role.i, role.j};
    if (name == "coptracktwin" && arity(2) && num(1, role.i) && num(2, role.j))
        return Role{RoleKind::CopTrackTwin, -1, role.i, role.j};
    if (name == "robbertrack" && arity(1) && num(1, role.j)) return Role{RoleKind::RobberTrack, -1, -1, role.j};
    if (name == "robbertracktwin" && arity(1) && num(1, role.j))
        return Role{RoleKind::RobberTrackTwin, -1, -1, role.j};
    if (name == "robberend" && arity(1) && num(1, role.i)) return Role{RoleKind::RobberTrackEnd, -1, role.i};
    if (name == "escape" && arity(1) && num(1, role.i)) return Role{RoleKind::Escape, -1, role.i};
    return std::nullopt;
}

RoleMap::RoleMap(std::uint32_t vertexCount) : roles_(vertexCount) {}

void RoleMap::set(std::uint32_t vertex, Role role) {
    if (vertex >= roles_.size()) throw GraphError("role vertex out of range");
    roles_[vertex] = role;
}

const Role& RoleMap::at(std::uint32_t vertex) const {
    if (vertex >= roles_.size() || !roles_[vertex]) throw GraphError("vertex has no role");
    return *roles_[vertex];
}

bool RoleMap::total() const {
    return std::all_of(roles_.begin(), roles_.end(), [](const auto& r) { return r.has_value(); });
}

std::vector<std::uint32_t> RoleMap::verticesOf(RoleKind kind) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t v = 0; v < roles_.size(); ++v)
        if (roles_[v] && roles_[v]->kind == kind) out.push_back(v);
    return out;
}

std::size_t RoleMap::countOf(RoleKind kind) const { return verticesOf(kind).size(); }

std::optional<std::uint32_t> RoleMap::find(const Role& role) const {
    for (std::uint32_t v = 0; v < roles_.size(); ++v)
        if (roles_[v] && *roles_[v] == role) return v;
    return std::nullopt;
}

void RoleMap::applyTo(PursuitGraph& graph) const {
    for (std::uint32_t v = 0; v < roles_.size(); ++v)
        if (roles_[v]) graph.setRole(v, roles_[v]->label());
}

RoleMap RoleMap::fromGraph(const PursuitGraph& graph) {
    RoleMap map(graph.vertexCount());
    for (const auto& [vertex, label] : graph.roles()) {
        auto role = Role::parse(label);
        if (!role) throw GraphError("unparsable role label '" + label + "'");
        map.set(vertex, *role);
    }
    if (!map.total()) throw GraphError("role map is not total");
    return map;
}

bool isPrime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> primesFrom(int r, int count) {
    if (r < 1 || count < 1) throw std::invalid_argument("primesFrom needs r, count >= 1");
    std::vector<std::uint64_t> primes;
    std::uint64_t limit = 64;
    const std::size_t needed = static_cast<std::size_t>(r) + count - 1;
    while (primes.size() < needed) {
        primes.clear();
        std::vector<bool> composite(limit + 1, false);
        for (std::uint64_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (std::uint64_t multiple = i * i; multiple <= limit; multiple += i)
                composite[multiple] = true;
        }
        limit *= 2;
    }
    return {primes.begin() + (r - 1), primes.begin() + needed};
}

namespace {

void requireDistinctPrimes(std::uint64_t p, const std::vector<std::uint64_t>& q) {
    if (p < 3 || !isPrime(p)) throw std::invalid_argument("p must be a prime >= 3");
    std::set<std::uint64_t> seen{p};
    for (std::uint64_t value : q) {
        if (value < 3 || !isPrime(value)) throw std::invalid_argument("track lengths must be primes >= 3");
        if (!seen.insert(value).second) throw std::invalid_argument("primes must be distinct");
    }
}

std::uint64_t captureTimeProduct(std::uint64_t p, const std::vector<std::uint64_t>& q) {
    unsigned __int128 product = p;
    for (std::uint64_t value : q) product *= value;
    if (product > std::numeric_limits<std::uint64_t>::max())
        throw std::invalid_argument("capture-time bound overflows");
    return static_cast<std::uint64_t>(product) - 1;
}

}  // namespace

Construction buildMain(int k, std::uint64_t p, const std::vector<std::uint64_t>& q) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (q.size() != static_cast<std::size_t>(k))
        throw std::invalid_argument("need exactly k track lengths");
    requireDistinctPrimes(p, q);

    const std::uint64_t trackTotal = std::accumulate(q.begin(), q.end(), std::uint64_t{0});
    const std::uint64_t total64 = k + trackTotal + (p - 1) + k + k + 1;
    if (total64 > (1ull << 31)) throw std::invalid_argument("construction too large");
    const std::uint32_t total = static_cast<std::uint32_t>(total64);

    std::vector<std::uint32_t> trackBase(k);
    {
        std::uint32_t offset = k;
        for (int i = 0; i < k; ++i) {
            trackBase[i] = offset;
            offset += static_cast<std::uint32_t>(q[i]);
        }
    }
    const auto s = [&](int i) { return static_cast<std::uint32_t>(i); };
    const auto c = [&](int i, std::uint64_t j) { return trackBase[i] + static_cast<std::uint32_t>(j); };
    const std::uint32_t robberBase = k + static_cast<std::uint32_t>(trackTotal);
    const auto r = [&](std::uint64_t j) { return robberBase + static_cast<std::uint32_t>(j); };
    const std::uint32_t endBase = robberBase + static_cast<std::uint32_t>(p - 1);
    const auto rEnd = [&](int i) { return endBase + static_cast<std::uint32_t>(i); };
    const std::uint32_t escapeBase = endBase + k;
    const auto x = [&](int i) { return escapeBase + static_cast<std::uint32_t>(i); };
    const std::uint32_t omegaVertex = escapeBase + static_cast<std::uint32_t>(k);

    PursuitGraph graph(total, Orientation::Directed);
    const Protection P = Protection::Protected;
    const Protection U = Protection::Unprotected;

    // Reset clique: reflexive and protected, pairwise protected arcs.
    for (int i = 0; i < k; ++i) {
        graph.addArc(s(i), s(i), P);
        for (int i2 = 0; i2 < k; ++i2)
            if (i2 != i) graph.addArc(s(i), s(i2), P);
    }
    // Omega: reflexive and unprotected; all other vertices are irreflexive.
    graph.addArc(omegaVertex, omegaVertex, U);

    for (int i = 0; i < k; ++i) {
        graph.addArc(c(i, 0), s(i), U);
        for (std::uint64_t j = 0; j < q[i]; ++j) {
            graph.addArc(c(i, j), c(i, (j + 1) % q[i]), U);  // track cycle
            graph.addArc(c(i, j), x(i), U);
        }
        graph.addArc(c(i, q[i] - 1), rEnd(i), U);
    }

    for (std::uint64_t j = 0; j + 2 < p; ++j) graph.addArc(r(j), r(j + 1), U);
    for (int i = 0; i < k; ++i) {
        graph.addArc(r(p - 2), rEnd(i), U);
        graph.addArc(rEnd(i), r(0), U);
    }
    // The escape route (robber track -> escape -> clique) exists for the
    // robber; both legs are protected. Unprotected legs would hand the cops
    // extra attacking squares: a cop on the robber track would defend every
    // escape (killing the reset threat), and a cop on an escape would defend
    // the clique (breaking the rule that only the c_{i,0} defend it).
    for (int e = 0; e < k; ++e) {
        for (std::uint64_t j = 0; j + 1 < p; ++j) graph.addArc(r(j), x(e), P);
        for (int i = 0; i < k; ++i) graph.addArc(rEnd(i), x(e), P);
        for (int i = 0; i < k; ++i) graph.addArc(x(e), s(i), P);
    }
    for (int i = 0; i < k; ++i) graph.addArc(s(i), r(0), U);
    for (std::uint32_t v = 0; v < total; ++v)
        if (v >= static_cast<std::uint32_t>(k) && v != omegaVertex) graph.addArc(omegaVertex, v, U);

    RoleMap roles(total);
    for (int i = 0; i < k; ++i) roles.set(s(i), Role{RoleKind::ResetClique, -1, i});
    for (int i = 0; i < k; ++i)
        for (std::uint64_t j = 0; j < q[i]; ++j)
            roles.set(c(i, j), Role{RoleKind::CopTrack, -1, i, static_cast<int>(j)});
    for (std::uint64_t j = 0; j + 1 < p; ++j)
        roles.set(r(j), Role{RoleKind::RobberTrack, -1, -1, static_cast<int>(j)});
    for (int i = 0; i < k; ++i) roles.set(rEnd(i), Role{RoleKind::RobberTrackEnd, -1, i});
    for (int i = 0; i < k; ++i) roles.set(x(i), Role{RoleKind::Escape, -1, i});
    roles.set(omegaVertex, Role{RoleKind::Omega});
    roles.applyTo(graph);

    Prediction prediction;
    prediction.predictedCopNumber = k;
    prediction.vertexCountFormula = total64;
    prediction.captureTimeLowerBound = captureTimeProduct(p, q);
    prediction.notes = "cop tracks of prime lengths force capture timing congruent to -1 mod p*prod(q)";
    return {std::move(graph), std::move(roles), prediction};
}

Construction buildUndirectedSimulation(const PursuitGraph& g, int k) {
    if (k < 2) throw std::invalid_argument("simulation requires k >= 2");
    if (g.orientation() != Orientation::Directed)
        throw std::invalid_argument("simulation input must be directed (use doublyDirect first)");
    if (g.vertexCount() < 1) throw std::invalid_argument("inner graph must be nonempty");
    if (!validateForPlay(g).playable())
        throw std::invalid_argument("inner graph must be playable (every vertex needs an in- and out-arc)");

    const std::uint32_t n = g.vertexCount();
    const std::uint32_t kk = static_cast<std::uint32_t>(k);
    const std::uint64_t total64 = static_cast<std::uint64_t>(3 * kk + 3) * n + 8 * kk + 3;
    if (total64 > (1ull << 31)) throw std::invalid_argument("construction too large");
    const std::uint32_t total = static_cast<std::uint32_t>(total64);

    const auto s = [&](std::uint32_t x) { return x % (4 * kk); };
    const auto t = [&](int i, int j) { return 4 * kk + static_cast<std::uint32_t>(i) * kk + j; };
    const std::uint32_t copBase = 7 * kk;
    const auto kap = [&](std::uint32_t v, int i, int j) {
        return copBase + (static_cast<std::uint32_t>(i) * kk + j) * n + v;
    };
    const std::uint32_t robberBase = copBase + 3 * kk * n;
    const auto rho = [&](std::uint32_t v, int i) { return robberBase + static_cast<std::uint32_t>(i) * n + v; };
    const std::uint32_t starterBase = robberBase + 3 * n;
    const auto cstar = [&](int j) { return starterBase + static_cast<std::uint32_t>(j); };
    const auto rstar = [&](int i) { return starterBase + kk + static_cast<std::uint32_t>(i); };

    PursuitGraph h(total, Orientation::Undirected);
    const Protection P = Protection::Protected;
    const Protection U = Protection::Unprotected;

    // Loops: the reset clique is protected, everything else unprotected.
    for (std::uint32_t v = 0; v < total; ++v) h.addEdge(v, v, v < 7 * kk ? P : U);

    // (1) the reset clique (core + three wings) is a protected clique.
    for (std::uint32_t a = 0; a < 7 * kk; ++a)
        for (std::uint32_t b = a + 1; b < 7 * kk; ++b) h.addEdge(a, b, P);

    for (std::uint32_t v = 0; v < n; ++v)
        for (int i = 0; i < 3; ++i) {
            // (2) copies of a vertex within a layer form an unprotected clique.
            for (int j = 0; j < k; ++j)
                for (int j2 = j + 1; j2 < k; ++j2) h.addEdge(kap(v, i, j), kap(v, i, j2), U);
            // (5) robber vertices reach the core and their wing along protected edges.
            for (std::uint32_t x = 0; x < 4 * kk; ++x) h.addEdge(rho(v, i), s(x), P);
            for (int j = 0; j < k; ++j) h.addEdge(rho(v, i), t(i, j), P);
            // (6) cop vertices defend four core vertices and one wing vertex.
            for (int j = 0; j < k; ++j) {
                for (std::uint32_t d = 0; d < 4; ++d) h.addEdge(kap(v, i, j), s(4 * j + i + d), U);
                h.addEdge(kap(v, i, j), t(i, j), U);
            }
            // (7) every cop vertex is adjacent to all robber vertices of its
            // own layer and the previous one.
            for (std::uint32_t w = 0; w < n; ++w)
                for (int j = 0; j < k; ++j) {
                    h.addEdge(kap(v, i, j), rho(w, i), U);
                    h.addEdge(kap(v, i, j), rho(w, (i + 2) % 3), U);
                }
        }

    // (3), (4): inner arcs induce forward edges between consecutive layers.
    for (const Arc& arc : g.arcs()) {
        for (int i = 0; i < 3; ++i) {
            const int next = (i + 1) % 3;
            for (int j = 0; j < k; ++j) h.addEdge(kap(arc.tail, i, j), kap(arc.head, next, j), U);
            h.addEdge(rho(arc.tail, i), rho(arc.head, next), U);
            if (arc.protection == Protection::Unprotected)
                for (int j = 0; j < k; ++j) h.addEdge(kap(arc.tail, i, j), rho(arc.head, next), U);
        }
    }

    for (int j = 0; j < k; ++j) {
        // (8) starter anchors into the clique.
        for (std::uint32_t d = 3; d <= 6; ++d) h.addEdge(cstar(j), s(4 * j + d), U);
        for (int i = 0; i < 3; ++i) h.addEdge(cstar(j), t(i, j), U);
        // (9) cop starters reach every cop and robber vertex.
        for (std::uint32_t v = 0; v < n; ++v)
            for (int i = 0; i < 3; ++i) {
                for (int j2 = 0; j2 < k; ++j2) h.addEdge(cstar(j), kap(v, i, j2), U);
                h.addEdge(cstar(j), rho(v, i), U);
            }
    }

    for (int i = 0; i < 3; ++i) {
        // (10) robber starters.
        for (std::uint32_t v = 0; v < n; ++v) {
            for (int i2 = 0; i2 < 3; ++i2)
                for (int j = 0; j < k; ++j) h.addEdge(rstar(i), kap(v, i2, j), U);
            h.addEdge(rstar(i), rho(v, (i + 1) % 3), U);
        }
        for (int i2 = i + 1; i2 < 3; ++i2) h.addEdge(rstar(i), rstar(i2), P);
        for (std::uint32_t x = 0; x < 4 * kk; ++x) h.addEdge(rstar(i), s(x), P);
        for (int j = 0; j < k; ++j) h.addEdge(rstar(i), t(i, j), P);
    }

    RoleMap roles(total);
    for (std::uint32_t x = 0; x < 4 * kk; ++x) roles.set(s(x), Role{RoleKind::Core, -1, static_cast<int>(x)});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < k; ++j) roles.set(t(i, j), Role{RoleKind::Wing, -1, i, j});
    for (std::uint32_t v = 0; v < n; ++v)
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < k; ++j)
                roles.set(kap(v, i, j), Role{RoleKind::CopVertex, static_cast<int>(v), i, j});
            roles.set(rho(v, i), Role{RoleKind::RobberVertex, static_cast<int>(v), i});
        }
    for (int j = 0; j < k; ++j) roles.set(cstar(j), Role{RoleKind::CopStarter, -1, -1, j});
    for (int i = 0; i < 3; ++i) roles.set(rstar(i), Role{RoleKind::RobberStarter, -1, i});
    roles.applyTo(h);

    Prediction prediction;
    prediction.predictedCopNumber = k;
    prediction.vertexCountFormula = total64;
    prediction.sandwichRelative = true;
    prediction.notes = "capture time lies in [captDir(G)+1, captDir(G)+2]";
    return {std::move(h), std::move(roles), prediction};
}

Construction buildStronglyConnectedK1(std::uint64_t p, std::uint64_t q) {
    requireDistinctPrimes(p, {q});

    const std::uint32_t total = static_cast<std::uint32_t>(2 * p + 2 * q + 4);
    const std::uint32_t s = 0;
    const auto c = [&](std::uint64_t j) { return 1 + static_cast<std::uint32_t>(j); };
    const auto cTwin = [&](std::uint64_t j) { return 1 + static_cast<std::uint32_t>(q + j); };
    const auto r = [&](std::uint64_t j) { return 1 + static_cast<std::uint32_t>(2 * q + j); };
    const auto rTwin = [&](std::uint64_t j) { return 1 + static_cast<std::uint32_t>(2 * q + p + j); };
    const std::uint32_t x = 1 + static_cast<std::uint32_t>(2 * q + 2 * p);
    const std::uint32_t omega = x + 1;
    const std::uint32_t psi = x + 2;

    PursuitGraph graph(total, Orientation::Directed);
    const Protection P = Protection::Protected;
    const Protection U = Protection::Unprotected;

    // Loops make the graph reflexive: protected everywhere except omega,
    // which keeps the unprotected loop of the base construction (a robber
    // could otherwise sit on omega, or shadow the cop around the psi-omega
    // cycle, and never be captured).
    for (std::uint32_t v = 0; v < total; ++v)
        graph.addArc(v, v, v == omega ? U : P);

    graph.addArc(c(0), s, U);
    for (std::uint64_t j = 0; j < q; ++j) {
        const std::uint64_t next = (j + 1) % q;
        graph.addArc(c(j), c(next), U);
        graph.addArc(c(j), cTwin(next), U);
        graph.addArc(cTwin(j), c(next), U);
        graph.addArc(cTwin(j), cTwin(next), U);
        graph.addArc(c(j), x, U);
        graph.addArc(cTwin(j), x, U);
        graph.addArc(c(j), psi, U);
        graph.addArc(cTwin(j), psi, U);
    }
    for (std::uint64_t j = 0; j < p; ++j) {
        const std::uint64_t next = (j + 1) % p;
        graph.addArc(r(j), r(next), U);
        graph.addArc(r(j), rTwin(next), U);
        graph.addArc(rTwin(j), r(next), U);
        graph.addArc(rTwin(j), rTwin(next), U);
        // Escape legs are protected, as in the k-cop construction.
        graph.addArc(r(j), x, P);
        graph.addArc(rTwin(j), x, P);
    }
    graph.addArc(x, s, P);  // the robber's re-entry into the clique
    graph.addArc(s, r(0), U);
    graph.addArc(s, rTwin(0), U);
    graph.addArc(psi, omega, U);
    for (std::uint32_t v = 0; v < total; ++v)
        if (v != s && v != omega) graph.addArc(omega, v, U);

    // Connectivity of the robber-track region back to omega runs through the
    // psi detour, so every route to omega takes two steps and the robber has
    // time to regain the clique whenever the cop breaks off the chase.
    graph.addArc(x, psi, U);

    // Capture arcs at the end of the tracks; the same-parity pair also arises
    // from the cross arcs below.
    graph.addArc(c(q - 1), rTwin(p - 1), U);
    graph.addArc(cTwin(q - 1), r(p - 1), U);
    for (std::uint64_t i = 0; i < q; ++i)
        for (std::uint64_t j = 0; j < p; ++j) {
            graph.addArc(c(i), r(j), U);
            graph.addArc(cTwin(i), rTwin(j), U);
        }

    RoleMap roles(total);
    roles.set(s, Role{RoleKind::ResetClique, -1, 0});
    for (std::uint64_t j = 0; j < q; ++j) {
        roles.set(c(j), Role{RoleKind::CopTrack, -1, 0, static_cast<int>(j)});
        roles.set(cTwin(j), Role{RoleKind::CopTrackTwin, -1, 0, static_cast<int>(j)});
    }
    for (std::uint64_t j = 0; j < p; ++j) {
        roles.set(r(j), Role{RoleKind::RobberTrack, -1, -1, static_cast<int>(j)});
        roles.set(rTwin(j), Role{RoleKind::RobberTrackTwin, -1, -1, static_cast<int>(j)});
    }
    roles.set(x, Role{RoleKind::Escape, -1, 0});
    roles.set(omega, Role{RoleKind::Omega});
    roles.set(psi, Role{RoleKind::Psi});
    roles.applyTo(graph);

    Prediction prediction;
    prediction.predictedCopNumber = 1;
    prediction.vertexCountFormula = total;
    prediction.captureTimeLowerBound = p * q - 1;
    prediction.notes = "strongly connected, reflexive; twin tracks force the robber onto the opposite parity";
    return {std::move(graph), std::move(roles), prediction};
}

std::vector<std::vector<std::uint32_t>> stablePositions(const PursuitGraph& h, const RoleMap& roles,
                                                        int k) {
    if (!roles.total() || roles.vertexCount() != h.vertexCount())
        throw std::invalid_argument("role map inconsistent with graph");

    std::vector<std::uint32_t> starters;
    for (int j = 0; j < k; ++j) {
        auto vertex = roles.find(Role{RoleKind::CopStarter, -1, -1, j});
        if (!vertex) throw std::invalid_argument("role map inconsistent with k: missing cop starter");
        starters.push_back(*vertex);
    }
    std::sort(starters.begin(), starters.end());

    // classes[i][j]: the j-vertices of layer i.
    std::vector<std::vector<std::vector<std::uint32_t>>> classes(
        3, std::vector<std::vector<std::uint32_t>>(k));
    for (std::uint32_t v = 0; v < h.vertexCount(); ++v) {
        const Role& role = roles.at(v);
        if (role.kind != RoleKind::CopVertex) continue;
        if (role.i < 0 || role.i >= 3 || role.j < 0 || role.j >= k)
            throw std::invalid_argument("role map inconsistent with k: bad cop vertex indices");
        classes[role.i][role.j].push_back(v);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < k; ++j)
            if (classes[i][j].empty())
                throw std::invalid_argument("role map inconsistent with k: empty j-class");

    std::vector<std::vector<std::uint32_t>> positions{starters};
    std::vector<std::uint32_t> candidate(k);
    for (int i = 0; i < 3; ++i) {
        std::vector<std::size_t> odometer(k, 0);
        while (true) {
            for (int j = 0; j < k; ++j) candidate[j] = classes[i][j][odometer[j]];
            std::sort(candidate.begin(), candidate.end());
            positions.push_back(candidate);
            int axis = k - 1;
            while (axis >= 0 && ++odometer[axis] == classes[i][axis].size()) odometer[axis--] = 0;
            if (axis < 0) break;
        }
    }
    std::sort(positions.begin(), positions.end());
    return positions;
}

}  // namespace pursuit
