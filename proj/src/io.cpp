#include "convkit/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace convkit::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument(where + ": " + what);
}

double number_from_json(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        // e.what() already carries the byte position
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open file for writing");
    out << j.dump(2) << '\n';
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(path + ": cannot open file");
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << h;
    return hex.str();
}

Cx scalar_from_json(const json& j, const std::string& where) {
    if (j.is_number()) return Cx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Cx(j[0].get<double>(), j[1].get<double>());
    }
    fail(where, "expected a number or [re, im] pair");
}

json scalar_to_json(Cx v) {
    if (v.imag() == 0.0) return v.real();
    return json::array({v.real(), v.imag()});
}

CVec values_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array of values");
    CVec out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(scalar_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

json values_to_json(std::span<const Cx> values) {
    json out = json::array();
    for (const Cx& v : values) out.push_back(scalar_to_json(v));
    return out;
}

FiniteAbelianGroup group_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("orders") || !j["orders"].is_array()) {
        fail(where, "expected {\"orders\": [n1, ...]}");
    }
    std::vector<long> orders;
    for (const auto& o : j["orders"]) {
        if (!o.is_number_integer()) fail(where, "orders must be integers");
        orders.push_back(o.get<long>());
    }
    return FiniteAbelianGroup(std::move(orders));
}

json group_to_json(const FiniteAbelianGroup& g) {
    return json{{"orders", g.orders()}};
}

GroupSignal group_signal_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("group") || !j.contains("values")) {
        fail(where, "expected {\"group\": {...}, \"values\": [...]}");
    }
    return GroupSignal(group_from_json(j["group"], where + ".group"),
                       values_from_json(j["values"], where + ".values"));
}

json group_signal_to_json(const GroupSignal& s) {
    return json{{"group", group_to_json(s.group)}, {"values", values_to_json(s.values)}};
}

Graph graph_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) {
        fail(where, "expected {\"n\": N, \"directed\": bool, \"edges\": [[src,dst,w], ...]}");
    }
    if (!j["n"].is_number_integer()) fail(where, "\"n\" must be an integer");
    const bool directed = j.value("directed", false);
    std::vector<Edge> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() < 2 || e.size() > 3) {
            fail(where, "each edge must be [src, dst] or [src, dst, weight]");
        }
        Edge edge;
        edge.src = e[0].get<std::size_t>();
        edge.dst = e[1].get<std::size_t>();
        edge.weight = e.size() == 3 ? number_from_json(e[2], where + ".edges") : 1.0;
        edges.push_back(edge);
    }
    return Graph(j["n"].get<std::size_t>(), std::move(edges), directed);
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back(json::array({e.src, e.dst, e.weight}));
    return json{{"n", g.size()}, {"directed", g.directed()}, {"edges", edges}};
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("values")) {
        fail(where, "expected {\"rows\": r, \"cols\": c, \"values\": [...row-major...]}");
    }
    return Matrix(j["rows"].get<std::size_t>(), j["cols"].get<std::size_t>(),
                  values_from_json(j["values"], where + ".values"));
}

json matrix_to_json(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"values", values_to_json(m.entries())}};
}

PolynomialFilter filter_from_json(const json& j, const std::string& where) {
    if (j.is_array()) return PolynomialFilter{values_from_json(j, where)};
    if (j.is_object() && j.contains("coeffs")) {
        return PolynomialFilter{values_from_json(j["coeffs"], where + ".coeffs")};
    }
    fail(where, "expected a coefficient array (lowest degree first)");
}

json filter_to_json(const PolynomialFilter& p) {
    return values_to_json(p.coeffs);
}

MeetSemilattice lattice_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("n") || !j.contains("leq")) {
        fail(where, "expected {\"n\": N, \"leq\": [[i,j], ...]}");
    }
    const std::size_t n = j["n"].get<std::size_t>();
    std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (const auto& pair : j["leq"]) {
        if (!pair.is_array() || pair.size() != 2) fail(where, "leq entries must be [i, j] pairs");
        const std::size_t a = pair[0].get<std::size_t>();
        const std::size_t b = pair[1].get<std::size_t>();
        if (a >= n || b >= n) fail(where, "leq index out of range");
        leq[a][b] = true;
    }
    // transitive closure; the axioms are re-validated by the constructor
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t a = 0; a < n; ++a) {
            if (!leq[a][k]) continue;
            for (std::size_t b = 0; b < n; ++b) {
                if (leq[k][b]) leq[a][b] = true;
            }
        }
    return MeetSemilattice::from_relation(leq);
}

std::vector<double> real_values_from_json(const json& j, const std::string& where) {
    const json& arr = j.is_object() && j.contains("values") ? j["values"] : j;
    if (!arr.is_array()) fail(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) out.push_back(number_from_json(v, where));
    return out;
}

json real_values_to_json(std::span<const double> values) {
    return json{{"values", std::vector<double>(values.begin(), values.end())}};
}

json int_matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j2 = 0; j2 < m.cols; ++j2) row.push_back(m(i, j2));
        rows.push_back(row);
    }
    return json{{"rows", m.rows}, {"cols", m.cols}, {"entries", rows}};
}

LatticeFunction image_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("offset") || !j.contains("width") ||
        !j.contains("height") || !j.contains("values")) {
        fail(where, "expected {\"offset\":[x0,y0],\"width\":w,\"height\":h,\"values\":[...]}");
    }
    const auto& off = j["offset"];
    if (!off.is_array() || off.size() != 2) fail(where, "offset must be [x0, y0]");
    std::vector<double> values;
    for (const auto& v : j["values"]) values.push_back(number_from_json(v, where + ".values"));
    return LatticeFunction(off[0].get<long>(), off[1].get<long>(), j["width"].get<std::size_t>(),
                           j["height"].get<std::size_t>(), std::move(values));
}

json image_to_json(const LatticeFunction& f) {
    return json{{"offset", json::array({f.x0(), f.y0()})},
                {"width", f.width()},
                {"height", f.height()},
                {"values", f.values()}};
}

Kernel3x3 kernel3x3_from_json(const json& j, const std::string& where) {
    const json& arr = j.is_object() && j.contains("kernel") ? j["kernel"] : j;
    if (!arr.is_array() || arr.size() != 9) {
        fail(where, "expected 9 kernel values in row-major (-1..1)x(-1..1) order");
    }
    Kernel3x3 k;
    for (std::size_t i = 0; i < 9; ++i) k.values[i] = number_from_json(arr[i], where);
    return k;
}

MultiShiftSystem multishift_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("weights") || !j.contains("systems")) {
        fail(where, "expected {\"n\":N,\"weights\":[...],\"systems\":[...]}");
    }
    std::vector<double> weights;
    for (const auto& w : j["weights"]) weights.push_back(number_from_json(w, where + ".weights"));
    std::vector<GraphShiftSystem> systems;
    for (std::size_t t = 0; t < j["systems"].size(); ++t) {
        const json& spec = j["systems"][t];
        const std::string here = where + ".systems[" + std::to_string(t) + "]";
        if (spec.contains("matrix")) {
            systems.push_back(system_from_matrix(matrix_from_json(spec["matrix"], here)));
        } else if (spec.contains("graph") && spec.contains("shift")) {
            systems.push_back(build_shift(graph_from_json(spec["graph"], here),
                                          parse_shift_kind(spec["shift"].get<std::string>())));
        } else {
            fail(here, "expected {\"graph\":...,\"shift\":...} or {\"matrix\":...}");
        }
    }
    return MultiShiftSystem(std::move(systems), std::move(weights));
}

json recovered_kernel_to_json(const RecoveredKernel& k) {
    json columns = json::array();
    for (std::size_t i = 0; i < k.size(); ++i) columns.push_back(values_to_json(k.columns.column(i)));
    return json{{"n", k.size()},
                {"columns", columns},
                {"character_scales", values_to_json(k.character_scales)}};
}

bool RunReport::all_pass() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

json RunReport::to_json() const {
    json in = json::array();
    for (const auto& [path, digest] : inputs) in.push_back(json{{"path", path}, {"digest", digest}});
    json chk = json::array();
    for (const auto& c : checks) {
        chk.push_back(json{
            {"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"tolerance", c.tolerance}});
    }
    return json{{"command", command}, {"inputs", in}, {"outputs", outputs}, {"checks", chk}};
}

} // namespace convkit::io
