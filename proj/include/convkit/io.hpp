#pragma once

#include "convkit/graph.hpp"
#include "convkit/group.hpp"
#include "convkit/image.hpp"
#include "convkit/lattice.hpp"
#include "convkit/multishift.hpp"
#include "convkit/recovery.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace convkit::io {

using nlohmann::json;

/// Parses a JSON file; parse failures carry the file name and byte position.
json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

/// FNV-1a 64-bit digest of the raw file bytes, as a hex string.
std::string file_digest(const std::string& path);

// scalars are bare numbers (real) or [re, im] pairs
Cx scalar_from_json(const json& j, const std::string& where);
json scalar_to_json(Cx v);
CVec values_from_json(const json& j, const std::string& where);
json values_to_json(std::span<const Cx> values);

FiniteAbelianGroup group_from_json(const json& j, const std::string& where);
json group_to_json(const FiniteAbelianGroup& g);

GroupSignal group_signal_from_json(const json& j, const std::string& where);
json group_signal_to_json(const GroupSignal& s);

Graph graph_from_json(const json& j, const std::string& where);
json graph_to_json(const Graph& g);

Matrix matrix_from_json(const json& j, const std::string& where);
json matrix_to_json(const Matrix& m);

PolynomialFilter filter_from_json(const json& j, const std::string& where);
json filter_to_json(const PolynomialFilter& p);

/// Lattice relations arrive as {"n":N,"leq":[[i,j],...]}; reflexive pairs are
/// optional and the reflexive-transitive closure is taken before validation.
MeetSemilattice lattice_from_json(const json& j, const std::string& where);

std::vector<double> real_values_from_json(const json& j, const std::string& where);
json real_values_to_json(std::span<const double> values);

json int_matrix_to_json(const IntMatrix& m);

LatticeFunction image_from_json(const json& j, const std::string& where);
json image_to_json(const LatticeFunction& f);

Kernel3x3 kernel3x3_from_json(const json& j, const std::string& where);

MultiShiftSystem multishift_from_json(const json& j, const std::string& where);

json recovered_kernel_to_json(const RecoveredKernel& k);

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
};

/// Machine-readable trace of one CLI run: the command, input digests, the
/// payload written to --out, and the executed checks. The process exit
/// status is nonzero exactly when some check failed.
struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // path, digest
    json outputs;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    json to_json() const;
};

} // namespace convkit::io
