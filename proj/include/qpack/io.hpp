#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qpack/linalg.hpp"
#include "qpack/packing.hpp"

namespace qpack {

enum class InstanceKind { CqChannel, CqEnsembleKind, BipartiteState, QuantumChannelKind };

std::string kind_name(InstanceKind kind);
InstanceKind kind_from_name(const std::string& name);

// Decoded instance file.  Exactly one payload is populated, matching `kind`;
// all object invariants are re-validated on load.
struct Instance {
    int version = 1;
    InstanceKind kind = InstanceKind::CqEnsembleKind;

    std::optional<CqEnsemble> ensemble;        // cq_channel / cq_ensemble
    std::optional<DensityOp> state;            // bipartite_state
    Index dim_r = 0, dim_b = 0;                //   its declared bipartition
    std::optional<QuantumChannel> channel;     // quantum_channel
};

Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& inst);

// 17 significant digits; round-trips any binary64 value.
std::string fmt17(double v);

std::uint64_t fnv1a64(const std::string& bytes);
std::uint64_t fnv1a64_file(const std::string& path);

// Comma-separated report with a leading provenance comment, a header row,
// and LF line endings; the column count is fixed by the header.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::string& seed_text, const std::string& input_hash);

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& out_;
    std::size_t columns_ = 0;
};

} // namespace qpack
