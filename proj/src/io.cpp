#include "qpack/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace qpack {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "qpack 0.1.0";

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows) {
    if (!rows.is_array() || rows.empty())
        throw DomainError("instance: matrix must be a nonempty array of rows");
    const auto nr = static_cast<Index>(rows.size());
    const auto nc = static_cast<Index>(rows.at(0).size());
    Matrix m(nr, nc);
    for (Index i = 0; i < nr; ++i) {
        const json& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<Index>(row.size()) != nc)
            throw DomainError("instance: ragged matrix rows");
        for (Index j = 0; j < nc; ++j) {
            const json& cell = row.at(static_cast<std::size_t>(j));
            if (!cell.is_array() || cell.size() != 2)
                throw DomainError("instance: complex entries must be [re, im] pairs");
            m(i, j) = Complex(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return m;
}

} // namespace

std::string kind_name(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::CqChannel: return "cq_channel";
        case InstanceKind::CqEnsembleKind: return "cq_ensemble";
        case InstanceKind::BipartiteState: return "bipartite_state";
        case InstanceKind::QuantumChannelKind: return "quantum_channel";
    }
    throw DomainError("kind_name: unknown kind");
}

InstanceKind kind_from_name(const std::string& name) {
    if (name == "cq_channel") return InstanceKind::CqChannel;
    if (name == "cq_ensemble") return InstanceKind::CqEnsembleKind;
    if (name == "bipartite_state") return InstanceKind::BipartiteState;
    if (name == "quantum_channel") return InstanceKind::QuantumChannelKind;
    throw DomainError("instance: unknown kind '" + name + "'");
}

Instance parse_instance(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("instance: malformed JSON: ") + e.what());
    }
    Instance inst;
    inst.version = doc.at("version").get<int>();
    if (inst.version != 1) throw DomainError("instance: unsupported version");
    inst.kind = kind_from_name(doc.at("kind").get<std::string>());

    switch (inst.kind) {
        case InstanceKind::CqChannel:
        case InstanceKind::CqEnsembleKind: {
            const json& states_json = doc.at("states");
            std::vector<DensityOp> states;
            states.reserve(states_json.size());
            for (const json& s : states_json) states.emplace_back(matrix_from_json(s));
            std::vector<double> prior;
            if (doc.contains("prior")) {
                prior = doc.at("prior").get<std::vector<double>>();
            } else if (inst.kind == InstanceKind::CqChannel) {
                prior.assign(states.size(), 1.0 / static_cast<double>(states.size()));
            } else {
                throw DomainError("instance: cq_ensemble requires a prior");
            }
            inst.ensemble.emplace(std::move(prior), std::move(states));
            break;
        }
        case InstanceKind::BipartiteState: {
            const auto dims = doc.at("dims").get<std::vector<Index>>();
            if (dims.size() != 2) throw DomainError("instance: bipartite_state needs dims [dR,dB]");
            inst.dim_r = dims[0];
            inst.dim_b = dims[1];
            inst.state.emplace(matrix_from_json(doc.at("state")));
            if (inst.state->dim() != inst.dim_r * inst.dim_b)
                throw DimensionMismatch("instance: state does not match dims");
            break;
        }
        case InstanceKind::QuantumChannelKind: {
            const auto dims = doc.at("dims").get<std::vector<Index>>();
            if (dims.size() != 2) throw DomainError("instance: quantum_channel needs dims [dA,dB]");
            std::vector<Matrix> kraus;
            for (const json& k : doc.at("kraus")) kraus.push_back(matrix_from_json(k));
            inst.channel.emplace(std::move(kraus), dims[0], dims[1]);
            break;
        }
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("instance: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
    json doc;
    doc["version"] = inst.version;
    doc["kind"] = kind_name(inst.kind);
    switch (inst.kind) {
        case InstanceKind::CqChannel:
        case InstanceKind::CqEnsembleKind: {
            doc["dims"] = json::array({inst.ensemble->dim()});
            doc["prior"] = inst.ensemble->prior;
            json states = json::array();
            for (const auto& s : inst.ensemble->states) states.push_back(matrix_to_json(s.mat()));
            doc["states"] = std::move(states);
            break;
        }
        case InstanceKind::BipartiteState: {
            doc["dims"] = json::array({inst.dim_r, inst.dim_b});
            doc["state"] = matrix_to_json(inst.state->mat());
            break;
        }
        case InstanceKind::QuantumChannelKind: {
            doc["dims"] = json::array({inst.channel->dim_in(), inst.channel->dim_out()});
            json kraus = json::array();
            for (const auto& k : inst.channel->kraus()) kraus.push_back(matrix_to_json(k));
            doc["kraus"] = std::move(kraus);
            break;
        }
    }
    return doc.dump(2) + "\n";
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("hash: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a64(buf.str());
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& seed_text,
                     const std::string& input_hash)
    : out_(out) {
    out_ << "# " << kToolVersion << " seed=" << seed_text << " input=" << input_hash << "\n";
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw DomainError("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
    out_ << "\n";
}

} // namespace qpack
