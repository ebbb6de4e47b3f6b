#include "upsets/family_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "upsets/errors.hpp"

namespace upsets {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
    throw MalformedInputError(origin + ": " + what);
}

}  // namespace

LoadedFamily read_family_json(std::istream& in, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        bad(origin, std::string("invalid JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) bad(origin, "top level must be an object");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        bad(origin, "missing integer field \"n\"");
    const long long n = doc["n"].get<long long>();
    if (n < 0 || n > ElementSet::max_elements)
        bad(origin, "\"n\" must be between 0 and " + std::to_string(ElementSet::max_elements));
    if (!doc.contains("minterms") || !doc["minterms"].is_array())
        bad(origin, "missing array field \"minterms\"");

    std::vector<ElementSet> sets;
    int row = 0;
    for (const json& entry : doc["minterms"]) {
        ++row;
        if (!entry.is_array()) bad(origin, "minterm #" + std::to_string(row) + " is not an array");
        std::vector<int> idx;
        for (const json& e : entry) {
            if (!e.is_number_integer())
                bad(origin, "minterm #" + std::to_string(row) + " has a non-integer element");
            idx.push_back(e.get<int>());
        }
        try {
            sets.push_back(ElementSet::from_indices(idx, static_cast<int>(n)));
        } catch (const MalformedInputError& e) {
            bad(origin, "minterm #" + std::to_string(row) + ": " + e.what());
        }
    }

    LoadedFamily out{MintermFamily::from_sets(static_cast<int>(n), sets), false};
    out.was_minimal = static_cast<std::size_t>(out.family.minterm_count()) == sets.size();
    return out;
}

LoadedFamily read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInputError(path + ": cannot open for reading");
    return read_family_json(in, path);
}

std::string family_to_json(const MintermFamily& fam) {
    std::ostringstream os;
    os << "{\n  \"n\": " << fam.n() << ",\n  \"minterms\": [";
    bool first = true;
    for (const ElementSet& mt : fam.minterms()) {
        os << (first ? "\n" : ",\n") << "    [";
        first = false;
        bool inner_first = true;
        for (int i : mt.indices()) {
            os << (inner_first ? "" : ", ") << i;
            inner_first = false;
        }
        os << "]";
    }
    os << (first ? "]" : "\n  ]") << "\n}\n";
    return os.str();
}

void write_family_file(const std::string& path, const MintermFamily& fam) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedInputError(path + ": cannot open for writing");
    out << family_to_json(fam);
    if (!out) throw MalformedInputError(path + ": write failed");
}

}  // namespace upsets
