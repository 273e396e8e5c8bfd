#include <nlohmann/json.hpp>

#include "nspm/errors.hpp"
#include "nspm/resultset.hpp"

namespace nspm {

using nlohmann::json;

std::string resultset_to_json(const ResultSet& rs) {
    json j;
    if (rs.is_boolean) {
        j["head"] = json::object();
        j["boolean"] = *rs.is_boolean;
        return j.dump();
    }
    j["head"]["vars"] = rs.variables;
    json bindings = json::array();
    for (const auto& row : rs.rows) {
        json b = json::object();
        for (const auto& [var, term] : row) {
            json t;
            if (is_iri(term)) {
                t["type"] = "uri";
                t["value"] = as_iri(term).value;
            } else {
                const Literal& l = as_literal(term);
                t["type"] = "literal";
                t["value"] = l.lexical;
                if (l.datatype) t["datatype"] = l.datatype->value;
                if (l.lang) t["xml:lang"] = *l.lang;
            }
            b[var] = std::move(t);
        }
        bindings.push_back(std::move(b));
    }
    j["results"]["bindings"] = std::move(bindings);
    return j.dump();
}

ResultSet resultset_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("response is not valid JSON: ") + e.what());
    }
    ResultSet rs;
    try {
        if (j.contains("boolean")) {
            rs.is_boolean = j["boolean"].get<bool>();
            return rs;
        }
        if (j.contains("head") && j["head"].contains("vars"))
            rs.variables = j["head"]["vars"].get<std::vector<std::string>>();
        if (!j.contains("results") || !j["results"].contains("bindings"))
            throw ProtocolError("response lacks results.bindings");
        for (const auto& b : j["results"]["bindings"]) {
            std::map<std::string, Term> row;
            for (auto it = b.begin(); it != b.end(); ++it) {
                const auto& t = it.value();
                std::string type = t.at("type").get<std::string>();
                std::string value = t.at("value").get<std::string>();
                if (type == "uri") {
                    row[it.key()] = Iri(std::move(value));
                } else {
                    Literal l(std::move(value));
                    if (t.contains("datatype")) l.datatype = Iri(t["datatype"].get<std::string>());
                    if (t.contains("xml:lang")) l.lang = t["xml:lang"].get<std::string>();
                    row[it.key()] = std::move(l);
                }
            }
            rs.rows.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw ProtocolError(std::string("malformed SPARQL results document: ") + e.what());
    }
    return rs;
}

}  // namespace nspm
