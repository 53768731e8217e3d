#include "mpesens/network_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mpesens {

namespace {

using json = nlohmann::ordered_json;

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(std::string("missing \"") + key + "\" in " + where);
    return *it;
}

}  // namespace

BayesianNetwork load_network(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::exception& e) {
        throw ParseError(std::string("network document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("network document must be a JSON object");

    const json& jvars = require(doc, "variables", "network document");
    const json& jcpts = require(doc, "cpts", "network document");
    if (!jvars.is_array() || !jcpts.is_array())
        throw ParseError("\"variables\" and \"cpts\" must be arrays");

    std::vector<Variable> vars;
    for (const json& jv : jvars) {
        if (!jv.is_object()) throw ParseError("variable entries must be objects");
        Variable v;
        v.name = require(jv, "name", "variable").get<std::string>();
        for (const json& val : require(jv, "values", "variable")) {
            if (!val.is_string()) throw ParseError("values of " + v.name + " must be strings");
            v.values.push_back(val.get<std::string>());
        }
        vars.push_back(std::move(v));
    }

    // Resolve names before constructing the network.
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(vars.size()); ++i) {
        if (!index.emplace(vars[i].name, i).second)
            throw ParseError("duplicate variable name " + vars[i].name);
    }

    std::vector<Cpt> cpts;
    for (const json& jc : jcpts) {
        if (!jc.is_object()) throw ParseError("cpt entries must be objects");
        Cpt c;
        std::string child = require(jc, "child", "cpt").get<std::string>();
        auto it = index.find(child);
        if (it == index.end()) throw ParseError("cpt references unknown variable " + child);
        c.child = it->second;
        for (const json& jp : require(jc, "parents", "cpt of " + child)) {
            auto pit = index.find(jp.get<std::string>());
            if (pit == index.end())
                throw ParseError("cpt of " + child + " references unknown parent " +
                                 jp.get<std::string>());
            c.parents.push_back(pit->second);
        }
        for (const json& jrow : require(jc, "rows", "cpt of " + child)) {
            if (!jrow.is_array()) throw ParseError("cpt rows of " + child + " must be arrays");
            std::vector<double> row;
            for (const json& t : jrow) {
                if (!t.is_number()) throw ParseError("cpt of " + child + " has non-numeric entry");
                row.push_back(t.get<double>());
            }
            c.rows.push_back(std::move(row));
        }
        cpts.push_back(std::move(c));
    }
    if (cpts.size() != vars.size())
        throw ParseError("document must declare exactly one cpt per variable");

    BayesianNetwork net(std::move(vars), std::move(cpts));
    auto violations = validate_network(net);
    if (!violations.empty()) {
        std::string msg = "network is invalid:";
        for (const auto& v : violations) msg += "\n  " + v.message;
        throw ValidationError(msg, std::move(violations));
    }
    return net;
}

BayesianNetwork load_network_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open network file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_network(buf.str());
}

std::string serialize_network(const BayesianNetwork& net) {
    json doc;
    json jvars = json::array();
    for (const auto& v : net.variables())
        jvars.push_back({{"name", v.name}, {"values", v.values}});
    json jcpts = json::array();
    for (const auto& c : net.cpts()) {
        json parents = json::array();
        for (int p : c.parents) parents.push_back(net.variable(p).name);
        jcpts.push_back(
            {{"child", net.variable(c.child).name}, {"parents", parents}, {"rows", c.rows}});
    }
    doc["variables"] = std::move(jvars);
    doc["cpts"] = std::move(jcpts);
    return doc.dump(2) + "\n";
}

Evidence parse_evidence(const BayesianNetwork& net, const std::vector<std::string>& tokens) {
    Evidence e = empty_evidence(net);
    for (const std::string& tok : tokens) {
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("evidence token \"" + tok + "\" is not of the form Var=value");
        int var = net.variable_index(tok.substr(0, eq));
        if (var < 0) throw ParseError("evidence references unknown variable in \"" + tok + "\"");
        int val = net.value_index(var, tok.substr(eq + 1));
        if (val < 0) throw ParseError("evidence references unknown value in \"" + tok + "\"");
        if (e.values[var] != Evidence::kUnset && e.values[var] != val)
            throw ParseError("evidence assigns two values to " + net.variable(var).name);
        e.values[var] = val;
    }
    return e;
}

Evidence parse_evidence(const BayesianNetwork& net, const std::string& tokens) {
    std::vector<std::string> parts;
    std::istringstream in(tokens);
    std::string tok;
    while (in >> tok) parts.push_back(tok);
    return parse_evidence(net, parts);
}

}  // namespace mpesens
