#include "sextic/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sextic/errors.hpp"

namespace sextic {

using nlohmann::json;

namespace {

constexpr const char* kAlgoVersion = "sextic-1";

json qvec_to_json(const QVec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(rat_to_string(q));
    return a;
}

json ivec_to_json(const IVec& v) {
    json a = json::array();
    for (const auto& q : v) a.push_back(q.get_str());
    return a;
}

QVec qvec_from_json(const json& a) {
    if (!a.is_array()) throw parse_error("expected array of rationals");
    QVec v;
    for (const auto& e : a) {
        if (!e.is_string()) throw parse_error("coordinates must be rational strings");
        auto q = rat_from_string(e.get<std::string>());
        if (!q) throw parse_error("bad rational: " + e.get<std::string>());
        v.push_back(*q);
    }
    return v;
}

json type_to_json_obj(const LatticeType& t) {
    json o;
    json glue = json::array();
    for (const auto& g : t.glue_gens) {
        std::vector<long> tl;
        for (const auto& v : g) tl.push_back(static_cast<long>(v.get_si()));
        glue.push_back(ivec_to_json(t.setting->dual_of_tuple(tl)));
    }
    o["glue"] = glue;
    o["glue_order"] = t.glue_order().get_str();
    o["G"] = ivec_to_json(t.g_structure);
    o["F"] = ivec_to_json(t.profile.f_structure);
    o["degs"] = t.profile.degs;
    o["z1"] = t.profile.z1;
    o["z2"] = t.profile.z2;
    o["fingerprint"] = t.fingerprint;
    json classes = json::array();
    for (const auto& c : t.profile.classes) {
        json cj;
        cj["role"] = c.role;
        cj["coords"] = ivec_to_json(c.dual);
        cj["class_order"] = c.class_order.get_str();
        cj["tau"] = c.tau;
        classes.push_back(cj);
    }
    o["classes"] = classes;
    return o;
}

}  // namespace

std::string lattice_type_to_json(const LatticeType& t, int indent) {
    return type_to_json_obj(t).dump(indent);
}

std::string classification_to_json(const ADEType& r, const std::vector<LatticeType>& types,
                                   int indent) {
    json o;
    o["ade"] = r.name();
    o["mu"] = r.mu();
    o["algorithm"] = cache_key(r);
    json pts = json::array();
    for (const auto& c : r.components) pts.push_back(c.name());
    o["points"] = pts;
    json ts = json::array();
    for (const auto& t : types) ts.push_back(type_to_json_obj(t));
    o["types"] = ts;
    return o.dump(indent);
}

ParsedLatticeData lattice_data_from_json(const std::string& text) {
    json o;
    try {
        o = json::parse(text);
    } catch (const std::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!o.is_object() || !o.contains("ade") || !o["ade"].is_string())
        throw parse_error("document must contain an \"ade\" string");
    ADEType r = parse_ade(o["ade"].get<std::string>());
    auto sp = make_setting(r);
    if (o.contains("mu") && o["mu"].is_number_integer() && o["mu"].get<int>() != r.mu())
        throw parse_error("mu does not match the ADE type");
    std::vector<IVec> gens;
    if (o.contains("glue")) {
        if (!o["glue"].is_array()) throw parse_error("\"glue\" must be an array");
        for (const auto& g : o["glue"]) {
            QVec v = qvec_from_json(g);
            if (static_cast<int>(v.size()) != sp->n)
                throw parse_error("glue vector has wrong length");
            IVec d(v.size());
            for (size_t i = 0; i < v.size(); ++i) {
                if (!is_integer(v[i]))
                    throw parse_error("glue vectors must be integral in dual coordinates");
                d[i] = v[i].get_num();
            }
            std::vector<long> tuple = sp->tuple_of_dual(d);
            IVec ti(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) ti[i] = tuple[i];
            gens.push_back(std::move(ti));
        }
    }
    ParsedLatticeData out{build_lattice_type(sp, gens), std::nullopt};
    if (o.contains("marked")) {
        if (!o["marked"].is_array() || o["marked"].size() != 2)
            throw parse_error("\"marked\" must hold exactly two class vectors");
        MarkedPair mp;
        for (int k = 0; k < 2; ++k) {
            QVec v = qvec_from_json(o["marked"][static_cast<size_t>(k)]);
            if (static_cast<int>(v.size()) != sp->n) throw parse_error("marked vector has wrong length");
            IVec d(v.size());
            for (size_t i = 0; i < v.size(); ++i) {
                if (!is_integer(v[i])) throw parse_error("marked vectors must be integral in dual coordinates");
                d[i] = v[i].get_num();
            }
            if (k == 0) mp.plus = d; else mp.minus = d;
        }
        QVec qp(mp.plus.size()), qm(mp.minus.size());
        for (size_t i = 0; i < mp.plus.size(); ++i) qp[i] = Rat(mp.plus[i]);
        for (size_t i = 0; i < mp.minus.size(); ++i) qm[i] = Rat(mp.minus[i]);
        if (!out.type.lambda.contains(qp) || !out.type.lambda.contains(qm))
            throw parse_error("marked classes must lie in the overlattice");
        out.marked = mp;
    }
    return out;
}

std::optional<std::vector<LatticeType>> classification_from_json(const std::string& text,
                                                                 const ADEType& expect) {
    json o;
    try {
        o = json::parse(text);
    } catch (...) {
        return std::nullopt;
    }
    if (!o.is_object() || !o.contains("ade") || !o.contains("types")) return std::nullopt;
    if (o["ade"].get<std::string>() != expect.name()) return std::nullopt;
    if (!o.contains("algorithm") || o["algorithm"].get<std::string>() != cache_key(expect))
        return std::nullopt;
    auto sp = make_setting(expect);
    std::vector<LatticeType> out;
    for (const auto& tj : o["types"]) {
        if (!tj.contains("glue")) return std::nullopt;
        std::vector<IVec> gens;
        for (const auto& g : tj["glue"]) {
            QVec v = qvec_from_json(g);
            IVec d(v.size());
            for (size_t i = 0; i < v.size(); ++i) {
                if (!is_integer(v[i])) return std::nullopt;
                d[i] = v[i].get_num();
            }
            std::vector<long> tuple = sp->tuple_of_dual(d);
            IVec ti(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) ti[i] = tuple[i];
            gens.push_back(std::move(ti));
        }
        out.push_back(build_lattice_type(sp, gens));
    }
    return out;
}

std::string cache_key(const ADEType& r) {
    std::string data = r.name() + "|" + kAlgoVersion;
    size_t h = 1469598103934665603ull;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016zx", h);
    return std::string(kAlgoVersion) + "-" + buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw domain_error("cannot write " + tmp);
        f << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw domain_error("cannot rename " + tmp + " to " + path);
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) return std::nullopt;
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace sextic
