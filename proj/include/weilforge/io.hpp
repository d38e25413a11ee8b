// Jet-file formats: JSON schemas for metric, christoffel, solution,
// polarization and report payloads, with a human-diffable canonical
// monomial grammar
//
//     "z1^2 zb1 | s1 sb1^2 | th1 dz1"
//
// (V2 part | V3 part | odd part, each "1" when empty, exponents omitted
// when 1). Exact coefficients are emitted as "num/den" strings and survive
// round trips losslessly; identical inputs produce byte-identical files.
#pragma once

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "connection.hpp"
#include "polarization.hpp"

namespace weilforge {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct JetIoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// scalar encoding

inline Json scalar_to_json(const RatC& c) {
    std::ostringstream re, im;
    re << c.re;
    im << c.im;
    return Json{{"re", re.str()}, {"im", im.str()}};
}
inline Json scalar_to_json(const CxD& c) {
    return Json{{"re", c.v.real()}, {"im", c.v.imag()}};
}

inline void scalar_from_json(const Json& j, RatC& out) {
    auto part = [&](const char* key) -> Rational {
        const auto& v = j.at(key);
        if (v.is_string()) return Rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        throw JetIoError("exact mode needs rational coefficient strings");
    };
    out = RatC(part("re"), part("im"));
}
inline void scalar_from_json(const Json& j, CxD& out) {
    auto part = [&](const char* key) -> double {
        const auto& v = j.at(key);
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            // accept "num/den" strings in float mode
            Rational r(v.get<std::string>());
            return static_cast<double>(r);
        }
        throw JetIoError("bad coefficient");
    };
    out = CxD(std::complex<double>(part("re"), part("im")));
}

// ---------------------------------------------------------------------------
// monomial grammar

inline std::string monomial_key(const Monomial& m) {
    auto section = [&](std::initializer_list<Kind> kinds) {
        std::string s;
        for (Kind k : kinds)
            for (int i = 1; i <= m.dim; ++i) {
                int e = m.exp({k, i});
                if (!e) continue;
                if (!s.empty()) s += ' ';
                s += Gen{k, i}.name();
                if (e > 1) s += '^' + std::to_string(e);
            }
        return s.empty() ? std::string("1") : s;
    };
    return section({Kind::V2h, Kind::V2a}) + " | " + section({Kind::V3h, Kind::V3a}) + " | " +
           section({Kind::V4h, Kind::V4a, Kind::V1h, Kind::V1a});
}

inline Monomial parse_monomial_key(const std::string& key, int dim) {
    Monomial m(dim);
    std::istringstream in(key);
    std::string tok;
    while (in >> tok) {
        if (tok == "|" || tok == "1") continue;
        size_t caret = tok.find('^');
        std::string name = tok.substr(0, caret);
        int e = 1;
        if (caret != std::string::npos) e = std::stoi(tok.substr(caret + 1));
        static const std::pair<const char*, Kind> kinds[] = {
            {"zb", Kind::V2a},  {"sb", Kind::V3a},  {"thb", Kind::V4a}, {"dzb", Kind::V1a},
            {"z", Kind::V2h},   {"s", Kind::V3h},   {"th", Kind::V4h},  {"dz", Kind::V1h}};
        bool found = false;
        for (auto& [prefix, kind] : kinds) {
            size_t len = std::string(prefix).size();
            if (name.rfind(prefix, 0) == 0 && name.size() > len &&
                std::isdigit(static_cast<unsigned char>(name[len]))) {
                int idx = std::stoi(name.substr(len));
                if (idx < 1 || idx > dim) throw JetIoError("generator index out of range: " + name);
                if (kind_odd(kind) && (e != 1 || m.exp({kind, idx})))
                    throw JetIoError("odd generator repeated: " + name);
                m.exps[m.slot({kind, idx})] = static_cast<uint8_t>(m.exp({kind, idx}) + e);
                found = true;
                break;
            }
        }
        if (!found) throw JetIoError("bad monomial token: " + tok);
    }
    return m;
}

template <class K>
Json element_to_json(const WeilElement<K>& x) {
    Json arr = Json::array();
    for (const auto& [m, c] : x.terms()) {
        Json t = Json::object();
        t["mono"] = monomial_key(m);
        Json sc = scalar_to_json(c);
        t["re"] = sc["re"];
        t["im"] = sc["im"];
        arr.push_back(std::move(t));
    }
    return arr;
}

template <class K>
WeilElement<K> element_from_json(const Json& arr, int dim) {
    WeilElement<K> out(dim);
    for (const auto& t : arr) {
        K c;
        scalar_from_json(t, c);
        out.add_term(parse_monomial_key(t.at("mono").get<std::string>(), dim), c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// payloads

template <class K>
Json metric_to_json(const MetricJet<K>& m) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "metric";
    j["dim"] = m.dim;
    j["order"] = m.order;
    Json entries = Json::array();
    for (int i = 0; i < m.dim; ++i)
        for (int jj = 0; jj < m.dim; ++jj) {
            if (m.g[i][jj].is_zero()) continue;
            entries.push_back(Json{{"i", i + 1}, {"j", jj + 1},
                                   {"terms", element_to_json(m.g[i][jj])}});
        }
    j["g"] = std::move(entries);
    return j;
}

template <class K>
MetricJet<K> metric_from_json(const Json& j) {
    if (j.at("kind") != "metric") throw JetIoError("not a metric jet file");
    MetricJet<K> m(j.at("dim").get<int>(), j.at("order").get<int>());
    for (const auto& e : j.at("g"))
        m.g[e.at("i").get<int>() - 1][e.at("j").get<int>() - 1] =
            element_from_json<K>(e.at("terms"), m.dim);
    return m;
}

template <class K>
Json christoffel_to_json(const ChristoffelJet<K>& c) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "christoffel";
    j["dim"] = c.dim;
    j["order"] = c.order;
    auto block = [&](const auto& tensor) {
        Json entries = Json::array();
        for (int k = 0; k < c.dim; ++k)
            for (int l = 0; l < c.dim; ++l)
                for (int i = 0; i < c.dim; ++i) {
                    if (tensor[k][l][i].is_zero()) continue;
                    entries.push_back(Json{{"k", k + 1}, {"l", l + 1}, {"i", i + 1},
                                           {"terms", element_to_json(tensor[k][l][i])}});
                }
        return entries;
    };
    j["gamma10"] = block(c.gamma10);
    j["gamma01"] = block(c.gamma01);
    return j;
}

template <class K>
ChristoffelJet<K> christoffel_from_json(const Json& j) {
    if (j.at("kind") != "christoffel") throw JetIoError("not a christoffel jet file");
    ChristoffelJet<K> c(j.at("dim").get<int>(), j.at("order").get<int>());
    auto block = [&](const Json& entries, auto& tensor) {
        for (const auto& e : entries)
            tensor[e.at("k").get<int>() - 1][e.at("l").get<int>() - 1][e.at("i").get<int>() - 1] =
                element_from_json<K>(e.at("terms"), c.dim);
    };
    block(j.at("gamma10"), c.gamma10);
    block(j.at("gamma01"), c.gamma01);
    return c;
}

inline Json residuals_to_json(const std::vector<ResidualEntry>& rs) {
    Json arr = Json::array();
    for (const auto& r : rs)
        arr.push_back(Json{{"aug", r.k}, {"total", r.n}, {"norm", r.norm},
                           {"certified", r.certified}});
    return arr;
}

template <class K>
Json solution_to_json(const ConnectionSolution<K>& sol, bool with_diagnostics = true) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "solution";
    j["dim"] = sol.dim;
    j["order"] = sol.order;
    Json dd = Json::array();
    for (int k = 0; k <= sol.order; ++k) {
        Json stage;
        stage["k"] = k;
        Json s = Json::array(), sb = Json::array();
        for (int i = 0; i < sol.dim; ++i) {
            s.push_back(element_to_json(sol.d_of_s[k][i]));
            sb.push_back(element_to_json(sol.d_of_sb[k][i]));
        }
        stage["s"] = std::move(s);
        stage["sb"] = std::move(sb);
        dd.push_back(std::move(stage));
    }
    j["D"] = std::move(dd);
    if (with_diagnostics) {
        Json diag;
        diag["flatness"] = residuals_to_json(flatness_residual(sol));
        diag["linearity"] = linearity_residual(sol);
        j["diagnostics"] = std::move(diag);
    }
    return j;
}

template <class K>
ConnectionSolution<K> solution_from_json(const Json& j) {
    if (j.at("kind") != "solution") throw JetIoError("not a solution file");
    ConnectionSolution<K> sol;
    sol.dim = j.at("dim").get<int>();
    sol.order = j.at("order").get<int>();
    sol.d_of_s.assign(sol.order + 1,
                      std::vector<WeilElement<K>>(sol.dim, WeilElement<K>::zero(sol.dim)));
    sol.d_of_sb = sol.d_of_s;
    for (const auto& stage : j.at("D")) {
        int k = stage.at("k").get<int>();
        for (int i = 0; i < sol.dim; ++i) {
            sol.d_of_s[k][i] = element_from_json<K>(stage.at("s")[i], sol.dim);
            sol.d_of_sb[k][i] = element_from_json<K>(stage.at("sb")[i], sol.dim);
        }
    }
    // rebuild the reduction tensor from the aug-1 images so downstream
    // operations (curvature, gates) can use it
    sol.reduction = ChristoffelJet<K>(sol.dim, sol.order);
    for (int l = 1; l <= sol.dim; ++l)
        for (const auto& [m, c] : sol.d_of_s[1][l - 1].terms()) {
            int kk = -1, ii = -1;
            bool anti = false;
            for (int t = 1; t <= sol.dim; ++t) {
                if (m.exp({Kind::V3h, t})) kk = t;
                if (m.exp({Kind::V1h, t})) ii = t;
                if (m.exp({Kind::V1a, t})) { ii = t; anti = true; }
            }
            if (kk < 0 || ii < 0) continue;
            Monomial v2(sol.dim);
            for (Kind kv : {Kind::V2h, Kind::V2a})
                for (int t = 1; t <= sol.dim; ++t)
                    v2.exps[v2.slot({kv, t})] = m.exps[m.slot({kv, t})];
            // D1(s_l) = -Gamma^l_{ki} s_k dz_i
            auto& tensor = anti ? sol.reduction.gamma01 : sol.reduction.gamma10;
            tensor[l - 1][kk - 1][ii - 1] += WeilElement<K>::monomial(v2, -c);
        }
    return sol;
}

template <class K>
Json polarization_to_json(const PolarizationSolution<K>& pol) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "polarization";
    j["dim"] = pol.dim;
    j["order"] = pol.order;
    j["total_cap"] = pol.total_cap;
    Json om = Json::array();
    for (int k = 0; k <= pol.order; ++k) om.push_back(element_to_json(pol.omega[k]));
    j["Omega"] = std::move(om);
    return j;
}

template <class K>
PolarizationSolution<K> polarization_from_json(const Json& j) {
    if (j.at("kind") != "polarization") throw JetIoError("not a polarization file");
    PolarizationSolution<K> pol;
    pol.dim = j.at("dim").get<int>();
    pol.order = j.at("order").get<int>();
    pol.total_cap = j.at("total_cap").get<int>();
    for (const auto& arr : j.at("Omega"))
        pol.omega.push_back(element_from_json<K>(arr, pol.dim));
    return pol;
}

// ---------------------------------------------------------------------------
// files

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw JetIoError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw JetIoError("cannot write " + path);
    out << j.dump(1) << "\n";
}

inline std::string dump_canonical(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace weilforge
