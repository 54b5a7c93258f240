#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "arwlab/df_engine.hpp"
#include "arwlab/lattice.hpp"
#include "arwlab/ssm_net.hpp"

namespace arwlab {

using Json = nlohmann::json;

inline std::string site_key(const Site& x) {
    std::string s;
    for (int i = 0; i < x.dim(); ++i) {
        if (i) s += ',';
        s += std::to_string(x[i]);
    }
    return s;
}

inline Site site_from_key(const std::string& key) {
    std::vector<Coord> c;
    std::size_t pos = 0;
    while (pos <= key.size()) {
        const std::size_t comma = key.find(',', pos);
        const std::string tok =
            key.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        c.push_back(std::stoll(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Site(std::move(c));
}

// {config: site -> count-or-"s", odometer, dissipated, seed, steps}
inline Json world_snapshot(const World& w, std::uint64_t seed) {
    Json config = Json::object();
    for (auto& [x, n] : w.active) config[site_key(x)] = n;
    for (auto& x : w.sleeping) config[site_key(x)] = "s";
    Json odo = Json::object();
    for (auto& [x, n] : w.odometer) odo[site_key(x)] = n;
    return Json{{"config", config},
                {"odometer", odo},
                {"dissipated", w.dissipated},
                {"seed", seed},
                {"steps", w.steps}};
}

// same schema with per-site {q, r, retained}
inline Json ssm_snapshot(const SsmWorld& w, std::uint64_t seed) {
    Json config = Json::object();
    for (auto& [x, s] : w.state)
        config[site_key(x)] =
            Json{{"q", s.q}, {"r", s.r}, {"retained", w.retained_at(x)}};
    Json odo = Json::object();
    for (auto& [x, n] : w.odometer) odo[site_key(x)] = n;
    return Json{{"config", config},
                {"odometer", odo},
                {"dissipated", w.dissipated},
                {"seed", seed},
                {"steps", w.steps}};
}

inline Json box_descriptor(const Box& b) {
    Json lower = Json::array();
    Json side = Json::array();
    for (int i = 0; i < b.dim(); ++i) {
        lower.push_back(b.lower[i]);
        side.push_back(b.side[i]);
    }
    return Json{{"lower", lower}, {"side", side}};
}

inline Box box_from_json(const Json& j) {
    std::vector<Coord> lower = j.at("lower").get<std::vector<Coord>>();
    std::vector<Coord> side = j.at("side").get<std::vector<Coord>>();
    return Box(Site(std::move(lower)), std::move(side));
}

// FNV-1a over the canonical dump, rendered as 16 hex digits
inline std::string config_hash(const Json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace arwlab
