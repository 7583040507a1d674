#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "privbid/instance.hpp"

namespace privbid {

// Instance files are a single self-describing JSON document with sections
// config / parties / legs / paths. Keys are emitted in sorted order, so
// save(load(x)) is byte-identical to save(x).

inline nlohmann::json instance_to_json(const AllianceInstance& inst) {
  nlohmann::json j;
  j["schema"] = "alliance-instance/1";
  j["config"] = {{"horizon", inst.config.horizon},
                 {"rho", inst.config.rho},
                 {"max_breakpoints", inst.config.max_breakpoints},
                 {"segments", inst.config.segments},
                 {"seed", inst.config.seed}};
  j["parties"] = inst.parties;
  auto& legs = j["legs"] = nlohmann::json::array();
  for (const Leg& l : inst.legs)
    legs.push_back({{"id", l.id},
                    {"capacity", l.capacity},
                    {"owner", l.owner == kShared ? std::string("SHARED")
                                                 : inst.parties[l.owner]}});
  auto& paths = j["paths"] = nlohmann::json::array();
  for (const Path& p : inst.paths) {
    nlohmann::json prods = nlohmann::json::array();
    for (const Product& pr : p.products)
      prods.push_back({{"fare", pr.fare}, {"mean_demand", pr.mean_demand}});
    nlohmann::json legids = nlohmann::json::array();
    for (int l : p.legs) legids.push_back(inst.legs[l].id);
    paths.push_back({{"id", p.id},
                     {"party", inst.parties[p.party]},
                     {"legs", legids},
                     {"products", prods}});
  }
  return j;
}

inline std::string instance_to_string(const AllianceInstance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline AllianceInstance instance_from_json(const nlohmann::json& j) {
  require(j.value("schema", "") == std::string("alliance-instance/1"),
          "instance file: unknown schema");
  AllianceInstance inst;
  const auto& c = j.at("config");
  inst.config.horizon = c.at("horizon").get<double>();
  inst.config.rho = c.at("rho").get<double>();
  inst.config.max_breakpoints = c.at("max_breakpoints").get<int>();
  inst.config.segments = c.at("segments").get<int>();
  inst.config.seed = c.at("seed").get<std::uint64_t>();
  inst.parties = j.at("parties").get<std::vector<std::string>>();

  auto party_index = [&](const std::string& name) {
    for (int k = 0; k < inst.num_parties(); ++k)
      if (inst.parties[k] == name) return k;
    throw Error("instance file: unknown party " + name);
  };

  std::map<std::string, int> leg_index;
  for (const auto& lj : j.at("legs")) {
    Leg l;
    l.id = lj.at("id").get<std::string>();
    l.capacity = lj.at("capacity").get<long long>();
    std::string owner = lj.at("owner").get<std::string>();
    l.owner = owner == "SHARED" ? kShared : party_index(owner);
    leg_index[l.id] = static_cast<int>(inst.legs.size());
    inst.legs.push_back(l);
  }
  for (const auto& pj : j.at("paths")) {
    Path p;
    p.id = pj.at("id").get<std::string>();
    p.party = party_index(pj.at("party").get<std::string>());
    for (const auto& lid : pj.at("legs")) {
      auto it = leg_index.find(lid.get<std::string>());
      require(it != leg_index.end(), "instance file: unknown leg id");
      p.legs.push_back(it->second);
    }
    for (const auto& prj : pj.at("products"))
      p.products.push_back({prj.at("fare").get<double>(),
                            prj.at("mean_demand").get<double>()});
    inst.paths.push_back(std::move(p));
  }
  inst.validate();
  return inst;
}

inline AllianceInstance instance_from_string(const std::string& text) {
  return instance_from_json(nlohmann::json::parse(text));
}

inline void save_instance(const AllianceInstance& inst,
                          const std::string& file) {
  std::ofstream os(file, std::ios::binary);
  require(os.good(), "cannot open " + file + " for writing");
  os << instance_to_string(inst);
}

inline AllianceInstance load_instance(const std::string& file) {
  std::ifstream is(file, std::ios::binary);
  require(is.good(), "cannot open " + file);
  std::stringstream ss;
  ss << is.rdbuf();
  return instance_from_string(ss.str());
}

}  // namespace privbid
