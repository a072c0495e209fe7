#include <json.hpp>

#include "mixar/error.hpp"
#include "mixar/model.hpp"

namespace mixar {

std::string to_json(const ModelSpec& spec) {
  nlohmann::ordered_json j;
  j["family"] = to_string(spec.family);
  j["r"] = spec.r();
  j["s"] = spec.s();
  j["phi"] = spec.phi;
  j["varphi"] = spec.varphi;
  return j.dump();
}

ModelSpec model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    const Family f = family_from_string(j.at("family").get<std::string>());
    auto phi = j.value("phi", std::vector<double>{});
    auto varphi = j.value("varphi", std::vector<double>{});
    ModelSpec spec = f == Family::Causal      ? ModelSpec::causal(std::move(phi))
                     : f == Family::Noncausal ? ModelSpec::noncausal(std::move(varphi))
                                              : ModelSpec::mixed(std::move(phi), std::move(varphi));
    if (j.contains("r") && j["r"].get<std::size_t>() != spec.r()) throw Error(ErrorKind::Order, "r does not match phi");
    if (j.contains("s") && j["s"].get<std::size_t>() != spec.s()) throw Error(ErrorKind::Order, "s does not match varphi");
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Data, std::string("model JSON: ") + e.what());
  }
}

}  // namespace mixar
