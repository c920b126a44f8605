#include "resinet/app/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace resinet::app {

using nlohmann::json;

std::string git_blob_hash(const std::string& content) {
    std::string payload = "blob " + std::to_string(content.size());
    payload.push_back('\0');
    payload += content;

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha1(), nullptr) != 1)
        throw std::runtime_error("SHA-1 digest failed");
    std::string hex;
    char buf[3];
    for (unsigned int k = 0; k < len; ++k) {
        std::snprintf(buf, sizeof buf, "%02x", digest[k]);
        hex += buf;
    }
    return hex;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    const json j = {
        {"schema_version", 1},
        {"command", m.command},
        {"config_path", m.config_path},
        {"overrides", m.overrides},
        {"seed", m.seed},
        {"output_dir", m.output_dir},
        {"config_hash", m.config_hash},
        {"methods", m.methods},
        {"metrics_schema", "step,lambda,area,f_obj,theta,mean_ptheta,sigma,psi,zeta,n_alive,connected"},
        {"resolved_config", m.resolved_config},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    const json j = json::parse(in);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config_path = j.at("config_path").get<std::string>();
    m.overrides = j.at("overrides").get<std::vector<std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.output_dir = j.at("output_dir").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.methods = j.at("methods").get<std::vector<std::string>>();
    m.resolved_config = j.at("resolved_config").get<std::string>();
    return m;
}

void write_final_state(const std::string& path, const ExperimentResult& result) {
    json robots = json::array();
    for (const RobotState& r : result.final_robots)
        robots.push_back({{"id", r.id}, {"x", r.position.x}, {"y", r.position.y}, {"alive", r.alive}});
    const json j = {
        {"step", result.metrics.empty() ? 0 : result.metrics.back().step},
        {"gains", {{"sigma", result.final_gains.sigma}, {"psi", result.final_gains.psi}, {"zeta", result.final_gains.zeta}}},
        {"robots", robots},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace resinet::app
