#include "bcgame/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bcgame/errors.hpp"

namespace bcgame {

using nlohmann::json;

namespace {

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string("config: ") + what + " must be a number");
  return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string("config: ") + what + " must be a list of numbers");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(number(x, what));
  return out;
}

std::vector<Matrix> matrices(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ValidationError(std::string("config: ") + what + " must be a non-empty list");
  std::vector<Matrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

}  // namespace

Matrix matrix_from_json(const json& j) {
  if (j.is_number()) return Matrix::Constant(1, 1, j.get<double>());
  if (!j.is_array() || j.empty()) throw ValidationError("config: matrix must be a number or a non-empty array");
  if (j.front().is_number()) {
    Matrix m(1, static_cast<Eigen::Index>(j.size()));
    for (std::size_t c = 0; c < j.size(); ++c) m(0, static_cast<Eigen::Index>(c)) = number(j[c], "matrix entry");
    return m;
  }
  const auto rows = j.size();
  if (!j.front().is_array() || j.front().empty()) throw ValidationError("config: matrix rows must be arrays");
  const auto cols = j.front().size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("config: ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(j[r][c], "matrix entry");
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Profile profile_from_json(const json& j) { return matrices(j, "profile"); }

json profile_to_json(const Profile& q) {
  json out = json::array();
  for (const auto& m : q) out.push_back(matrix_to_json(m));
  return out;
}

Order order_from_one_based(const std::vector<long long>& users) {
  std::vector<std::size_t> seq;
  for (long long u : users) {
    if (u < 1) throw ValidationError("order: users are numbered from 1");
    seq.push_back(static_cast<std::size_t>(u - 1));
  }
  try {
    return Order(std::move(seq));
  } catch (const std::exception& e) {
    throw ValidationError(std::string("order: ") + e.what());
  }
}

std::vector<std::size_t> order_to_one_based(const Order& order) {
  std::vector<std::size_t> out;
  for (auto u : order.sequence()) out.push_back(u + 1);
  return out;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Config parse_config(const json& j) {
  if (!j.is_object()) throw ValidationError("config: top level must be an object");
  if (!j.contains("type") || !j["type"].is_string()) throw ValidationError("config: missing \"type\"");
  const std::string type = j["type"];
  if (!j.contains("channels")) throw ValidationError("config: missing \"channels\"");
  if (!j.contains("power") || !j["power"].is_object()) throw ValidationError("config: missing \"power\"");
  const auto channels = matrices(j["channels"], "channels");
  const json& power = j["power"];
  const json noise = j.value("noise", json{{"white", 1.0}});
  if (!noise.is_object()) throw ValidationError("config: \"noise\" must be an object");

  Config cfg;
  if (type == "bc") {
    BCChannel bc;
    bc.channels = channels;
    bc.tx_antennas = static_cast<std::size_t>(j.value("tx_antennas", static_cast<long long>(channels.front().cols())));
    if (noise.contains("white")) {
      bc.noise = WhiteNoise{number(noise["white"], "noise.white")};
    } else if (noise.contains("covariances")) {
      bc.noise = ColoredNoise{matrices(noise["covariances"], "noise.covariances")};
    } else {
      throw ValidationError("config: noise needs \"white\" or \"covariances\"");
    }
    if (!power.contains("sum")) throw ValidationError("config: a broadcast channel needs a \"sum\" power budget");
    bc.power_budget = number(power["sum"], "power.sum");
    cfg.channel = std::move(bc);
  } else if (type == "mac") {
    MACChannel mac;
    mac.channels = channels;
    mac.rx_antennas = static_cast<std::size_t>(j.value("rx_antennas", static_cast<long long>(channels.front().rows())));
    if (!noise.contains("white")) throw ValidationError("config: a MAC needs white noise");
    mac.noise_level = number(noise["white"], "noise.white");
    if (power.contains("sum")) {
      mac.power = SumPower{number(power["sum"], "power.sum")};
    } else if (power.contains("individual")) {
      mac.power = IndividualPowers{numbers(power["individual"], "power.individual")};
    } else {
      throw ValidationError("config: power needs \"sum\" or \"individual\"");
    }
    cfg.channel = std::move(mac);
  } else {
    throw ValidationError("config: \"type\" must be \"bc\" or \"mac\"");
  }

  if (j.contains("order")) {
    if (!j["order"].is_array()) throw ValidationError("config: \"order\" must be a list");
    std::vector<long long> users;
    for (const auto& u : j["order"]) {
      if (!u.is_number_integer()) throw ValidationError("config: order entries must be integers");
      users.push_back(u.get<long long>());
    }
    cfg.order = order_from_one_based(users);
  } else {
    cfg.order = Order::identity(channels.size());
  }
  if (j.contains("weights")) cfg.weights = numbers(j["weights"], "weights");
  if (j.contains("gamma")) cfg.gamma = numbers(j["gamma"], "gamma");
  if (j.contains("profile")) cfg.profile = profile_from_json(j["profile"]);
  cfg.digest = fnv1a_hex(j.dump());
  return cfg;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": malformed JSON: " + e.what());
  }
}

Config load_config(const std::filesystem::path& path) {
  try {
    return parse_config(read_json_file(path));
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

ValidationReport validate_config(const Config& cfg) {
  ValidationReport report =
      std::visit([](const auto& ch) { return validate(ch); }, cfg.channel);
  const std::size_t k_users =
      std::visit([](const auto& ch) { return ch.channels.size(); }, cfg.channel);
  if (cfg.order.size() != k_users) report.violations.push_back("order length does not match number of users");
  if (cfg.weights && cfg.weights->size() != k_users) {
    report.violations.push_back("weights length does not match number of users");
  }
  if (cfg.gamma && cfg.gamma->size() != k_users) report.violations.push_back("gamma length does not match number of users");
  if (cfg.profile && cfg.profile->size() != k_users) {
    report.violations.push_back("profile length does not match number of users");
  }
  return report;
}

Game Config::game() const {
  const ValidationReport report = validate_config(*this);
  if (!report.ok()) throw ValidationError("invalid config: " + report.violations.front());
  return std::visit([&](const auto& ch) { return Game(ch, order); }, channel);
}

}  // namespace bcgame
