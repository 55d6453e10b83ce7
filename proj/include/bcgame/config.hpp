#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bcgame/rates.hpp"

namespace bcgame {

/// A parsed problem file. Channel invariants are not checked here; see validate_config.
struct Config {
  std::variant<BCChannel, MACChannel> channel;
  /// 0-based; identity when the file has no "order".
  Order order;
  std::optional<std::vector<double>> weights;
  std::optional<std::vector<double>> gamma;
  std::optional<Profile> profile;
  /// FNV-1a 64 of the canonical JSON text, as 16 hex digits.
  std::string digest;

  bool is_broadcast() const { return std::holds_alternative<BCChannel>(channel); }
  /// Throws ValidationError when the channel is invalid.
  Game game() const;
};

/// Accepts a number (1x1), a flat list (one row) or a list of rows.
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Profile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const Profile& q);

/// 1-based user list to a 0-based order.
Order order_from_one_based(const std::vector<long long>& users);
std::vector<std::size_t> order_to_one_based(const Order& order);

std::string fnv1a_hex(const std::string& text);

/// Throws ValidationError on schema errors.
Config parse_config(const nlohmann::json& j);
/// Throws ValidationError for unreadable files or malformed JSON.
Config load_config(const std::filesystem::path& path);
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Channel invariants plus length checks of the optional fields.
ValidationReport validate_config(const Config& cfg);

}  // namespace bcgame
