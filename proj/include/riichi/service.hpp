#pragma once

// Game sessions for human-vs-agent play. GameService owns the sessions and
// all game logic; bind_routes() puts it behind an httplib server.
//
// A session only ever moves through engine-legal actions: human input is
// checked against the mask before it reaches step(), and agents choose from
// the mask. After every mutation the agents run until a human seat must act
// or the game is over, and the session is written to disk if a data
// directory was given. Files hold (seed, agent seed, config, seats, actions);
// loading replays the actions.

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <httplib.h>

#include "riichi/env.hpp"
#include "riichi/render_svg.hpp"
#include "riichi/serialize.hpp"

namespace riichi {

class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, const std::string& message, json detail = json::object())
      : std::runtime_error(message), status_(status), detail_(std::move(detail)) {}
  int status() const { return status_; }
  const json& detail() const { return detail_; }

 private:
  int status_;
  json detail_;
};

// Pluggable agent: observation + mask -> action. The generator is derived
// from (agent seed, step number), so a replayed session makes the same
// choices without saving generator state.
using AgentFn = std::function<int(const Observation&, const ActionMask&, Rng&)>;

struct Session {
  std::string id;
  std::uint64_t seed = 0;
  std::uint64_t agent_seed = 0;
  EnvConfig config;
  std::array<bool, 4> human{};
  std::array<std::string, 4> agents;  // empty for human seats
  EnvState env;
  std::vector<int> actions;
  std::string created_at;
  std::string updated_at;
  std::mutex mutex;

  int version() const { return static_cast<int>(actions.size()); }
  bool finished() const { return env.terminated || env.truncated; }
};

namespace service_detail {

inline std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::uint64_t entropy64() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

inline bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 32 &&
         std::all_of(id.begin(), id.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

inline int seat_value(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ServiceError(400, std::string(what) + " must be an integer seat");
  const int seat = v.get<int>();
  if (seat < 0 || seat > 3) throw ServiceError(400, std::string(what) + " out of range");
  return seat;
}

}  // namespace service_detail

class GameService {
 public:
  // Empty data_dir keeps sessions in memory only.
  explicit GameService(std::string data_dir = "") : data_dir_(std::move(data_dir)) {
    register_agent("random", [](const Observation&, const ActionMask& mask, Rng& rng) {
      return random_policy(mask, rng);
    });
    register_agent("heuristic",
                   [](const Observation& obs, const ActionMask& mask, Rng&) { return heuristic_policy(obs, mask); });
    if (!data_dir_.empty()) {
      std::filesystem::create_directories(data_dir_);
      load_all();
    }
  }

  void register_agent(const std::string& name, AgentFn fn) {
    if (name.empty() || name == "human") throw std::invalid_argument("reserved agent name");
    agents_[name] = std::move(fn);
  }

  // Files in the data directory that could not be restored.
  const std::vector<std::string>& load_errors() const { return load_errors_; }

  std::size_t session_count() const {
    std::lock_guard lock(store_mutex_);
    return sessions_.size();
  }

  /// POST /games. Returns the first view (for the human seat on turn, else
  /// the lowest human seat, else seat 0 of the finished game).
  json create(const json& request) {
    using namespace service_detail;
    if (!request.is_object()) throw ServiceError(400, "request body must be a JSON object");
    auto s = std::make_shared<Session>();
    try {
      s->config = env_config_from_json(request.value("config", json::object()));
    } catch (const std::exception& e) {
      throw ServiceError(400, std::string("bad config: ") + e.what());
    }
    s->seed = request.contains("seed") ? request.at("seed").get<std::uint64_t>() : entropy64();
    s->agent_seed = request.contains("agent_seed") ? request.at("agent_seed").get<std::uint64_t>() : s->seed;

    const json humans = request.value("human_seats", json::array({0}));
    if (!humans.is_array()) throw ServiceError(400, "human_seats must be an array");
    for (const auto& h : humans) {
      const int seat = seat_value(h, "human_seats entry");
      if (s->human[seat]) throw ServiceError(400, "duplicate human seat");
      s->human[seat] = true;
    }
    const json agents = request.value("agents", json("heuristic"));
    for (int seat = 0; seat < 4; ++seat) {
      if (s->human[seat]) continue;
      json kind = agents;
      if (agents.is_array()) {
        if (agents.size() != 4) throw ServiceError(400, "agents array must have one entry per seat");
        kind = agents[seat];
      }
      if (!kind.is_string() || !agents_.count(kind.get<std::string>())) {
        throw ServiceError(400, "unknown agent for seat " + std::to_string(seat), {{"known", agent_names()}});
      }
      s->agents[seat] = kind.get<std::string>();
    }

    s->env = init(s->seed, s->config);
    s->created_at = s->updated_at = now_utc();
    {
      std::lock_guard lock(store_mutex_);
      do {
        s->id = hex_id(entropy64());
      } while (sessions_.count(s->id));
      sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mutex);
    advance(*s);
    persist(*s);
    int seat = 0;
    for (int k = 3; k >= 0; --k) {
      if (s->human[k]) seat = k;
    }
    if (!s->finished() && s->human[s->env.current_player]) seat = s->env.current_player;
    return view_body(*s, seat, Locale::en);
  }

  /// GET /games/{id}?seat=k. Only human seats may look, except after the
  /// game, when every seat's final view is open.
  json view(const std::string& id, int seat, Locale locale = Locale::en) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    check_viewer(*s, seat);
    return view_body(*s, seat, locale);
  }

  /// GET /games/{id}/svg. viewer = kOmniscient only once the game is over.
  std::string svg(const std::string& id, int viewer, Locale locale = Locale::en) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    if (viewer == kOmniscient) {
      if (!s->finished()) throw ServiceError(403, "omniscient view is only available after the game");
    } else {
      check_viewer(*s, viewer);
    }
    return to_svg(s->env.game, viewer, locale);
  }

  /// POST /games/{id}/actions with {"seat", "action", optional "version"}.
  json act(const std::string& id, const json& request) {
    using namespace service_detail;
    auto s = find(id);
    if (!request.is_object() || !request.contains("seat") || !request.contains("action")) {
      throw ServiceError(400, "body must be an object with seat and action");
    }
    const int seat = seat_value(request.at("seat"), "seat");
    const json& raw = request.at("action");
    if (!raw.is_number_integer() && !raw.is_string()) throw ServiceError(400, "action must be an id or a name");
    if (request.contains("version") && !request.at("version").is_number_integer()) {
      throw ServiceError(400, "version must be an integer");
    }

    std::lock_guard lock(s->mutex);
    if (s->finished()) throw ServiceError(409, "game is over", {{"version", s->version()}});
    if (request.contains("version") && request.at("version").get<int>() != s->version()) {
      throw ServiceError(412, "stale version", {{"version", s->version()}});
    }
    if (!s->human[seat]) throw ServiceError(403, "seat " + std::to_string(seat) + " is not a human seat");
    if (s->env.current_player != seat) {
      throw ServiceError(403, "not this seat's turn", {{"current_player", s->env.current_player}});
    }
    int a = -1;
    if (raw.is_number_integer()) {
      a = raw.get<int>();
    } else {
      try {
        a = parse_action(raw.get<std::string>());
      } catch (const std::invalid_argument&) {
      }
    }
    if (a < 0 || a >= kNumActions || !s->env.legal_action_mask.test(a)) {
      json legal_names = json::array();
      for (int k = 0; k < kNumActions; ++k) {
        if (s->env.legal_action_mask.test(k)) legal_names.push_back(action_name(k));
      }
      throw ServiceError(422, "illegal action",
                         {{"action", raw}, {"legal_actions", mask_json(s->env.legal_action_mask)},
                          {"legal_names", legal_names}, {"version", s->version()}});
    }
    apply(*s, a);
    advance(*s);
    persist(*s);
    return view_body(*s, seat, Locale::en);
  }

  /// GET /games/{id}/log. The log names every hand, so only finished games.
  json log(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    if (!s->finished()) throw ServiceError(403, "log is available once the game is over");
    return make_log(GameRecord{s->seed, s->config, s->actions});
  }

  json health() const { return {{"status", "ok"}, {"sessions", session_count()}}; }

  // Copy of a session's env state, for tests and tooling.
  EnvState env_state(const std::string& id) {
    auto s = find(id);
    std::lock_guard lock(s->mutex);
    return s->env;
  }

 private:
  static std::string hex_id(std::uint64_t v) {
    static const char* const kHex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) out[i] = kHex[v & 15];
    return out;
  }

  json agent_names() const {
    json names = json::array();
    for (const auto& [name, fn] : agents_) names.push_back(name);
    return names;
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::lock_guard lock(store_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw ServiceError(404, "no such game: " + id);
    return it->second;
  }

  static void check_viewer(const Session& s, int seat) {
    if (seat < 0 || seat > 3) throw ServiceError(400, "seat out of range");
    if (!s.human[seat] && !s.finished()) throw ServiceError(403, "seat " + std::to_string(seat) + " is an agent seat");
  }

  static void apply(Session& s, int a) {
    s.env = step(s.env, a);
    s.actions.push_back(a);
    s.updated_at = service_detail::now_utc();
  }

  void advance(Session& s) const {
    while (!s.finished() && !s.human[s.env.current_player]) {
      const int seat = s.env.current_player;
      Rng rng(split(make_rng(s.agent_seed), s.actions.size()));
      const int a = agents_.at(s.agents[seat])(observe(s.env, seat), s.env.legal_action_mask, rng);
      if (a < 0 || a >= kNumActions || !s.env.legal_action_mask.test(a)) {
        throw std::logic_error("agent " + s.agents[seat] + " chose an illegal action");
      }
      apply(s, a);
    }
  }

  static json human_seats(const Session& s) {
    json out = json::array();
    for (int k = 0; k < 4; ++k) {
      if (s.human[k]) out.push_back(k);
    }
    return out;
  }

  static json agents_json(const Session& s) {
    json out = json::array();
    for (int k = 0; k < 4; ++k) out.push_back(s.human[k] ? json("human") : json(s.agents[k]));
    return out;
  }

  static json view_body(const Session& s, int seat, Locale locale) {
    return {{"id", s.id},
            {"version", s.version()},
            {"human_seats", human_seats(s)},
            {"agents", agents_json(s)},
            {"view", view_json(s.env, seat)},
            {"action_table", action_table_json()},
            {"svg", to_svg(s.env.game, seat, locale)}};
  }

  json session_file(const Session& s) const {
    return {{"id", s.id},
            {"seed", s.seed},
            {"agent_seed", s.agent_seed},
            {"config", to_json(s.config)},
            {"human_seats", human_seats(s)},
            {"agents", agents_json(s)},
            {"actions", s.actions},
            {"created_at", s.created_at},
            {"updated_at", s.updated_at}};
  }

  void persist(const Session& s) const {
    if (data_dir_.empty()) return;
    const auto path = std::filesystem::path(data_dir_) / (s.id + ".json");
    auto tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out << session_file(s).dump() << "\n";
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  void load_all() {
    for (const auto& entry : std::filesystem::directory_iterator(data_dir_)) {
      if (entry.path().extension() != ".json") continue;
      try {
        std::ifstream in(entry.path());
        const json j = json::parse(in);
        auto s = std::make_shared<Session>();
        s->id = j.at("id").get<std::string>();
        if (!service_detail::valid_id(s->id)) throw std::invalid_argument("bad id");
        s->seed = j.at("seed").get<std::uint64_t>();
        s->agent_seed = j.at("agent_seed").get<std::uint64_t>();
        s->config = env_config_from_json(j.at("config"));
        for (const auto& h : j.at("human_seats")) s->human[service_detail::seat_value(h, "human seat")] = true;
        for (int k = 0; k < 4; ++k) {
          if (s->human[k]) continue;
          s->agents[k] = j.at("agents").at(k).get<std::string>();
          if (!agents_.count(s->agents[k])) throw std::invalid_argument("unknown agent " + s->agents[k]);
        }
        s->actions = j.at("actions").get<std::vector<int>>();
        s->env = replay(GameRecord{s->seed, s->config, s->actions});
        if (s->env.illegal) throw std::invalid_argument("stored actions include an illegal one");
        s->created_at = j.value("created_at", "");
        s->updated_at = j.value("updated_at", "");
        advance(*s);
        sessions_[s->id] = s;
      } catch (const std::exception& e) {
        load_errors_.push_back(entry.path().string() + ": " + e.what());
      }
    }
  }

  std::string data_dir_;
  std::map<std::string, AgentFn> agents_;
  mutable std::mutex store_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::vector<std::string> load_errors_;
};

namespace service_detail {

inline void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs a handler and maps failures onto status codes.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    json body = e.detail();
    body["error"] = e.what();
    send_json(res, e.status(), body);
  } catch (const json::exception& e) {
    send_json(res, 400, {{"error", std::string("bad request: ") + e.what()}});
  } catch (const std::invalid_argument& e) {
    send_json(res, 400, {{"error", e.what()}});
  } catch (const std::exception& e) {
    send_json(res, 500, {{"error", e.what()}});
  }
}

inline int seat_param(const httplib::Request& req, bool optional) {
  if (!req.has_param("seat")) {
    if (optional) return kOmniscient;
    throw ServiceError(400, "missing seat parameter");
  }
  const std::string v = req.get_param_value("seat");
  if (v.size() != 1 || v[0] < '0' || v[0] > '3') throw ServiceError(400, "seat must be 0..3");
  return v[0] - '0';
}

inline Locale locale_param(const httplib::Request& req) {
  return req.has_param("locale") ? parse_locale(req.get_param_value("locale")) : Locale::en;
}

}  // namespace service_detail

/// Routes:
///   GET  /health
///   POST /games
///   GET  /games/{id}?seat=k[&locale=en|ja]
///   POST /games/{id}/actions
///   GET  /games/{id}/svg[?seat=k][&locale=en|ja]
///   GET  /games/{id}/log
/// Non-empty static_dir is served at "/".
inline void bind_routes(httplib::Server& server, GameService& service, const std::string& static_dir = "") {
  using namespace service_detail;
  const auto parse_body = [](const httplib::Request& req) {
    try {
      return json::parse(req.body.empty() ? "{}" : req.body);
    } catch (const json::parse_error&) {
      throw ServiceError(400, "body is not valid JSON");
    }
  };

  server.Get("/health", [&service](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, service.health());
  });
  server.Post("/games", [&service, parse_body](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 201, service.create(parse_body(req))); });
  });
  server.Get(R"(/games/([A-Za-z0-9]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, service.view(req.matches[1], seat_param(req, false), locale_param(req))); });
  });
  server.Post(R"(/games/([A-Za-z0-9]+)/actions)",
              [&service, parse_body](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] { send_json(res, 200, service.act(req.matches[1], parse_body(req))); });
              });
  server.Get(R"(/games/([A-Za-z0-9]+)/svg)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      res.set_content(service.svg(req.matches[1], seat_param(req, true), locale_param(req)), "image/svg+xml");
    });
  });
  server.Get(R"(/games/([A-Za-z0-9]+)/log)", [&service](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, service.log(req.matches[1])); });
  });
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
    throw std::invalid_argument("static directory not found: " + static_dir);
  }
}

}  // namespace riichi
