#pragma once

#include <httplib.h>

#include <stdexcept>
#include <string>
#include <thread>

#include "riichi/service.hpp"

namespace testutil {

// A service listening on an ephemeral loopback port for the test's lifetime.
class TestServer {
 public:
  explicit TestServer(const std::string& data_dir = "") : service_(data_dir) {
    riichi::bind_routes(server_, service_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind a port");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }
  TestServer(const TestServer&) = delete;
  TestServer& operator=(const TestServer&) = delete;

  riichi::GameService& service() { return service_; }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(30, 0);
    return c;
  }

 private:
  riichi::GameService service_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

inline riichi::json post(httplib::Client& c, const std::string& path, const riichi::json& body, int expect) {
  auto res = c.Post(path, body.dump(), "application/json");
  if (!res) throw std::runtime_error("no response from " + path);
  if (res->status != expect) {
    throw std::runtime_error(path + ": status " + std::to_string(res->status) + " body " + res->body);
  }
  return riichi::json::parse(res->body);
}

inline riichi::json get(httplib::Client& c, const std::string& path, int expect = 200) {
  auto res = c.Get(path);
  if (!res) throw std::runtime_error("no response from " + path);
  if (res->status != expect) {
    throw std::runtime_error(path + ": status " + std::to_string(res->status) + " body " + res->body);
  }
  return riichi::json::parse(res->body);
}

// Plays `seat` over HTTP until the game ends, picking uniformly from the
// legal actions the view offers. Returns the final view body.
inline riichi::json play_over_http(httplib::Client& c, const riichi::json& created, int seat, std::uint64_t pick_seed,
                                   int max_requests = 20000) {
  const std::string id = created.at("id");
  riichi::json body = created;
  riichi::Rng rng(riichi::make_rng(pick_seed));
  for (int n = 0; n < max_requests; ++n) {
    const auto& view = body.at("view");
    if (view.at("terminated").get<bool>() || view.at("truncated").get<bool>()) return body;
    const auto& legal = view.at("legal_actions");
    if (view.at("current_player") != seat || legal.empty()) {
      throw std::runtime_error("service is waiting on a seat the client does not own");
    }
    const int a = legal[rng.uniform(static_cast<std::uint32_t>(legal.size()))];
    body = post(c, "/games/" + id + "/actions", {{"seat", seat}, {"action", a}, {"version", body.at("version")}}, 200);
  }
  throw std::runtime_error("game did not finish");
}

}  // namespace testutil
