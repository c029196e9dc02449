// riichi: command-line front end.
//
//   riichi bench  --rule red --mode single --batch 1024 --steps 100 --out report.csv
//   riichi bench  --sweep 2..16384 --threads 8
//   riichi play   --seed 7 --agents heuristic,random,random,random --out game.json
//   riichi replay --log game.json
//   riichi render --log game.json --step 40 --viewer 0 --locale en --out state.svg
//   riichi serve  --port 8080 --static ./ui-dist --data ./sessions
//   riichi actions

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "riichi/batch.hpp"
#include "riichi/render_svg.hpp"
#include "riichi/serialize.hpp"
#include "riichi/service.hpp"

using namespace riichi;

namespace {

// "2..16384" -> powers of two in range; "8,64,512" -> as listed.
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo < 1 || hi < lo) throw std::invalid_argument("bad sweep range: " + text);
    for (long b = lo; b <= hi; b *= 2) sizes.push_back(static_cast<int>(b));
    return sizes;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) sizes.push_back(std::stoi(item));
  if (sizes.empty()) throw std::invalid_argument("empty sweep list");
  return sizes;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

httplib::Server* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riichi mahjong engine tools"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "Batched random-policy throughput");
  std::string rule = "red", mode = "single", sweep_text, out_path;
  int batch = 0, steps = 100, threads = 0, repeats = 1;
  std::uint64_t seed = 0;
  bench->add_option("--rule", rule, "red | no-red")->capture_default_str();
  bench->add_option("--mode", mode, "single | east | half")->capture_default_str();
  auto* batch_opt = bench->add_option("--batch", batch, "Batch size")->check(CLI::PositiveNumber);
  bench->add_option("--sweep", sweep_text, "Batch sizes: LO..HI (doubling) or a comma list")->excludes(batch_opt);
  bench->add_option("--steps", steps, "Timed batch steps")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Base seed")->capture_default_str();
  bench->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
  bench->add_option("--repeats", repeats, "Keep the fastest of N runs")->capture_default_str();
  bench->add_option("--out", out_path, "CSV path (default stdout)");

  // play
  auto* play = app.add_subcommand("play", "Play one game with built-in agents and write its log");
  std::string agents_text = "heuristic";
  std::uint64_t agent_seed = 0;
  play->add_option("--rule", rule)->capture_default_str();
  play->add_option("--mode", mode)->capture_default_str();
  play->add_option("--seed", seed)->capture_default_str();
  play->add_option("--agent-seed", agent_seed, "Seed for random agents")->capture_default_str();
  play->add_option("--agents", agents_text, "One kind for all seats, or four comma-separated kinds")
      ->capture_default_str();
  play->add_option("--out", out_path, "Log path (default stdout)");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "Replay a log and check its final standings");
  std::string log_path;
  replay_cmd->add_option("--log", log_path)->required();

  // render
  auto* render = app.add_subcommand("render", "Render the state after K actions of a log as SVG");
  int step_k = 0;
  std::string viewer_text = "omniscient", locale_text = "en";
  render->add_option("--log", log_path)->required();
  render->add_option("--step", step_k, "Number of logged actions to apply")->capture_default_str();
  render->add_option("--viewer", viewer_text, "0..3 or omniscient")->capture_default_str();
  render->add_option("--locale", locale_text, "en | ja")->capture_default_str();
  render->add_option("--out", out_path, "SVG path (default stdout)");

  // serve
  auto* serve = app.add_subcommand("serve", "HTTP game service");
  int port = 8080;
  std::string host = "127.0.0.1", static_dir, data_dir;
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--static", static_dir, "Directory served at /");
  serve->add_option("--data", data_dir, "Session directory (default: memory only)");

  // actions
  auto* actions = app.add_subcommand("actions", "Print the action table as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*bench) {
      BenchConfig c;
      c.rule = parse_rule(rule);
      c.mode = parse_mode(mode);
      c.steps = steps;
      c.seed = seed;
      c.threads = threads;
      c.repeats = repeats;
      std::vector<int> sizes;
      if (!sweep_text.empty()) sizes = parse_sizes(sweep_text);
      else if (batch > 0) sizes = {batch};
      else sizes = default_sweep_sizes();
      std::ostringstream csv;
      write_csv(csv, sweep(sizes, c), c);
      write_text(out_path, csv.str());
    } else if (*play) {
      EnvConfig c;
      c.rule = parse_rule(rule);
      c.mode = parse_mode(mode);
      std::vector<std::string> kinds;
      std::stringstream in(agents_text);
      for (std::string k; std::getline(in, k, ',');) kinds.push_back(k);
      if (kinds.size() == 1) kinds.assign(4, kinds[0]);
      if (kinds.size() != 4) throw std::invalid_argument("--agents needs one or four kinds");

      GameService svc;
      const json created = svc.create({{"config", to_json(c)},
                                       {"seed", seed},
                                       {"agent_seed", agent_seed},
                                       {"human_seats", json::array()},
                                       {"agents", kinds}});
      write_text(out_path, svc.log(created.at("id")).dump(1) + "\n");
    } else if (*replay_cmd) {
      const EnvState e = replay_log(read_json_file(log_path));
      std::cout << "ok: " << e.steps << " actions, phase " << phase_name(e.game.phase) << ", scores "
                << json(e.game.scores).dump() << ", ranks " << json(final_ranks(e.game)).dump()
                << (e.illegal ? ", ended by an illegal action" : "") << "\n";
    } else if (*render) {
      const GameRecord r = record_from_log(read_json_file(log_path));
      if (step_k < 0 || step_k > static_cast<int>(r.actions.size())) {
        throw std::invalid_argument("--step must be in 0.." + std::to_string(r.actions.size()));
      }
      int viewer = kOmniscient;
      if (viewer_text != "omniscient") {
        if (viewer_text.size() != 1 || viewer_text[0] < '0' || viewer_text[0] > '3') {
          throw std::invalid_argument("--viewer must be 0..3 or omniscient");
        }
        viewer = viewer_text[0] - '0';
      }
      GameRecord prefix = r;
      prefix.actions.resize(step_k);
      write_text(out_path, to_svg(replay(prefix).game, viewer, parse_locale(locale_text)) + "\n");
    } else if (*actions) {
      std::cout << "id,name\n";
      for (int a = 0; a < kNumActions; ++a) std::cout << a << ',' << action_name(a) << "\n";
    } else if (*serve) {
      GameService svc(data_dir);
      for (const auto& e : svc.load_errors()) std::cerr << "skipped session file " << e << "\n";
      httplib::Server server;
      bind_routes(server, svc, static_dir);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on http://" << host << ":" << port << " (" << svc.session_count() << " sessions)\n";
      if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
