#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "forge/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"forge: graded modules, resolutions and syzygy checks"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run the tasks of a session file");
  std::string session_path, json_path;
  forge::RunOptions opt;
  bool quiet = false;
  run->add_option("session", session_path, "Session file")->required();
  run->add_option("--json", json_path, "Write the JSON report here");
  run->add_flag("--parallel", opt.parallel, "Run tasks concurrently; output order is unchanged");
  run->add_flag("--fail-fast", opt.fail_fast, "Stop at the first task that does not pass");
  run->add_option("--seed", opt.seed, "Seed for tasks without seed=");
  run->add_flag("-q,--quiet", quiet, "Only print the summary line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : forge::kExitInputError;
  }

  try {
    std::ifstream in(session_path);
    if (!in) {
      std::cerr << "error: cannot read " << session_path << "\n";
      return forge::kExitInputError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    auto rep = forge::run_session_text(buf.str(), opt);
    if (quiet) {
      auto pos = rep.text.rfind("summary:");
      std::cout << (pos == std::string::npos ? rep.text : rep.text.substr(pos));
    } else {
      std::cout << rep.text;
    }
    if (!json_path.empty()) {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return forge::kExitInputError;
      }
      out << rep.report.dump(2) << "\n";
    }
    return rep.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return forge::kExitInvariant;
  }
}
