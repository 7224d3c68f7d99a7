// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Criteria 1-7 are quantitative
// checks from the library's verification suite; criterion 8 exercises the
// installed CLI for byte-identical reruns and the exit-code contract.
//
// usage: bubblekit_acceptance <path-to-cli> <scenario-dir>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <sstream>

#include "bubblekit.h"
#include "bubblekit/verify.hpp"

namespace {

struct CommandResult {
  std::string output;
  int exit_code = -1;
};

CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return res;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.output.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

const char* kCriterionNames[9] = {
    "",
    "constants cross-check (Beta oracles, c5 stability, kappas positive)",
    "vortex closed forms (pair, collinear triple, virial, derivatives)",
    "nonexistence at local maxima (negative-definite Q)",
    "rate-law residual decay on the shipped scenarios",
    "cluster geometry (eps^{(n-2)/n} scaling and offset round-trip)",
    "boundary expansion identity suites",
    "interaction calculus (symmetry, signs, far field)",
    "CLI determinism (byte-identical reruns, exit codes)"};

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: bubblekit_acceptance <path-to-cli> <scenario-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = argv[2];

  // criteria 1-7
  const std::vector<bubblekit::VerifyCheck> checks = bubblekit::run_verification({});
  std::map<int, std::vector<const bubblekit::VerifyCheck*>> by_criterion;
  for (const auto& c : checks) by_criterion[c.criterion].push_back(&c);

  bool all_pass = true;
  for (int criterion = 1; criterion <= 7; ++criterion) {
    const auto& group = by_criterion[criterion];
    bool pass = !group.empty();
    for (const auto* c : group) pass = pass && c->pass;
    all_pass = all_pass && pass;
    std::printf("criterion %d: %-66s %s\n", criterion, kCriterionNames[criterion],
                pass ? "PASS" : "FAIL");
    if (!pass)
      for (const auto* c : group)
        if (!c->pass)
          std::printf("    failed: %s (measured %.6e vs bound %.6e)\n",
                      c->name.c_str(), c->measured, c->bound);
  }

  // criterion 8: determinism and the exit-code contract
  {
    bool pass = true;
    std::vector<std::string> notes;

    const std::vector<std::string> commands = {
        cli + " constants --n 5",
        cli + " constants --n 7 --tol 1e-11",
        cli + " vortex --n 5 --m 3 --Q " + dir + "/identity.json --seed 7 --starts 64",
        cli + " vortex --n 5 --m 2 --Q " + dir + "/identity.json --seed 11 --starts 48",
        cli + " predict --config " + dir + "/cluster_m3.json --eps 1e-4",
        cli + " predict --config " + dir + "/interior_point.json --eps 1e-3",
        cli + " sweep --config " + dir + "/boundary_simple.json --eps-list 1e-2,1e-3",
        cli + " sweep --config " + dir + "/cluster_m3.json --eps-list 1e-3,1e-4",
        cli + " verify --seed 3",
    };
    for (const auto& cmd : commands) {
      const CommandResult first = run_command(cmd);
      const CommandResult second = run_command(cmd);
      if (first.output.empty() || first.output != second.output) {
        pass = false;
        notes.push_back("output differs or empty: " + cmd);
      }
      if (first.exit_code != second.exit_code || first.exit_code != 0) {
        pass = false;
        notes.push_back("exit code " + std::to_string(first.exit_code) + ": " + cmd);
      }
    }

    // CSV shape and lossless 17-digit round trip of the constants table
    {
      const CommandResult table = run_command(cli + " constants --n 5");
      int lines = 0;
      for (char c : table.output)
        if (c == '\n') ++lines;
      if (lines != 10) {  // header + 9 constants
        pass = false;
        notes.push_back("constants table has " + std::to_string(lines) + " lines");
      }
      // parse the value column back and compare bitwise to fresh values
      double values[9], errors[9];
      if (bk_constants_compute(5, 1e-10, values, errors) != BK_OK) {
        pass = false;
        notes.push_back("bk_constants_compute failed");
      } else {
        std::istringstream in(table.output);
        std::string line;
        std::getline(in, line);  // header
        for (int i = 0; i < 9 && std::getline(in, line); ++i) {
          const size_t a = line.find(','), b = line.rfind(',');
          const double parsed = std::strtod(line.substr(a + 1, b - a - 1).c_str(), nullptr);
          if (parsed != values[i]) {
            pass = false;
            notes.push_back("CSV round trip differs for row " + std::to_string(i));
          }
        }
      }
    }

    // --out writes exactly the bytes that stdout carries
    {
      const std::string path = "acceptance_constants_out.csv";
      const CommandResult direct = run_command(cli + " constants --n 5");
      run_command(cli + " constants --n 5 --out " + path);
      std::ifstream in(path, std::ios::binary);
      std::string from_file((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
      if (from_file != direct.output) {
        pass = false;
        notes.push_back("--out file differs from stdout");
      }
      std::remove(path.c_str());
    }

    // worker-count independence: a single-threaded rerun is byte-identical
    {
      const std::string cmd =
          cli + " vortex --n 5 --m 3 --Q " + dir + "/identity.json --seed 7 --starts 64";
      const CommandResult parallel = run_command(cmd);
      const CommandResult serial = run_command("BUBBLEKIT_THREADS=1 " + cmd);
      if (parallel.output != serial.output) {
        pass = false;
        notes.push_back("output depends on BUBBLEKIT_THREADS");
      }
    }

    // exit-code contract: configuration errors exit 2, math failures exit 3
    {
      const std::string bad_path = "acceptance_bad_config.json";
      std::ofstream bad(bad_path);
      bad << "{\"field\": {\"n\": 5, \"terms\": [], \"positivity_floor\": 1.0, "
             "\"bogus\": 1}}";
      bad.close();
      const CommandResult r = run_command(cli + " predict --config " + bad_path +
                                          " --eps 1e-3");
      if (r.exit_code != 2) {
        pass = false;
        notes.push_back("malformed config exited " + std::to_string(r.exit_code));
      }
      std::remove(bad_path.c_str());

      const CommandResult unknown = run_command(cli + " constants --n 5 --bogus 1");
      if (unknown.exit_code != 2) {
        pass = false;
        notes.push_back("unknown flag exited " + std::to_string(unknown.exit_code));
      }
      const CommandResult missing = run_command(cli + " predict --config no_such_file.json --eps 1e-3");
      if (missing.exit_code != 2) {
        pass = false;
        notes.push_back("missing file exited " + std::to_string(missing.exit_code));
      }
    }

    all_pass = all_pass && pass;
    std::printf("criterion 8: %-66s %s\n", kCriterionNames[8], pass ? "PASS" : "FAIL");
    for (const auto& n : notes) std::printf("    %s\n", n.c_str());
  }

  std::printf("acceptance: %s\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
