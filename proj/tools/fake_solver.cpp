// Deterministic stand-in for an SMT solver in tests:
//   fake_solver REPLY_FILE [--dump PATH] [--sleep SECONDS]
// Consumes the whole script from stdin, optionally copies it to PATH, then
// prints REPLY_FILE verbatim.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: fake_solver REPLY_FILE [--dump PATH] [--sleep SECONDS]\n";
    return 2;
  }
  std::string reply_path = argv[1], dump_path;
  double sleep_seconds = 0;
  for (int i = 2; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--dump") dump_path = argv[i + 1];
    else if (flag == "--sleep") sleep_seconds = std::stod(argv[i + 1]);
  }
  std::ostringstream script;
  script << std::cin.rdbuf();
  if (!dump_path.empty()) std::ofstream(dump_path, std::ios::binary) << script.str();
  if (sleep_seconds > 0) std::this_thread::sleep_for(std::chrono::duration<double>(sleep_seconds));
  std::ifstream reply(reply_path, std::ios::binary);
  if (!reply) {
    std::cerr << "fake_solver: cannot read " << reply_path << "\n";
    return 2;
  }
  std::cout << reply.rdbuf();
  return 0;
}
