#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "ptrs/error.hpp"
#include "ptrs/smt.hpp"

namespace ptrs {

namespace {

class Pipe {
 public:
  Pipe() {
    if (::pipe2(fds_, O_CLOEXEC) != 0) throw Error(ErrorCode::SolverError, std::string("pipe: ") + std::strerror(errno));
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  Pipe(const Pipe&) = delete;
  Pipe& operator=(const Pipe&) = delete;

  int read_end() const { return fds_[0]; }
  int write_end() const { return fds_[1]; }
  void close_read() { close_fd(fds_[0]); }
  void close_write() { close_fd(fds_[1]); }

 private:
  static void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
  int fds_[2] = {-1, -1};
};

void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL) | O_NONBLOCK); }

// Kills the whole process group of the child (the shell and the solver).
void kill_and_reap(pid_t pid) {
  ::kill(-pid, SIGKILL);
  ::kill(pid, SIGKILL);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
}

}  // namespace

SolverResult run_solver(const std::string& script, const std::string& command, std::chrono::milliseconds timeout,
                        std::stop_token stop) {
  ::signal(SIGPIPE, SIG_IGN);
  Pipe in, out, err;

  const pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorCode::SolverError, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in.read_end(), STDIN_FILENO);
    ::dup2(out.write_end(), STDOUT_FILENO);
    ::dup2(err.write_end(), STDERR_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  in.close_read();
  out.close_write();
  err.close_write();
  set_nonblocking(in.write_end());
  set_nonblocking(out.read_end());
  set_nonblocking(err.read_end());

  const auto deadline = std::chrono::steady_clock::now() + timeout;
  std::size_t written = 0;
  std::string stdout_text, stderr_text;
  bool out_open = true, err_open = true;
  char buffer[4096];

  while (out_open || err_open) {
    if (stop.stop_requested() || std::chrono::steady_clock::now() >= deadline) {
      kill_and_reap(pid);
      SolverResult r;
      r.status = SolverResult::Status::Unknown;
      r.diagnostic = stop.stop_requested() ? "cancelled" : "timeout";
      return r;
    }
    pollfd fds[3];
    nfds_t n = 0;
    if (out_open) fds[n++] = {out.read_end(), POLLIN, 0};
    if (err_open) fds[n++] = {err.read_end(), POLLIN, 0};
    const bool writing = in.write_end() >= 0;
    if (writing) fds[n++] = {in.write_end(), POLLOUT, 0};
    if (::poll(fds, n, 50) < 0 && errno != EINTR) break;

    for (nfds_t i = 0; i < n; ++i) {
      if (fds[i].revents == 0) continue;
      if (fds[i].fd == in.write_end()) {
        ssize_t k = ::write(in.write_end(), script.data() + written, script.size() - written);
        if (k > 0) written += static_cast<std::size_t>(k);
        if (k < 0 && errno != EAGAIN) written = script.size();
        if (written >= script.size()) in.close_write();
        continue;
      }
      const bool is_out = fds[i].fd == out.read_end();
      ssize_t k = ::read(fds[i].fd, buffer, sizeof buffer);
      if (k > 0) {
        (is_out ? stdout_text : stderr_text).append(buffer, static_cast<std::size_t>(k));
      } else if (k == 0 || (errno != EAGAIN && errno != EINTR)) {
        (is_out ? out_open : err_open) = false;
      }
    }
  }
  in.close_write();

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  SolverResult result = parse_solver_output(stdout_text);
  if (result.status == SolverResult::Status::Error) {
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.diagnostic += " (exit status " + std::to_string(code) + ")";
    if (!stderr_text.empty()) result.diagnostic += ": " + stderr_text.substr(0, 500);
  }
  return result;
}

}  // namespace ptrs
