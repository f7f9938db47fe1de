// Copyright 2026 The Playlist Story Builder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psb/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <thread>

#include "psb/error.hpp"

namespace psb {
namespace {

constexpr std::size_t kMaxCapturedOutput = 1 << 20;

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& other) noexcept : fd_(other.release()) {}
  Fd& operator=(Fd&& other) noexcept {
    reset(other.release());
    return *this;
  }
  ~Fd() { reset(); }

  int get() const { return fd_; }
  int release() {
    const int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_ = -1;
};

bool MakePipe(Fd& read_end, Fd& write_end) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) return false;
  read_end.reset(fds[0]);
  write_end.reset(fds[1]);
  return true;
}

using Clock = std::chrono::steady_clock;

std::optional<int> DecodeStatus(int status) {
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return std::nullopt;
}

// Waits for pid until the deadline, then kills it. Returns the raw status.
int ReapWithDeadline(pid_t pid, Clock::time_point deadline, bool& timed_out) {
  int status = 0;
  while (true) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid) return status;
    if (r < 0 && errno != EINTR) return status;
    if (Clock::now() >= deadline) {
      timed_out = true;
      ::kill(pid, SIGKILL);
      while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
      }
      return status;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

ProcessResult RunProcess(const std::vector<std::string>& argv,
                         std::chrono::milliseconds timeout) {
  ProcessResult result;
  if (argv.empty() || argv.front().empty()) {
    result.error = "empty command";
    return result;
  }

  Fd out_read, out_write, err_read, err_write;
  if (!MakePipe(out_read, out_write) || !MakePipe(err_read, err_write)) {
    result.error = std::string("pipe: ") + std::strerror(errno);
    return result;
  }
  Fd dev_null(::open("/dev/null", O_RDONLY | O_CLOEXEC));
  if (dev_null.get() < 0) {
    result.error = std::string("/dev/null: ") + std::strerror(errno);
    return result;
  }

  // Everything the child touches is prepared before fork.
  std::vector<char*> cargv;
  cargv.reserve(argv.size() + 1);
  for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  const auto deadline = Clock::now() + timeout;
  const pid_t pid = ::fork();
  if (pid < 0) {
    result.error = std::string("fork: ") + std::strerror(errno);
    return result;
  }
  if (pid == 0) {
    ::dup2(dev_null.get(), STDIN_FILENO);
    ::dup2(out_write.get(), STDOUT_FILENO);
    ::execvp(cargv[0], cargv.data());
    const int code = errno;
    [[maybe_unused]] auto ignored = ::write(err_write.get(), &code, sizeof(code));
    ::_exit(127);
  }

  out_write.reset();
  err_write.reset();

  int exec_errno = 0;
  ssize_t got;
  do {
    got = ::read(err_read.get(), &exec_errno, sizeof(exec_errno));
  } while (got < 0 && errno == EINTR);
  if (got == static_cast<ssize_t>(sizeof(exec_errno))) {
    bool ignored = false;
    ReapWithDeadline(pid, Clock::now() + std::chrono::seconds(5), ignored);
    result.error = "cannot execute \"" + argv.front() +
                   "\": " + std::strerror(exec_errno);
    return result;
  }

  char buf[4096];
  while (true) {
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (remaining.count() <= 0) break;
    pollfd pfd{out_read.get(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (ready == 0) break;
    const ssize_t n = ::read(out_read.get(), buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    if (result.standard_output.size() < kMaxCapturedOutput) {
      result.standard_output.append(buf, static_cast<std::size_t>(n));
    }
  }

  const int status = ReapWithDeadline(pid, deadline, result.timed_out);
  if (!result.timed_out) result.exit_code = DecodeStatus(status);
  return result;
}

std::vector<std::string> SplitCommandLine(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  char quote = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (quote == '\'') {
      if (c == '\'') quote = 0;
      else current.push_back(c);
    } else if (quote == '"') {
      if (c == '"') {
        quote = 0;
      } else if (c == '\\' && k + 1 < text.size()) {
        current.push_back(text[++k]);
      } else {
        current.push_back(c);
      }
    } else if (IsSpace(c)) {
      if (in_word) {
        words.push_back(std::move(current));
        current.clear();
        in_word = false;
      }
    } else {
      in_word = true;
      if (c == '\'' || c == '"') {
        quote = c;
      } else if (c == '\\' && k + 1 < text.size()) {
        current.push_back(text[++k]);
      } else {
        current.push_back(c);
      }
    }
  }
  if (quote != 0) throw InvalidArgument("unterminated quote in command line");
  if (in_word) words.push_back(std::move(current));
  return words;
}

ExtractorSpec ExtractorSpec::FromCommandLine(std::string_view text,
                                             std::chrono::milliseconds timeout) {
  std::vector<std::string> words = SplitCommandLine(text);
  if (words.empty()) throw InvalidArgument("extractor command is empty");
  if (timeout.count() <= 0) {
    throw InvalidArgument("extractor timeout must be positive");
  }
  ExtractorSpec spec;
  spec.command = std::move(words.front());
  spec.args.assign(std::make_move_iterator(words.begin() + 1),
                   std::make_move_iterator(words.end()));
  spec.timeout = timeout;
  return spec;
}

std::vector<std::string> ExtractorSpec::Argv(const std::string& audio_path) const {
  std::vector<std::string> argv;
  argv.reserve(args.size() + 1);
  argv.push_back(command);
  for (const std::string& a : args) {
    std::string out;
    std::size_t from = 0;
    while (true) {
      const std::size_t at = a.find(kPathPlaceholder, from);
      if (at == std::string::npos) break;
      out.append(a, from, at - from);
      out += audio_path;
      from = at + kPathPlaceholder.size();
    }
    out.append(a, from);
    argv.push_back(std::move(out));
  }
  return argv;
}

std::optional<double> ParseTempoOutput(std::string_view text) {
  while (!text.empty() && IsSpace(text.front())) text.remove_prefix(1);
  while (!text.empty() && IsSpace(text.back())) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value) || value < kMinTempoBpm || value > kMaxTempoBpm) {
    return std::nullopt;
  }
  return value;
}

}  // namespace psb
