// Copyright 2026 The Sensikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sensikit/extern_target.h"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <sstream>

#include "sensikit/error.h"
#include "sensikit/text_io.h"

extern char** environ;

namespace sensikit {
namespace {

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { Close(); }

  int get() const { return fd_; }
  void Close() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

Error SubprocessError(const std::string& program, const std::string& what) {
  return Error(ErrorCode::kTargetEvaluation,
               "external target '" + program + "': " + what);
}

std::string EncodeRecords(std::span<const Record> records) {
  std::string out;
  for (const Record& r : records) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j > 0) out += ',';
      out += FormatDouble(r[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

ExternTarget::ExternTarget(std::string program, int n, OutputNorm norm,
                           int max_workers)
    : program_(std::move(program)),
      n_(n),
      norm_(norm),
      workers_(std::make_unique<std::counting_semaphore<>>(
          std::max(1, max_workers))) {
  if (n < 1) throw Error(ErrorCode::kDomain, "ExternTarget: n must be >= 1");
  if (::access(program_.c_str(), X_OK) != 0) {
    throw Error(ErrorCode::kIo,
                "external target '" + program_ + "' is not an executable file");
  }
  ::signal(SIGPIPE, SIG_IGN);
}

std::vector<double> ExternTarget::RunOnce(std::span<const Record> records) const {
  workers_->acquire();
  struct Release {
    std::counting_semaphore<>* sem;
    ~Release() { sem->release(); }
  } release{workers_.get()};

  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw SubprocessError(program_, "pipe failed");
  Fd child_in(in_pipe[0]);
  Fd to_child(in_pipe[1]);
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) throw SubprocessError(program_, "pipe failed");
  Fd from_child(out_pipe[0]);
  Fd child_out(out_pipe[1]);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, child_in.get(), STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, child_out.get(), STDOUT_FILENO);
  std::vector<char> path(program_.begin(), program_.end());
  path.push_back('\0');
  char* argv[] = {path.data(), nullptr};
  pid_t pid = 0;
  const int rc = ::posix_spawn(&pid, path.data(), &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) {
    throw SubprocessError(program_, std::string("spawn failed: ") + std::strerror(rc));
  }
  child_in.Close();
  child_out.Close();

  const std::string input = EncodeRecords(records);
  std::size_t written = 0;
  while (written < input.size()) {
    const ssize_t w = ::write(to_child.get(), input.data() + written,
                              input.size() - written);
    if (w < 0) {
      if (errno == EINTR) continue;
      break;  // the program stopped reading; its exit status decides
    }
    written += static_cast<std::size_t>(w);
  }
  to_child.Close();

  std::string output;
  char buffer[4096];
  for (;;) {
    const ssize_t r = ::read(from_child.get(), buffer, sizeof(buffer));
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) break;
    output.append(buffer, static_cast<std::size_t>(r));
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw SubprocessError(program_, "exited with failure status");
  }

  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line) && TrimWhitespace(line).empty()) {
  }
  std::vector<double> values;
  std::istringstream fields(line);
  std::string field;
  while (fields >> field) {
    try {
      values.push_back(ParseDouble(field));
    } catch (const Error& e) {
      throw SubprocessError(program_, std::string("unparsable output: ") + e.what());
    }
  }
  if (values.empty()) throw SubprocessError(program_, "printed no output values");
  return values;
}

std::vector<double> ExternTarget::Evaluate(std::span<const Record> records) const {
  if (static_cast<int>(records.size()) != n_) {
    throw Error(ErrorCode::kDimensionMismatch, "ExternTarget: wrong record count");
  }
  std::vector<double> checked;
  bool first_call = false;
  std::call_once(determinism_checked_, [&] {
    checked = RunOnce(records);
    if (checked != RunOnce(records)) {
      throw SubprocessError(program_,
                            "is not deterministic: two runs on the same "
                            "database printed different outputs");
    }
    first_call = true;
  });
  if (first_call) return checked;
  return RunOnce(records);
}

}  // namespace sensikit
