#include "ccc/engine/channel.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "ccc/error.hpp"

namespace ccc::engine {
namespace {

void close_fd(int& fd) {
    if (fd >= 0) ::close(fd);
    fd = -1;
}

}  // namespace

ProcessChannel::ProcessChannel(const std::string& executable, const std::vector<std::string>& args) {
    if (::access(executable.c_str(), X_OK) != 0)
        throw UpstreamError("cannot start engine '" + executable + "': " + std::strerror(errno));

    int in[2], out[2], status[2];
    if (::pipe(in) != 0 || ::pipe(out) != 0 || ::pipe2(status, O_CLOEXEC) != 0)
        throw UpstreamError(std::string("pipe: ") + std::strerror(errno));

    std::vector<std::string> argv_store{executable};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    argv.push_back(nullptr);

    const pid_t pid = ::fork();
    if (pid < 0) throw UpstreamError(std::string("fork: ") + std::strerror(errno));
    if (pid == 0) {
        ::dup2(in[0], STDIN_FILENO);
        ::dup2(out[1], STDOUT_FILENO);
        ::close(in[0]);
        ::close(in[1]);
        ::close(out[0]);
        ::close(out[1]);
        ::close(status[0]);
        ::execv(executable.c_str(), argv.data());
        const int err = errno;
        [[maybe_unused]] auto n = ::write(status[1], &err, sizeof err);
        ::_exit(127);
    }
    ::close(in[0]);
    ::close(out[1]);
    ::close(status[1]);
    int err = 0;
    const auto n = ::read(status[0], &err, sizeof err);
    ::close(status[0]);
    pid_ = pid;
    to_engine_ = in[1];
    from_engine_ = out[0];
    if (n == static_cast<ssize_t>(sizeof err)) {
        ::waitpid(pid_, nullptr, 0);
        pid_ = -1;
        close_fd(to_engine_);
        close_fd(from_engine_);
        throw UpstreamError("cannot start engine '" + executable + "': " + std::strerror(err));
    }
    // A dead engine must surface as an error on write, not kill us.
    ::signal(SIGPIPE, SIG_IGN);
}

ProcessChannel::~ProcessChannel() {
    if (pid_ > 0) {
        if (to_engine_ >= 0) {
            const char quit[] = "quit\n";
            [[maybe_unused]] auto n = ::write(to_engine_, quit, sizeof quit - 1);
        }
        close_fd(to_engine_);
        int status = 0;
        bool reaped = false;
        for (int i = 0; i < 50 && !reaped; ++i) {
            if (::waitpid(pid_, &status, WNOHANG) == pid_) reaped = true;
            else std::this_thread::sleep_for(std::chrono::milliseconds(10));
        }
        if (!reaped) {
            ::kill(pid_, SIGKILL);
            ::waitpid(pid_, &status, 0);
        }
    }
    close_fd(to_engine_);
    close_fd(from_engine_);
}

void ProcessChannel::send(const std::string& line) {
    const std::string data = line + "\n";
    std::size_t off = 0;
    while (off < data.size()) {
        const auto n = ::write(to_engine_, data.data() + off, data.size() - off);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw UpstreamError("engine crashed: write failed (" + std::string(std::strerror(errno)) + ")");
        }
        off += static_cast<std::size_t>(n);
    }
}

std::optional<std::string> ProcessChannel::receive(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return line;
        }
        if (eof_) throw UpstreamError("engine crashed: output closed");
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) return std::nullopt;
        pollfd pfd{from_engine_, POLLIN, 0};
        const int r = ::poll(&pfd, 1, static_cast<int>(left.count()));
        if (r < 0) {
            if (errno == EINTR) continue;
            throw UpstreamError(std::string("poll: ") + std::strerror(errno));
        }
        if (r == 0) return std::nullopt;
        char chunk[4096];
        const auto n = ::read(from_engine_, chunk, sizeof chunk);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw UpstreamError(std::string("engine read: ") + std::strerror(errno));
        }
        if (n == 0) eof_ = true;
        else buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

ScriptedChannel::ScriptedChannel(std::vector<Entry> entries) : entries_(std::move(entries)) {}

std::unique_ptr<ScriptedChannel> ScriptedChannel::from_text(const std::string& text) {
    std::vector<Entry> entries;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.size() < 2 || (line[0] != '>' && line[0] != '<') || line[1] != ' ')
            throw DataError("transcript line " + std::to_string(number) + ": expected '> ' or '< ' prefix: " + line);
        entries.push_back({line[0] == '>', line.substr(2)});
    }
    return std::make_unique<ScriptedChannel>(std::move(entries));
}

std::unique_ptr<ScriptedChannel> ScriptedChannel::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UpstreamError("cannot read engine transcript: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

void ScriptedChannel::send(const std::string& line) {
    sent_.push_back(line);
    // Unread engine output is dropped, as a real engine's would be if the
    // client never reads it.
    while (next_ < entries_.size() && !entries_[next_].outbound) ++next_;
    if (next_ >= entries_.size()) throw UpstreamError("transcript ended; unexpected command: " + line);
    const auto& want = entries_[next_].text;
    if (line.compare(0, want.size(), want) != 0)
        throw UpstreamError("transcript mismatch: expected '" + want + "', got '" + line + "'");
    ++next_;
}

std::optional<std::string> ScriptedChannel::receive(std::chrono::milliseconds) {
    if (next_ >= entries_.size() || entries_[next_].outbound) return std::nullopt;
    return entries_[next_++].text;
}

}  // namespace ccc::engine
