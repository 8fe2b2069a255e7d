#include "raven/core/proc.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace raven::core {

ProcessResult run_process(const std::vector<std::string>& argv) {
    if (argv.empty()) throw std::invalid_argument("run_process: empty argv");

    int pipefd[2];
    if (pipe(pipefd) != 0) throw std::runtime_error("run_process: pipe failed");

    const pid_t pid = fork();
    if (pid < 0) {
        close(pipefd[0]);
        close(pipefd[1]);
        throw std::runtime_error("run_process: fork failed");
    }
    if (pid == 0) {
        close(pipefd[0]);
        dup2(pipefd[1], STDOUT_FILENO);
        close(pipefd[1]);
        std::vector<char*> cargv;
        cargv.reserve(argv.size() + 1);
        for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
        cargv.push_back(nullptr);
        execvp(cargv[0], cargv.data());
        _exit(127);
    }

    close(pipefd[1]);
    ProcessResult res;
    char buf[4096];
    ssize_t n;
    while ((n = read(pipefd[0], buf, sizeof(buf))) > 0) res.out.append(buf, std::size_t(n));
    close(pipefd[0]);

    int status = 0;
    if (waitpid(pid, &status, 0) < 0) throw std::runtime_error("run_process: waitpid failed");
    if (WIFEXITED(status))
        res.exit_code = WEXITSTATUS(status);
    else
        res.exit_code = -1;
    if (res.exit_code == 127)
        throw std::runtime_error("run_process: cannot execute " + argv[0]);
    return res;
}

}  // namespace raven::core
