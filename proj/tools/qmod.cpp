#include <cstdio>
#include <qmod/cli.hpp>

int main(int argc, char** argv) {
    auto res = qmod::run_cli(std::vector<std::string>(argv + 1, argv + argc));
    std::fputs(res.out.c_str(), stdout);
    return res.code;
}
