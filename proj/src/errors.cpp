#include "fix/errors.hpp"

#include <atomic>
#include <cstdio>

namespace fix {

namespace {

void default_warn(const std::string& message) {
    std::fprintf(stderr, "warning: %s\n", message.c_str());
}

std::atomic<WarnHandler> g_warn_handler{&default_warn};

} // namespace

WarnHandler set_warn_handler(WarnHandler h) {
    return g_warn_handler.exchange(h ? h : &default_warn);
}

void warn(const std::string& message) {
    g_warn_handler.load()(message);
}

} // namespace fix
