#pragma once

#include "markovpi/error.hpp"

#include <gtest/gtest.h>

#include <functional>

namespace testutil {

/// Code of the markovpi::Error thrown by f; records a failure if nothing is thrown.
inline markovpi::ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const markovpi::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected markovpi::Error";
    return markovpi::ErrorCode::Usage;
}

}  // namespace testutil
