#pragma once

#include <doctest.h>

#include "ineq/error.hpp"

/// Code of the ineq::Error thrown by fn; fails the test when nothing is thrown.
template <class Fn>
ineq::ErrorCode code_of(Fn&& fn) {
    try {
        fn();
    } catch (const ineq::Error& e) {
        return e.code();
    }
    FAIL("expected an ineq::Error");
    return ineq::ErrorCode::Io;
}
